#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "wg4/errors.hpp"

namespace wg4 {

// Trial-division factorization. Inputs in this toolkit never exceed 1e12,
// so no general-purpose factorizer is needed.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw contract_violation("factorize: n must be >= 1");
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

inline int mobius(std::uint64_t n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e >= 2) return 0;
        m = -m;
    }
    return m;
}

// Ramanujan sum c_q(M) = sum_{d | gcd(q, M)} d * mu(q/d).
// c_q(0) = phi(q): every residues contributes 1.
inline std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t M) {
    if (q == 0) throw contract_violation("ramanujan_sum: q must be >= 1");
    std::uint64_t m = M < 0 ? static_cast<std::uint64_t>(-M) : static_cast<std::uint64_t>(M);
    std::uint64_t g = (m == 0) ? q : std::gcd(q, m);
    std::int64_t s = 0;
    for (std::uint64_t d = 1; d * d <= g; ++d) {
        if (g % d) continue;
        s += static_cast<std::int64_t>(d) * mobius(q / d);
        std::uint64_t d2 = g / d;
        if (d2 != d) s += static_cast<std::int64_t>(d2) * mobius(q / d2);
    }
    return s;
}

}  // namespace wg4
