#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "wg4/errors.hpp"
#include "wg4/threads.hpp"

namespace wg4 {

struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;  // ascending, all p <= limit
};

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Simple Eratosthenes for the base primes (limit <= ~2^32 in practice).
inline std::vector<std::uint64_t> small_sieve(std::uint64_t limit) {
    std::vector<std::uint8_t> comp(limit + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = 1;
    }
    return out;
}

}  // namespace detail

inline constexpr std::uint64_t kSieveSegmentBits = 1u << 20;

// Segmented sieve; segments are sieved independently (optionally in
// parallel) and concatenated in order, so output is deterministic.
inline PrimeTable sieve_primes(std::uint64_t limit, unsigned threads = 1) {
    if (limit < 2) throw empty_domain_error("sieve_primes: limit must be >= 2");

    PrimeTable table;
    table.limit = limit;
    const std::uint64_t root = detail::isqrt_u64(limit);
    std::vector<std::uint64_t> base = detail::small_sieve(root < 2 ? 2 : root);
    if (limit <= root || limit < kSieveSegmentBits) {
        table.primes = detail::small_sieve(limit);
        return table;
    }

    const std::uint64_t seg = kSieveSegmentBits;
    const std::uint64_t nseg = (limit + 1 + seg - 1) / seg;
    std::vector<std::vector<std::uint64_t>> per_segment(nseg);

    parallel_for(nseg, threads, [&](std::size_t si) {
        const std::uint64_t lo = si * seg;
        const std::uint64_t hi = std::min(limit, lo + seg - 1);
        std::vector<std::uint8_t> comp(hi - lo + 1, 0);
        if (lo == 0) {
            comp[0] = 1;
            if (hi >= 1) comp[1] = 1;
        }
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = ((lo + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::uint64_t j = start; j <= hi; j += p) comp[j - lo] = 1;
        }
        auto& out = per_segment[si];
        for (std::uint64_t i = lo; i <= hi; ++i)
            if (!comp[i - lo]) out.push_back(i);
    });

    for (auto& v : per_segment)
        table.primes.insert(table.primes.end(), v.begin(), v.end());
    return table;
}

// Dyadic range convention: p ~ X means X < p <= 2X.
inline std::vector<std::uint64_t> primes_in_dyadic(double X) {
    if (X < 1.0) throw contract_violation("primes_in_dyadic: X must be >= 1");
    std::vector<std::uint64_t> out;
    const auto hi = static_cast<std::uint64_t>(std::floor(2.0 * X));
    if (hi < 2) return out;
    PrimeTable t = sieve_primes(hi);
    for (std::uint64_t p : t.primes)
        if (static_cast<double>(p) > X && static_cast<double>(p) <= 2.0 * X) out.push_back(p);
    return out;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace wg4
