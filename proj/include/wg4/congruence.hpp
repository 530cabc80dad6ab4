#pragma once

#include <cstdint>
#include <utility>

#include "wg4/bigint.hpp"
#include "wg4/errors.hpp"
#include "wg4/histogram.hpp"
#include "wg4/primes.hpp"

namespace wg4 {

inline constexpr std::uint64_t kCongruenceMaxP = 10000;
inline constexpr std::uint64_t kCongruenceMaxPSquared = 100;

struct CongruenceCount {
    std::int64_t n = 0;
    std::uint64_t modulus = 0;
    BigInt count;
    char kind = 'K';
};

namespace detail {

// Distribution of y2^4 + ... + y8^4 - y9^4 - ... - y16^4 over Z/q with
// all y_j units. Fourteen convolutions; the compressed fourth-power
// image keeps the support at (q-1)/gcd(4, q-1) for prime q.
inline ResidueHistogram signed_unit_sum_distribution(std::uint64_t q) {
    auto u = fourth_power_histogram(q, HistDomain::Units);
    auto ur = reflect(u);
    auto acc = u;
    for (int i = 0; i < 6; ++i) acc = cyclic_convolve_exact(acc, u);
    for (int i = 0; i < 8; ++i) acc = cyclic_convolve_exact(acc, ur);
    return acc;
}

}  // namespace detail

// All K(n, p) values at once (the distribution is n-independent).
struct KDistribution {
    std::uint64_t p;
    ResidueHistogram dist;

    explicit KDistribution(std::uint64_t p_) : p(p_), dist(1) {
        if (!is_prime_u64(p)) throw contract_violation("count_K: p must be prime");
        if (p > kCongruenceMaxP) throw mode_refused("count_K: p exceeds exact feasibility");
        dist = detail::signed_unit_sum_distribution(p);
    }

    BigInt at(std::int64_t n) const {
        std::int64_t m = n % static_cast<std::int64_t>(p);
        if (m < 0) m += static_cast<std::int64_t>(p);
        return dist.counts[static_cast<std::uint64_t>(m)];
    }
};

// All H(n, p^i) values at once: the K distribution convolved with the
// all-residue fourth-power histogram (the extra x variable).
struct HDistribution {
    std::uint64_t modulus;
    ResidueHistogram dist;

    explicit HDistribution(std::uint64_t p, unsigned i = 1) : modulus(p), dist(1) {
        if (!is_prime_u64(p)) throw contract_violation("count_H: p must be prime");
        if (i != 1 && i != 2) throw contract_violation("count_H: i must be 1 or 2");
        if ((i == 1 && p > kCongruenceMaxP) || (i == 2 && p > kCongruenceMaxPSquared))
            throw mode_refused("count_H: modulus exceeds exact feasibility");
        for (unsigned k = 1; k < i; ++k) modulus *= p;
        auto x = fourth_power_histogram(modulus, HistDomain::All);
        dist = cyclic_convolve_exact(detail::signed_unit_sum_distribution(modulus), x);
    }

    BigInt at(std::int64_t n) const {
        std::int64_t m = n % static_cast<std::int64_t>(modulus);
        if (m < 0) m += static_cast<std::int64_t>(modulus);
        return dist.counts[static_cast<std::uint64_t>(m)];
    }
};

inline CongruenceCount count_K(std::int64_t n, std::uint64_t p) {
    KDistribution d(p);
    return {n, p, d.at(n), 'K'};
}

inline CongruenceCount count_H(std::int64_t n, std::uint64_t p, unsigned i = 1) {
    HDistribution d(p, i);
    return {n, d.modulus, d.at(n), 'H'};
}

struct ErrorTerm {
    BigInt value;
    BigInt bound;  // claimed bound for this p mod 4 class
    bool satisfied = false;
};

namespace detail {

// ceil((3 sqrt(p) + 1)^e * (p - 1) * (3p + 1) [* 3 sqrt(p)]) at 256-bit
// precision; a safe integer envelope of the stated analytic bound.
inline BigInt claimed_bound_1mod4(std::uint64_t p, unsigned exponent, bool extra_3sqrtp) {
    mpf_class sp(0, 256);
    mpf_sqrt_ui(sp.get_mpf_t(), p);
    mpf_class base = 3 * sp + 1;
    mpf_class acc(1, 256);
    for (unsigned i = 0; i < exponent; ++i) acc *= base;
    acc *= p - 1;
    acc *= 3 * p + 1;
    if (extra_3sqrtp) acc *= 3 * sp;
    mpf_ceil(acc.get_mpf_t(), acc.get_mpf_t());
    return BigInt(acc);
}

}  // namespace detail

// E = pK - (p-1)^15 and E* = pH - p(p-1)^15, each checked against the
// claimed bound for its residue class. For p = 3 (mod 4) the claims
// (E in {-(p-1), 1}, E* = 0) are evaluated, not assumed; the verdict is
// recorded alongside the measured value.
inline std::pair<ErrorTerm, ErrorTerm> error_terms(std::int64_t n, std::uint64_t p) {
    const BigInt K = count_K(n, p).count;
    const BigInt H = count_H(n, p, 1).count;
    const BigInt pm1_15 = bigint_pow(p - 1, 15);

    ErrorTerm E, Estar;
    E.value = p * K - pm1_15;
    Estar.value = p * H - p * pm1_15;
    if (p % 4 == 1) {
        E.bound = detail::claimed_bound_1mod4(p, 13, false);
        Estar.bound = detail::claimed_bound_1mod4(p, 13, true);
        E.satisfied = abs(E.value) <= E.bound;
        Estar.satisfied = abs(Estar.value) <= Estar.bound;
    } else if (p == 2) {
        E.bound = pm1_15;
        Estar.bound = p * pm1_15;
        E.satisfied = abs(E.value) <= E.bound;
        Estar.satisfied = abs(Estar.value) <= Estar.bound;
    } else {
        // Claimed: E = -(p-1) when p | n, E = 1 otherwise; E* = 0.
        const BigInt claimed_E =
            (n % static_cast<std::int64_t>(p) == 0) ? BigInt(-(static_cast<long>(p) - 1))
                                                    : BigInt(1);
        E.bound = abs(claimed_E);
        E.satisfied = (E.value == claimed_E);
        Estar.bound = 0;
        Estar.satisfied = (Estar.value == 0);
    }
    return {E, Estar};
}

// Sieve density omega(p) = K(n,p) / H(n,p), exact. Requires p >= 17 so
// that the denominator is provably positive.
inline Rational omega_at_prime(std::int64_t n, std::uint64_t p) {
    if (p < 17) throw contract_violation("omega_at_prime: requires p >= 17");
    const BigInt K = count_K(n, p).count;
    const BigInt H = count_H(n, p, 1).count;
    if (H == 0)
        throw contract_violation("omega_at_prime: H(n,p) = 0 — positivity claim violated");
    Rational w = make_rational(K, H);
    if (w < 0 || w >= Rational(static_cast<long>(p)))
        throw contract_violation("omega_at_prime: omega outside [0, p)");
    return w;
}

// p * #{(x,y): x^4 == y^4 mod p, 1 <= x,y <= p-1} - (p-1)^2; equals
// (3p+1)(p-1) for p = 1 (mod 4).
inline BigInt csum_second_moment(std::uint64_t p) {
    if (!is_prime_u64(p) || p % 4 != 1)
        throw contract_violation("csum_second_moment: p must be prime with p = 1 (mod 4)");
    auto h = fourth_power_histogram(p, HistDomain::Units);
    BigInt pairs = 0;
    for (std::uint32_t r : h.support()) pairs += h.counts[r] * h.counts[r];
    return p * pairs - bigint_pow(p - 1, 2);
}

}  // namespace wg4
