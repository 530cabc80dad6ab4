#pragma once

#include <cstdint>
#include <numeric>
#include <variant>
#include <vector>

#include "wg4/bigint.hpp"
#include "wg4/complex_value.hpp"
#include "wg4/errors.hpp"
#include "wg4/histogram.hpp"
#include "wg4/multiplicative.hpp"

namespace wg4 {

inline constexpr std::uint64_t kDefaultExactThreshold = 2000;

// S(q,a): sum of e(a m^4 / q) over all residues m mod q.
inline ComplexValue exp_sum_S(std::uint64_t q, std::int64_t a) {
    if (q == 0) throw contract_violation("exp_sum_S: q must be >= 1");
    auto h = fourth_power_histogram(q, HistDomain::All);
    ComplexValue s;
    for (std::uint32_t r : h.support()) {
        double coef = h.counts[r].get_d();
        s = s + unit_e(static_cast<double>(a) * r / static_cast<double>(q)) * coef;
    }
    s.err = std::max(s.err, static_cast<double>(q) * std::ldexp(1.0, -45));
    return s;
}

// C(q,a): same sum restricted to units mod q.
inline ComplexValue exp_sum_C(std::uint64_t q, std::int64_t a) {
    if (q == 0) throw contract_violation("exp_sum_C: q must be >= 1");
    auto h = fourth_power_histogram(q, HistDomain::Units);
    ComplexValue s;
    for (std::uint32_t r : h.support()) {
        double coef = h.counts[r].get_d();
        s = s + unit_e(static_cast<double>(a) * r / static_cast<double>(q)) * coef;
    }
    s.err = std::max(s.err, static_cast<double>(q) * std::ldexp(1.0, -45));
    return s;
}

enum class TMode { Exact, Float };

struct TCoefficient {
    std::uint64_t d = 1;
    std::int64_t n = 0;
    std::uint64_t q = 1;
    TMode mode = TMode::Exact;
    Rational exact;      // valid when mode == Exact
    ComplexValue value;  // valid when mode == Float
};

// C(p^t, a) vanishes identically for odd p with t >= 2 and for p = 2
// with t >= 5; those q contribute nothing to any T_d(n, q).
inline bool t_short_circuits_to_zero(std::uint64_t q) {
    for (auto [p, e] : factorize(q)) {
        if (p == 2 && e >= 5) return true;
        if (p != 2 && e >= 2) return true;
    }
    return false;
}

// Exact path: pure integer counting. q phi^15(q) T_d(n,q) equals
// sum_r Count(r) c_q(r - n) where Count is the 15-fold cyclic
// convolution of unit fourth-power histograms (7 direct + 8 reflected)
// with the d^4-scaled all-residue histogram.
inline Rational t_coefficient_exact(std::uint64_t d, std::int64_t n, std::uint64_t q,
                                    bool short_circuit = true) {
    if (q == 0) throw contract_violation("t_coefficient: q must be >= 1");
    if (q == 1) return Rational(1);
    if (short_circuit && t_short_circuits_to_zero(q)) return Rational(0);

    auto units = fourth_power_histogram(q, HistDomain::Units);
    auto units_r = reflect(units);
    auto acc = fourth_power_histogram(q, HistDomain::All, d % q == 0 ? q : d);
    for (int i = 0; i < 7; ++i) acc = cyclic_convolve_exact(acc, units);
    for (int i = 0; i < 8; ++i) acc = cyclic_convolve_exact(acc, units_r);

    std::vector<std::int64_t> cq(q);
    for (std::uint64_t m = 0; m < q; ++m) cq[m] = ramanujan_sum(q, static_cast<std::int64_t>(m));

    BigInt num = 0;
    const std::int64_t iq = static_cast<std::int64_t>(q);
    for (std::uint64_t r = 0; r < q; ++r) {
        if (acc.counts[r] == 0) continue;
        std::int64_t m = (static_cast<std::int64_t>(r) - n) % iq;
        if (m < 0) m += iq;
        num += acc.counts[r] * cq[static_cast<std::uint64_t>(m)];
    }
    BigInt den = BigInt(static_cast<unsigned long>(q)) * bigint_pow(euler_phi(q), 15);
    return make_rational(num, den);
}

// Float path: direct sum of S(q, a d^4) C^7(q,a) conj(C)^8(q,a) e(-an/q)
// over coprime a, divided by q phi^15(q).
inline ComplexValue t_coefficient_float(std::uint64_t d, std::int64_t n, std::uint64_t q) {
    if (q == 0) throw contract_violation("t_coefficient: q must be >= 1");
    if (q == 1) return {1.0, 0.0, 0.0};
    auto units = fourth_power_histogram(q, HistDomain::Units);
    auto scaled = fourth_power_histogram(q, HistDomain::All, d % q == 0 ? q : d);
    auto su = units.support();
    auto sa = scaled.support();

    ComplexValue acc;
    for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        ComplexValue S, C;
        for (std::uint32_t r : sa)
            S = S + unit_e(static_cast<double>(a) * r / static_cast<double>(q)) *
                        scaled.counts[r].get_d();
        for (std::uint32_t r : su)
            C = C + unit_e(static_cast<double>(a) * r / static_cast<double>(q)) *
                        units.counts[r].get_d();
        ComplexValue c7{1.0, 0.0, 0.0};
        for (int i = 0; i < 7; ++i) c7 = c7 * C;
        ComplexValue c8 = C.conj();
        ComplexValue c8p{1.0, 0.0, 0.0};
        for (int i = 0; i < 8; ++i) c8p = c8p * c8;
        ComplexValue term = S * c7 * c8p *
                            unit_e(-static_cast<double>(a) * static_cast<double>(n) /
                                   static_cast<double>(q));
        acc = acc + term;
    }
    const double den = static_cast<double>(q) * std::pow(static_cast<double>(euler_phi(q)), 15);
    return {acc.re / den, acc.im / den, acc.err / den};
}

inline TCoefficient t_coefficient(std::uint64_t d, std::int64_t n, std::uint64_t q,
                                  TMode mode = TMode::Exact,
                                  std::uint64_t exact_threshold = kDefaultExactThreshold) {
    TCoefficient t;
    t.d = d;
    t.n = n;
    t.q = q;
    t.mode = mode;
    if (mode == TMode::Exact) {
        if (q > exact_threshold && !t_short_circuits_to_zero(q))
            throw mode_refused("t_coefficient: q exceeds exact threshold");
        t.exact = t_coefficient_exact(d, n, q);
    } else {
        t.value = t_coefficient_float(d, n, q);
    }
    return t;
}

// T_d(n, q1 q2) == T_d(n, q1) T_d(n, q2) for coprime q1, q2, checked on
// the exact path with no short-circuiting on either side.
inline bool verify_multiplicativity(std::uint64_t d, std::int64_t n, std::uint64_t q1,
                                    std::uint64_t q2,
                                    std::uint64_t exact_threshold = kDefaultExactThreshold) {
    if (std::gcd(q1, q2) != 1)
        throw contract_violation("verify_multiplicativity: q1, q2 must be coprime");
    if (q1 > exact_threshold || q2 > exact_threshold || q1 * q2 > exact_threshold * exact_threshold)
        throw mode_refused("verify_multiplicativity: exact threshold exceeded");
    Rational lhs = t_coefficient_exact(d, n, q1 * q2, /*short_circuit=*/false);
    Rational rhs = t_coefficient_exact(d, n, q1, false) * t_coefficient_exact(d, n, q2, false);
    return lhs == rhs;
}

// True iff C(p^t, a) = 0 (within float err) for every a coprime to p^t.
inline bool prime_power_vanishing(std::uint64_t p, unsigned t) {
    if (t < 2) throw contract_violation("prime_power_vanishing: t must be >= 2");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < t; ++i) q *= p;
    auto units = fourth_power_histogram(q, HistDomain::Units);
    auto su = units.support();
    for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        ComplexValue C;
        for (std::uint32_t r : su)
            C = C + unit_e(static_cast<double>(a) * r / static_cast<double>(q)) *
                        units.counts[r].get_d();
        if (C.is_zero() == Tri::False) return false;
    }
    return true;
}

}  // namespace wg4
