#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <numeric>

#include "wg4/bigint.hpp"
#include "wg4/errors.hpp"
#include "wg4/multiplicative.hpp"
#include "wg4/params.hpp"
#include "wg4/primes.hpp"
#include "wg4/quadrature.hpp"

namespace wg4 {

inline constexpr double kEulerGamma = 0.5772156649015328606;

// Stated headline constants of the derivation under verification.
inline constexpr double kStatedK = 4888799.222;
inline constexpr double kStatedS1WConst = 16557.733;
inline constexpr double kStatedB = 80947432211.141;
inline constexpr double kStatedBetaDen = 414.465;
inline constexpr double kStatedIStarBound = 7.73;

// Phi(lambda, X) = int_X^{2X} e(u^4 lambda) du, evaluated after the
// substitution t = u^4 as (1/4) int t^{-3/4} e(lambda t) dt with panels
// sized to the oscillation wavelength.
inline QuadratureResult phi_integral(double lambda, double X, double tol) {
    if (X <= 0.0) throw contract_violation("phi_integral: X must be > 0");
    const double lo = std::pow(X, 4), hi = 16.0 * std::pow(X, 4);
    auto f = [lambda](double t) {
        const double ph = 2.0 * M_PI * lambda * t;
        return 0.25 * std::pow(t, -0.75) * std::complex<double>(std::cos(ph), std::sin(ph));
    };
    return integrate_oscillatory(f, lo, hi, std::fabs(lambda), tol);
}

// Psi(lambda, X) = int_X^{2X} e(u^4 lambda) / log u du.
inline QuadratureResult psi_integral(double lambda, double X, double tol) {
    if (X <= 1.0) throw contract_violation("psi_integral: X must be > 1");
    const double lo = std::pow(X, 4), hi = 16.0 * std::pow(X, 4);
    auto f = [lambda](double t) {
        const double ph = 2.0 * M_PI * lambda * t;
        return std::pow(t, -0.75) / std::log(t) *
               std::complex<double>(std::cos(ph), std::sin(ph));
    };
    return integrate_oscillatory(f, lo, hi, std::fabs(lambda), tol);
}

// I* = int_{1/17}^{16/17} u^{-3/4} (1-u)^{-3/4} du. The integrand is
// bounded on this interval (the endpoint singularities lie outside).
inline QuadratureResult istar(double tol) {
    auto f = [](double u) {
        return std::complex<double>(std::pow(u, -0.75) * std::pow(1.0 - u, -0.75), 0.0);
    };
    return integrate_adaptive(f, 1.0 / 17.0, 16.0 / 17.0, tol);
}

// (32/7)^8 * (4^5 / sqrt 2) * (1 + eps) * I*. The stated K constant does
// not match this formula; callers compare and report the ratio.
inline double k_from_formula(double istar_value, double epsilon) {
    if (istar_value < 0.0) throw contract_violation("k_from_formula: I* must be >= 0");
    const double a = std::pow(32.0 / 7.0, 8);
    const double b = std::pow(4.0, 5) / std::sqrt(2.0);
    return a * b * (1.0 + epsilon) * istar_value;
}

// Numeric J(n) over lambda in [-L^B/U^4, L^B/U^4] at desk scale.
inline QuadratureResult j_direct(std::int64_t n, double U, double B, double tol) {
    if (U > 50.0) throw mode_refused("j_direct: U must be <= 50 (desk scale)");
    if (U <= 1.5) throw contract_violation("j_direct: U too small for Psi");
    const double V = std::pow(U, 7.0 / 8.0);
    const double N = 64.0 * std::pow(U, 4) * (1.0 + 1e-6);
    const double L = std::log(N);
    const double lim = std::pow(L, B) / std::pow(U, 4);
    const double inner_tol = tol * 1e-3;

    auto f = [&](double lambda) {
        QuadratureResult phiU = phi_integral(lambda, U, inner_tol);
        QuadratureResult psiU = psi_integral(lambda, U, inner_tol);
        QuadratureResult psiV = psi_integral(lambda, V, inner_tol);
        const std::complex<double> pU(phiU.value, phiU.imag);
        const std::complex<double> sU(psiU.value, psiU.imag);
        const std::complex<double> sV(psiV.value, psiV.imag);
        const double m2 = std::norm(sU), v2 = std::norm(sV);
        const std::complex<double> core =
            pU * std::conj(sU) * (m2 * m2 * m2) * (v2 * v2 * v2 * v2);
        const double ph = -2.0 * M_PI * static_cast<double>(n) * lambda;
        return core * std::complex<double>(std::cos(ph), std::sin(ph));
    };
    // The integrand oscillates on the u^4-scale; panel by U^4.
    return integrate_oscillatory(f, -lim, lim, std::pow(U, 4) / 4.0, tol);
}

struct MertensProduct {
    double finite_product = 0.0;  // over p <= x, p = l (mod k)
    double predicted = 0.0;       // the asymptotic main term
    double ratio = 0.0;
};

// Finite Mertens product in an arithmetic progression, against the
// asymptotic e^{-[gamma + ln(phi(k)/k)]/phi(k)} / ln^{1/phi(k)} x.
inline MertensProduct mertens_ap_product(double x, std::uint64_t k, std::uint64_t l) {
    if (k == 0 || std::gcd(k, l) != 1)
        throw contract_violation("mertens_ap_product: gcd(k, l) must be 1");
    if (x < std::exp(1.0)) throw contract_violation("mertens_ap_product: x must be >= e");
    long double logsum = 0.0L;
    auto table = sieve_primes(static_cast<std::uint64_t>(x));
    for (std::uint64_t p : table.primes) {
        if (static_cast<double>(p) > x) break;
        if (k > 1 && p % k != l % k) continue;
        logsum += std::log1p(-1.0L / static_cast<long double>(p));
    }
    MertensProduct m;
    m.finite_product = static_cast<double>(std::exp(logsum));
    const double phik = static_cast<double>(euler_phi(k));
    m.predicted = std::exp(-(kEulerGamma + std::log(phik / static_cast<double>(k))) / phik) /
                  std::pow(std::log(x), 1.0 / phik);
    m.ratio = m.finite_product / m.predicted;
    return m;
}

// c = 1 / (theta * prod_{p < prime_floor} (1 - 1/p)), exact. With
// prime_floor = 17 and theta = 9/400 this is 400400/1728 ~ 231.713,
// the constant with prod_{prime_floor <= p < N^theta}(1-1/p) ~ c e^{-gamma}/L.
inline Rational mertens_constant(std::uint64_t prime_floor, const Rational& theta) {
    if (prime_floor < 2) throw contract_violation("mertens_constant: prime_floor >= 2");
    if (theta <= 0) throw contract_violation("mertens_constant: theta must be > 0");
    Rational prod(1);
    if (prime_floor > 2) {
        for (std::uint64_t p : sieve_primes(prime_floor - 1).primes)
            prod *= make_rational(BigInt(static_cast<unsigned long>(p - 1)),
                                  BigInt(static_cast<unsigned long>(p)));
    }
    Rational c = Rational(1) / (theta * prod);
    c.canonicalize();
    return c;
}

struct DeltaSum {
    double sum = 0.0;         // primes 17 <= p <= p_max, p = 1 (mod 4)
    double tail_bound = 0.0;  // integral bound on the remainder
    unsigned exponent = 14;
};

// delta_p = (3 sqrt p + 1)^e (3p + 1) / (p - 1)^15. The combined claim
// uses e = 14 (|E| + |E*| bounds); an e = 13 variant exists in one
// display and is offered for comparison.
inline DeltaSum delta_p_sum(std::uint64_t p_max, unsigned exponent = 14) {
    if (p_max < 17) return {0.0, 0.0, exponent};
    DeltaSum d;
    d.exponent = exponent;
    for (std::uint64_t p : sieve_primes(p_max).primes) {
        if (p < 17 || p % 4 != 1) continue;
        const double sp = std::sqrt(static_cast<double>(p));
        d.sum += std::pow(3.0 * sp + 1.0, exponent) * (3.0 * static_cast<double>(p) + 1.0) /
                 std::pow(static_cast<double>(p) - 1.0, 15);
    }
    // delta_p <= c(p_max) * p^{e/2 - 14} for p >= p_max; integrate the envelope.
    const double x = static_cast<double>(p_max);
    const double c = std::pow(3.0 + 1.0 / std::sqrt(x), exponent) * (3.0 + 1.0 / x) /
                     std::pow(1.0 - 1.0 / x, 15);
    const double a = exponent / 2.0 - 14.0;  // exponent of the envelope power law
    d.tail_bound = c * std::pow(x, a + 1.0) / (-(a + 1.0));
    return d;
}

// Sieve shape functions on [2, 3]: phi0(u) = 2 e^gamma log(u-1) / u,
// phi1(u) = 2 e^gamma / u.
inline std::pair<double, double> sieve_shape(double u) {
    if (u < 2.0 || u > 3.0) throw contract_violation("sieve_shape: u must lie in [2, 3]");
    const double c = 2.0 * std::exp(kEulerGamma) / u;
    return {c * std::log(u - 1.0), c};
}

enum class Provenance { Stated, Computed };

struct ConstantChain {
    double Kc = 0.0;
    double s1w_const = kStatedS1WConst;
    double b = 0.0;
    double beta_den = 0.0;
    Provenance Kc_provenance = Provenance::Stated;
};

// b = Kc * 16557.733 and beta_den = 64 b (7/128)^8; with the stated Kc
// this reproduces b = 80947432211.141 and beta_den ~ 414.465.
inline ConstantChain constant_chain(double Kc,
                                    Provenance prov = Provenance::Stated) {
    if (Kc < 0.0) throw contract_violation("constant_chain: Kc must be >= 0");
    ConstantChain c;
    c.Kc = Kc;
    c.Kc_provenance = prov;
    c.b = Kc * c.s1w_const;
    c.beta_den = 64.0 * c.b * std::pow(7.0 / 128.0, 8);
    return c;
}

}  // namespace wg4
