#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

#include "wg4/errors.hpp"

namespace wg4 {

struct QuadratureResult {
    double value = 0.0;
    double imag = 0.0;  // nonzero only for oscillatory integrands
    double err = 0.0;
    std::int64_t evaluations = 0;
};

namespace detail {

template <typename F>
std::complex<double> simpson(const F& f, double a, double b, std::complex<double> fa,
                             std::complex<double> fm, std::complex<double> fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
void adaptive_step(const F& f, double a, double b, std::complex<double> fa,
                   std::complex<double> fm, std::complex<double> fb,
                   std::complex<double> whole, double tol, int depth,
                   std::complex<double>& acc, double& err_acc, std::int64_t& evals) {
    const double m = 0.5 * (a + b);
    const std::complex<double> flm = f(0.5 * (a + m));
    const std::complex<double> frm = f(0.5 * (m + b));
    evals += 2;
    const std::complex<double> left = simpson(f, a, m, fa, flm, fm);
    const std::complex<double> right = simpson(f, m, b, fm, frm, fb);
    const std::complex<double> delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        acc += left + right + delta / 15.0;
        err_acc += std::abs(delta) / 15.0;
        return;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1, acc, err_acc, evals);
    adaptive_step(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1, acc, err_acc, evals);
}

}  // namespace detail

// Adaptive Simpson over [a, b] for a complex-valued integrand. Halts
// refinement only when the local error estimate is within tolerance;
// the accumulated estimate is reported, never hidden.
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double tol,
                                    int max_depth = 48) {
    if (tol <= 0.0) throw contract_violation("integrate_adaptive: tol must be > 0");
    QuadratureResult r;
    if (a == b) return r;
    std::complex<double> fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    r.evaluations = 3;
    std::complex<double> whole = detail::simpson(f, a, b, fa, fm, fb);
    std::complex<double> acc = 0.0;
    double err = 0.0;
    detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth, acc, err, r.evaluations);
    r.value = acc.real();
    r.imag = acc.imag();
    r.err = err;
    if (err >= tol * 16.0)
        throw precision_exhausted("integrate_adaptive: did not converge", r.value, err);
    return r;
}

// Oscillatory variant: the range is pre-split into panels no longer than
// one oscillation wavelength of e(freq * t), each integrated adaptively.
template <typename F>
QuadratureResult integrate_oscillatory(const F& f, double a, double b, double freq,
                                       double tol) {
    const double len = b - a;
    if (len <= 0.0) return {};
    double panel = std::fabs(freq) > 0.0 ? 1.0 / std::fabs(freq) : len;
    if (panel > len) panel = len;
    const auto npanels = static_cast<std::int64_t>(std::ceil(len / panel));
    QuadratureResult total;
    const double panel_tol = tol / static_cast<double>(npanels);
    for (std::int64_t i = 0; i < npanels; ++i) {
        const double lo = a + len * static_cast<double>(i) / static_cast<double>(npanels);
        const double hi = a + len * static_cast<double>(i + 1) / static_cast<double>(npanels);
        QuadratureResult part = integrate_adaptive(f, lo, hi, panel_tol);
        total.value += part.value;
        total.imag += part.imag;
        total.err += part.err;
        total.evaluations += part.evaluations;
    }
    return total;
}

}  // namespace wg4
