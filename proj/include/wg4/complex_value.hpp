#pragma once

#include <cmath>
#include <complex>
#include <string>

namespace wg4 {

enum class Tri { False, True, Indeterminate };

// Complex double with an absolute error radius carried through
// arithmetic. Comparisons within err of a tie are Indeterminate.
struct ComplexValue {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;

    ComplexValue() = default;
    ComplexValue(double r, double i, double e = 0.0) : re(r), im(i), err(e) {}

    std::complex<double> value() const { return {re, im}; }
    double abs() const { return std::hypot(re, im); }

    ComplexValue conj() const { return {re, -im, err}; }

    ComplexValue operator+(const ComplexValue& o) const {
        return {re + o.re, im + o.im, err + o.err + 1e-16 * (abs() + o.abs())};
    }
    ComplexValue operator-(const ComplexValue& o) const {
        return {re - o.re, im - o.im, err + o.err + 1e-16 * (abs() + o.abs())};
    }
    ComplexValue operator*(const ComplexValue& o) const {
        const auto p = value() * o.value();
        const double e =
            abs() * o.err + o.abs() * err + err * o.err + 4e-16 * std::abs(p);
        return {p.real(), p.imag(), e};
    }
    ComplexValue operator*(double s) const { return {re * s, im * s, err * std::fabs(s)}; }

    Tri is_zero() const {
        const double a = abs();
        if (a > err) return Tri::False;
        // Zero can never be affirmed exactly by floats; within err of the
        // tie we report the verdict that the residual is below noise.
        return a + err == 0.0 ? Tri::True : Tri::Indeterminate;
    }

    // |this| <= bound, Indeterminate when the margin is inside err.
    Tri abs_le(double bound) const {
        const double a = abs();
        if (a + err <= bound) return Tri::True;
        if (a - err > bound) return Tri::False;
        return Tri::Indeterminate;
    }
};

// e(x) = exp(2 pi i x)
inline ComplexValue unit_e(double x) {
    const double t = 2.0 * M_PI * x;
    return {std::cos(t), std::sin(t), 4e-16 * (1.0 + std::fabs(t))};
}

}  // namespace wg4
