#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <vector>

#include "wg4/bigint.hpp"
#include "wg4/errors.hpp"

namespace wg4 {

enum class HistDomain { All, Units };
enum class ConvMode { Exact, Float };

// Counts of d^4 m^4 values in Z/q. Dense storage; support() gives the
// nonzero residues for sparse convolution loops.
struct ResidueHistogram {
    std::uint64_t modulus = 0;
    std::vector<BigInt> counts;
    BigInt total = 0;

    explicit ResidueHistogram(std::uint64_t q = 1) : modulus(q), counts(q) {}

    std::vector<std::uint32_t> support() const {
        std::vector<std::uint32_t> s;
        for (std::uint32_t r = 0; r < counts.size(); ++r)
            if (counts[r] != 0) s.push_back(r);
        return s;
    }

    void recompute_total() {
        total = 0;
        for (const auto& c : counts) total += c;
    }
};

// Histogram of r = d^4 m^4 (mod q) over m in the chosen domain.
inline ResidueHistogram fourth_power_histogram(std::uint64_t q, HistDomain domain,
                                               std::uint64_t scale_d = 1) {
    if (q == 0) throw contract_violation("fourth_power_histogram: q must be >= 1");
    ResidueHistogram h(q);
    std::uint64_t d4 = 1;
    for (int i = 0; i < 4; ++i) d4 = (d4 * (scale_d % q)) % q;
    for (std::uint64_t m = 1; m <= q; ++m) {
        if (domain == HistDomain::Units && std::gcd(m, q) != 1) continue;
        std::uint64_t m2 = (m * m) % q;
        std::uint64_t r = (d4 * ((m2 * m2) % q)) % q;
        h.counts[r] += 1;
    }
    h.recompute_total();
    return h;
}

// h~[r] = h[-r mod q]; reflection is a ring homomorphism for cyclic
// convolution, so reflect(a * b) == reflect(a) * reflect(b).
inline ResidueHistogram reflect(const ResidueHistogram& h) {
    ResidueHistogram out(h.modulus);
    for (std::uint64_t r = 0; r < h.modulus; ++r)
        out.counts[(h.modulus - r) % h.modulus] = h.counts[r];
    out.total = h.total;
    return out;
}

inline ResidueHistogram delta_histogram(std::uint64_t q) {
    ResidueHistogram d(q);
    d.counts[0] = 1;
    d.total = 1;
    return d;
}

inline ResidueHistogram cyclic_convolve_exact(const ResidueHistogram& h1,
                                              const ResidueHistogram& h2) {
    if (h1.modulus != h2.modulus)
        throw contract_violation("cyclic_convolve: modulus mismatch");
    const std::uint64_t q = h1.modulus;
    ResidueHistogram out(q);
    // Iterate the sparser operand in the outer loop.
    const ResidueHistogram& a = h1;
    const ResidueHistogram& b = h2;
    auto sb = b.support();
    for (std::uint64_t r1 = 0; r1 < q; ++r1) {
        const BigInt& c1 = a.counts[r1];
        if (c1 == 0) continue;
        for (std::uint32_t r2 : sb) {
            std::uint64_t r = r1 + r2;
            if (r >= q) r -= q;
            mpz_addmul(out.counts[r].get_mpz_t(), c1.get_mpz_t(), b.counts[r2].get_mpz_t());
        }
    }
    out.total = a.total * b.total;
    return out;
}

namespace detail {

// FFTW planning is not thread-safe.
inline std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

inline void dft(std::vector<std::complex<double>>& buf, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(buf.size()),
                                reinterpret_cast<fftw_complex*>(buf.data()),
                                reinterpret_cast<fftw_complex*>(buf.data()), sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
}

inline double l2_norm(const ResidueHistogram& h, bool& fits_double) {
    double s = 0.0;
    fits_double = true;
    for (const auto& c : h.counts) {
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > 52) fits_double = false;
        double v = c.get_d();
        s += v * v;
    }
    return std::sqrt(s);
}

}  // namespace detail

// Certified a-priori rounding radius of the length-q FFT convolution.
inline double float_convolution_radius(const ResidueHistogram& h1,
                                       const ResidueHistogram& h2) {
    bool f1 = true, f2 = true;
    const double n1 = detail::l2_norm(h1, f1);
    const double n2 = detail::l2_norm(h2, f2);
    if (!f1 || !f2) return std::numeric_limits<double>::infinity();
    const double q = static_cast<double>(h1.modulus);
    const double lg = q > 1 ? std::log2(q) : 1.0;
    return 16.0 * std::numeric_limits<double>::epsilon() * lg * n1 * n2;
}

// Float mode: length-q fast convolution. Fails rather than mis-rounds:
// radius >= 0.5 is a hard error; radius > 0.25 silently promotes to the
// exact path (counts must be exact integers).
inline ResidueHistogram cyclic_convolve(const ResidueHistogram& h1,
                                        const ResidueHistogram& h2,
                                        ConvMode mode = ConvMode::Exact,
                                        bool allow_promote = true) {
    if (h1.modulus != h2.modulus)
        throw contract_violation("cyclic_convolve: modulus mismatch");
    if (mode == ConvMode::Exact) return cyclic_convolve_exact(h1, h2);

    const double radius = float_convolution_radius(h1, h2);
    if (radius > 0.25) {
        if (allow_promote) return cyclic_convolve_exact(h1, h2);
        if (radius >= 0.5)
            throw precision_exhausted("cyclic_convolve: float rounding radius >= 0.5", 0.0,
                                      radius);
    }

    const std::uint64_t q = h1.modulus;
    std::vector<std::complex<double>> a(q), b(q);
    for (std::uint64_t r = 0; r < q; ++r) {
        a[r] = h1.counts[r].get_d();
        b[r] = h2.counts[r].get_d();
    }
    detail::dft(a, FFTW_FORWARD);
    detail::dft(b, FFTW_FORWARD);
    for (std::uint64_t r = 0; r < q; ++r) a[r] *= b[r];
    detail::dft(a, FFTW_BACKWARD);

    ResidueHistogram out(q);
    for (std::uint64_t r = 0; r < q; ++r) {
        const double v = a[r].real() / static_cast<double>(q);
        const double rounded = std::round(v);
        if (std::fabs(v - rounded) > std::max(radius, 1e-9) || rounded < 0.0)
            throw precision_exhausted("cyclic_convolve: float result failed rounding check",
                                      v, radius);
        out.counts[r] = BigInt(rounded);
    }
    out.recompute_total();
    return out;
}

}  // namespace wg4
