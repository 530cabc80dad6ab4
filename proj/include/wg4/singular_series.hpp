#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "wg4/bigint.hpp"
#include "wg4/congruence.hpp"
#include "wg4/constants.hpp"
#include "wg4/errors.hpp"
#include "wg4/exp_sums.hpp"
#include "wg4/primes.hpp"
#include "wg4/threads.hpp"

namespace wg4 {

struct SeriesTruncation {
    std::uint64_t d = 1;
    std::int64_t n = 0;
    std::uint64_t q_max = 1;
    Rational partial;        // 1 + sum of T_d(n,q), q = 2..q_max (or Euler product)
    double tail_bound = 0.0;
    std::vector<std::pair<std::uint64_t, Rational>> factors;  // Euler form only
};

// Tail constant: max over computed q <= limit of |T_1(0,q)| q^2, doubled.
// Composite q are assembled multiplicatively from cached prime values.
class TailCalibration {
  public:
    explicit TailCalibration(std::uint64_t limit = 256, unsigned threads = 1) {
        auto table = sieve_primes(limit < 2 ? 2 : limit);
        std::vector<Rational> at_prime(table.primes.size());
        parallel_for(table.primes.size(), threads, [&](std::size_t i) {
            at_prime[i] = t_coefficient_exact(1, 0, table.primes[i]);
        });
        for (std::size_t i = 0; i < table.primes.size(); ++i)
            prime_values_[table.primes[i]] = at_prime[i];
        // 2-adic prime powers contribute too (q = 4, 8, 16).
        for (std::uint64_t q : {4ull, 8ull, 16ull}) prime_values_[q] = t_coefficient_exact(1, 0, q);
        double best = 0.0;
        for (std::uint64_t q = 2; q <= limit; ++q) {
            double v = std::fabs(to_double(t1_multiplicative(q))) * static_cast<double>(q) *
                       static_cast<double>(q);
            if (v > best) best = v;
        }
        constant_ = 2.0 * best;
    }

    // T_1(0, q) via the Euler factorization (vanishing prime powers drop out).
    Rational t1_multiplicative(std::uint64_t q) const {
        if (q == 1) return Rational(1);
        Rational prod(1);
        for (auto [p, e] : factorize(q)) {
            std::uint64_t pe = 1;
            for (unsigned i = 0; i < e; ++i) pe *= p;
            if (t_short_circuits_to_zero(pe)) return Rational(0);
            auto it = prime_values_.find(pe);
            if (it == prime_values_.end()) throw mode_refused("tail calibration: q out of range");
            prod *= it->second;
        }
        prod.canonicalize();
        return prod;
    }

    double constant() const { return constant_; }

  private:
    std::map<std::uint64_t, Rational> prime_values_;
    double constant_ = 0.0;
};

// sum_{q > q_max} C q^{-2} < C / q_max.
inline double series_tail_bound(std::uint64_t q_max, double tail_constant) {
    return tail_constant / static_cast<double>(q_max);
}

inline SeriesTruncation singular_series_truncated(std::uint64_t d, std::int64_t n,
                                                  std::uint64_t q_max,
                                                  double tail_constant = 2048.0,
                                                  std::uint64_t exact_threshold = kDefaultExactThreshold,
                                                  unsigned threads = 1) {
    if (q_max > exact_threshold)
        throw mode_refused("singular_series_truncated: q_max exceeds exact threshold");
    SeriesTruncation s;
    s.d = d;
    s.n = n;
    s.q_max = q_max;
    std::vector<Rational> terms(q_max);
    parallel_for(q_max, threads, [&](std::size_t i) {
        terms[i] = t_coefficient_exact(d, n, static_cast<std::uint64_t>(i + 1));
    });
    Rational acc(0);
    for (const auto& t : terms) acc += t;
    acc.canonicalize();
    s.partial = acc;
    s.tail_bound = series_tail_bound(q_max, tail_constant);
    return s;
}

// Euler form per the factorization: the 2-adic block {1 + T(2) + T(4) +
// T(8) + T(16)} times prod over odd p <= p_max of (1 + T_d(n,p)).
// Requires gcd(d, 6) = 1.
inline SeriesTruncation singular_series_euler(std::uint64_t d, std::int64_t n,
                                              std::uint64_t p_max,
                                              double tail_constant = 2048.0,
                                              std::uint64_t exact_threshold = kDefaultExactThreshold,
                                              unsigned threads = 1) {
    if (std::gcd(d, static_cast<std::uint64_t>(6)) != 1)
        throw contract_violation("singular_series_euler: requires gcd(d, 6) = 1");
    if (p_max > exact_threshold)
        throw mode_refused("singular_series_euler: p_max exceeds exact threshold");
    SeriesTruncation s;
    s.d = d;
    s.n = n;
    s.q_max = p_max;

    Rational two_adic = Rational(1) + t_coefficient_exact(d, n, 2) + t_coefficient_exact(d, n, 4) +
                        t_coefficient_exact(d, n, 8) + t_coefficient_exact(d, n, 16);
    two_adic.canonicalize();
    s.factors.emplace_back(2, two_adic);

    std::vector<std::uint64_t> odd;
    if (p_max >= 3)
        for (std::uint64_t p : sieve_primes(p_max).primes)
            if (p > 2) odd.push_back(p);
    std::vector<Rational> fac(odd.size());
    parallel_for(odd.size(), threads, [&](std::size_t i) {
        Rational f = Rational(1) + t_coefficient_exact(d, n, odd[i]);
        f.canonicalize();
        fac[i] = f;
    });
    Rational prod = two_adic;
    for (std::size_t i = 0; i < odd.size(); ++i) {
        s.factors.emplace_back(odd[i], fac[i]);
        prod *= fac[i];
    }
    prod.canonicalize();
    s.partial = prod;
    s.tail_bound = series_tail_bound(p_max, tail_constant);
    return s;
}

struct SieveWeight {
    std::int64_t n = 0;
    double z = 0.0;
    double value = 1.0;
    Rational exact = Rational(1);
    std::uint64_t prime_floor = 17;
};

// W(z) = prod over primes prime_floor <= p < z of (1 - omega(p)/p).
inline SieveWeight sieve_weight_W(std::int64_t n, double z, unsigned threads = 1) {
    SieveWeight w;
    w.n = n;
    w.z = z;
    if (z <= 17.0) return w;  // empty product
    if (z > static_cast<double>(kCongruenceMaxP))
        throw mode_refused("sieve_weight_W: z beyond exact omega range");
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(std::ceil(z))).primes)
        if (p >= 17 && static_cast<double>(p) < z) ps.push_back(p);
    std::vector<Rational> fac(ps.size());
    parallel_for(ps.size(), threads, [&](std::size_t i) {
        Rational f = Rational(1) - omega_at_prime(n, ps[i]) / Rational(static_cast<long>(ps[i]));
        f.canonicalize();
        fac[i] = f;
    });
    for (const auto& f : fac) w.exact *= f;
    w.exact.canonicalize();
    w.value = to_double(w.exact);
    if (!(w.value > 0.0 && w.value <= 1.0))
        throw contract_violation("sieve_weight_W: W(z) outside (0, 1]");
    return w;
}

struct S1WFactor {
    std::string name;
    double value = 0.0;
    bool measured = true;  // false: stated bound used in place of a computation
};

struct S1WReport {
    std::vector<S1WFactor> factors;
    double small_prime_block = 0.0;    // 2-adic block times p = 3..13 factors
    double middle_measured = 1.0;      // prod (1 + (E*-E)/(p-1)^16), exact sweep
    std::uint64_t middle_sweep_max = 0;
    double middle_stated = 1.1;
    double mertens_c = 0.0;            // from mertens_constant(17, theta)
    double far_tail = 1.0;             // 1 + eps, stated
    double assembled = 0.0;            // block * 1.1 * mertens_c
    double stated = kStatedS1WConst;
};

// The factor pipeline behind the 16557.733 constant: small-prime block,
// the middle product (measured over an exact sweep, bounded by 1.1),
// the Mertens constant for level z = N^theta, and the far tail.
inline S1WReport s1w_pipeline(std::int64_t n = 0, const Rational& theta = Rational(9, 400),
                              std::uint64_t middle_sweep_max = 300, double epsilon = 1e-3,
                              unsigned threads = 1) {
    S1WReport r;
    Rational two_adic = Rational(1) + t_coefficient_exact(1, n, 2) + t_coefficient_exact(1, n, 4) +
                        t_coefficient_exact(1, n, 8) + t_coefficient_exact(1, n, 16);
    r.factors.push_back({"two_adic", to_double(two_adic), true});
    Rational block = two_adic;
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        Rational f = Rational(1) + t_coefficient_exact(1, n, p);
        f.canonicalize();
        r.factors.push_back({"p=" + std::to_string(p), to_double(f), true});
        block *= f;
    }
    block.canonicalize();
    r.small_prime_block = to_double(block);

    std::vector<std::uint64_t> mid;
    for (std::uint64_t p : sieve_primes(middle_sweep_max < 17 ? 17 : middle_sweep_max).primes)
        if (p >= 17) mid.push_back(p);
    std::vector<double> midf(mid.size(), 1.0);
    parallel_for(mid.size(), threads, [&](std::size_t i) {
        auto [E, Estar] = error_terms(n, mid[i]);
        Rational delta = make_rational(Estar.value - E.value, bigint_pow(mid[i] - 1, 16));
        midf[i] = 1.0 + to_double(delta);
    });
    for (double f : midf) r.middle_measured *= f;
    r.middle_sweep_max = middle_sweep_max;
    r.factors.push_back({"middle_measured", r.middle_measured, true});
    r.factors.push_back({"middle_stated_1.1", r.middle_stated, false});

    r.mertens_c = to_double(mertens_constant(17, theta));
    r.factors.push_back({"mertens_constant", r.mertens_c, true});
    r.far_tail = 1.0 + epsilon;
    r.factors.push_back({"far_tail", r.far_tail, false});

    r.assembled = r.small_prime_block * r.middle_stated * r.mertens_c;
    return r;
}

}  // namespace wg4
