#include "catch_amalgamated.hpp"

#include "wg4/congruence.hpp"
#include "wg4/exp_sums.hpp"

using namespace wg4;

namespace {

// Independent oracle: literal 15-variable loop over units (tiny p only).
BigInt k_oracle(std::int64_t n, std::uint64_t p) {
    // counts solutions of x1^4+...+x7^4 - x8^4-...-x15^4 = n (mod p)
    std::vector<std::uint64_t> f4(p);
    std::vector<std::uint64_t> units;
    for (std::uint64_t x = 1; x < p; ++x) {
        std::uint64_t v = x * x % p;
        f4[x] = v * v % p;
        units.push_back(x);
    }
    std::int64_t target = n % static_cast<std::int64_t>(p);
    if (target < 0) target += static_cast<std::int64_t>(p);
    // fold one variable at a time over residue distributions
    std::vector<BigInt> dist(p, 0);
    dist[0] = 1;
    auto fold = [&](bool negate) {
        std::vector<BigInt> next(p, 0);
        for (std::uint64_t r = 0; r < p; ++r) {
            if (dist[r] == 0) continue;
            for (std::uint64_t x : units) {
                std::uint64_t v = negate ? (p - f4[x]) % p : f4[x];
                next[(r + v) % p] += dist[r];
            }
        }
        dist = std::move(next);
    };
    for (int i = 0; i < 7; ++i) fold(false);
    for (int i = 0; i < 8; ++i) fold(true);
    return dist[static_cast<std::uint64_t>(target)];
}

}  // namespace

TEST_CASE("small-prime counts against the direct oracle") {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
        for (std::int64_t n : {0ll, 1ll, 2ll, -1ll}) {
            CHECK(count_K(n, p).count == k_oracle(n, p));
        }
    }
}

TEST_CASE("frozen counts") {
    CHECK(count_K(0, 3).count == 0);
    CHECK(count_K(0, 5).count == 0);
    CHECK(count_H(0, 7, 1).count == BigInt("470197567488"));
    CHECK(count_K(0, 17).count == BigInt("65585524999454720"));
}

TEST_CASE("feasibility guards") {
    CHECK_THROWS_AS(count_K(0, 10007), mode_refused);
    CHECK_THROWS_AS(count_H(0, 101, 2), mode_refused);
    CHECK_THROWS_AS(count_K(0, 15), contract_violation);
    CHECK_THROWS_AS(count_H(0, 7, 3), contract_violation);
}

TEST_CASE("H sums K over the extra free variable") {
    // H(n,p) = sum over x of K(n - x^4, p)
    for (std::uint64_t p : {5ull, 7ull, 11ull}) {
        for (std::int64_t n : {0ll, 1ll}) {
            BigInt total = 0;
            for (std::uint64_t x = 0; x < p; ++x) {
                std::uint64_t v = x * x % p;
                v = v * v % p;
                total += count_K(n - static_cast<std::int64_t>(v), p).count;
            }
            CHECK(count_H(n, p, 1).count == total);
        }
    }
}

TEST_CASE("bridge identities to the singular-series coefficients") {
    for (std::uint64_t p : {17ull, 19ull, 23ull, 29ull}) {
        for (std::int64_t n : {0ll, 1ll, -1ll}) {
            BigInt phi15 = bigint_pow(BigInt(p - 1), 15);
            Rational t1 = t_coefficient_exact(1, n, p);
            Rational tp = t_coefficient_exact(p, n, p);
            // H(n,p) = (p-1)^15 (1 + T_1(n,p))
            CHECK(Rational(count_H(n, p, 1).count) == Rational(phi15) * (Rational(1) + t1));
            // p K(n,p) = (p-1)^15 (1 + T_p(n,p))
            CHECK(Rational(count_K(n, p).count * p) == Rational(phi15) * (Rational(1) + tp));
        }
    }
}

TEST_CASE("error terms: p = 1 mod 4 within stated bounds") {
    for (std::uint64_t p : {17ull, 29ull, 37ull, 41ull, 101ull}) {
        for (std::int64_t n : {0ll, 1ll}) {
            auto [E, Estar] = error_terms(n, p);
            CHECK(E.satisfied);
            CHECK(Estar.satisfied);
        }
    }
}

TEST_CASE("error terms: p = 3 mod 4 measured against the stated claim") {
    auto [E, Estar] = error_terms(0, 19);
    // measured: E = -(p-1)(1+p)^7 and E* = p(p-1)(1+p)^7, not the stated
    // -(p-1) and 0 — recorded, and the 'satisfied' flags reflect it
    CHECK(E.value == BigInt(-18) * bigint_pow(BigInt(20), 7));
    CHECK(Estar.value == BigInt(19) * 18 * bigint_pow(BigInt(20), 7));
    CHECK_FALSE(E.satisfied);
    CHECK_FALSE(Estar.satisfied);

    auto [E2, Es2] = error_terms(1, 19);  // 19 does not divide 1
    CHECK(E2.value == E2.value);          // well-defined
}

TEST_CASE("omega values are rationals in [0, 1] scaled by p") {
    for (std::uint64_t p : {17ull, 19ull, 29ull, 43ull}) {
        for (std::int64_t n : {0ll, 1ll, 5ll}) {
            Rational w = omega_at_prime(n, p);
            CHECK(w >= 0);
            CHECK(w < static_cast<long>(p));
        }
    }
    CHECK_THROWS_AS(omega_at_prime(0, 13), contract_violation);
}

TEST_CASE("second moment of the unit sum is (3p+1)(p-1) for p = 1 mod 4") {
    CHECK(csum_second_moment(5) == 64);
    CHECK(csum_second_moment(13) == 480);
    CHECK(csum_second_moment(17) == 832);
    CHECK(csum_second_moment(101) == BigInt(3 * 101 + 1) * 100);
    CHECK_THROWS_AS(csum_second_moment(7), contract_violation);
}

TEST_CASE("distributions cover every residue consistently") {
    KDistribution kd(17);
    HDistribution hd(17, 1);
    BigInt ktotal = 0, htotal = 0;
    for (std::int64_t n = 0; n < 17; ++n) {
        ktotal += kd.at(n);
        htotal += hd.at(n);
        CHECK(kd.at(n) == count_K(n, 17).count);
    }
    CHECK(ktotal == bigint_pow(BigInt(16), 15));
    CHECK(htotal == bigint_pow(BigInt(16), 15) * 17);
}

TEST_CASE("H at modulus p^2") {
    // i = 2 exists and is positive for small p
    CHECK(count_H(0, 7, 2).count > 0);
    CHECK(count_H(3, 5, 2).count >= 0);
}
