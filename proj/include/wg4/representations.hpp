#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <unordered_map>
#include <vector>

#include "wg4/bigint.hpp"
#include "wg4/errors.hpp"
#include "wg4/params.hpp"
#include "wg4/primes.hpp"
#include "wg4/threads.hpp"

namespace wg4 {

enum class RepConstraint { Unconstrained, Dyadic };

struct RepWindow {
    std::uint64_t lo = 0;  // exclusive
    std::uint64_t hi = 0;  // inclusive
    std::uint64_t length() const { return hi - lo; }
};

inline constexpr std::uint64_t kDefaultMemoryBudget = 1536ull << 20;  // 1.5 GiB
inline constexpr std::uint64_t kMarkSegmentBits = 1ull << 30;

// Representability marks (bit per candidate) and optional r(l) counts.
// Counting convention: Dyadic counts ordered 8-tuples; Unconstrained
// counts unordered prime multisets.
struct RepTable {
    std::uint64_t N = 0;
    RepWindow window;
    RepConstraint constraint = RepConstraint::Unconstrained;
    double dyadic_U = 0.0;

    std::vector<std::uint8_t> marks;  // bit i <-> l = window.lo + 1 + i
    bool counts_enabled = false;
    bool counts_overflow = false;
    std::map<std::uint64_t, std::uint16_t> counts;  // saturating at 65535

    bool marked(std::uint64_t l) const {
        if (l <= window.lo || l > window.hi) return false;
        std::uint64_t i = l - window.lo - 1;
        return (marks[i >> 3] >> (i & 7)) & 1;
    }
    void set_mark(std::uint64_t l) {
        std::uint64_t i = l - window.lo - 1;
        marks[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
    }
    std::uint64_t marked_count() const {
        std::uint64_t c = 0;
        for (std::uint8_t b : marks) c += static_cast<unsigned>(__builtin_popcount(b));
        return c;
    }
    void add_count(std::uint64_t l, std::uint64_t r) {
        auto& slot = counts[l];
        std::uint64_t v = slot + r;
        if (v > 0xffff) {
            slot = 0xffff;
            counts_overflow = true;
        } else {
            slot = static_cast<std::uint16_t>(v);
        }
    }
};

namespace detail {

// All sums of four prime fourth powers (multisets, sorted pools),
// optionally recording the index of the largest prime used.
inline void four_fold_sums(const std::vector<std::uint64_t>& pool, std::uint64_t cap,
                           std::size_t first_index,
                           std::vector<std::pair<std::uint64_t, std::uint32_t>>& out) {
    std::vector<std::uint64_t> p4(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) p4[i] = pool[i] * pool[i] * pool[i] * pool[i];
    for (std::size_t a = first_index; a < p4.size(); ++a) {
        if (4 * p4[a] > cap) break;
        for (std::size_t b = a; b < p4.size(); ++b) {
            std::uint64_t sab = p4[a] + p4[b];
            if (sab + 2 * p4[b] > cap) break;
            for (std::size_t c = b; c < p4.size(); ++c) {
                std::uint64_t sabc = sab + p4[c];
                if (sabc + p4[c] > cap) break;
                for (std::size_t d = c; d < p4.size(); ++d) {
                    std::uint64_t s = sabc + p4[d];
                    if (s > cap) break;
                    out.emplace_back(s, static_cast<std::uint32_t>(d));
                }
            }
        }
    }
}

// Ordered k-fold fourth-power sums over a pool, as sum -> tuple count.
inline std::map<std::uint64_t, std::uint64_t> ordered_fold_sums(
    const std::vector<std::uint64_t>& pool, unsigned k, std::uint64_t cap) {
    std::map<std::uint64_t, std::uint64_t> acc;
    acc[0] = 1;
    for (unsigned i = 0; i < k; ++i) {
        std::map<std::uint64_t, std::uint64_t> next;
        for (const auto& [s, c] : acc) {
            for (std::uint64_t p : pool) {
                std::uint64_t v = s + p * p * p * p;
                if (v <= cap) next[v] += c;
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace detail

struct EnumerateOptions {
    bool counts = false;
    unsigned threads = 0;  // 0 = WG4_THREADS / auto
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    double delta0 = 1e-6;  // Params knob for the dyadic pools
};

// Meet-in-the-middle enumeration of l = p1^4 + ... + p8^4 over the
// window. Unconstrained: all primes. Dyadic: four primes ~ U and four
// ~ V with U, V derived from N.
inline RepTable enumerate(std::uint64_t N, RepWindow window, RepConstraint constraint,
                          EnumerateOptions opts = {}) {
    if (window.hi > N || window.lo >= window.hi)
        throw contract_violation("enumerate: window must satisfy lo < hi <= N");
    RepTable table;
    table.N = N;
    table.window = window;
    table.constraint = constraint;
    table.counts_enabled = opts.counts;

    const std::uint64_t bits = window.length();
    const std::uint64_t bytes = (bits + 7) / 8;
    if (bytes + (64ull << 20) > opts.memory_budget)
        throw resource_error("enumerate: bit vector exceeds memory budget of " +
                             std::to_string(opts.memory_budget) + " bytes");
    table.marks.assign(bytes, 0);

    if (constraint == RepConstraint::Dyadic) {
        Params par = Params::from_N(N, opts.delta0);
        table.dyadic_U = par.U;
        auto poolU = primes_in_dyadic(par.U);
        auto poolV = primes_in_dyadic(par.V);
        auto a = detail::ordered_fold_sums(poolU, 4, window.hi);
        auto b = detail::ordered_fold_sums(poolV, 4, window.hi);
        for (const auto& [sa, ca] : a) {
            for (const auto& [sb, cb] : b) {
                std::uint64_t l = sa + sb;
                if (l > window.hi) break;
                if (l <= window.lo) continue;
                table.set_mark(l);
                if (opts.counts) table.add_count(l, ca * cb);
            }
        }
        return table;
    }

    // Unconstrained pool: all primes with p^4 <= hi.
    std::vector<std::uint64_t> pool;
    for (std::uint64_t p : sieve_primes(
             std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::pow(
                                            static_cast<double>(window.hi), 0.25) + 1)))
             .primes) {
        if (p * p * p * p <= window.hi) pool.push_back(p);
    }

    std::vector<std::pair<std::uint64_t, std::uint32_t>> halves;
    detail::four_fold_sums(pool, window.hi, 0, halves);
    std::sort(halves.begin(), halves.end());

    if (opts.counts) {
        // Unordered multiset counts: split each sorted 8-multiset at the
        // middle, so the left half's max prime <= right half's min prime.
        for (std::size_t s = 0; s < pool.size(); ++s) {
            std::vector<std::pair<std::uint64_t, std::uint32_t>> right;
            detail::four_fold_sums(pool, window.hi, s, right);
            // right halves drawn from pool[s..] have min index >= s; with
            // the left half's max index fixed at s, every sorted 8-multiset
            // splits exactly once at the middle.
            std::map<std::uint64_t, std::uint64_t> right_sums;
            for (auto& [sum, mx] : right) {
                (void)mx;
                right_sums[sum] += 1;
            }
            for (const auto& [sl, mx] : halves) {
                if (mx != s) continue;
                for (const auto& [sr, cr] : right_sums) {
                    if (cr == 0) continue;
                    std::uint64_t l = sl + sr;
                    if (l > window.hi) break;
                    if (l <= window.lo) continue;
                    table.add_count(l, cr);
                }
            }
        }
    }

    // Marks: dedup'd half-sum values; any pair of halves is a valid split.
    std::vector<std::uint64_t> vals;
    vals.reserve(halves.size());
    for (auto& [s, mx] : halves) vals.push_back(s);
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    const std::uint64_t seg_bits = std::min<std::uint64_t>(bits, kMarkSegmentBits);
    const std::uint64_t nseg = (bits + seg_bits - 1) / seg_bits;
    parallel_for(nseg, opts.threads, [&](std::size_t si) {
        const std::uint64_t seg_lo = window.lo + si * seg_bits;            // exclusive
        const std::uint64_t seg_hi = std::min(window.hi, seg_lo + seg_bits);  // inclusive
        for (std::uint64_t v1 : vals) {
            if (2 * v1 > seg_hi) break;
            const std::uint64_t need_lo = seg_lo >= v1 ? seg_lo - v1 + 1 : 0;
            auto it = std::lower_bound(vals.begin(), vals.end(), std::max(v1, need_lo));
            for (; it != vals.end(); ++it) {
                const std::uint64_t l = v1 + *it;
                if (l > seg_hi) break;
                table.set_mark(l);
            }
        }
    });

    if (opts.counts) {
        // marks and counts must agree exactly; counts within the window
        // came from the multiset split, marks from the pair merge.
        for (const auto& [l, c] : table.counts)
            if (c > 0) table.set_mark(l);
    }
    return table;
}

struct MomentReport {
    BigInt sum_r = 0;
    BigInt sum_r2 = 0;
    std::uint64_t marked = 0;
    Rational cs_bound;  // (sum r)^2 / sum r^2
};

inline MomentReport moments(const RepTable& table) {
    if (!table.counts_enabled) throw contract_violation("moments: counts are disabled");
    MomentReport m;
    for (const auto& [l, r] : table.counts) {
        if (r == 0) continue;
        m.sum_r += r;
        m.sum_r2 += static_cast<std::uint64_t>(r) * r;
        ++m.marked;
    }
    if (m.sum_r2 != 0) m.cs_bound = make_rational(m.sum_r * m.sum_r, m.sum_r2);
    return m;
}

struct DensityReport {
    std::uint64_t marked = 0;
    std::uint64_t window_length = 0;
    double fraction = 0.0;
    // The asymptotic density bound is NOT a desk-scale target.
    bool asymptotic_target_applicable = false;
};

inline DensityReport density_report(const RepTable& table) {
    DensityReport d;
    d.marked = table.marked_count();
    d.window_length = table.window.length();
    d.fraction = static_cast<double>(d.marked) / static_cast<double>(d.window_length);
    return d;
}

// Exact R(m) for m in (U, 2U]: solutions of
//   n = m^4 + p2^4 + p3^4 + p4^4 - p9^4 ... - p12^4  (primes ~ U)
//           + p5^4 ... + p8^4 - p13^4 ... - p16^4    (primes ~ V)
inline std::map<std::int64_t, BigInt> count_R_bruteforce(std::int64_t n, double U) {
    if (U > 4.0) throw mode_refused("count_R_bruteforce: U must be <= 4");
    if (U < 1.0) throw contract_violation("count_R_bruteforce: U must be >= 1");
    const double V = std::pow(U, 7.0 / 8.0);
    auto poolU = primes_in_dyadic(U);
    auto poolV = primes_in_dyadic(V);

    auto fold = [](const std::vector<std::uint64_t>& pool, unsigned k) {
        std::map<std::int64_t, BigInt> acc;
        acc[0] = 1;
        for (unsigned i = 0; i < k; ++i) {
            std::map<std::int64_t, BigInt> next;
            for (const auto& [s, c] : acc)
                for (std::uint64_t p : pool) {
                    auto p4 = static_cast<std::int64_t>(p * p * p * p);
                    next[s + p4] += c;
                }
            acc = std::move(next);
        }
        return acc;
    };

    // positive part: 3 primes ~ U and 4 primes ~ V; negative part: 4 + 4.
    auto u3 = fold(poolU, 3), v4 = fold(poolV, 4), u4 = fold(poolU, 4);
    std::map<std::int64_t, BigInt> plus, minus;
    for (const auto& [a, ca] : u3)
        for (const auto& [b, cb] : v4) plus[a + b] += ca * cb;
    for (const auto& [a, ca] : u4)
        for (const auto& [b, cb] : v4) minus[a + b] += ca * cb;

    std::map<std::int64_t, BigInt> result;
    for (std::int64_t m = static_cast<std::int64_t>(std::floor(U)) + 1;
         static_cast<double>(m) <= 2.0 * U; ++m) {
        if (static_cast<double>(m) <= U) continue;
        const std::int64_t m4 = m * m * m * m;
        BigInt total = 0;
        // n - m^4 = plus_sum - minus_sum
        for (const auto& [s, c] : plus) {
            auto it = minus.find(s - (n - m4));
            if (it != minus.end()) total += c * it->second;
        }
        result[m] = total;
    }
    return result;
}

struct Lemma1Count {
    BigInt S = 0;         // solutions of x1^4+y1^4+y2^4 = x2^4+y3^4+y4^4
    BigInt diagonal = 0;  // x1 = x2 and {y1,y2} = {y3,y4} as multisets
    std::uint64_t x_count = 0;
    std::uint64_t y_count = 0;
};

// Integer (not prime) ranges x ~ U, y ~ U^{7/8}, exact hash count.
inline Lemma1Count lemma1_count(double U) {
    const double V = std::pow(U, 7.0 / 8.0);
    std::vector<std::uint64_t> xs, ys;
    for (std::uint64_t x = 1; static_cast<double>(x) <= 2.0 * U; ++x)
        if (static_cast<double>(x) > U) xs.push_back(x);
    for (std::uint64_t y = 1; static_cast<double>(y) <= 2.0 * V; ++y)
        if (static_cast<double>(y) > V) ys.push_back(y);
    const double triples = static_cast<double>(xs.size()) * ys.size() * ys.size();
    if (triples > 1e9)
        throw resource_error("lemma1_count: triple count exceeds 1e9 hash budget");

    std::unordered_map<std::uint64_t, std::uint32_t> sums;
    sums.reserve(static_cast<std::size_t>(triples));
    for (std::uint64_t x : xs) {
        const std::uint64_t x4 = x * x * x * x;
        for (std::uint64_t y1 : ys) {
            const std::uint64_t y14 = y1 * y1 * y1 * y1;
            for (std::uint64_t y2 : ys) ++sums[x4 + y14 + y2 * y2 * y2 * y2];
        }
    }
    Lemma1Count out;
    out.x_count = xs.size();
    out.y_count = ys.size();
    for (const auto& [s, c] : sums) out.S += BigInt(c) * c;
    const std::uint64_t ny = ys.size();
    out.diagonal = BigInt(xs.size()) * ny * (2 * ny - 1);
    return out;
}

// WG4MARKS dump: 8-byte magic, 8-byte little-endian bit count, packed bits.
inline void write_marks_file(const std::string& path, const RepTable& table) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw resource_error("write_marks_file: cannot open " + path);
    f.write("WG4MARKS", 8);
    std::uint64_t bits = table.window.length();
    char len[8];
    for (int i = 0; i < 8; ++i) len[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    f.write(len, 8);
    f.write(reinterpret_cast<const char*>(table.marks.data()),
            static_cast<std::streamsize>(table.marks.size()));
}

inline std::vector<std::uint8_t> read_marks_file(const std::string& path,
                                                 std::uint64_t& bits_out) {
    std::ifstream f(path, std::ios::binary);
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, "WG4MARKS", 8) != 0)
        throw contract_violation("read_marks_file: bad magic");
    unsigned char len[8];
    f.read(reinterpret_cast<char*>(len), 8);
    bits_out = 0;
    for (int i = 0; i < 8; ++i) bits_out |= static_cast<std::uint64_t>(len[i]) << (8 * i);
    std::vector<std::uint8_t> bytes((bits_out + 7) / 8);
    f.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw contract_violation("read_marks_file: truncated file");
    return bytes;
}

}  // namespace wg4
