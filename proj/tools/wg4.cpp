// wg4: command-line front end for the fourth-power exponential-sum,
// congruence-count, singular-series, constant and representation modules.
//
// Exit codes: 0 success, 1 usage error, 2 an asserted claim failed
// (the disagreement is written out), 3 resource or precision failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wg4/claims.hpp"
#include "wg4/congruence.hpp"
#include "wg4/constants.hpp"
#include "wg4/csv.hpp"
#include "wg4/exp_sums.hpp"
#include "wg4/manifest.hpp"
#include "wg4/representations.hpp"
#include "wg4/singular_series.hpp"

using nlohmann::json;

namespace {

json rational_json(const wg4::Rational& r) {
    return json{{"num", wg4::num_string(r)}, {"den", wg4::den_string(r)}};
}

struct Output {
    json body;
    int exit_code = 0;
    std::optional<std::string> csv;  // CSV payload, when the command makes one
};

void emit(const Output& out, const std::string& command,
          const std::map<std::string, std::string>& params, const std::string& manifest_path,
          const std::string& csv_path, bool include_claims) {
    if (out.csv) {
        if (csv_path.empty()) {
            std::cout << *out.csv;
        } else {
            wg4::write_file_atomic(csv_path, *out.csv);
        }
    }
    std::cout << out.body.dump(2) << "\n";
    if (!manifest_path.empty()) {
        wg4::RunManifest m;
        m.command = command;
        m.parameters = params;
        m.started = m.finished = wg4::RunManifest::now_iso8601();
        m.results_digest = wg4::sha256_hex(out.csv ? *out.csv : out.body.dump(2));
        if (include_claims) m.discrepancies = wg4::claim_registry();
        m.write(manifest_path);
    }
}

double fitted_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
    const std::size_t n = lx.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

wg4::RepWindow parse_window(const std::string& spec, std::uint64_t N) {
    if (spec == "full") return {0, N};
    if (spec == "upper") return {N / 9, N};
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw wg4::contract_violation("window must be full, upper, or lo:hi");
    return {std::stoull(spec.substr(0, colon)), std::stoull(spec.substr(colon + 1))};
}

std::string density_csv(const wg4::RepTable& t) {
    wg4::CsvWriter w({"N", "window_lo", "window_hi", "constraint", "marked", "sum_r", "sum_r2",
                      "cs_bound", "fraction"});
    auto d = wg4::density_report(t);
    std::string sr, sr2, cs;
    if (t.counts_enabled) {
        auto m = wg4::moments(t);
        sr = m.sum_r.get_str();
        sr2 = m.sum_r2.get_str();
        cs = wg4::rational_string(m.cs_bound);
    }
    w.write_row({std::to_string(t.N), std::to_string(t.window.lo), std::to_string(t.window.hi),
                 t.constraint == wg4::RepConstraint::Dyadic ? "dyadic" : "unconstrained",
                 std::to_string(d.marked), sr, sr2, cs, std::to_string(d.fraction)});
    return w.str();
}

// ---- sweep spec files: line-based key=value, '#' comments -------------

struct SweepSpec {
    std::string command;
    std::map<std::string, std::string> kv;
};

SweepSpec parse_sweep_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw wg4::resource_error("sweep: cannot open spec file " + path);
    SweepSpec s;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw wg4::contract_violation("sweep: missing '=' at line " + std::to_string(lineno));
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "command") s.command = val;
        else s.kv[key] = val;
    }
    if (s.command.empty()) throw wg4::contract_violation("sweep: spec file names no command");
    return s;
}

// "primes:17..1000" -> primes in [17,1000]; "8,16,32" -> list; "5..9" -> range.
std::vector<double> parse_range(const std::string& val) {
    std::vector<double> out;
    if (val.rfind("primes:", 0) == 0) {
        auto dots = val.find("..");
        if (dots == std::string::npos)
            throw wg4::contract_violation("sweep: primes range needs lo..hi");
        std::uint64_t lo = std::stoull(val.substr(7, dots - 7));
        std::uint64_t hi = std::stoull(val.substr(dots + 2));
        if (hi >= 2)
            for (std::uint64_t p : wg4::sieve_primes(hi).primes)
                if (p >= lo) out.push_back(static_cast<double>(p));
        return out;
    }
    auto dots = val.find("..");
    if (dots != std::string::npos && val.find(',') == std::string::npos) {
        for (std::int64_t v = std::stoll(val.substr(0, dots)),
                          hi = std::stoll(val.substr(dots + 2));
             v <= hi; ++v)
            out.push_back(static_cast<double>(v));
        return out;
    }
    std::stringstream ss(val);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

Output run_sweep(const SweepSpec& spec, unsigned threads, json& manifest_extra) {
    Output out;
    if (spec.command == "congruence") {
        std::vector<double> ps =
            spec.kv.count("p") ? parse_range(spec.kv.at("p")) : std::vector<double>{};
        std::int64_t n = spec.kv.count("n") ? std::stoll(spec.kv.at("n")) : 0;
        wg4::CsvWriter w({"p", "n", "K", "E", "bound", "verdict"});
        for (double pd : ps) {
            auto p = static_cast<std::uint64_t>(pd);
            if (p < 17) continue;
            wg4::BigInt K = wg4::count_K(n, p).count;
            auto [E, Estar] = wg4::error_terms(n, p);
            bool asserted = (p % 4 == 1);
            std::string verdict = E.satisfied ? "within" : (asserted ? "FAIL" : "exceeds-stated");
            if (asserted && !E.satisfied) out.exit_code = 2;
            w.write_row({std::to_string(p), std::to_string(n), K.get_str(), E.value.get_str(),
                         E.bound.get_str(), verdict});
        }
        out.csv = w.str();
        out.body = json{{"rows", ps.size()}};
    } else if (spec.command == "lemma1") {
        std::vector<double> us =
            spec.kv.count("U") ? parse_range(spec.kv.at("U")) : std::vector<double>{};
        wg4::CsvWriter w({"U", "S", "diagonal", "x_count", "y_count"});
        std::vector<double> lx, ly;
        for (double U : us) {
            auto c = wg4::lemma1_count(U);
            w.write_row({std::to_string(U), c.S.get_str(), c.diagonal.get_str(),
                         std::to_string(c.x_count), std::to_string(c.y_count)});
            lx.push_back(std::log(U));
            ly.push_back(std::log(c.S.get_d()));
        }
        out.csv = w.str();
        out.body = json{{"rows", us.size()}};
        if (us.size() >= 2) {
            double slope = fitted_slope(lx, ly);
            out.body["fitted_slope"] = slope;
            manifest_extra["fitted_slope"] = slope;
            manifest_extra["reference_exponent"] = 25.0 / 8.0;
        }
    } else if (spec.command == "expsum") {
        std::vector<double> qs =
            spec.kv.count("q") ? parse_range(spec.kv.at("q")) : std::vector<double>{};
        std::uint64_t d = spec.kv.count("d") ? std::stoull(spec.kv.at("d")) : 1;
        std::int64_t n = spec.kv.count("n") ? std::stoll(spec.kv.at("n")) : 0;
        wg4::CsvWriter w({"q", "d", "n", "T_num", "T_den", "abs"});
        std::vector<std::uint64_t> qlist;
        for (double qd : qs) qlist.push_back(static_cast<std::uint64_t>(qd));
        std::vector<wg4::Rational> vals(qlist.size());
        wg4::parallel_for(qlist.size(), threads, [&](std::size_t i) {
            vals[i] = wg4::t_coefficient_exact(d, n, qlist[i]);
        });
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < qlist.size(); ++i) {
            double a = std::abs(vals[i].get_d());
            w.write_row({std::to_string(qlist[i]), std::to_string(d), std::to_string(n),
                         wg4::num_string(vals[i]), wg4::den_string(vals[i]), std::to_string(a)});
            if (a > 0) {
                lx.push_back(std::log(static_cast<double>(qlist[i])));
                ly.push_back(std::log(a));
            }
        }
        out.csv = w.str();
        out.body = json{{"rows", qlist.size()}};
        if (lx.size() >= 2) {
            double slope = fitted_slope(lx, ly);
            out.body["fitted_slope"] = slope;
            manifest_extra["fitted_slope"] = slope;
        }
    } else {
        throw wg4::contract_violation("sweep: unknown command '" + spec.command + "'");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fourth-power prime representation toolkit"};
    app.require_subcommand(1);

    unsigned threads = 0;
    std::string manifest_path, csv_path;
    app.add_option("--threads", threads, "worker threads (0 = WG4_THREADS or auto)");
    app.add_option("--manifest", manifest_path, "write a JSON run manifest here");
    app.add_option("--csv", csv_path, "write CSV output here instead of stdout");

    // expsum
    auto* expsum = app.add_subcommand("expsum", "singular-series coefficient T_d(n,q)");
    std::uint64_t ex_d = 1, ex_q = 1, ex_threshold = wg4::kDefaultExactThreshold;
    std::int64_t ex_n = 0;
    bool ex_exact = false, ex_float = false, ex_json = false;
    expsum->add_option("--d", ex_d);
    expsum->add_option("--n", ex_n);
    expsum->add_option("--q", ex_q)->required();
    expsum->add_option("--threshold", ex_threshold, "exact-mode q ceiling");
    expsum->add_flag("--exact", ex_exact);
    expsum->add_flag("--float", ex_float);
    expsum->add_flag("--json", ex_json, "accepted for compatibility; output is always JSON");

    // series
    auto* series = app.add_subcommand("series", "truncated singular series");
    std::uint64_t se_d = 1, se_qmax = 100;
    std::int64_t se_n = 0;
    bool se_euler = false;
    series->add_option("--d", se_d);
    series->add_option("--n", se_n);
    series->add_option("--qmax", se_qmax);
    series->add_flag("--euler", se_euler, "Euler-product form (qmax bounds the primes)");

    // congruence
    auto* congruence = app.add_subcommand("congruence", "K/H counts and error terms");
    std::uint64_t co_p = 17;
    std::int64_t co_n = 0;
    unsigned co_i = 1;
    congruence->add_option("--p", co_p)->required();
    congruence->add_option("--n", co_n);
    congruence->add_option("--i", co_i, "H modulus exponent (1 or 2)");

    // constants
    auto* constants = app.add_subcommand("constants", "constant-chain computations");
    constants->require_subcommand(1);
    auto* chain = constants->add_subcommand("chain", "b and the density denominator from K");
    double ch_K = wg4::kStatedK;
    chain->add_option("--K", ch_K);
    auto* mertens = constants->add_subcommand("mertens", "exact Mertens-type constant");
    std::uint64_t me_floor = 17;
    std::string me_theta = "9/400";
    mertens->add_option("--floor", me_floor);
    mertens->add_option("--theta", me_theta, "rational, as num/den");
    auto* istarc = constants->add_subcommand("istar", "the I* quadrature");
    double is_tol = 1e-9;
    istarc->add_option("--tol", is_tol);
    auto* deltac = constants->add_subcommand("delta", "sum of delta_p with tail bound");
    std::uint64_t de_pmax = 1000000;
    unsigned de_exp = 14;
    deltac->add_option("--pmax", de_pmax);
    deltac->add_option("--exponent", de_exp);
    auto* s1wc = constants->add_subcommand("s1w", "series-times-sieve factor pipeline");
    std::uint64_t s1_sweep = 300;
    s1wc->add_option("--sweep-max", s1_sweep);

    // density
    auto* density = app.add_subcommand("density", "representable-integer enumeration");
    std::uint64_t de_limit = 1000;
    std::string de_window = "full", de_constraint = "unconstrained", de_marks;
    bool de_counts = false;
    density->add_option("--limit", de_limit)->required();
    density->add_option("--window", de_window, "full | upper | lo:hi");
    density->add_option("--constraint", de_constraint, "unconstrained | dyadic");
    density->add_flag("--counts", de_counts, "track r(l) counts");
    density->add_option("--marks-out", de_marks, "dump the mark bit vector (WG4MARKS)");

    // lemma1
    auto* lemma1 = app.add_subcommand("lemma1", "diagonal-equation solution count");
    double l1_U = 8;
    lemma1->add_option("--U", l1_U)->required();

    // repmoments
    auto* repmoments = app.add_subcommand("repmoments", "moment sums of r(l)");
    std::uint64_t rm_limit = 1000000;
    std::string rm_window = "upper", rm_constraint = "dyadic";
    repmoments->add_option("--limit", rm_limit)->required();
    repmoments->add_option("--window", rm_window);
    repmoments->add_option("--constraint", rm_constraint);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweep from a key=value spec file");
    std::string sw_spec;
    sweep->add_option("--spec", sw_spec)->required();

    // claims
    auto* claims = app.add_subcommand("claims", "measured-vs-stated discrepancy ledger");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? 0 : 1;
    }

    std::map<std::string, std::string> params;
    for (const CLI::Option* opt : app.get_subcommands()[0]->get_options())
        if (opt->count()) params[opt->get_name()] = opt->results().empty() ? "" : opt->results()[0];

    try {
        Output out;
        std::string command = app.get_subcommands()[0]->get_name();
        bool include_claims = false;
        json manifest_extra;

        if (*expsum) {
            if (ex_exact && ex_float)
                throw wg4::contract_violation("expsum: choose one of --exact / --float");
            auto mode = ex_float ? wg4::TMode::Float : wg4::TMode::Exact;
            auto t = wg4::t_coefficient(ex_d, ex_n, ex_q, mode, ex_threshold);
            out.body = json{{"d", ex_d}, {"n", ex_n}, {"q", ex_q}};
            if (t.mode == wg4::TMode::Exact) {
                out.body["mode"] = "exact";
                out.body["value"] = rational_json(t.exact);
            } else {
                out.body["mode"] = "float";
                out.body["value"] =
                    json{{"re", t.value.re}, {"im", t.value.im}, {"err", t.value.err}};
            }
        } else if (*series) {
            auto s = se_euler
                         ? wg4::singular_series_euler(se_d, se_n, se_qmax, 2048.0,
                                                      wg4::kDefaultExactThreshold,
                                                      wg4::thread_count(threads))
                         : wg4::singular_series_truncated(se_d, se_n, se_qmax, 2048.0,
                                                          wg4::kDefaultExactThreshold,
                                                          wg4::thread_count(threads));
            out.body = json{{"d", s.d},
                            {"n", s.n},
                            {"q_max", s.q_max},
                            {"form", se_euler ? "euler" : "truncated"},
                            {"partial", rational_json(s.partial)},
                            {"partial_approx", s.partial.get_d()},
                            {"tail_bound", s.tail_bound}};
        } else if (*congruence) {
            wg4::BigInt K = wg4::count_K(co_n, co_p).count;
            wg4::BigInt H = wg4::count_H(co_n, co_p, co_i).count;
            out.body = json{{"p", co_p}, {"n", co_n}, {"K", K.get_str()},
                            {"H", H.get_str()}, {"i", co_i}};
            if (co_i == 1) {
                auto [E, Estar] = wg4::error_terms(co_n, co_p);
                out.body["E"] = E.value.get_str();
                out.body["E_bound"] = E.bound.get_str();
                out.body["E_within_bound"] = E.satisfied;
                out.body["E_star"] = Estar.value.get_str();
                out.body["E_star_bound"] = Estar.bound.get_str();
                out.body["E_star_within_bound"] = Estar.satisfied;
                if (co_p % 4 == 1 && (!E.satisfied || !Estar.satisfied)) out.exit_code = 2;
                if (co_p >= 17) {
                    auto omega = wg4::omega_at_prime(co_n, co_p);
                    out.body["omega"] = rational_json(omega);
                }
            }
        } else if (*constants) {
            if (*chain) {
                auto c = wg4::constant_chain(ch_K);
                out.body = json{{"K", c.Kc},
                                {"s1w_const", c.s1w_const},
                                {"b", c.b},
                                {"beta_den", c.beta_den}};
            } else if (*mertens) {
                auto slash = me_theta.find('/');
                wg4::Rational theta =
                    slash == std::string::npos
                        ? wg4::Rational(std::stol(me_theta))
                        : wg4::make_rational(wg4::BigInt(me_theta.substr(0, slash)),
                                             wg4::BigInt(me_theta.substr(slash + 1)));
                auto c = wg4::mertens_constant(me_floor, theta);
                out.body = json{{"prime_floor", me_floor},
                                {"theta", me_theta},
                                {"value", rational_json(c)},
                                {"value_approx", c.get_d()}};
            } else if (*istarc) {
                auto r = wg4::istar(is_tol);
                out.body = json{{"value", r.value}, {"err", r.err},
                                {"evaluations", r.evaluations}};
            } else if (*deltac) {
                auto d = wg4::delta_p_sum(de_pmax, de_exp);
                out.body = json{{"p_max", de_pmax},
                                {"exponent", de_exp},
                                {"sum", d.sum},
                                {"tail_bound", d.tail_bound},
                                {"total", d.sum + d.tail_bound}};
            } else if (*s1wc) {
                auto r = wg4::s1w_pipeline(0, wg4::Rational(9, 400), s1_sweep, 1e-3,
                                           wg4::thread_count(threads));
                out.body = json{{"small_prime_block", r.small_prime_block},
                                {"middle_measured", r.middle_measured},
                                {"middle_stated", r.middle_stated},
                                {"mertens_c", r.mertens_c},
                                {"assembled", r.assembled},
                                {"stated", r.stated}};
            }
        } else if (*density) {
            wg4::EnumerateOptions opts;
            opts.counts = de_counts;
            opts.threads = threads;
            auto window = parse_window(de_window, de_limit);
            auto constraint = de_constraint == "dyadic" ? wg4::RepConstraint::Dyadic
                                                        : wg4::RepConstraint::Unconstrained;
            auto table = wg4::enumerate(de_limit, window, constraint, opts);
            auto d = wg4::density_report(table);
            out.csv = density_csv(table);
            out.body = json{{"marked", d.marked},
                            {"window_length", d.window_length},
                            {"fraction", d.fraction},
                            {"asymptotic_target_applicable", false},
                            {"note", "the 1/414.465 density is an asymptotic lower bound, "
                                     "not a finite-scale target"}};
            if (!de_marks.empty()) {
                wg4::write_marks_file(de_marks, table);
                out.body["marks_file"] = de_marks;
                out.body["marks_digest"] =
                    wg4::sha256_hex(table.marks.data(), table.marks.size());
            }
        } else if (*lemma1) {
            auto c = wg4::lemma1_count(l1_U);
            out.body = json{{"U", l1_U},
                            {"S", c.S.get_str()},
                            {"diagonal", c.diagonal.get_str()},
                            {"x_count", c.x_count},
                            {"y_count", c.y_count}};
        } else if (*repmoments) {
            wg4::EnumerateOptions opts;
            opts.counts = true;
            opts.threads = threads;
            auto window = parse_window(rm_window, rm_limit);
            auto constraint = rm_constraint == "dyadic" ? wg4::RepConstraint::Dyadic
                                                        : wg4::RepConstraint::Unconstrained;
            auto table = wg4::enumerate(rm_limit, window, constraint, opts);
            auto m = wg4::moments(table);
            out.csv = density_csv(table);
            out.body = json{{"marked", m.marked},
                            {"sum_r", m.sum_r.get_str()},
                            {"sum_r2", m.sum_r2.get_str()},
                            {"cs_bound", rational_json(m.cs_bound)},
                            {"counts_overflow", table.counts_overflow}};
        } else if (*sweep) {
            auto spec = parse_sweep_spec(sw_spec);
            command = "sweep:" + spec.command;
            out = run_sweep(spec, threads, manifest_extra);
        } else if (*claims) {
            include_claims = true;
            out.body = json::array();
            for (const auto& c : wg4::claim_registry())
                out.body.push_back({{"claim_id", c.claim_id},
                                    {"location", c.location},
                                    {"stated", c.stated},
                                    {"computed", c.computed},
                                    {"verdict", c.verdict}});
        }

        if (!manifest_extra.is_null()) out.body["manifest_extra"] = manifest_extra;
        emit(out, command, params, manifest_path, csv_path, include_claims || bool(*claims));
        return out.exit_code;
    } catch (const wg4::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const wg4::precision_exhausted& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
