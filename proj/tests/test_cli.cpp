#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "catch_amalgamated.hpp"

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("WG4_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

}  // namespace

TEST_CASE("expsum emits exact rationals as numerator/denominator strings") {
    auto r = run("expsum --d 1 --n 0 --q 7 --exact --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"]["num"] == "128");
    CHECK(j["value"]["den"] == "4782969");
    CHECK(j["mode"] == "exact");
}

TEST_CASE("density reports the frozen small-scale mark count") {
    auto r = run("density --limit 1000 --window full");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out.substr(r.out.find('{')));
    CHECK(j["marked"] == 14);
    CHECK(j["asymptotic_target_applicable"] == false);
}

TEST_CASE("constants chain") {
    auto r = run("constants chain --K 4888799.222");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["b"].get<double>() - 80947432211.141) / 80947432211.141 < 1e-4);
    double bd = j["beta_den"].get<double>();
    CHECK(bd >= 414.40);
    CHECK(bd <= 414.53);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run("expsum").exit_code == 1);         // missing --q
    CHECK(run("no-such-command").exit_code != 0);
    CHECK(run("density --limit 10 --window bogus").exit_code == 1);
    // exact mode refusal above the threshold
    CHECK(run("expsum --q 2003 --exact").exit_code == 1);
}

TEST_CASE("congruence on p = 1 mod 4 exits 0 with satisfied bounds") {
    auto r = run("congruence --p 17 --n 0");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["E_within_bound"] == true);
    CHECK(j["E_star_within_bound"] == true);
}

TEST_CASE("manifest is written with a digest and is reproducible") {
    const std::string m1 = "cli_manifest_1.json", m2 = "cli_manifest_2.json";
    auto r1 = run("--manifest " + m1 + " expsum --q 13");
    auto r2 = run("--manifest " + m2 + " expsum --q 13");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    std::ifstream f1(m1), f2(m2);
    auto j1 = nlohmann::json::parse(f1), j2 = nlohmann::json::parse(f2);
    CHECK(j1["results_digest"] == j2["results_digest"]);
    CHECK(j1["results_digest"].get<std::string>().size() == 64);
    CHECK(j1["command"] == "expsum");
    std::remove(m1.c_str());
    std::remove(m2.c_str());
}

TEST_CASE("sweep over a key=value spec file") {
    {
        std::ofstream f("sweep_lemma1.spec");
        f << "# diagonal-count sweep\ncommand=lemma1\nU=8,16\n";
    }
    auto r = run("--csv sweep_lemma1.csv sweep --spec sweep_lemma1.spec");
    REQUIRE(r.exit_code == 0);
    std::ifstream csv("sweep_lemma1.csv");
    std::string header, row1, row2;
    std::getline(csv, header);
    std::getline(csv, row1);
    std::getline(csv, row2);
    CHECK(header.rfind("U,S,diagonal", 0) == 0);
    CHECK(row1.find("768") != std::string::npos);
    CHECK(row2.find("16") == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("fitted_slope"));
    std::remove("sweep_lemma1.spec");
    std::remove("sweep_lemma1.csv");
}

TEST_CASE("empty sweep range gives a header-only CSV and exit 0") {
    {
        std::ofstream f("sweep_empty.spec");
        f << "command=lemma1\nU=\n";
    }
    auto r = run("--csv sweep_empty.csv sweep --spec sweep_empty.spec");
    CHECK(r.exit_code == 0);
    std::ifstream csv("sweep_empty.csv");
    std::string header, extra;
    std::getline(csv, header);
    CHECK(header.rfind("U,S", 0) == 0);
    bool has_extra = static_cast<bool>(std::getline(csv, extra)) && !extra.empty();
    CHECK_FALSE(has_extra);
    std::remove("sweep_empty.spec");
    std::remove("sweep_empty.csv");
}

TEST_CASE("malformed sweep spec exits 1") {
    {
        std::ofstream f("sweep_bad.spec");
        f << "command=lemma1\nthis line has no equals\n";
    }
    CHECK(run("sweep --spec sweep_bad.spec").exit_code == 1);
    CHECK(run("sweep --spec /nonexistent.spec").exit_code == 3);
    std::remove("sweep_bad.spec");
}

TEST_CASE("claims ledger lists the documented discrepancies") {
    auto r = run("claims");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    std::vector<std::string> ids;
    for (const auto& c : j) ids.push_back(c["claim_id"]);
    for (const char* want : {"lemma4-E-3mod4", "lemma8-statement-exponents", "K-vs-formula",
                             "z-exponent", "phi15-vs-phi16"})
        CHECK(std::find(ids.begin(), ids.end(), want) != ids.end());
    for (const auto& c : j) {
        CHECK_FALSE(c["stated"].get<std::string>().empty());
        CHECK_FALSE(c["computed"].get<std::string>().empty());
    }
}

TEST_CASE("repmoments emits the frozen dyadic moments") {
    auto r = run("--csv rm.csv repmoments --limit 1000000 --window full --constraint dyadic");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["marked"] == 75);
    CHECK(j["sum_r"] == "1296");
    CHECK(j["sum_r2"] == "44730");
    std::remove("rm.csv");
}

TEST_CASE("marks dump has the WG4MARKS magic") {
    auto r = run("density --limit 1000 --window full --marks-out marks_cli.bin");
    REQUIRE(r.exit_code == 0);
    std::ifstream f("marks_cli.bin", std::ios::binary);
    char magic[8];
    f.read(magic, 8);
    CHECK(std::string(magic, 8) == "WG4MARKS");
    std::remove("marks_cli.bin");
}
