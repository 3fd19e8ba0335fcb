#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "meridian/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

TEST_SUITE_BEGIN("cli");

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() /
               ("meridian-test-" + tag + "-" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const {
        return (path / name).string();
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

json first_json_line(const fs::path& p) {
    const auto ls = lines_of(slurp(p));
    REQUIRE_FALSE(ls.empty());
    return json::parse(ls.front());
}

int run(std::vector<std::string> args) {
    return meridian::cli::dispatch(args);
}

double footer_slope(const fs::path& series_csv) {
    const auto ls = lines_of(slurp(series_csv));
    REQUIRE(ls.size() >= 2);
    const auto cells = split_csv(ls.back());
    REQUIRE(cells.size() == 4);
    REQUIRE(cells[0] == "slope");
    return std::stod(cells[1]);
}

} // namespace

TEST_CASE("exit codes: usage errors are 2, runtime errors are 1") {
    TempDir td("codes");
    CHECK(run({}) == 2);
    CHECK(run({"no-such-command"}) == 2);
    CHECK(run({"--help"}) == 0);
    CHECK(run({"solve", "--help"}) == 0);
    CHECK(run({"quartic", "--out", td.sub("q")}) == 2); // missing --alpha
    CHECK(run({"exponents", "--alpha", "1.5", "--out", td.sub("e")}) == 1);
    CHECK(run({"degiorgi", "--alpha", "0.8", "--beta", "0.3", "--out",
               td.sub("d")}) == 2); // mutually exclusive
    CHECK(run({"morrey", "--alpha", "0.9", "--gain-delta", "0.5", "--out",
               td.sub("m")}) == 2);
}

TEST_CASE("exponents: table layout, values, determinism") {
    TempDir td("exp");
    const auto out = td.sub("a");
    REQUIRE(run({"exponents", "--alpha", "0.8", "0.5", "--out", out}) == 0);

    const auto text = slurp(fs::path(out) / "exponents.csv");
    const auto ls = lines_of(text);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] ==
          "alpha,lambda_hardy,gain_delta,root_delta,m_plus,beta_star,"
          "a_weight,n_star,q_star,p_star,theta_interp,beta_dg,"
          "source_exponent,annular_exponent,in_corridor");
    const auto row = split_csv(ls[1]);
    REQUIRE(row.size() == 15);
    // %.17g columns must round-trip the doubles exactly
    CHECK(std::stod(row[0]) == 0.8);
    CHECK(std::stod(row[3]) ==
          doctest::Approx(1.1661903789690601).epsilon(1e-15));
    CHECK(row[14] == "1");
    CHECK(split_csv(ls[2])[14] == "0"); // alpha = 0.5 sits outside

    const auto out2 = td.sub("b");
    REQUIRE(run({"exponents", "--alpha", "0.8", "0.5", "--out", out2}) == 0);
    CHECK(slurp(fs::path(out2) / "exponents.csv") == text);

    const json man = first_json_line(fs::path(out) / "manifest.jsonl");
    CHECK(man["subcommand"] == "exponents");
    CHECK(man["rng"] == "mt19937_64/53bit-boxmuller");
}

TEST_CASE("solve: thread-count invariance and field round trip") {
    TempDir td("solve");
    const auto out1 = td.sub("j1");
    const auto out4 = td.sub("j4");
    REQUIRE(run({"solve", "--nr", "24", "--nz", "24", "--jobs", "1", "--out",
                 out1}) == 0);
    REQUIRE(run({"solve", "--nr", "24", "--nz", "24", "--jobs", "4", "--out",
                 out4}) == 0);
    const auto sol1 = slurp(fs::path(out1) / "solution.csv");
    CHECK(sol1 == slurp(fs::path(out4) / "solution.csv"));

    const json rep = first_json_line(fs::path(out1) / "report.jsonl");
    CHECK(rep["iterations"].get<int>() >= 1);
    CHECK(rep["relative_residual"].get<double>() <= 1e-10);
    CHECK(rep["energy_gap"].get<double>() < 1e-6);

    // feed the solution back in as a right-hand side
    const auto out5 = td.sub("roundtrip");
    REQUIRE(run({"solve", "--nr", "24", "--nz", "24", "--rhs", "file",
                 "--rhs-file", (fs::path(out1) / "solution.csv").string(),
                 "--out", out5}) == 0);
    // a mismatched grid must fail loudly
    CHECK(run({"solve", "--nr", "16", "--nz", "16", "--rhs", "file",
               "--rhs-file", (fs::path(out1) / "solution.csv").string(),
               "--out", td.sub("bad")}) == 1);

    const auto outz = td.sub("zero");
    REQUIRE(run({"solve", "--nr", "8", "--nz", "8", "--rhs", "zero", "--out",
                 outz}) == 0);
    const json repz = first_json_line(fs::path(outz) / "report.jsonl");
    CHECK(repz["iterations"].get<int>() == 0);
}

TEST_CASE("friedrichs: summary and mode artifacts") {
    TempDir td("fr");
    const auto out = td.sub("f");
    REQUIRE(run({"friedrichs", "--nr", "16", "--nz", "16", "--out", out}) == 0);
    const json s = first_json_line(fs::path(out) / "summary.jsonl");
    CHECK(s["mu1"].get<double>() ==
          doctest::Approx(17.149371742396233).epsilon(0.012));
    CHECK(s["iterations"].get<int>() >= 2);
    const auto mode_lines = lines_of(slurp(fs::path(out) / "mode.csv"));
    CHECK(mode_lines.size() == 2 + 16 * 16); // comment, header, one per cell
    CHECK(mode_lines[1] == "r,z,value");
}

TEST_CASE("hardy: per-sample ratios plus a max row") {
    TempDir td("hardy");
    const auto out = td.sub("h");
    REQUIRE(run({"hardy", "--nr", "12", "--nz", "12", "--dt", "0.125",
                 "--samples", "2", "--seed", "3", "--out", out}) == 0);
    const auto ls = lines_of(slurp(fs::path(out) / "contraction.csv"));
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "sample_id,E_full,E_theta,ratio");
    double max_seen = 0.0;
    for (int k = 1; k <= 2; ++k) {
        const auto row = split_csv(ls[k]);
        REQUIRE(row.size() == 4);
        const double ratio = std::stod(row[3]);
        CHECK(ratio > 0.0);
        CHECK(ratio < 1.0);
        max_seen = std::max(max_seen, ratio);
    }
    const auto maxrow = split_csv(ls[3]);
    REQUIRE(maxrow.size() == 4);
    CHECK(maxrow[0] == "max");
    CHECK(std::stod(maxrow[3]) == doctest::Approx(max_seen).epsilon(1e-15));
}

TEST_CASE("capacity and quartic: slope footers carry the rates") {
    TempDir td("rates");
    const auto cap = td.sub("cap");
    REQUIRE(run({"capacity", "--out", cap}) == 0);
    CHECK(footer_slope(fs::path(cap) / "mass_deficit.csv") ==
          doctest::Approx(4.0).epsilon(1e-4));
    CHECK(footer_slope(fs::path(cap) / "grad_energy.csv") ==
          doctest::Approx(2.0).epsilon(1e-4));
    CHECK(footer_slope(fs::path(cap) / "capacity_bound.csv") ==
          doctest::Approx(2.0).epsilon(0.01));

    const auto qt = td.sub("qt");
    REQUIRE(run({"quartic", "--alpha", "0.8", "--out", qt}) == 0);
    CHECK(footer_slope(fs::path(qt) / "quartic.csv") ==
          doctest::Approx(3.2).epsilon(1e-3));
    CHECK(footer_slope(fs::path(qt) / "dirichlet.csv") ==
          doctest::Approx(2.0).epsilon(0.02));
    CHECK(footer_slope(fs::path(qt) / "quotient_sq.csv") ==
          doctest::Approx(-0.4).epsilon(0.1));
    CHECK(footer_slope(fs::path(qt) / "quotient_ckn.csv") ==
          doctest::Approx(-0.2).epsilon(0.15));
}

TEST_CASE("sobolev and multiplier emit finite positive ratios") {
    TempDir td("ratios");
    const auto sb = td.sub("sb");
    REQUIRE(run({"sobolev", "--nr", "16", "--nz", "16", "--nt", "8",
                 "--scales", "1.0", "0.5", "--out", sb}) == 0);
    const auto sls = lines_of(slurp(fs::path(sb) / "sobolev.csv"));
    REQUIRE(sls.size() == 3);
    CHECK(sls[0] == "scale,ratio");
    const double r1 = std::stod(split_csv(sls[1])[1]);
    const double r2 = std::stod(split_csv(sls[2])[1]);
    CHECK(r1 > 0.0);
    CHECK(r2 > 0.0);
    CHECK(std::abs(r2 - r1) / r1 < 0.5); // parabolic rescale near-invariance

    const auto ml = td.sub("ml");
    REQUIRE(run({"multiplier", "--nr", "12", "--nz", "12", "--samples", "2",
                 "--seed", "2", "--out", ml}) == 0);
    const auto mls = lines_of(slurp(fs::path(ml) / "multiplier.csv"));
    REQUIRE(mls.size() == 4);
    CHECK(split_csv(mls.back())[0] == "max");
    for (int k = 1; k <= 2; ++k) CHECK(std::stod(split_csv(mls[k])[1]) > 0.0);
}

TEST_CASE("morrey: verdicts, threshold artifacts, scale ladder") {
    TempDir td("mor");
    const auto out = td.sub("base");
    REQUIRE(run({"morrey", "--threshold", "--out", out}) == 0);
    const json s = first_json_line(fs::path(out) / "summary.jsonl");
    CHECK(s["verdict"] == "decayed"); // default e0 sits below the floor
    CHECK(s["guaranteed_floor"].get<double>() ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s["threshold"].get<double>() >= 0.25);

    const auto lad = td.sub("ladder");
    REQUIRE(run({"morrey", "--threshold", "--r0-ladder", "1.0", "0.5", "0.25",
                 "0.125", "--out", lad}) == 0);
    CHECK(footer_slope(fs::path(lad) / "threshold_ladder.csv") ==
          doctest::Approx(-0.2).epsilon(0.01));

    const auto tr = lines_of(slurp(fs::path(out) / "trace.csv"));
    CHECK(tr.size() >= 3);
    CHECK(tr[0] == "step,value");
}

TEST_CASE("morrey: config file is read and flags beat it") {
    TempDir td("cfg");
    const auto cfgfile = td.sub("run.cfg");
    {
        std::ofstream f(cfgfile);
        f << "e0=1000000\n";
    }
    const auto out1 = td.sub("from-config");
    REQUIRE(run({"morrey", "--config", cfgfile, "--out", out1}) == 0);
    CHECK(first_json_line(fs::path(out1) / "summary.jsonl")["verdict"] ==
          "diverged");

    const auto out2 = td.sub("flag-wins");
    REQUIRE(run({"morrey", "--config", cfgfile, "--e0", "0.1", "--out",
                 out2}) == 0);
    CHECK(first_json_line(fs::path(out2) / "summary.jsonl")["verdict"] ==
          "decayed");
}

TEST_CASE("config file can satisfy a required option") {
    TempDir td("cfgreq");
    const auto cfgfile = td.sub("q.cfg");
    {
        std::ofstream f(cfgfile);
        f << "alpha=0.85\nrho-max=0.25\n";
    }
    const auto out = td.sub("ok");
    REQUIRE(run({"quartic", "--config", cfgfile, "--out", out}) == 0);
    const auto man = first_json_line(fs::path(out) / "manifest.jsonl");
    CHECK(man["flags"]["alpha"] == doctest::Approx(0.85).epsilon(1e-15));

    // still a usage error when neither the command line nor the file has it
    const auto cfg2 = td.sub("empty.cfg");
    {
        std::ofstream f(cfg2);
        f << "points=5\n";
    }
    CHECK(run({"quartic", "--config", cfg2, "--out", td.sub("no")}) == 2);
}

TEST_CASE("degiorgi: verdicts and the phase sweep") {
    TempDir td("dg");
    const auto big = td.sub("big");
    REQUIRE(run({"degiorgi", "--y0", "1e-9", "--out", big}) == 0);
    CHECK(first_json_line(fs::path(big) / "summary.jsonl")["verdict"] ==
          "diverged");

    const auto tiny = td.sub("tiny");
    REQUIRE(run({"degiorgi", "--y0", "1e-20", "--out", tiny}) == 0);
    CHECK(first_json_line(fs::path(tiny) / "summary.jsonl")["verdict"] ==
          "decayed");

    const auto ph = td.sub("phase");
    REQUIRE(run({"degiorgi", "--phase", "--y0-points", "5", "--out", ph}) == 0);
    const auto pls = lines_of(slurp(fs::path(ph) / "phase.csv"));
    REQUIRE(pls.size() == 1 + 4 * 3 * 5);
    CHECK(pls[0] == "y0,k,phi_r,r,beta_dg,verdict");
    bool any_decayed = false, any_diverged = false;
    for (std::size_t k = 1; k < pls.size(); ++k) {
        const auto row = split_csv(pls[k]);
        REQUIRE(row.size() == 6);
        if (row[5] == "decayed") any_decayed = true;
        if (row[5] == "diverged") any_diverged = true;
    }
    CHECK(any_decayed);
    CHECK(any_diverged);

    const auto derived = td.sub("derived");
    REQUIRE(run({"degiorgi", "--alpha", "0.8", "--y0", "1e-20", "--out",
                 derived}) == 0);
    const json man = first_json_line(fs::path(derived) / "manifest.jsonl");
    CHECK(man["flags"]["beta_dg"].get<double>() ==
          doctest::Approx(0.27276270368730877).epsilon(1e-15));
    CHECK(man["flags"]["lambda1"].get<double>() ==
          doctest::Approx(2.0 * 1.27276270368730877).epsilon(1e-14));
}

TEST_CASE("environment variable overrides the jobs flag") {
    TempDir td("env");
    ::setenv("MERIDIAN_JOBS", "3", 1);
    const auto out = td.sub("e");
    const int code =
        run({"exponents", "--alpha", "0.8", "--jobs", "1", "--out", out});
    ::unsetenv("MERIDIAN_JOBS");
    REQUIRE(code == 0);
    const json man = first_json_line(fs::path(out) / "manifest.jsonl");
    CHECK(man["jobs"].get<int>() == 3);
}

TEST_SUITE_END();
