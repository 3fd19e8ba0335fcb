#include "meridian/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "meridian/corridor.hpp"
#include "meridian/elliptic.hpp"
#include "meridian/fit.hpp"
#include "meridian/functionals.hpp"
#include "meridian/grid.hpp"
#include "meridian/io.hpp"
#include "meridian/iteration.hpp"
#include "meridian/parabolic.hpp"
#include "meridian/rng.hpp"

namespace meridian::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// environment may override --jobs; nothing else is read from the environment
int resolve_jobs(int flag_jobs) {
    int jobs = flag_jobs;
    if (const char* env = std::getenv("MERIDIAN_JOBS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) jobs = v;
        } catch (...) {
            // ignore malformed override
        }
    }
    if (jobs > 0) omp_set_num_threads(jobs);
    return jobs;
}

std::vector<double> logspace_desc(double hi, double lo, int points) {
    if (!(hi > lo && lo > 0.0) || points < 4) {
        throw std::invalid_argument(
            "series range needs max > min > 0 and at least 4 points");
    }
    std::vector<double> out(points);
    const double ratio = std::log(lo / hi) / (points - 1);
    for (int k = 0; k < points; ++k) out[k] = hi * std::exp(ratio * k);
    return out;
}

void write_series_csv(const fs::path& file, const ScalingSeries& s) {
    CsvWriter w(file, {"param", "value", "log_param", "log_value"});
    for (std::size_t k = 0; k < s.params.size(); ++k) {
        w.row(s.params[k], s.values[k], std::log(s.params[k]),
              std::log(s.values[k]));
    }
    // footer: fitted slope and the max log-residual of the fit
    w.row("slope", s.fit.slope, "max_abs_residual", s.fit.max_abs_residual);
}

void write_field_csv(const fs::path& file, const ScalarField& f,
                     const std::string& extra) {
    const MeridianGrid& g = *f.grid;
    std::ostringstream meta;
    meta << "nr=" << g.nr << " nz=" << g.nz << " hr=" << format_g17(g.hr)
         << " hz=" << format_g17(g.hz);
    if (!extra.empty()) meta << " " << extra;
    CsvWriter w(file, {"r", "z", "value"}, meta.str());
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.nz; ++j)
            w.row(g.r_centers[i], g.z_centers[j], f.at(i, j));
}

ScalarField read_field_csv(const fs::path& file,
                           std::shared_ptr<const MeridianGrid> grid) {
    std::ifstream in(file);
    if (!in) {
        throw std::invalid_argument("cannot open field file " + file.string());
    }
    ScalarField f = zero_field(std::move(grid));
    std::string line;
    std::size_t k = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { // first non-comment line is the header
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::invalid_argument("malformed field row: " + line);
        }
        if (k >= f.values.size()) {
            throw std::invalid_argument("field file has too many rows");
        }
        f.values[k++] = std::stod(line.substr(c2 + 1));
    }
    if (k != f.values.size()) {
        throw std::invalid_argument("field file row count mismatch");
    }
    return f;
}

json base_manifest(const std::string& sub, const fs::path& out, int jobs) {
    json m;
    m["subcommand"] = sub;
    m["out"] = out.string();
    m["jobs"] = jobs;
    m["rng"] = rng_algorithm;
    return m;
}

// ---- subcommand handlers ----

int run_exponents(const std::vector<double>& alphas, const fs::path& out,
                  int jobs) {
    const std::vector<CorridorParams> rows = exponent_table(alphas);
    json m = base_manifest("exponents", out, jobs);
    m["flags"]["alpha"] = alphas;
    write_manifest(out, m);
    CsvWriter w(out / "exponents.csv",
                {"alpha", "lambda_hardy", "gain_delta", "root_delta", "m_plus",
                 "beta_star", "a_weight", "n_star", "q_star", "p_star",
                 "theta_interp", "beta_dg", "source_exponent",
                 "annular_exponent", "in_corridor"});
    for (const CorridorParams& p : rows) {
        w.row(p.alpha, p.lambda_hardy, p.gain_delta, p.root_delta, p.m_plus,
              p.beta_star, p.a_weight, p.n_star, p.q_star, p.p_star,
              p.theta_interp, p.beta_dg, p.source_exponent, p.annular_exponent,
              p.in_corridor ? 1 : 0);
    }
    return 0;
}

int run_solve(int nr, int nz, double a, std::optional<double> alpha,
              const std::string& rhs_kind, const std::string& rhs_file,
              double tol, const fs::path& out, int jobs) {
    auto grid = make_grid(nr, nz);
    std::optional<ScalarField> pot;
    if (alpha) {
        const CorridorParams p = derive_corridor(*alpha);
        pot = sample_field(grid, [&](double r, double) {
            return p.lambda_hardy / (r * r);
        });
    }
    const WeightedOperator op =
        assemble_operator(grid, a, pot ? &*pot : nullptr);

    ScalarField rhs = zero_field(grid);
    if (rhs_kind == "manufactured") {
        rhs = sample_field(grid, [](double r, double z) {
            return 8.0 * (1.0 - z * z) + 2.0 * (1.0 - r * r);
        });
    } else if (rhs_kind == "file") {
        rhs = read_field_csv(rhs_file, grid);
    } else if (rhs_kind != "zero") {
        throw std::invalid_argument("solve: unknown rhs kind " + rhs_kind);
    }

    const auto [u, rep] = solve_dirichlet(op, rhs, tol);

    json m = base_manifest("solve", out, jobs);
    m["flags"] = {{"nr", nr},       {"nz", nz},
                  {"a", a},         {"rhs", rhs_kind},
                  {"tol", tol},     {"rhs_file", rhs_file},
                  {"alpha", alpha ? json(*alpha) : json(nullptr)}};
    write_manifest(out, m);
    write_field_csv(out / "solution.csv", u, "weight_power=" + format_g17(a));
    json rj;
    rj["iterations"] = rep.iterations;
    rj["relative_residual"] = rep.relative_residual;
    rj["energy_gap"] = rep.energy_gap;
    std::ofstream rf(out / "report.jsonl", std::ios::binary | std::ios::trunc);
    rf << rj.dump() << "\n";
    return 0;
}

int run_friedrichs(int nr, int nz, double a, double tol, const fs::path& out,
                   int jobs) {
    auto grid = make_grid(nr, nz);
    const WeightedOperator op = assemble_operator(grid, a);
    const auto [mode, rep] = friedrichs_mu1(op, tol);
    json m = base_manifest("friedrichs", out, jobs);
    m["flags"] = {{"nr", nr}, {"nz", nz}, {"a", a}, {"tol", tol}};
    write_manifest(out, m);
    write_field_csv(out / "mode.csv", mode, "weight_power=" + format_g17(a));
    json s;
    s["mu1"] = rep.mu1;
    s["iterations"] = rep.iterations;
    std::ofstream sf(out / "summary.jsonl", std::ios::binary | std::ios::trunc);
    sf << s.dump() << "\n";
    return 0;
}

int run_hardy(double alpha, double theta, int nr, int nz, double dt,
              int samples, std::uint64_t seed, const std::string& scheme,
              const fs::path& out, int jobs) {
    auto grid = make_grid(nr, nz);
    EvolutionConfig cfg;
    cfg.grid = grid;
    cfg.alpha = alpha;
    cfg.dt = dt;
    cfg.scheme =
        scheme == "cn" ? Scheme::crank_nicolson : Scheme::implicit_euler;
    cfg.initial = zero_field(grid);
    const std::vector<ScalarField> fields =
        contraction_samples(grid, samples, seed);
    const ContractionReport rep = estimate_contraction(theta, fields, cfg);

    json m = base_manifest("hardy", out, jobs);
    m["flags"] = {{"alpha", alpha},     {"theta", theta}, {"nr", nr},
                  {"nz", nz},           {"dt", dt},       {"samples", samples},
                  {"scheme", scheme}};
    m["seed"] = seed;
    m["skipped_samples"] = rep.skipped;
    write_manifest(out, m);

    CsvWriter w(out / "contraction.csv",
                {"sample_id", "E_full", "E_theta", "ratio"});
    for (std::size_t k = 0; k < rep.used.size(); ++k) {
        w.row(rep.used[k], rep.full_energy[k], rep.sub_energy[k], rep.ratios[k]);
    }
    if (!rep.no_data) {
        w.row("max", "", "", format_g17(rep.kappa_estimate));
    }
    return 0;
}

int run_capacity(double eps_max, double eps_min, int points,
                 const fs::path& out, int jobs) {
    const std::vector<double> eps = logspace_desc(eps_max, eps_min, points);
    std::vector<double> mass(eps.size()), grad(eps.size()), bound(eps.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(eps.size());
         ++k) {
        const CutoffEnergies e = cutoff_energies(eps[k]);
        mass[k] = e.mass_deficit;
        grad[k] = e.grad_energy;
        bound[k] = e.grad_energy + e.mass_deficit;
    }
    json m = base_manifest("capacity", out, jobs);
    m["flags"] = {{"eps_max", eps_max}, {"eps_min", eps_min}, {"points", points}};
    write_manifest(out, m);
    auto emit = [&](const char* name, const std::vector<double>& vals) {
        ScalingSeries s;
        s.params = eps;
        s.values = vals;
        s.fit = fit_loglog(s.params, s.values);
        write_series_csv(out / name, s);
    };
    emit("mass_deficit.csv", mass);
    emit("grad_energy.csv", grad);
    emit("capacity_bound.csv", bound);
    return 0;
}

int run_quartic(double alpha, double rho_max, double rho_min, int points,
                const fs::path& out, int jobs) {
    derive_corridor(alpha); // validates alpha before any work
    const std::vector<double> rho = logspace_desc(rho_max, rho_min, points);
    std::vector<QuarticProfile> prof(rho.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(rho.size());
         ++k) {
        prof[k] = quartic_profile(alpha, rho[k]);
    }
    json m = base_manifest("quartic", out, jobs);
    m["flags"] = {{"alpha", alpha},
                  {"rho_max", rho_max},
                  {"rho_min", rho_min},
                  {"points", points}};
    write_manifest(out, m);
    auto emit = [&](const char* name, auto member) {
        ScalingSeries s;
        s.params = rho;
        s.values.resize(prof.size());
        for (std::size_t k = 0; k < prof.size(); ++k)
            s.values[k] = prof[k].*member;
        s.fit = fit_loglog(s.params, s.values);
        write_series_csv(out / name, s);
    };
    emit("quartic.csv", &QuarticProfile::quartic);
    emit("dirichlet.csv", &QuarticProfile::dirichlet);
    emit("quotient_sq.csv", &QuarticProfile::quotient_sq);
    emit("quotient_ckn.csv", &QuarticProfile::quotient_ckn);
    return 0;
}

int run_sobolev(double alpha, int nr, int nz, int nt, double radius,
                const std::vector<double>& scales, const fs::path& out,
                int jobs) {
    const CorridorParams p = derive_corridor(alpha);
    auto grid = make_grid(nr, nz);
    json m = base_manifest("sobolev", out, jobs);
    m["flags"] = {{"alpha", alpha}, {"nr", nr},         {"nz", nz},
                  {"nt", nt},       {"radius", radius}, {"scales", scales}};
    write_manifest(out, m);

    // compactly supported parabolic bump on Q_radius, rescaled per point
    auto bump = [radius](double r, double z, double t) {
        auto cap = [](double x) {
            const double d = 1.0 - x * x;
            return d > 0.0 ? d * d : 0.0;
        };
        const double tt = 1.0 + t / (radius * radius);
        const double tf = tt > 0.0 ? tt * tt : 0.0;
        return cap(r / radius) * cap(z / radius) * tf;
    };
    CsvWriter w(out / "sobolev.csv", {"scale", "ratio"});
    for (double s : scales) {
        if (!(s > 0.0 && s <= 1.0)) {
            throw std::domain_error("sobolev: scales must lie in (0,1]");
        }
        SpaceTimeField psi;
        psi.grid = grid;
        psi.dt = 1.0 / nt;
        psi.snapshots.reserve(nt + 1);
        for (int n = 0; n <= nt; ++n) {
            const double t = -1.0 + psi.dt * n;
            psi.snapshots.push_back(sample_field(grid, [&](double r, double z) {
                return bump(r / s, z / s, t / (s * s));
            }));
        }
        const std::optional<double> ratio = sobolev_ratio(psi, p, radius);
        w.row(s, ratio ? format_g17(*ratio) : "nan");
    }
    return 0;
}

int run_multiplier(int nr, int nz, int samples, std::uint64_t seed, double tol,
                   const fs::path& out, int jobs) {
    auto grid = make_grid(nr, nz);
    const std::vector<ScalarField> fields =
        contraction_samples(grid, samples, seed);
    json m = base_manifest("multiplier", out, jobs);
    m["flags"] = {{"nr", nr}, {"nz", nz}, {"samples", samples}, {"tol", tol}};
    m["seed"] = seed;
    write_manifest(out, m);
    CsvWriter w(out / "multiplier.csv", {"sample_id", "ratio"});
    double best = 0.0;
    bool any = false;
    for (int k = 0; k < samples; ++k) {
        const std::optional<double> ratio = multiplier_ratio(fields[k], tol);
        if (!ratio) continue;
        w.row(k, *ratio);
        best = std::max(best, *ratio);
        any = true;
    }
    if (any) w.row("max", format_g17(best));
    return 0;
}

int run_morrey(double kappa, double c_src, double gain_delta,
               std::optional<double> alpha, double theta, double r0, double e0,
               int max_steps, bool threshold, double threshold_tol,
               const std::vector<double>& r0_ladder, const fs::path& out,
               int jobs) {
    MorreyConfig cfg;
    cfg.kappa = kappa;
    cfg.c_src = c_src;
    cfg.gain_delta = alpha ? derive_corridor(*alpha).gain_delta : gain_delta;
    cfg.theta = theta;
    cfg.r0 = r0;
    cfg.e0 = e0;
    cfg.max_steps = max_steps;

    json m = base_manifest("morrey", out, jobs);
    m["flags"] = {{"kappa", kappa},
                  {"c_src", c_src},
                  {"gain_delta", cfg.gain_delta},
                  {"alpha", alpha ? json(*alpha) : json(nullptr)},
                  {"theta", theta},
                  {"r0", r0},
                  {"e0", e0},
                  {"max_steps", max_steps},
                  {"threshold", threshold},
                  {"threshold_tol", threshold_tol},
                  {"r0_ladder", r0_ladder}};
    write_manifest(out, m);

    const MorreyTrace tr = morrey_run(cfg);
    CsvWriter w(out / "trace.csv", {"step", "value"});
    for (std::size_t n = 0; n < tr.values.size(); ++n)
        w.row(static_cast<long long>(n), tr.values[n]);
    json s;
    s["verdict"] = to_string(tr.verdict);
    s["steps"] = tr.values.size() - 1;
    s["final"] = tr.values.back();
    if (threshold) {
        s["threshold"] = morrey_threshold(cfg, threshold_tol);
        s["guaranteed_floor"] =
            (1.0 - kappa) / (2.0 * c_src * std::pow(r0, cfg.gain_delta));
    }
    std::ofstream sf(out / "summary.jsonl", std::ios::binary | std::ios::trunc);
    sf << s.dump() << "\n";

    if (!r0_ladder.empty()) {
        ScalingSeries lad;
        lad.params = r0_ladder;
        lad.values.resize(lad.params.size());
        for (std::size_t k = 0; k < lad.params.size(); ++k) {
            MorreyConfig c = cfg;
            c.r0 = lad.params[k];
            lad.values[k] = morrey_threshold(c, threshold_tol);
        }
        lad.fit = fit_loglog(lad.params, lad.values);
        write_series_csv(out / "threshold_ladder.csv", lad);
    }
    return 0;
}

int run_degiorgi(std::optional<double> alpha, double beta,
                 std::optional<double> lambda1, std::optional<double> lambda2,
                 double c_big, double K, double R, double phi_r, double y0,
                 int max_steps, bool phase, double y0_min, double y0_max,
                 int y0_points, const fs::path& out, int jobs) {
    DeGiorgiConfig cfg;
    cfg.beta_dg = alpha ? derive_corridor(*alpha).beta_dg : beta;
    cfg.lambda1 = lambda1 ? *lambda1 : 2.0 * (1.0 + cfg.beta_dg);
    cfg.lambda2 = lambda2 ? *lambda2 : 2.0 * (1.0 + cfg.beta_dg);
    cfg.c_big = c_big;
    cfg.K = K;
    cfg.R = R;
    cfg.phi_r = phi_r;
    cfg.y0 = y0;
    cfg.max_steps = max_steps;

    json m = base_manifest("degiorgi", out, jobs);
    m["flags"] = {{"alpha", alpha ? json(*alpha) : json(nullptr)},
                  {"beta_dg", cfg.beta_dg},
                  {"lambda1", cfg.lambda1},
                  {"lambda2", cfg.lambda2},
                  {"c_big", c_big},
                  {"K", K},
                  {"R", R},
                  {"phi_r", phi_r},
                  {"y0", y0},
                  {"max_steps", max_steps},
                  {"phase", phase},
                  {"y0_min", y0_min},
                  {"y0_max", y0_max},
                  {"y0_points", y0_points}};
    write_manifest(out, m);

    const DeGiorgiTrace tr = degiorgi_run(cfg);
    CsvWriter w(out / "trace.csv", {"step", "value"});
    for (std::size_t n = 0; n < tr.values.size(); ++n)
        w.row(static_cast<long long>(n), tr.values[n]);
    json s;
    s["verdict"] = to_string(tr.verdict);
    s["steps"] = tr.values.size() - 1;
    s["final"] = tr.values.back();
    std::ofstream sf(out / "summary.jsonl", std::ios::binary | std::ios::trunc);
    sf << s.dump() << "\n";

    if (phase) {
        const std::vector<double> y0s = [&] {
            std::vector<double> asc =
                logspace_desc(y0_max, y0_min, y0_points);
            std::reverse(asc.begin(), asc.end());
            return asc;
        }();
        const std::vector<double> ks = {0.5, 1.0, 2.0, 4.0};
        const std::vector<double> phis = {0.0, 1e-6, 1e-2};
        CsvWriter pw(out / "phase.csv",
                     {"y0", "k", "phi_r", "r", "beta_dg", "verdict"});
        for (double kk : ks) {
            for (double pp : phis) {
                for (double yy : y0s) {
                    DeGiorgiConfig c = cfg;
                    c.K = kk;
                    c.phi_r = pp;
                    c.y0 = yy;
                    pw.row(yy, kk, pp, R, cfg.beta_dg,
                           to_string(degiorgi_run(c).verdict));
                }
            }
        }
    }
    return 0;
}

} // namespace

// Fills subcommand options from a flat key=value file.  Options already given
// on the command line keep their values.  Unknown keys are rejected.
void apply_config_file(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in.good()) {
        throw std::invalid_argument("config: cannot open " + path);
    }
    auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " +
                                        std::to_string(lineno) +
                                        ": expected key=value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw std::invalid_argument("config: line " +
                                        std::to_string(lineno) +
                                        ": inadmissible key");
        }
        CLI::Option* op = sub->get_option_no_throw("--" + key);
        if (op == nullptr) {
            throw std::invalid_argument("config: unknown key \"" + key +
                                        "\" for " + sub->get_name());
        }
        if (op->count() > 0) continue; // command line wins
        std::istringstream vs(val);
        std::string token;
        while (vs >> token) op->add_result(token);
        op->run_callback();
    }
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"meridian: numerical laboratory for the weighted "
                 "five-dimensional axis problem"};
    app.require_subcommand(1);

    struct Common {
        std::string out;
        int jobs = 0;
        std::string config;
    };
    std::vector<std::pair<CLI::App*, Common*>> commons;
    auto add_common = [&commons](CLI::App* sub, Common& c,
                                 const char* def_out) {
        c.out = std::string("out/") + def_out;
        sub->add_option("--out", c.out, "output directory");
        sub->add_option("--jobs", c.jobs,
                        "worker threads (0 = library default); the "
                        "MERIDIAN_JOBS environment variable overrides");
        sub->add_option("--config", c.config,
                        "flat key=value config file; command-line flags win");
        commons.emplace_back(sub, &c);
    };

    // exponents
    auto* sc_exp = app.add_subcommand("exponents", "exponent table for alphas");
    std::vector<double> exp_alphas;
    Common exp_c;
    auto* exp_alpha_opt =
        sc_exp->add_option("--alpha", exp_alphas, "corridor parameter(s) (required)")
            ->expected(-1);
    add_common(sc_exp, exp_c, "exponents");

    // solve
    auto* sc_solve = app.add_subcommand("solve", "weighted Dirichlet solve");
    int so_nr = 64, so_nz = 64;
    double so_a = 3.0, so_tol = 1e-10;
    double so_alpha = -1.0;
    std::string so_rhs = "manufactured", so_rhs_file;
    Common so_c;
    sc_solve->add_option("--nr", so_nr, "radial cells");
    sc_solve->add_option("--nz", so_nz, "axial cells");
    sc_solve->add_option("--a", so_a, "radial weight power");
    auto* so_alpha_opt = sc_solve->add_option(
        "--alpha", so_alpha, "adds the Hardy potential (1-alpha^2)/r^2");
    sc_solve->add_option("--rhs", so_rhs, "manufactured|zero|file");
    sc_solve->add_option("--rhs-file", so_rhs_file, "field CSV when --rhs file");
    sc_solve->add_option("--tol", so_tol, "relative residual tolerance");
    add_common(sc_solve, so_c, "solve");

    // friedrichs
    auto* sc_fr = app.add_subcommand("friedrichs", "smallest weighted eigenvalue");
    int fr_nr = 64, fr_nz = 64;
    double fr_a = 3.0, fr_tol = 1e-8;
    Common fr_c;
    sc_fr->add_option("--nr", fr_nr, "radial cells");
    sc_fr->add_option("--nz", fr_nz, "axial cells");
    sc_fr->add_option("--a", fr_a, "radial weight power");
    sc_fr->add_option("--tol", fr_tol, "eigenvalue stagnation tolerance");
    add_common(sc_fr, fr_c, "friedrichs");

    // hardy
    auto* sc_h = app.add_subcommand("hardy", "contraction measurement");
    double h_alpha = 0.8, h_theta = 0.5, h_dt = 0.004;
    int h_nr = 64, h_nz = 64, h_samples = 8;
    std::uint64_t h_seed = 1;
    std::string h_scheme = "ie";
    Common h_c;
    sc_h->add_option("--alpha", h_alpha, "corridor parameter");
    sc_h->add_option("--theta", h_theta, "subcylinder ratio");
    sc_h->add_option("--nr", h_nr, "radial cells");
    sc_h->add_option("--nz", h_nz, "axial cells");
    sc_h->add_option("--dt", h_dt, "time step");
    sc_h->add_option("--samples", h_samples, "sample count");
    sc_h->add_option("--seed", h_seed, "rng seed");
    sc_h->add_option("--scheme", h_scheme, "ie|cn");
    add_common(sc_h, h_c, "hardy");

    // capacity
    auto* sc_cap = app.add_subcommand("capacity", "axis cutoff scaling");
    double cap_max = 0.0625, cap_min = 0.0009765625;
    int cap_pts = 7;
    Common cap_c;
    sc_cap->add_option("--eps-max", cap_max, "largest epsilon");
    sc_cap->add_option("--eps-min", cap_min, "smallest epsilon");
    sc_cap->add_option("--points", cap_pts, "series points");
    add_common(sc_cap, cap_c, "capacity");

    // quartic
    auto* sc_q = app.add_subcommand("quartic", "counterexample scaling");
    double q_alpha = 0.0, q_max = 0.125, q_min = 0.001953125;
    int q_pts = 7;
    Common q_c;
    auto* q_alpha_opt =
        sc_q->add_option("--alpha", q_alpha, "exponent parameter (required)");
    sc_q->add_option("--rho-max", q_max, "largest rho");
    sc_q->add_option("--rho-min", q_min, "smallest rho");
    sc_q->add_option("--points", q_pts, "series points");
    add_common(sc_q, q_c, "quartic");

    // sobolev
    auto* sc_sob = app.add_subcommand("sobolev", "parabolic Sobolev ratios");
    double sob_alpha = 0.8, sob_radius = 1.0;
    int sob_nr = 96, sob_nz = 96, sob_nt = 48;
    std::vector<double> sob_scales = {1.0, 0.5, 0.25};
    Common sob_c;
    sc_sob->add_option("--alpha", sob_alpha, "corridor parameter");
    sc_sob->add_option("--nr", sob_nr, "radial cells");
    sc_sob->add_option("--nz", sob_nz, "axial cells");
    sc_sob->add_option("--nt", sob_nt, "time steps");
    sc_sob->add_option("--radius", sob_radius, "subcylinder radius");
    sc_sob->add_option("--scales", sob_scales, "parabolic rescale factors")
        ->expected(-1);
    add_common(sc_sob, sob_c, "sobolev");

    // multiplier
    auto* sc_mul = app.add_subcommand("multiplier", "potential L10/L2 ratios");
    int mul_nr = 64, mul_nz = 64, mul_samples = 20;
    std::uint64_t mul_seed = 1;
    double mul_tol = 1e-10;
    Common mul_c;
    sc_mul->add_option("--nr", mul_nr, "radial cells");
    sc_mul->add_option("--nz", mul_nz, "axial cells");
    sc_mul->add_option("--samples", mul_samples, "sample count");
    sc_mul->add_option("--seed", mul_seed, "rng seed");
    sc_mul->add_option("--tol", mul_tol, "solver tolerance");
    add_common(sc_mul, mul_c, "multiplier");

    // morrey
    auto* sc_mor = app.add_subcommand("morrey", "scale recursion");
    double mor_kappa = 0.5, mor_c = 1.0, mor_gain = 0.2, mor_theta = 0.5,
           mor_r0 = 1.0, mor_e0 = 0.2, mor_ttol = 1e-4;
    double mor_alpha = -1.0;
    int mor_steps = 100000;
    bool mor_thresh = false;
    std::vector<double> mor_ladder;
    Common mor_c_;
    sc_mor->add_option("--kappa", mor_kappa, "linear factor");
    sc_mor->add_option("--c-src", mor_c, "source coefficient");
    auto* mor_gain_opt =
        sc_mor->add_option("--gain-delta", mor_gain, "scale gain exponent");
    auto* mor_alpha_opt = sc_mor->add_option(
        "--alpha", mor_alpha, "derive gain_delta = 4 alpha - 3");
    mor_alpha_opt->excludes(mor_gain_opt);
    sc_mor->add_option("--theta", mor_theta, "scale ratio");
    sc_mor->add_option("--r0", mor_r0, "starting scale");
    sc_mor->add_option("--e0", mor_e0, "starting energy");
    sc_mor->add_option("--max-steps", mor_steps, "iteration budget");
    sc_mor->add_flag("--threshold", mor_thresh, "bisect the critical e0");
    sc_mor->add_option("--threshold-tol", mor_ttol, "bisection width");
    sc_mor->add_option("--r0-ladder", mor_ladder,
                       "decreasing r0 values for a threshold series")
        ->expected(-1);
    add_common(sc_mor, mor_c_, "morrey");

    // degiorgi
    auto* sc_dg = app.add_subcommand("degiorgi", "level recursion");
    double dg_beta = 0.25, dg_cbig = 16.0, dg_k = 1.0, dg_r = 1.0,
           dg_phi = 0.0, dg_y0 = 1e-9;
    double dg_alpha = -1.0, dg_l1 = 0.0, dg_l2 = 0.0;
    // the sweep floor must undercut the decay threshold (~K^2 2^{-56} for the
    // default rates) so both phases show up in the diagram
    double dg_y0min = 1e-20, dg_y0max = 100.0;
    int dg_steps = 2000, dg_y0pts = 15;
    bool dg_phase = false;
    Common dg_c;
    auto* dg_beta_opt = sc_dg->add_option("--beta", dg_beta, "gain exponent");
    auto* dg_alpha_opt =
        sc_dg->add_option("--alpha", dg_alpha, "derive beta = 2/(N*+2)");
    dg_alpha_opt->excludes(dg_beta_opt);
    auto* dg_l1_opt = sc_dg->add_option("--lambda1", dg_l1, "dyadic rate 1");
    auto* dg_l2_opt = sc_dg->add_option("--lambda2", dg_l2, "dyadic rate 2");
    sc_dg->add_option("--c-big", dg_cbig, "aggregate constant");
    sc_dg->add_option("--k", dg_k, "level scale");
    sc_dg->add_option("--r", dg_r, "ball radius");
    sc_dg->add_option("--phi", dg_phi, "tail mass");
    sc_dg->add_option("--y0", dg_y0, "starting level energy");
    sc_dg->add_option("--max-steps", dg_steps, "iteration budget");
    sc_dg->add_flag("--phase", dg_phase, "emit the verdict sweep CSV");
    sc_dg->add_option("--y0-min", dg_y0min, "phase sweep smallest y0");
    sc_dg->add_option("--y0-max", dg_y0max, "phase sweep largest y0");
    sc_dg->add_option("--y0-points", dg_y0pts, "phase sweep points");
    add_common(sc_dg, dg_c, "degiorgi");

    // CLI11 wants a mutable argv; parse from a reversed copy
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        for (auto& [scmd, com] : commons) {
            if (scmd->parsed()) apply_config_file(scmd, com->config);
        }
        // required options may be satisfied from the config file, so the
        // check has to run after the merge, not at parse time
        if (sc_exp->parsed() && exp_alpha_opt->count() == 0)
            throw CLI::RequiredError(exp_alpha_opt->get_name());
        if (sc_q->parsed() && q_alpha_opt->count() == 0)
            throw CLI::RequiredError(q_alpha_opt->get_name());
        if (sc_exp->parsed()) {
            return run_exponents(exp_alphas, exp_c.out,
                                 resolve_jobs(exp_c.jobs));
        }
        if (sc_solve->parsed()) {
            std::optional<double> al;
            if (so_alpha_opt->count()) al = so_alpha;
            return run_solve(so_nr, so_nz, so_a, al, so_rhs, so_rhs_file,
                             so_tol, so_c.out, resolve_jobs(so_c.jobs));
        }
        if (sc_fr->parsed()) {
            return run_friedrichs(fr_nr, fr_nz, fr_a, fr_tol, fr_c.out,
                                  resolve_jobs(fr_c.jobs));
        }
        if (sc_h->parsed()) {
            return run_hardy(h_alpha, h_theta, h_nr, h_nz, h_dt, h_samples,
                             h_seed, h_scheme, h_c.out, resolve_jobs(h_c.jobs));
        }
        if (sc_cap->parsed()) {
            return run_capacity(cap_max, cap_min, cap_pts, cap_c.out,
                                resolve_jobs(cap_c.jobs));
        }
        if (sc_q->parsed()) {
            return run_quartic(q_alpha, q_max, q_min, q_pts, q_c.out,
                               resolve_jobs(q_c.jobs));
        }
        if (sc_sob->parsed()) {
            return run_sobolev(sob_alpha, sob_nr, sob_nz, sob_nt, sob_radius,
                               sob_scales, sob_c.out, resolve_jobs(sob_c.jobs));
        }
        if (sc_mul->parsed()) {
            return run_multiplier(mul_nr, mul_nz, mul_samples, mul_seed,
                                  mul_tol, mul_c.out, resolve_jobs(mul_c.jobs));
        }
        if (sc_mor->parsed()) {
            std::optional<double> al;
            if (mor_alpha_opt->count()) al = mor_alpha;
            return run_morrey(mor_kappa, mor_c, mor_gain, al, mor_theta,
                              mor_r0, mor_e0, mor_steps, mor_thresh, mor_ttol,
                              mor_ladder, mor_c_.out, resolve_jobs(mor_c_.jobs));
        }
        if (sc_dg->parsed()) {
            std::optional<double> al, l1, l2;
            if (dg_alpha_opt->count()) al = dg_alpha;
            if (dg_l1_opt->count()) l1 = dg_l1;
            if (dg_l2_opt->count()) l2 = dg_l2;
            return run_degiorgi(al, dg_beta, l1, l2, dg_cbig, dg_k, dg_r,
                                dg_phi, dg_y0, dg_steps, dg_phase, dg_y0min,
                                dg_y0max, dg_y0pts, dg_c.out,
                                resolve_jobs(dg_c.jobs));
        }
        return 2; // unreachable with require_subcommand(1)
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["subcommand"] = sub;
        err["message"] = e.what();
        if (dynamic_cast<const SolveError*>(&e)) {
            err["error"] = "solve";
        } else if (dynamic_cast<const std::domain_error*>(&e)) {
            err["error"] = "domain";
        } else if (dynamic_cast<const std::invalid_argument*>(&e)) {
            err["error"] = "config";
        } else {
            err["error"] = "runtime";
        }
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 0 ? argc - 1 : 0);
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return dispatch(args);
}

} // namespace meridian::cli
