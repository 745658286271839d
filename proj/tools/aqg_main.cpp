// aqg: pseudo-spectral runs, inequality verification, parameter
// classification and plotting for the anisotropic quasi-geostrophic
// equation on a periodic box.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aqg/config.hpp"
#include "aqg/diagnostics.hpp"
#include "aqg/dynamics.hpp"
#include "aqg/errors.hpp"
#include "aqg/fft.hpp"
#include "aqg/inequality.hpp"
#include "aqg/norms.hpp"
#include "aqg/operators.hpp"
#include "aqg/plot.hpp"
#include "aqg/rng.hpp"
#include "aqg/run.hpp"
#include "aqg/snapshot.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace aqg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBlowup = 3;

fs::path output_root() {
    if (const char* env = std::getenv("AQG_OUTPUT_DIR")) return fs::path(env);
    return fs::current_path();
}

fs::path resolve_under_root(const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : output_root() / path;
}

json record_to_json(const DiagnosticsRecord& r) {
    json j;
    j["t"] = r.t;
    j["l2"] = r.l2;
    j["hs_inhom"] = r.hs_inhom;
    j["hs_hom"] = r.hs_hom;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["cum_d1"] = r.cum_d1;
    j["cum_d2"] = r.cum_d2;
    j["ledger"] = r.ledger;
    return j;
}

json domain_to_json(const GridSpec& g) {
    json j;
    j["type"] = "periodic-box";
    j["n1"] = g.n1;
    j["n2"] = g.n2;
    j["l1"] = g.l1;
    j["l2"] = g.l2;
    return j;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& config_path, const std::string& outdir_override) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << config_path << ":" << e.line() << ": " << e.what() << "\n";
        return kExitUsage;
    }
    if (!outdir_override.empty()) cfg.output_dir = outdir_override;

    const fs::path outdir = resolve_under_root(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << outdir << ": " << ec.message() << "\n";
        return kExitUsage;
    }

    {
        std::ofstream out(outdir / "config.resolved");
        out << serialize_config(cfg);
    }

    std::ofstream diag(outdir / "diagnostics.ndjson", std::ios::trunc);
    if (!diag) {
        std::cerr << "cannot open diagnostics.ndjson for writing\n";
        return kExitUsage;
    }

    auto on_record = [&](const DiagnosticsRecord& r) {
        diag << record_to_json(r).dump() << "\n";
        diag.flush();
    };
    auto on_snapshot = [&](const TrajectoryState& st, long step) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap-%08ld.aqg", step);
        write_snapshot(outdir / name, inverse_transform(st.theta), st.t);
    };

    RunResult res;
    try {
        res = run_simulation(cfg, on_record, on_snapshot);
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return kExitUsage;
    }

    const double s = cfg.resolved_norm_s();
    json summary;
    summary["format"] = "aqg-summary";
    summary["version"] = 1;
    summary["domain"] = domain_to_json(cfg.grid);
    summary["params"] = {{"alpha", cfg.params.alpha},
                         {"beta", cfg.params.beta},
                         {"mu", cfg.params.mu},
                         {"nu", cfg.params.nu}};
    summary["s"] = s;
    summary["critical_exponent"] = critical_exponent(cfg.params);
    summary["region"] = to_string(classify_region(cfg.params.alpha, cfg.params.beta));
    summary["min_alpha_beta_lt_half"] = std::min(cfg.params.alpha, cfg.params.beta) < 0.5;
    summary["seed"] = cfg.seed;
    summary["run"] = {{"t_end", cfg.t_end},
                      {"dt", cfg.stepper.dt},
                      {"steps", cfg.steps()},
                      {"sample_every", cfg.sample_every}};
    summary["blowup"] = {{"detected", res.blowup}};
    if (res.blowup) {
        summary["blowup"]["t"] = res.blowup_time;
        summary["blowup"]["reason"] = res.blowup_reason;
    }
    summary["energy_ledger"] = {{"pass", !res.ledger.violation},
                                {"max_relative_excess", res.ledger.max_relative_excess},
                                {"budget", res.ledger_budget}};
    if (!res.blowup && !res.samples.empty()) {
        const DecayReport dr = decay_report(res.samples, cfg.decay_threshold);
        auto trio = [](const NormSample& ns) {
            return json{{"t", ns.t}, {"l2", ns.l2}, {"hs", ns.hs_inhom}, {"hs_hom", ns.hs_hom}};
        };
        summary["decay"] = {{"pass", dr.pass},
                            {"threshold", cfg.decay_threshold},
                            {"terminal_fraction", dr.terminal_fraction},
                            {"rate_l2", dr.rate_l2},
                            {"rate_hs", dr.rate_hs},
                            {"rate_hs_hom", dr.rate_hs_hom},
                            {"start", trio(dr.start)},
                            {"middle", trio(dr.middle)},
                            {"end", trio(dr.end)},
                            {"max_hs_increase", dr.max_hs_increase},
                            {"sojourn_above_threshold", dr.sojourn_above_threshold}};
    } else {
        summary["decay"] = nullptr;
    }

    {
        std::ofstream out(outdir / "summary.json");
        out << summary.dump(2) << "\n";
    }

    if (res.blowup) {
        std::cerr << "blow-up detected at t = " << format_double(res.blowup_time) << "\n";
        return kExitBlowup;
    }
    std::cout << "run complete: " << outdir.string() << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ verify

struct VerifyOptions {
    int grid_n = 64;
    int seeds = 200;
    int kmax = 64;
    std::string out = "reports.ndjson";
    std::vector<double> alphas;
    std::vector<double> betas;
    double s = 1.4;
    double s_prime = 0.0;
};

json report_to_json(const RatioReport& r, const GridSpec* grid) {
    json j;
    j["lemma"] = r.lemma;
    j["samples"] = r.samples;
    j["max_ratio"] = r.max_ratio;
    j["p50"] = r.p50;
    j["p95"] = r.p95;
    j["bound"] = r.bound;
    j["verdict"] = to_string(r.verdict);
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    if (grid) j["domain"] = domain_to_json(*grid);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

// Band-limited alias-free test fields: one third of the Nyquist band so
// pairwise products stay exactly representable.
SpectralField lab_field(const GridSpec& g, std::uint64_t seed) {
    return random_bandlimited_field(g, seed, 1.0, g.n1 / 6.0, 1.0);
}

int run_verify_suite(const std::string& suite, const VerifyOptions& opt) {
    const GridSpec grid(opt.grid_n, opt.grid_n, 6.283185307179586, 6.283185307179586);
    const fs::path out_path = resolve_under_root(opt.out);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        std::cerr << "cannot open " << out_path << " for writing\n";
        return kExitUsage;
    }

    bool explicit_violation = false;
    auto emit = [&](const RatioReport& r, const GridSpec* g) {
        out << report_to_json(r, g).dump() << "\n";
        out.flush();
        std::cout << r.lemma << ": " << to_string(r.verdict) << " (max ratio "
                  << format_double(r.max_ratio) << ", samples " << r.samples << ")\n";
        if (r.bound > 0.0 && r.verdict == Verdict::Violated) explicit_violation = true;
    };

    const std::vector<double> default_ab = {0.25, 0.5, 0.75};
    const std::vector<double> alphas = opt.alphas.empty() ? default_ab : opt.alphas;
    const std::vector<double> betas = opt.betas.empty() ? default_ab : opt.betas;

    if (suite == "symbols") {
        for (double a : alphas)
            for (double b : betas)
                emit(check_symbol_bound_sweep(DissipationParams(a, b), opt.kmax), nullptr);
    } else if (suite == "anisotropic") {
        struct Point {
            double a, b, s, sp;
        };
        std::vector<Point> points;
        if (!opt.alphas.empty() || !opt.betas.empty()) {
            for (double a : alphas)
                for (double b : betas) points.push_back({a, b, opt.s, opt.s_prime});
        } else {
            points = {{0.3, 0.7, 1.4, 0.0}, {0.25, 0.5, 1.5, 0.2}, {0.45, 0.45, 1.1, 0.3}};
        }
        for (const auto& pt : points) {
            std::vector<std::pair<std::string, double>> params = {
                {"alpha", pt.a}, {"beta", pt.b}, {"s", pt.s}, {"s_prime", pt.sp}};
            if (!(pt.a <= pt.b) || !(pt.sp < pt.s + pt.a)) {
                RatioReport skip;
                skip.lemma = "anisotropic";
                skip.params = params;
                skip.bound = 1.0;
                skip.verdict = Verdict::Skipped;
                skip.note = "hypotheses alpha <= beta and s' < s + alpha not met";
                emit(skip, &grid);
                continue;
            }
            std::vector<double> ratios;
            for (int i = 0; i < opt.seeds; ++i) {
                const RatioReport r = check_anisotropic_bound(
                    lab_field(grid, 1000 + i), DissipationParams(pt.a, pt.b), pt.s, pt.sp);
                ratios.push_back(r.max_ratio);
            }
            emit(aggregate_ratios("anisotropic", ratios, params, 1.0), &grid);
        }
    } else if (suite == "interpolation") {
        struct Point {
            double s1, s2, t;
        };
        const std::vector<Point> points = {{0.0, 2.0, 0.5}, {0.0, 1.4, 0.25}, {0.6, 1.8, 0.75}};
        for (const auto& pt : points) {
            std::vector<double> ratios;
            for (int i = 0; i < opt.seeds; ++i) {
                const RatioReport r =
                    check_interpolation(lab_field(grid, 2000 + i), pt.s1, pt.s2, pt.t);
                ratios.push_back(r.max_ratio);
            }
            emit(aggregate_ratios("interpolation", ratios,
                                  {{"s1", pt.s1}, {"s2", pt.s2}, {"t", pt.t}}, 1.0),
                 &grid);

            // single-shell input: the inequality is an equality
            SpectralField shell(grid);
            shell.set_mode(3, 4, Complex{0.4, 0.1});
            shell.set_mode(-3, -4, Complex{0.4, -0.1});
            shell.set_mode(5, 0, Complex{0.2, 0.3});
            shell.set_mode(-5, 0, Complex{0.2, -0.3});
            RatioReport r = check_interpolation(shell, pt.s1, pt.s2, pt.t);
            r.note = "single-shell input: equality case";
            if (std::abs(r.max_ratio - 1.0) > 1e-13) r.verdict = Verdict::Violated;
            emit(r, &grid);
        }
    } else if (suite == "commutator") {
        struct Point {
            double s, a;
        };
        const std::vector<Point> points = {{1.4, 0.3}, {1.2, 0.5}, {1.8, 0.25}};
        for (const auto& pt : points) {
            for (int n : {opt.grid_n, 2 * opt.grid_n}) {
                const GridSpec g2(n, n, grid.l1, grid.l2);
                std::vector<double> ratios;
                for (int i = 0; i < opt.seeds; ++i) {
                    const SpectralField f = random_bandlimited_field(g2, 3000 + i, 1.0, opt.grid_n / 6.0, 1.0);
                    const SpectralField h = random_bandlimited_field(g2, 9000 + i, 1.0, opt.grid_n / 6.0, 1.0);
                    ratios.push_back(check_commutator(f, h, pt.s, pt.a).max_ratio);
                }
                emit(aggregate_ratios(
                         "commutator", ratios,
                         {{"s", pt.s}, {"alpha", pt.a}, {"grid", static_cast<double>(n)}}, 0.0),
                     &g2);
            }
        }
    } else if (suite == "product") {
        struct Point {
            double s1, s2;
        };
        const std::vector<Point> points = {{0.3, 0.7}, {0.5, 0.4}, {0.9, 0.2}};
        for (const auto& pt : points) {
            std::vector<double> ratios;
            for (int i = 0; i < opt.seeds; ++i) {
                const SpectralField f = lab_field(grid, 4000 + i);
                const SpectralField h = lab_field(grid, 14000 + i);
                ratios.push_back(check_product_estimate(f, h, pt.s1, pt.s2).max_ratio);
            }
            emit(aggregate_ratios("product", ratios, {{"s1", pt.s1}, {"s2", pt.s2}}, 0.0), &grid);
        }
        RatioReport branch;
        branch.lemma = "product";
        branch.verdict = Verdict::Skipped;
        branch.note = "two-term branch (s1 < 1, s1+s2 > 0, s2 >= 1 allowed) unexercised; "
                      "only the one-term branch with s1, s2 < 1 is checked";
        emit(branch, nullptr);
    } else if (suite == "embedding") {
        for (double sigma : {0.0, 0.25, 0.5, 0.75}) {
            std::vector<double> ratios;
            for (int i = 0; i < opt.seeds; ++i)
                ratios.push_back(check_embedding(lab_field(grid, 5000 + i), sigma).max_ratio);
            RatioReport r = aggregate_ratios(
                "embedding", ratios, {{"sigma", sigma}, {"p", 2.0 / (1.0 - sigma)}}, 0.0);
            if (sigma == 0.0) {
                r.bound = 1.0;
                r.note = "sigma = 0 is Parseval: ratio must be 1";
                if (std::abs(r.max_ratio - 1.0) > 1e-12) r.verdict = Verdict::Violated;
            }
            emit(r, &grid);
        }
    } else if (suite == "riesz") {
        for (int p : {2, 4, 6}) {
            std::vector<double> ratios;
            for (int i = 0; i < opt.seeds; ++i)
                ratios.push_back(check_riesz_bound(lab_field(grid, 6000 + i), p).max_ratio);
            RatioReport r = aggregate_ratios("riesz", ratios, {{"p", static_cast<double>(p)}}, 0.0);
            if (p == 2) {
                r.bound = 1.0;
                r.note = "p = 2 is the Riesz isometry: ratio must be 1";
                double worst = 0.0;
                for (double v : ratios) worst = std::max(worst, std::abs(v - 1.0));
                if (worst > 1e-12) r.verdict = Verdict::Violated;
            }
            emit(r, &grid);
        }
    } else {
        std::cerr << "unknown suite '" << suite << "'\n";
        return kExitUsage;
    }

    std::cout << "reports written to " << out_path.string() << "\n";
    return explicit_violation ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------- classify

int cmd_classify(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
        std::cerr << "alpha and beta must lie in (0,1)\n";
        return kExitUsage;
    }
    const DissipationParams p(alpha, beta);
    const RegionClass region = classify_region(alpha, beta);
    const bool hypothesis = std::min(alpha, beta) < 0.5;
    std::cout << "region: " << to_string(region) << "\n";
    std::cout << "critical exponent s = " << format_double(critical_exponent(p)) << "\n";
    std::cout << "hypothesis min(alpha,beta) < 1/2: " << (hypothesis ? "holds" : "fails") << "\n";
    return kExitOk;
}

// -------------------------------------------------------------------- plot

std::vector<fs::path> snapshot_files(const fs::path& rundir) {
    std::vector<fs::path> files;
    if (!fs::exists(rundir)) return files;
    for (const auto& entry : fs::directory_iterator(rundir))
        if (entry.path().extension() == ".aqg") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

int cmd_plot(const std::string& rundir_s, const std::string& kind, int snapshot_index) {
    const fs::path rundir(rundir_s);
    const fs::path plotdir = rundir / "plots";

    if (kind == "norms") {
        const fs::path diag = rundir / "diagnostics.ndjson";
        if (!fs::exists(diag)) {
            std::cerr << diag << " not found\n";
            return kExitUsage;
        }
        plot::Curve l2{"L2", {}, {}}, hs{"HS", {}, {}}, hom{"HS HOM", {}, {}};
        std::ifstream in(diag);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const json j = json::parse(line);
            const double t = j.at("t").get<double>();
            l2.x.push_back(t);
            l2.y.push_back(j.at("l2").get<double>());
            hs.x.push_back(t);
            hs.y.push_back(j.at("hs_inhom").get<double>());
            hom.x.push_back(t);
            hom.y.push_back(j.at("hs_hom").get<double>());
        }
        if (l2.x.empty()) {
            std::cerr << "no records in " << diag << "\n";
            return kExitUsage;
        }
        fs::create_directories(plotdir);
        plot::ChartOptions opts;
        opts.title = "NORM DECAY";
        opts.xlabel = "T";
        opts.ylabel = "NORM";
        opts.log_y = true;
        plot::render_line_chart(plotdir / "norms.png", {l2, hs, hom}, opts);
        std::cout << (plotdir / "norms.png").string() << "\n";
        return kExitOk;
    }

    const auto snaps = snapshot_files(rundir);
    if (snaps.empty()) {
        std::cerr << "no snapshots in " << rundir << "\n";
        return kExitUsage;
    }
    if (snapshot_index < 0 || snapshot_index >= static_cast<int>(snaps.size())) {
        std::cerr << "snapshot index out of range (have " << snaps.size() << ")\n";
        return kExitUsage;
    }
    const Snapshot snap = read_snapshot(snaps[snapshot_index]);
    const std::string stem = snaps[snapshot_index].stem().string();
    fs::create_directories(plotdir);

    if (kind == "heatmap") {
        const fs::path file = plotdir / ("heatmap-" + stem + ".png");
        plot::render_heatmap(file, snap.field, "T = " + format_double(snap.t));
        std::cout << file.string() << "\n";
        return kExitOk;
    }
    if (kind == "spectrum") {
        const SpectralField f = forward_transform(snap.field);
        const GridSpec& g = f.grid();
        const int kmax = std::max(g.n1, g.n2) / 2;
        std::vector<double> shell(kmax + 1, 0.0), ax1(kmax + 1, 0.0), ax2(kmax + 1, 0.0);
        for (int i1 = 0; i1 < g.n1; ++i1) {
            for (int i2 = 0; i2 < g.n2; ++i2) {
                const int k1 = g.k1(i1), k2 = g.k2(i2);
                const double e = std::norm(f.at(i1, i2));
                const int r = static_cast<int>(std::lround(std::hypot(k1, k2)));
                if (r <= kmax) shell[r] += e;
                if (std::abs(k1) <= kmax) ax1[std::abs(k1)] += e;
                if (std::abs(k2) <= kmax) ax2[std::abs(k2)] += e;
            }
        }
        plot::Curve cs{"SHELL", {}, {}}, c1{"AXIS 1", {}, {}}, c2{"AXIS 2", {}, {}};
        for (int k = 0; k <= kmax; ++k) {
            const double kk = k;
            cs.x.push_back(kk);
            cs.y.push_back(shell[k]);
            c1.x.push_back(kk);
            c1.y.push_back(ax1[k]);
            c2.x.push_back(kk);
            c2.y.push_back(ax2[k]);
        }
        plot::ChartOptions opts;
        opts.title = "SPECTRUM T = " + format_double(snap.t);
        opts.xlabel = "K";
        opts.ylabel = "E(K)";
        opts.log_y = true;
        const fs::path file = plotdir / ("spectrum-" + stem + ".png");
        plot::render_line_chart(file, {cs, c1, c2}, opts);
        std::cout << file.string() << "\n";
        return kExitOk;
    }
    std::cerr << "unknown plot kind '" << kind << "'\n";
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisotropic quasi-geostrophic spectral lab"};
    app.require_subcommand(1);

    std::string config_path, outdir_override;
    auto* sim = app.add_subcommand("simulate", "run a configured simulation");
    sim->add_option("config", config_path, "run configuration file")->required();
    sim->add_option("--output-dir", outdir_override, "override the configured output directory");

    std::string suite;
    VerifyOptions vopt;
    auto* ver = app.add_subcommand("verify", "run an inequality verification suite");
    ver->add_option("suite", suite,
                    "one of: symbols, interpolation, commutator, product, embedding, riesz, anisotropic")
        ->required();
    ver->add_option("--grid", vopt.grid_n, "grid size per axis (default 64)");
    ver->add_option("--seeds", vopt.seeds, "random fields per parameter point (default 200)");
    ver->add_option("--kmax", vopt.kmax, "sweep limit for the symbols suite (default 64)");
    ver->add_option("--out", vopt.out, "reports file (default reports.ndjson)");
    ver->add_option("--alpha", vopt.alphas, "alpha values (overrides defaults)");
    ver->add_option("--beta", vopt.betas, "beta values (overrides defaults)");
    ver->add_option("--s", vopt.s, "regularity index for the anisotropic suite");
    ver->add_option("--s-prime", vopt.s_prime, "lower index for the anisotropic suite");

    double alpha = 0.0, beta = 0.0;
    auto* cls = app.add_subcommand("classify", "report the regularity region for (alpha, beta)");
    cls->add_option("alpha", alpha)->required();
    cls->add_option("beta", beta)->required();

    std::string rundir, kind = "norms";
    int snapshot_index = 0;
    auto* plt = app.add_subcommand("plot", "render plots from a run directory");
    plt->add_option("rundir", rundir, "run output directory")->required();
    plt->add_option("--kind", kind, "norms | spectrum | heatmap");
    plt->add_option("--snapshot", snapshot_index, "snapshot index for spectrum/heatmap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, outdir_override);
        if (ver->parsed()) return run_verify_suite(suite, vopt);
        if (cls->parsed()) return cmd_classify(alpha, beta);
        if (plt->parsed()) return cmd_plot(rundir, kind, snapshot_index);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
