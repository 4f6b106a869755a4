#include "commands.hpp"

#include "gasket/autogrow.hpp"
#include "gasket/ball_oracle.hpp"
#include "gasket/cluster_io.hpp"
#include "gasket/errors.hpp"
#include "gasket/green.hpp"
#include "gasket/idla.hpp"
#include "gasket/limits.hpp"
#include "gasket/obstacle.hpp"
#include "gasket/rotor.hpp"
#include "gasket/sandpile.hpp"
#include "gasket/selftest.hpp"
#include "gasket/svg.hpp"
#include "gasket/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace gasket::cli {

namespace {

using nlohmann::json;

constexpr double kAlpha = 1.5849625007211562;
constexpr double kBeta = 2.321928094887362;

// Containment bands for the limit harness at the finest level.
constexpr double kBandDeterministic = 0.2;
constexpr double kBandIdla = 0.25;
constexpr double kIdlaTrialShare = 0.9;
constexpr double kExponentTolerance = 0.05;
constexpr double kMassGap = 0.05;

std::optional<std::string> output(const RunConfig& cfg, const std::string& role) {
    const auto it = cfg.outputs.find(role);
    if (it == cfg.outputs.end()) return std::nullopt;
    return it->second;
}

IdlaOptions trial_options(std::uint64_t seed, std::uint64_t trial) {
    IdlaOptions o;
    o.seed = seed;
    o.trial = trial;
    return o;
}

std::size_t count_of(const Cluster& c) { return static_cast<std::size_t>(std::count(c.begin(), c.end(), 1)); }

double max_of(const Field& f) { return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end()); }

std::string vertex_text(const Vertex& v) {
    return std::string(v.half == Half::Plus ? "+" : "-") + "," + std::to_string(v.a) + "," + std::to_string(v.b);
}

json margins_json(const Margins& m) {
    return {{"eps_in", m.eps_in}, {"eps_out", m.eps_out}, {"missing", m.missing}, {"extra", m.extra}};
}

json mass_json(const MassReport& r) {
    return {{"cluster_size", r.cluster_size}, {"outer_boundary", r.outer_boundary},
            {"sigma_total", r.sigma_total},   {"max_sigma", r.max_sigma},
            {"gap", r.gap},                   {"allowed", r.allowed},
            {"relative_gap", r.relative_gap}, {"within_bound", r.within_bound}};
}

json boundary_json(const std::vector<BoundaryEstimate>& seq) {
    json out = json::array();
    for (const auto& e : seq) out.push_back({{"scale", e.scale}, {"cells", e.cells}, {"measure", e.measure}});
    return out;
}

json fit_json(const ExponentFit& f, double target) {
    return {{"slope", f.slope},
            {"stderr", f.stderr_slope},
            {"target", target},
            {"relative_error", std::abs(f.slope - target) / target},
            {"pass", std::abs(f.slope - target) <= kExponentTolerance * target}};
}

void write_cluster(const RunConfig& cfg, const std::string& role, const GasketLevel& ctx, const Cluster& c,
                   std::vector<std::string> extra = {}) {
    if (const auto path = output(cfg, role)) {
        std::vector<std::string> prov = provenance(cfg);
        prov.insert(prov.end(), extra.begin(), extra.end());
        write_text(*path, cluster_csv(ctx, c, prov));
    }
}

void write_field(const RunConfig& cfg, const std::string& role, const GasketLevel& ctx, const Field& f) {
    if (const auto path = output(cfg, role)) write_text(*path, field_csv(ctx, f, provenance(cfg)));
}

// Reference limit shape at level n on domain L: the predicted ball for the ball
// family, otherwise the extended sandpile set.
struct Reference {
    std::string kind;
    std::optional<CellRegion> region;
};

Reference ball_reference(const DensitySpec& spec, int n, int L) {
    if (const auto oracle = detect_ball_family(spec))
        return {"ball B(0,2^" + std::to_string(oracle->outer_log2()) + ")",
                centered_ball_region(oracle->outer_log2(), n, L)};
    return {"", std::nullopt};
}

}  // namespace

int run_sandpile(RunConfig& cfg) {
    const DensitySpec spec = load_spec(cfg);
    const int n = cfg.levels.at(0);
    SandpileOptions opts;
    opts.tol_total_rel = cfg.tol;
    opts.policy = parse_policy(cfg.policy);
    auto [res, L] = with_auto_grow(starting_domain(cfg, spec), cfg.auto_grow,
                                   [&](int L) { return stabilize(discretize_avg(spec, GasketLevel::make(n, L), false), opts); });
    const GasketLevel& ctx = *res.state.ctx;
    const DensityField sigma = discretize_avg(spec, res.state.ctx, false);
    const Cluster extended = extended_noncoincidence(ctx, res.cluster, sigma.values);
    const LeastActionReport la = least_action_check(res.state, sigma.values, 1e-8 * (1 + max_of(sigma.values)));

    write_cluster(cfg, "cluster", ctx, res.cluster);
    write_field(cfg, "odometer", ctx, res.odometer);

    json r = report_header(cfg);
    r["result"] = {{"level", n},
                   {"domain_L", L},
                   {"sweeps", res.sweeps},
                   {"total_excess", res.total_excess},
                   {"tol", res.tol},
                   {"cluster_size", count_of(res.cluster)},
                   {"full_size", count_of(res.full)},
                   {"extended_size", count_of(extended)},
                   {"max_odometer", max_of(res.odometer)},
                   {"least_action", {{"ok", la.ok}, {"worst_identity", la.worst_identity}, {"max_excess", la.max_excess}}},
                   {"mass", mass_json(mass_conservation_check(ctx, sigma.values, extended))}};
    write_report(cfg, r);
    std::cout << "sandpile: level " << n << ", L=" << L << ", " << count_of(res.cluster) << " sites toppled, "
              << res.sweeps << " sweeps\n";
    return 0;
}

int run_rotor(RunConfig& cfg) {
    const DensitySpec spec = load_spec(cfg);
    const int n = cfg.levels.at(0);
    RotorOptions opts;
    if (cfg.rotors == "random") {
        opts.init = RotorInit::Random;
        opts.seed = resolve_seed(cfg);
    } else if (cfg.rotors != "zero") {
        throw ConfigError("--rotors must be zero or random");
    }
    auto [res, L] = with_auto_grow(starting_domain(cfg, spec), cfg.auto_grow, [&](int L) {
        return rotor_aggregate(discretize_avg(spec, GasketLevel::make(n, L), true), opts);
    });
    const GasketLevel& ctx = *res.state.ctx;
    const DensityField sigma = discretize_avg(spec, res.state.ctx, true);
    const FluxReport flux = flux_decomposition(res.state, sigma.values);

    write_cluster(cfg, "cluster", ctx, res.cluster);
    write_field(cfg, "odometer", ctx, res.odometer);
    if (const auto path = output(cfg, "flux")) {
        std::string text;
        for (const auto& line : provenance(cfg)) text += "# " + line + "\n";
        text += "# level=" + std::to_string(n) + " domain_L=" + std::to_string(L) + "\n";
        text += "# from_half,from_a,from_b,to_half,to_a,to_b,theta,rho\n";
        for (const FluxEdge& e : flux.edges)
            text += vertex_text(ctx.vertex(e.from)) + "," + vertex_text(ctx.vertex(e.to)) + "," +
                    std::to_string(e.theta) + "," + std::to_string(e.rho) + "\n";
        write_text(*path, text);
    }

    json r = report_header(cfg);
    r["result"] = {{"level", n},
                   {"domain_L", L},
                   {"particles", static_cast<std::int64_t>(std::llround(total_mass(sigma)))},
                   {"steps", res.state.steps},
                   {"cluster_size", count_of(res.cluster)},
                   {"max_odometer", max_of(res.odometer)},
                   {"flux",
                    {{"max_abs_rho", flux.max_abs_rho},
                     {"antisymmetric", flux.antisymmetric},
                     {"divergence_exact", flux.divergence_exact},
                     {"fair", flux.fair}}}};
    write_report(cfg, r);
    std::cout << "rotor: level " << n << ", L=" << L << ", " << count_of(res.cluster) << " sites, max|rho| "
              << flux.max_abs_rho << "\n";
    return 0;
}

int run_idla(RunConfig& cfg) {
    const DensitySpec spec = load_spec(cfg);
    const int n = cfg.levels.at(0);
    const std::uint64_t seed = resolve_seed(cfg);
    const int L0 = starting_domain(cfg, spec);
    const auto T = static_cast<std::size_t>(cfg.trials);

    std::vector<IdlaRun> runs(T);
    std::vector<int> domains(T);
    parallel_for(T, [&](std::size_t t) {
        auto [run, L] = with_auto_grow(L0, cfg.auto_grow, [&](int L) {
            return idla_aggregate(discretize_avg(spec, GasketLevel::make(n, L), true), trial_options(seed, t));
        });
        runs[t] = std::move(run);
        domains[t] = L;
    });

    if (const auto dir = output(cfg, "out_dir")) {
        std::filesystem::create_directories(*dir);
        for (std::size_t t = 0; t < T; ++t) {
            char name[32];
            std::snprintf(name, sizeof name, "trial_%03zu.csv", t);
            std::vector<std::string> prov = provenance(cfg);
            prov.push_back("trial=" + std::to_string(t) + " rng=" + kIdlaRngName);
            write_text((std::filesystem::path(*dir) / name).string(),
                       cluster_csv(*runs[t].ctx, runs[t].occupied, prov));
        }
    }

    Reference ref = ball_reference(spec, n, L0);
    if (!ref.region) {
        auto [sp, L] = with_auto_grow(L0, cfg.auto_grow,
                                      [&](int L) { return stabilize(discretize_avg(spec, GasketLevel::make(n, L), false)); });
        const GasketLevel& ctx = *sp.state.ctx;
        const Cluster ext = extended_noncoincidence(ctx, sp.cluster, discretize_avg(spec, sp.state.ctx, false).values);
        ref = {"extended sandpile set at the same level (L=" + std::to_string(L) + ")", cluster_region(ctx, ext, n)};
    }
    const IdlaStatistics stats = idla_statistics(runs, n, *ref.region);

    json trials = json::array();
    for (std::size_t t = 0; t < T; ++t) {
        const IdlaTrialStats& s = stats.trials[t];
        trials.push_back({{"trial", t},
                          {"domain_L", domains[t]},
                          {"total_steps", runs[t].total_steps},
                          {"cluster_size", count_of(runs[t].occupied)},
                          {"margins", margins_json(s.margins)},
                          {"symmetric_difference", s.symmetric_difference}});
    }
    json r = report_header(cfg);
    r["result"] = {{"level", n},
                   {"rng", kIdlaRngName},
                   {"reference", ref.kind},
                   {"trials", trials},
                   {"mean_symmetric_difference", stats.mean_symmetric_difference},
                   {"eps_in_q90", stats.eps_in_q90},
                   {"eps_out_q90", stats.eps_out_q90},
                   {"eps_in_max", stats.eps_in_max},
                   {"eps_out_max", stats.eps_out_max}};
    write_report(cfg, r);
    std::cout << "idla: level " << n << ", " << T << " trials, eps_in q90 " << stats.eps_in_q90 << ", eps_out q90 "
              << stats.eps_out_q90 << "\n";
    return 0;
}

int run_obstacle(RunConfig& cfg) {
    const DensitySpec spec = load_spec(cfg);
    const int n = cfg.levels.at(0);
    const int L = starting_domain(cfg, spec);
    const auto ctx = GasketLevel::make(n, L);
    const DensityField sigma = discretize_avg(spec, ctx, false);
    MajorantOptions opts;
    opts.tol_rel = cfg.tol;
    const ObstacleProblem p = solve_obstacle(sigma, 1e-8, opts);

    if (const auto path = output(cfg, "green")) write_green_csv(green_stopped(ctx), *path);
    write_field(cfg, "odometer", *ctx, p.u);
    write_cluster(cfg, "cluster", *ctx, p.extended, {"set=extended noncoincidence"});

    json r = report_header(cfg);
    json result = {{"level", n},
                   {"domain_L", L},
                   {"sweeps", p.diagnostics.sweeps},
                   {"residual", p.diagnostics.residual},
                   {"omega", p.diagnostics.omega},
                   {"polish_rounds", p.diagnostics.polish_rounds},
                   {"noncoincidence_size", count_of(p.cluster)},
                   {"extended_size", count_of(p.extended)},
                   {"max_odometer", max_of(p.u)},
                   {"mass", mass_json(mass_conservation_check(*ctx, p.sigma, p.extended))},
                   {"boundary_estimate", boundary_json(boundary_measure_estimate(cluster_region(*ctx, p.extended, n), n, n + 3))}};
    if (const auto oracle = detect_ball_family(spec); oracle && oracle->domain_L() == L) {
        // Continuum values sit at junction points; the discrete obstacle tends to
        // 3/4 of them because Δ is 3/4 of the limit of Δ_n.
        json points = json::array();
        const int span = oracle->outer_log2() - oracle->support_log2();
        auto add = [&](const std::string& label, const Vertex& v, const Rational& closed) {
            const double g = p.gamma[ctx->index(v)], c = to_double(closed);
            points.push_back({{"label", label},
                              {"vertex", vertex_text(v)},
                              {"gamma_n", g},
                              {"continuum", c},
                              {"delta", g - c},
                              {"scaled_delta", 4.0 / 3.0 * g - c}});
        };
        for (int j = 0; j <= span && oracle->outer_log2() - j + n >= 0; ++j) {
            add("x0^" + std::to_string(j), oracle->x0(j, n), oracle->gamma_x0(j));
            add("y0^" + std::to_string(j), oracle->y0(j, n), oracle->gamma_y0(j));
        }
        result["oracle"] = {{"family", {{"l", oracle->support_log2()}, {"L", oracle->outer_log2()}}},
                            {"majorant_on_cluster", to_double(oracle->majorant_on_cluster())},
                            {"max_s_n", max_of(p.s)},
                            {"junctions", points}};
    }
    r["result"] = result;
    write_report(cfg, r);
    std::cout << "obstacle: level " << n << ", L=" << L << ", |D~_n| = " << count_of(p.extended) << ", "
              << p.diagnostics.sweeps << " sweeps\n";
    return 0;
}

namespace {

struct LevelRun {
    int level = 0;
    int domain_L = 0;
    LevelPtr ctx;
    Field sigma;
    SandpileResult sandpile;
    Cluster extended;
    std::optional<RotorResult> rotor;
    std::vector<IdlaRun> idla;
};

bool wants(const RunConfig& cfg, const std::string& model) {
    return std::find(cfg.models.begin(), cfg.models.end(), model) != cfg.models.end();
}

// All models on one domain so their clusters can be compared vertex by vertex.
LevelRun solve_level(const RunConfig& cfg, const DensitySpec& spec, int n, int L0, std::uint64_t seed) {
    auto [run, L] = with_auto_grow(L0, cfg.auto_grow, [&](int L) {
        LevelRun r;
        r.level = n;
        r.ctx = GasketLevel::make(n, L);
        const DensityField avg = discretize_avg(spec, r.ctx, false);
        const DensityField floored = discretize_avg(spec, r.ctx, true);
        r.sigma = avg.values;
        r.sandpile = stabilize(avg);
        r.extended = extended_noncoincidence(*r.ctx, r.sandpile.cluster, avg.values);
        if (wants(cfg, "rotor")) r.rotor = rotor_aggregate(floored);
        if (wants(cfg, "idla")) {
            r.idla.resize(static_cast<std::size_t>(cfg.trials));
            parallel_for(r.idla.size(), [&](std::size_t t) { r.idla[t] = idla_aggregate(floored, trial_options(seed, t)); });
        }
        return r;
    });
    run.domain_L = L;
    return run;
}

}  // namespace

int run_limit(RunConfig& cfg) {
    const DensitySpec spec = load_spec(cfg);
    const std::uint64_t seed = wants(cfg, "idla") ? resolve_seed(cfg) : 0;
    const int L0 = starting_domain(cfg, spec);

    std::vector<LevelRun> runs;
    for (int n : cfg.levels) runs.push_back(solve_level(cfg, spec, n, L0, seed));
    const LevelRun& fine = runs.back();

    Reference ref = ball_reference(spec, fine.level, fine.domain_L);
    if (!ref.region)
        ref = {"extended sandpile set at level " + std::to_string(fine.level),
               cluster_region(*fine.ctx, fine.extended, fine.level)};

    json levels = json::array();
    std::vector<double> sr_diff, si_diff;
    for (const LevelRun& run : runs) {
        const GasketLevel& ctx = *run.ctx;
        json models;
        if (wants(cfg, "sandpile")) {
            models["sandpile"] = {{"cluster_size", count_of(run.sandpile.cluster)},
                                  {"margins", margins_json(containment_margins(ctx, run.sandpile.cluster, *ref.region))}};
            models["sandpile_full"] = {{"cluster_size", count_of(run.sandpile.full)},
                                       {"margins", margins_json(containment_margins(ctx, run.sandpile.full, *ref.region))}};
        }
        models["sandpile_extended"] = {{"cluster_size", count_of(run.extended)},
                                       {"margins", margins_json(containment_margins(ctx, run.extended, *ref.region))}};
        json pair;
        if (run.rotor) {
            models["rotor"] = {{"cluster_size", count_of(run.rotor->cluster)},
                               {"margins", margins_json(containment_margins(ctx, run.rotor->cluster, *ref.region))}};
            sr_diff.push_back(to_double(symmetric_difference_measure(ctx, run.sandpile.cluster, run.rotor->cluster)));
            pair["sandpile_rotor"] = sr_diff.back();
        }
        if (!run.idla.empty()) {
            const IdlaStatistics stats = idla_statistics(run.idla, run.level, *ref.region);
            std::size_t within = 0;
            json trials = json::array();
            double mean_si = 0, mean_ri = 0;
            for (std::size_t t = 0; t < run.idla.size(); ++t) {
                const Margins& m = stats.trials[t].margins;
                within += m.eps_in <= kBandIdla && m.eps_out <= kBandIdla;
                trials.push_back({{"trial", t}, {"eps_in", m.eps_in}, {"eps_out", m.eps_out}});
                mean_si += to_double(symmetric_difference_measure(ctx, run.sandpile.cluster, run.idla[t].occupied));
                if (run.rotor)
                    mean_ri += to_double(symmetric_difference_measure(ctx, run.rotor->cluster, run.idla[t].occupied));
            }
            const double T = static_cast<double>(run.idla.size());
            models["idla"] = {{"trials", trials},
                              {"within_band", within},
                              {"eps_in_q90", stats.eps_in_q90},
                              {"eps_out_q90", stats.eps_out_q90},
                              {"mean_symmetric_difference", stats.mean_symmetric_difference}};
            si_diff.push_back(mean_si / T);
            pair["sandpile_idla_mean"] = si_diff.back();
            if (run.rotor) pair["rotor_idla_mean"] = mean_ri / T;
        }
        levels.push_back({{"level", run.level}, {"domain_L", run.domain_L}, {"models", models}, {"symmetric_differences", pair}});
    }

    // Pass/fail at the finest level.
    const GasketLevel& ctx = *fine.ctx;
    json criteria;
    {
        bool ok = true;
        json detail;
        if (wants(cfg, "sandpile")) {
            const Margins m = containment_margins(ctx, fine.sandpile.cluster, *ref.region);
            detail["sandpile"] = m.eps_in <= kBandDeterministic && m.eps_out <= kBandDeterministic;
            ok = ok && detail["sandpile"].get<bool>();
        }
        if (fine.rotor) {
            const Margins m = containment_margins(ctx, fine.rotor->cluster, *ref.region);
            detail["rotor"] = m.eps_in <= kBandDeterministic && m.eps_out <= kBandDeterministic;
            ok = ok && detail["rotor"].get<bool>();
        }
        if (!fine.idla.empty()) {
            const std::size_t within = levels.back()["models"]["idla"]["within_band"].get<std::size_t>();
            detail["idla"] = static_cast<double>(within) >= kIdlaTrialShare * static_cast<double>(fine.idla.size());
            ok = ok && detail["idla"].get<bool>();
        }
        criteria["containment"] = {{"band", kBandDeterministic}, {"idla_band", kBandIdla}, {"models", detail}, {"pass", ok}};
    }
    {
        const MassReport m = mass_conservation_check(ctx, fine.sigma, fine.extended);
        criteria["mass_conservation"] = {{"report", mass_json(m)},
                                         {"pass", m.within_bound && m.relative_gap < kMassGap}};
    }
    {
        const auto seq = boundary_measure_estimate(cluster_region(ctx, fine.extended, fine.level), fine.level, fine.level + 3);
        criteria["boundary_regularity"] = {{"estimates", boundary_json(seq)}, {"pass", decreases_by(seq, 2.0)}};
    }
    {
        const int j1 = fine.level, j0 = std::max(1, j1 - 3);
        const json vol = fit_json(exponent_fit(volume_growth_series(ctx, j0, j1)), kAlpha);
        const json exit = fit_json(exponent_fit(exit_time_series(ctx, j0, j1)), kBeta);
        criteria["exponents"] = {{"radii_log2", {j0, j1}},
                                 {"volume", vol},
                                 {"exit_time", exit},
                                 {"pass", vol["pass"].get<bool>() && exit["pass"].get<bool>()}};
    }
    if (runs.size() > 1) {
        auto shrinks = [](const std::vector<double>& v) { return v.size() < 2 || v.back() < v.front(); };
        criteria["cauchy"] = {{"sandpile_rotor", sr_diff}, {"sandpile_idla", si_diff},
                              {"pass", shrinks(sr_diff) && shrinks(si_diff)}};
    }
    bool all = true;
    for (const auto& [name, c] : criteria.items()) all = all && c["pass"].get<bool>();

    json r = report_header(cfg);
    r["result"] = {{"reference", ref.kind}, {"levels", levels}, {"criteria", criteria}, {"pass", all}};
    write_report(cfg, r);
    for (const auto& [name, c] : criteria.items())
        std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << name << "\n";
    return 0;
}

int run_render(RunConfig& cfg) {
    if (cfg.inputs.empty()) throw ConfigError("render needs at least one cluster file");
    const auto out = output(cfg, "svg");
    if (!out) throw ConfigError("render needs -o/--output");
    std::vector<ClusterFile> files;
    for (const auto& path : cfg.inputs) files.push_back(load_cluster_csv(path));
    for (const auto& f : files)
        if (f.level != files.front().level || f.domain_L != files.front().domain_L)
            throw ConfigError("clusters have mixed levels or domains");
    if (cfg.labels.empty())
        for (const auto& path : cfg.inputs) cfg.labels.push_back(std::filesystem::path(path).stem().string());
    if (cfg.labels.size() != files.size()) throw ConfigError("need one --label per cluster file");

    const auto ctx = GasketLevel::make(files.front().level, files.front().domain_L);
    std::vector<SvgLayer> layers;
    for (std::size_t i = 0; i < files.size(); ++i) layers.push_back({cfg.labels[i], to_members(files[i], *ctx)});
    SvgStyle style;
    style.wire_scale = cfg.wire_scale;
    style.width = cfg.width;
    style.mark_vertices = cfg.mark_vertices;
    std::string svg = render_svg(*ctx, layers, style);

    // Provenance as a comment right after the prolog; "--" may not occur inside.
    std::string note = std::string("gasket ") + kVersion + " config " + to_json(cfg).dump();
    for (auto p = note.find("--"); p != std::string::npos; p = note.find("--", p)) note.replace(p, 2, "- -");
    svg.insert(svg.find('\n') + 1, "<!-- " + note + " -->\n");
    write_text(*out, svg);
    std::cout << "render: " << files.size() << " layer(s) at level " << ctx->level() << " -> " << *out << "\n";
    return 0;
}

int run_selftest(RunConfig&) {
    bool ok = true;
    for (const SelfCheck& c : exact_identity_suite()) {
        ok = ok && c.pass;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
        std::cout << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace gasket::cli
