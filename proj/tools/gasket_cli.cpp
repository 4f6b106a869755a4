#include "commands.hpp"

#include "gasket/errors.hpp"
#include "gasket/version.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace gasket;
using namespace gasket::cli;

namespace {

std::optional<int> parse_domain(const std::string& text) {
    if (text.empty() || text == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const int L = std::stoi(text, &used);
        if (used == text.size() && L >= 0) return L;
    } catch (const std::exception&) {
    }
    throw ConfigError("--domain-L must be a nonnegative integer or 'auto'");
}

// "4:6" or "5"
std::vector<int> parse_levels(const std::string& text) {
    int lo = 0, hi = 0;
    char colon = 0;
    std::istringstream in(text);
    if (!(in >> lo)) throw ConfigError("bad --levels '" + text + "'");
    hi = lo;
    if (in >> colon && (colon != ':' || !(in >> hi))) throw ConfigError("bad --levels '" + text + "'");
    if (!in.eof() || lo < 0 || hi < lo) throw ConfigError("bad --levels '" + text + "'");
    std::vector<int> out;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

std::vector<std::string> split_models(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string m; std::getline(in, m, ',');) {
        if (m != "sandpile" && m != "rotor" && m != "idla") throw ConfigError("unknown model '" + m + "'");
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (out.empty()) throw ConfigError("--models is empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Aggregation models and obstacle problems on Sierpinski gasket graphs"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    int level = 0;
    std::string domain = "auto", levels = "4:6", models = "sandpile,rotor,idla";
    std::uint64_t seed = 0;
    std::map<std::string, std::string> out;

    auto density_opts = [&](CLI::App* sub, bool with_level) {
        if (with_level) sub->add_option("--level", level, "Graph level n")->required()->check(CLI::Range(0, 12));
        sub->add_option("--density", cfg.density_path, "Density spec (JSON)")->required();
        sub->add_option("--domain-L", domain, "Bounding triangle B(0,2^L), or 'auto'");
        sub->add_option("--auto-grow", cfg.auto_grow, "Extra domain doublings on boundary contact")
            ->check(CLI::Range(0, 3));
        sub->add_option("--report", out["report"], "JSON report path");
    };

    auto* sandpile = app.add_subcommand("sandpile", "Divisible sandpile stabilization");
    density_opts(sandpile, true);
    sandpile->add_option("--tol", cfg.tol, "Relative stopping tolerance on the total excess");
    sandpile->add_option("--policy", cfg.policy, "accelerated|synchronous|lexicographic|reverse");
    sandpile->add_option("--out", out["cluster"], "Cluster CSV");
    sandpile->add_option("--odometer", out["odometer"], "Rescaled odometer CSV");

    auto* rotor = app.add_subcommand("rotor", "Rotor-router aggregation");
    density_opts(rotor, true);
    rotor->add_option("--rotors", cfg.rotors, "zero|random");
    auto* rotor_seed = rotor->add_option("--seed", seed, "Seed for random rotors");
    rotor->add_option("--out", out["cluster"], "Cluster CSV");
    rotor->add_option("--odometer", out["odometer"], "Rescaled odometer CSV");
    rotor->add_option("--flux", out["flux"], "Edge flux CSV");

    auto* idla = app.add_subcommand("idla", "Internal DLA trials");
    density_opts(idla, true);
    auto* idla_seed = idla->add_option("--seed", seed, "Base seed");
    idla->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::Range(1, 100000));
    idla->add_option("--out-dir", out["out_dir"], "Directory for per-trial cluster CSVs");

    auto* obstacle = app.add_subcommand("obstacle", "Discrete obstacle problem");
    density_opts(obstacle, true);
    obstacle->add_option("--tol", cfg.tol, "Relative tolerance of the projected sweeps");
    obstacle->add_option("--out", out["odometer"], "Odometer s - gamma CSV");
    obstacle->add_option("--cluster", out["cluster"], "Extended noncoincidence set CSV");
    obstacle->add_option("--dump-green", out["green"], "Write the stopped Green table as CSV");

    auto* limit = app.add_subcommand("limit", "Convergence harness across levels and models");
    density_opts(limit, false);
    limit->add_option("--levels", levels, "Level range lo:hi");
    limit->add_option("--models", models, "Comma list of sandpile,rotor,idla");
    limit->add_option("--trials", cfg.trials, "IDLA trials per level")->check(CLI::Range(1, 100000));
    auto* limit_seed = limit->add_option("--seed", seed, "Base seed for IDLA");

    auto* render = app.add_subcommand("render", "Render cluster CSVs as SVG");
    render->add_option("clusters", cfg.inputs, "Cluster CSV files")->required();
    render->add_option("-o,--output", out["svg"], "SVG path")->required();
    render->add_option("--label", cfg.labels, "Layer label, once per file");
    render->add_option("--wire-scale", cfg.wire_scale, "Scale of the outlined cells")->check(CLI::Range(0, 8));
    render->add_option("--width", cfg.width, "Width in pixels")->check(CLI::PositiveNumber);
    auto* no_marks = render->add_flag("--no-marks", "Do not mark cluster vertices");

    app.add_subcommand("selftest", "Exact-identity suite");

    bool limit_trials_given = false;
    try {
        app.parse(argc, argv);
        limit_trials_given = limit->count("--trials") > 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.subcommand = sub->get_name();
        for (auto& [role, path] : out)
            if (!path.empty()) cfg.outputs[role] = path;
        if (sub != render && sub->get_name() != "selftest") {
            cfg.domain_L = parse_domain(domain);
            cfg.levels = sub == limit ? parse_levels(levels) : std::vector<int>{level};
        }
        if (rotor_seed->count() || idla_seed->count() || limit_seed->count()) cfg.seed = seed;
        if (sub == limit) {
            cfg.models = split_models(models);
            if (!limit_trials_given) cfg.trials = 20;
        }
        cfg.mark_vertices = no_marks->count() == 0;

        if (sub == sandpile) return run_sandpile(cfg);
        if (sub == rotor) return run_rotor(cfg);
        if (sub == idla) return run_idla(cfg);
        if (sub == obstacle) return run_obstacle(cfg);
        if (sub == limit) return run_limit(cfg);
        if (sub == render) return run_render(cfg);
        return run_selftest(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainContact& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 1;
    }
}
