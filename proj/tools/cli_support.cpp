#include "cli_support.hpp"

#include "gasket/cluster_io.hpp"
#include "gasket/errors.hpp"
#include "gasket/version.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

namespace gasket::cli {

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["subcommand"] = cfg.subcommand;
    if (!cfg.levels.empty()) j["levels"] = cfg.levels;
    if (!cfg.density_path.empty()) {
        j["density"] = cfg.density_path;
        j["domain_L"] = cfg.domain_L ? nlohmann::json(*cfg.domain_L) : nlohmann::json("auto");
        j["auto_grow"] = cfg.auto_grow;
    }
    if (cfg.subcommand == "sandpile" || cfg.subcommand == "obstacle") j["tol"] = cfg.tol;
    if (cfg.subcommand == "sandpile") j["policy"] = cfg.policy;
    if (cfg.subcommand == "rotor") j["rotors"] = cfg.rotors;
    if (cfg.seed) {
        j["seed"] = *cfg.seed;
        j["seed_from_entropy"] = cfg.seed_from_entropy;
    }
    if (cfg.subcommand == "idla" || cfg.subcommand == "limit") j["trials"] = cfg.trials;
    if (!cfg.models.empty()) j["models"] = cfg.models;
    if (!cfg.outputs.empty()) j["outputs"] = cfg.outputs;
    if (cfg.subcommand == "render") {
        j["inputs"] = cfg.inputs;
        j["labels"] = cfg.labels;
        j["wire_scale"] = cfg.wire_scale;
        j["width"] = cfg.width;
        j["mark_vertices"] = cfg.mark_vertices;
    }
    return j;
}

nlohmann::json report_header(const RunConfig& cfg) {
    return {{"tool", "gasket"}, {"version", kVersion}, {"config", to_json(cfg)}};
}

void write_report(const RunConfig& cfg, const nlohmann::json& report) {
    const auto it = cfg.outputs.find("report");
    if (it == cfg.outputs.end()) return;
    write_text(it->second, report.dump(2) + "\n");
}

std::vector<std::string> provenance(const RunConfig& cfg) {
    return {std::string("gasket ") + kVersion, "config " + to_json(cfg).dump()};
}

DensitySpec load_spec(const RunConfig& cfg) {
    if (cfg.density_path.empty()) throw ConfigError("--density is required");
    return load_density(cfg.density_path);
}

int starting_domain(const RunConfig& cfg, const DensitySpec& spec) {
    const int L = cfg.domain_L ? *cfg.domain_L : initial_domain(spec);
    check_support(spec, L);
    return L;
}

std::uint64_t resolve_seed(RunConfig& cfg) {
    if (!cfg.seed) {
        std::random_device rd;
        cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        cfg.seed_from_entropy = true;
        std::cerr << "seed " << *cfg.seed << " (from entropy; pass --seed to reproduce)\n";
    }
    return *cfg.seed;
}

unsigned worker_count() {
    if (const char* env = std::getenv("GASKET_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw ConfigError("GASKET_THREADS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    std::atomic<std::size_t> next{0};
    std::mutex guard;
    std::size_t failed_at = count;
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(guard);
                if (i < failed_at) failed_at = i, failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace gasket::cli
