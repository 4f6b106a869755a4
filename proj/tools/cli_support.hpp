#pragma once

#include "gasket/density.hpp"

#include <json.hpp>

#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gasket::cli {

// Everything a subcommand needs, resolved and validated before it runs.
struct RunConfig {
    std::string subcommand;
    std::vector<int> levels;
    std::optional<int> domain_L;  // empty: smallest domain the density allows
    int auto_grow = 3;            // extra domain doublings tried on boundary contact
    std::string density_path;
    double tol = 1e-10;
    std::string policy = "accelerated";
    std::string rotors = "zero";
    std::optional<std::uint64_t> seed;
    bool seed_from_entropy = false;
    int trials = 1;
    std::vector<std::string> models;
    std::map<std::string, std::string> outputs;  // role -> path
    std::vector<std::string> inputs;
    std::vector<std::string> labels;
    int wire_scale = 3;
    double width = 800;
    bool mark_vertices = true;
};

nlohmann::json to_json(const RunConfig& cfg);

// Report skeleton shared by every subcommand.
nlohmann::json report_header(const RunConfig& cfg);
void write_report(const RunConfig& cfg, const nlohmann::json& report);

// `#` lines for CSV headers: version and the resolved config.
std::vector<std::string> provenance(const RunConfig& cfg);

DensitySpec load_spec(const RunConfig& cfg);
int starting_domain(const RunConfig& cfg, const DensitySpec& spec);

// Draws a seed from entropy when none was given and announces it on stderr.
std::uint64_t resolve_seed(RunConfig& cfg);

// Worker count from GASKET_THREADS, else the hardware concurrency.
unsigned worker_count();

// Runs body(0..count-1) on the pool. Results must be written by index; the
// exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gasket::cli
