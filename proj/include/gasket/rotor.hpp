#pragma once

#include "gasket/density.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace gasket {

enum class RotorInit { Zero, Random };

struct RotorOptions {
    RotorInit init = RotorInit::Zero;
    std::uint64_t seed = 0;
    // Explicit configuration, one slot per vertex; overrides `init`.
    std::optional<std::vector<std::uint8_t>> rotors;
    // Release order of the sources; default is enumeration order. Every particle
    // of a source is released before the next source.
    std::optional<std::vector<std::size_t>> source_order;
    bool check_fairness = false;  // verify |N(x,y) - N(x,z)| <= 1 after every particle
};

struct RotorState {
    LevelPtr ctx;
    std::vector<std::uint8_t> rotor;  // slot index into GasketLevel::slots
    std::vector<char> occupied;
    std::vector<std::int64_t> emitted;
    std::vector<std::array<std::int64_t, 4>> crossings;  // N(x, slot)
    std::int64_t steps = 0;
};

RotorState initial_rotors(const LevelPtr& ctx, const RotorOptions& opts = {});

// Turns the rotor at p, then moves along it. Throws DomainContact("enlarge domain")
// when the walk reaches ∂Tr.
std::size_t rotor_step(RotorState& s, std::size_t p);

struct RotorResult {
    RotorState state;
    std::vector<char> cluster;
    std::vector<double> odometer;  // δ_n^β * emitted
};

// Throws std::invalid_argument for non-integral densities.
RotorResult rotor_aggregate(const DensityField& sigma, const RotorOptions& opts = {});

struct FluxEdge {
    std::size_t from;
    std::size_t to;
    std::int64_t theta;  // N(x,y) - N(y,x)
    std::int64_t rho;    // e(y) - e(x) + 4θ(x,y), so ∇u = δ^{β/2}(-4θ + ρ)
};

struct FluxReport {
    std::vector<FluxEdge> edges;  // every directed edge
    std::int64_t max_abs_rho = 0;
    bool antisymmetric = true;
    bool divergence_exact = true;  // Σ_y θ(x,y) = σ_n(x) - 1_R(x) everywhere
    bool fair = true;              // |N(x,y) - N(x,z)| <= 1
};

FluxReport flux_decomposition(const RotorState& s, const std::vector<double>& sigma);

}  // namespace gasket
