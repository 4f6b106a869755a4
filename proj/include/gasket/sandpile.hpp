#pragma once

#include "gasket/density.hpp"
#include "gasket/harmonic.hpp"

#include <cstdint>
#include <string>

namespace gasket {

enum class SweepPolicy {
    Accelerated,    // grow the toppling set and solve for its exact odometer
    Synchronous,    // all unstable sites topple together, Jacobi style
    Lexicographic,  // Gauss-Seidel in enumeration order
    Reverse,        // Gauss-Seidel in reverse enumeration order
};

SweepPolicy parse_policy(const std::string& name);
std::string policy_name(SweepPolicy p);

struct SandpileOptions {
    double tol_total_rel = 1e-10;  // stop once Σ max(ν-1, 0) < tol_total_rel * Σσ_n
    double tol_cluster = 1e-8;     // cluster threshold on the rescaled odometer
    SweepPolicy policy = SweepPolicy::Accelerated;
    std::int64_t max_sweeps = 10'000'000;
};

struct SandpileState {
    LevelPtr ctx;
    Field mass;     // ν
    Field emitted;  // raw odometer
    std::int64_t generation = 0;
};

SandpileState initial_state(const DensityField& sigma);

// Keeps mass 1 at x and sends a quarter of the excess to each neighbor.
// Throws DomainContact("cluster reached domain boundary") for x on ∂Tr with excess,
// or when the excess would reach ∂Tr.
void topple(SandpileState& s, std::size_t x);

struct SandpileResult {
    SandpileState state;
    Field odometer;             // δ_n^β * emitted
    std::vector<char> cluster;  // odometer > tol_cluster
    std::vector<char> full;     // ν >= 1 - tol
    double total_excess = 0;
    double tol = 0;             // absolute stopping tolerance used
    std::int64_t sweeps = 0;
};

// Throws DomainContact("enlarge domain") when mass must leave through ∂Tr and
// ModelError when the sweep cap is hit.
SandpileResult stabilize(const DensityField& sigma, const SandpileOptions& opts = {});

struct LeastActionReport {
    bool ok = true;
    double worst_identity = 0;  // max |ν - σ - Δ_SG emitted|
    std::size_t worst_vertex = 0;
    double max_excess = 0;      // max (σ + Δ_SG emitted - 1)
};

LeastActionReport least_action_check(const SandpileState& s, const Field& sigma, double tol);

}  // namespace gasket
