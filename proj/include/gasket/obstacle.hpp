#pragma once

#include "gasket/density.hpp"
#include "gasket/green.hpp"
#include "gasket/harmonic.hpp"
#include "gasket/limits.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gasket {

// γ_n = -g^n(σ_n - 1), so Δ_n γ_n = σ_n - 1 on the interior and γ_n = 0 on ∂Tr.
Field build_obstacle(const DensityField& sigma, const GreenTable& green);
Field build_obstacle(const DensityField& sigma);  // same field through the hierarchical solver

struct MajorantOptions {
    double tol_rel = 1e-10;  // sweep until the update is below tol_rel * range(γ)
    std::int64_t max_sweeps = 10'000'000;
    bool polish = true;      // finish with an exact active-set solve
};

struct MajorantResult {
    Field s;
    std::int64_t sweeps = 0;
    double residual = 0;   // last sup-norm update of the projected sweep
    double omega = 1;      // relaxation factor
    int polish_rounds = 0;
};

// Least superharmonic s >= γ with s = γ on ∂Tr. Projected SOR from the constant
// max γ, then active-set refinement. Throws ModelError at the sweep cap.
MajorantResult least_majorant(const GasketLevel& ctx, const Field& gamma, const MajorantOptions& opts = {});

struct ObstacleProblem {
    LevelPtr ctx;
    Field sigma;
    Field gamma;
    Field s;
    Field u;           // s - γ, the rescaled odometer
    Cluster cluster;   // D_n = {u > tol_cluster}
    Cluster extended;  // D̃_n = D_n ∪ interior of {σ_n >= 1}
    MajorantResult diagnostics;
};

ObstacleProblem solve_obstacle(const DensityField& sigma, double tol_cluster = 1e-8,
                               const MajorantOptions& opts = {});

Cluster noncoincidence(const GasketLevel& ctx, const Field& u, double tol_cluster);
// D ∪ {x : σ_n >= 1 at x and at every neighbor}.
Cluster extended_noncoincidence(const GasketLevel& ctx, const Cluster& d, const Field& sigma);

// S_κ σ_n; κ = ⌈2^{n/2}⌉ by default.
int default_kappa(int n);
DensityField smoothed_density(const DensityField& sigma, int kappa);

struct LadderReport {
    int domain_L = 0;
    std::vector<int> levels;
    std::vector<double> max_odometer;
    // sup |u_{n+1} - u_n^ext| over level-(n+1) vertices, u_n^ext constant on the
    // double triangles of level n; one entry per consecutive pair
    std::vector<double> consecutive_diff;
    // same level solved on Tr enlarged once, compared on the smaller Tr
    double enlarged_diff = 0;
    int enlarged_level = 0;
};

// Throws DomainContact when the cluster reaches ∂Tr of the chosen domain.
LadderReport continuum_ladder(const DensitySpec& spec, int n0, int n1, std::optional<int> domain_L = {});

}  // namespace gasket
