#pragma once

#include "gasket/cells.hpp"
#include "gasket/density.hpp"
#include "gasket/idla.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace gasket {

using Cluster = std::vector<char>;  // one flag per vertex of a GasketLevel

// Ref_ε ∩ SG_n ⊆ A for ε >= eps_in, and A ⊆ Ref^ε for ε >= eps_out.
// An empty A gives eps_out = 0; A = SG_n ∩ Tr gives eps_in = 0.
struct Margins {
    double eps_in = 0;
    double eps_out = 0;
    std::size_t missing = 0;  // vertices of the closed reference not in A
    std::size_t extra = 0;    // vertices of A outside the closed reference
};

Margins containment_margins(const GasketLevel& ctx, const Cluster& cluster, const CellRegion& ref);

// Union of the scale-k cells of B(0, 2^radius_log2), inside Tr = B(0, 2^L).
CellRegion centered_ball_region(int radius_log2, int k, int L);
// Scale-k cells of Tr all of whose level-n vertices are flagged (k <= n).
CellRegion cluster_region(const GasketLevel& ctx, const Cluster& cluster, int k);

// δ_n^α |A Δ B|, exact before conversion.
Rational symmetric_difference_measure(const GasketLevel& ctx, const Cluster& a, const Cluster& b);

struct BoundaryEstimate {
    int scale;
    std::int64_t cells;
    double measure;  // cells * 3^-k / 2
};
std::vector<BoundaryEstimate> boundary_measure_estimate(const CellRegion& region, int k0, int k1);
// Each step shrinks the estimate by at least `factor`.
bool decreases_by(const std::vector<BoundaryEstimate>& seq, double factor);

struct MassReport {
    std::size_t cluster_size = 0;
    std::size_t outer_boundary = 0;  // |∂D_n|: vertices off the cluster next to it
    double sigma_total = 0;
    double max_sigma = 0;
    double gap = 0;        // δ_n^α | |D_n| - Σσ_n |
    double allowed = 0;    // δ_n^α |∂D_n| max σ
    double relative_gap = 0;
    bool within_bound = false;
};
MassReport mass_conservation_check(const GasketLevel& ctx, const std::vector<double>& sigma, const Cluster& cluster);

struct ExponentFit {
    double slope = 0;
    double intercept = 0;
    double stderr_slope = 0;
    double band = 0;  // 2 standard errors
};
// Least squares of log(value) on log(scale); needs >= 4 positive points.
ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& series);

// Volume growth |B^n(0, 2^j)| and expected exit times E_0[τ_{2^j}] for j in [j0, j1].
std::vector<std::pair<double, double>> volume_growth_series(const GasketLevel& ctx, int j0, int j1);
std::vector<std::pair<double, double>> exit_time_series(const GasketLevel& ctx, int j0, int j1);

struct IdlaTrialStats {
    std::uint64_t trial;
    Margins margins;
    double symmetric_difference;
};
struct IdlaStatistics {
    std::vector<IdlaTrialStats> trials;
    double mean_symmetric_difference = 0;
    double eps_in_q90 = 0;
    double eps_out_q90 = 0;
    double eps_in_max = 0;
    double eps_out_max = 0;
};
// Runs may sit on different domains; they must share the level.
IdlaStatistics idla_statistics(const std::vector<IdlaRun>& runs, int level, const CellRegion& ref);

double quantile(std::vector<double> values, double q);

}  // namespace gasket
