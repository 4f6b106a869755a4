#pragma once

#include "gasket/cells.hpp"
#include "gasket/gasket_level.hpp"
#include "gasket/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gasket {

// coeff * indicator of the Euclidean ball B(center, 2^radius_log2) within the gasket.
struct DensityTerm {
    Rational coeff;
    Vertex center;
    int center_level = 0;
    int radius_log2 = 0;
};

// σ = Σ coeff * 1_ball. Each ball is represented by the union of cells of scale
// `resolution()` that it contains; for balls around the origin (or around a
// vertex coarser than the radius) this union is the ball itself.
struct DensitySpec {
    int bound_L = 0;
    std::vector<DensityTerm> terms;
    std::optional<int> resolution_override;

    int resolution() const;
    bool exact_balls() const;
    Rational bound() const;  // Σ coeff
};

DensitySpec parse_density_json(const std::string& text);
DensitySpec load_density(const std::string& path);
std::string density_to_json(const DensitySpec& spec);

// The single-ball density 3^{L-l} 1_{B(0,2^l)}.
DensitySpec ball_density(int l, int L);

struct DensityField {
    LevelPtr ctx;
    std::vector<double> values;
    bool integral = false;
};

// σ_n(x) = average of σ over the double triangle of scale n+1 at x, exact,
// optionally floored.
DensityField discretize_avg(const DensitySpec& spec, const LevelPtr& ctx, bool floor);
std::vector<Rational> discretize_avg_exact(const DensitySpec& spec, const GasketLevel& ctx);

// ∫σ dμ over the gasket, exact.
Rational integral(const DensitySpec& spec);

// Average of σ over one cell, exact.
Rational cell_average(const DensitySpec& spec, const Cell& c);

double total_mass(const DensityField& f);
double rescaled_mass(const DensityField& f);  // 3^-n Σ σ_n
// Σ σ_n(x) μ(double triangle of scale n+1 at x, within Tr); tends to ∫σ dμ.
double measure_weighted_mass(const DensityField& f);

// Throws ConfigError("support exceeds domain") when a ball leaves B(0, 2^L).
void check_support(const DensitySpec& spec, int L);

// Smallest L' >= bound_L + 1 whose triangle has measure at least twice ∫σ dμ.
int initial_domain(const DensitySpec& spec);

}  // namespace gasket
