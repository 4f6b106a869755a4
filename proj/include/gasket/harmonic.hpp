#pragma once

#include "gasket/gasket_level.hpp"

#include <cstddef>
#include <vector>

namespace gasket {

using Field = std::vector<double>;

enum class LaplacianScaling { Raw, Rescaled };

// Mean of neighbors minus value on interior vertices; zero on ∂Tr. Rescaled
// multiplies by 5^n.
Field laplacian(const Field& f, const GasketLevel& ctx, LaplacianScaling scaling = LaplacianScaling::Rescaled);

// (5/3)^n Σ_{edges} (1/4) (f(x)-f(y)) (g(x)-g(y)), each undirected edge once.
double energy(const Field& f, const Field& g, const GasketLevel& ctx);

// Lazy kernel: stay with probability 1 - deg/8, move to each neighbor with 1/8.
Field smooth(const Field& f, int steps, const GasketLevel& ctx);
// Law of the lazy walk after t steps from x.
Field lazy_step_distribution(const GasketLevel& ctx, std::size_t x, int t);

// Solves Δ_SG u = rhs on the flagged vertices with u = 0 elsewhere.
// Throws ModelError on factorization failure.
Field solve_masked(const GasketLevel& ctx, const std::vector<char>& active, const Field& rhs);

struct ExitTimeProfile {
    std::vector<std::size_t> ball;  // B^n(x, r)
    Field expected;                 // E_y[τ_r(x)], zero off the ball
    Field phi;                      // E_x[τ] - E_y[τ] on the ball
};

// Throws std::invalid_argument if the ball meets ∂Tr.
ExitTimeProfile exit_time_profile(const GasketLevel& ctx, std::size_t x, int r);

struct ConstantLaplacianProfile {
    Field phi;      // Δ_n φ = value, φ = 0 on ∂Tr
    Field shifted;  // φ - φ(base)
};

ConstantLaplacianProfile constant_laplacian_profile(const LevelPtr& ctx, double value, std::size_t base);

}  // namespace gasket
