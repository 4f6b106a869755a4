#include "gasket/harmonic.hpp"

#include "gasket/errors.hpp"
#include "gasket/refine.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <stdexcept>

namespace gasket {

Field laplacian(const Field& f, const GasketLevel& ctx, LaplacianScaling scaling) {
    const double scale = scaling == LaplacianScaling::Rescaled ? ctx.laplacian_scale() : 1.0;
    Field out(ctx.size(), 0.0);
    for (std::size_t x : ctx.interior()) {
        double s = 0;
        for (std::int32_t y : ctx.slots(x)) s += f[static_cast<std::size_t>(y)];
        out[x] = scale * (0.25 * s - f[x]);
    }
    return out;
}

double energy(const Field& f, const Field& g, const GasketLevel& ctx) {
    double s = 0;
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        for (std::int32_t yy : ctx.slots(x)) {
            if (yy == kNoNeighbor) continue;
            const auto y = static_cast<std::size_t>(yy);
            if (y < x) continue;
            s += 0.25 * (f[x] - f[y]) * (g[x] - g[y]);
        }
    }
    return std::pow(5.0 / 3.0, ctx.level()) * s;
}

Field smooth(const Field& f, int steps, const GasketLevel& ctx) {
    if (steps < 0) throw std::invalid_argument("negative smoothing steps");
    Field cur = f, next(f.size());
    for (int t = 0; t < steps; ++t) {
        for (std::size_t x = 0; x < ctx.size(); ++x) {
            double s = (1.0 - ctx.degree(x) / 8.0) * cur[x];
            for (std::int32_t y : ctx.slots(x))
                if (y != kNoNeighbor) s += cur[static_cast<std::size_t>(y)] / 8.0;
            next[x] = s;
        }
        cur.swap(next);
    }
    return cur;
}

Field lazy_step_distribution(const GasketLevel& ctx, std::size_t x, int t) {
    Field delta(ctx.size(), 0.0);
    delta[x] = 1.0;
    return smooth(delta, t, ctx);
}

Field solve_masked(const GasketLevel& ctx, const std::vector<char>& active, const Field& rhs) {
    std::vector<std::int32_t> idx(ctx.size(), -1);
    std::vector<std::size_t> order;
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        if (!active[x]) continue;
        idx[x] = static_cast<std::int32_t>(order.size());
        order.push_back(x);
    }
    Field out(ctx.size(), 0.0);
    if (order.empty()) return out;
    // -Δ_SG restricted to the active set: I - P, symmetric positive definite.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(order.size() * 5);
    Eigen::VectorXd b(static_cast<Eigen::Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t x = order[k];
        if (ctx.degree(x) != 4) throw std::invalid_argument("active set meets the domain boundary");
        trip.emplace_back(static_cast<int>(k), static_cast<int>(k), 1.0);
        for (std::int32_t y : ctx.slots(x)) {
            const std::int32_t j = idx[static_cast<std::size_t>(y)];
            if (j >= 0) trip.emplace_back(static_cast<int>(k), j, -0.25);
        }
        b[static_cast<Eigen::Index>(k)] = -rhs[x];
    }
    Eigen::SparseMatrix<double> K(static_cast<Eigen::Index>(order.size()), static_cast<Eigen::Index>(order.size()));
    K.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
    if (solver.info() != Eigen::Success) throw ModelError("sparse factorization failed");
    const Eigen::VectorXd u = solver.solve(b);
    if (solver.info() != Eigen::Success) throw ModelError("sparse solve failed");
    const double resid = (K * u - b).lpNorm<Eigen::Infinity>();
    if (!(resid <= 1e-8 * (1.0 + b.lpNorm<Eigen::Infinity>())))
        throw ModelError("sparse solve residual " + std::to_string(resid));
    for (std::size_t k = 0; k < order.size(); ++k) out[order[k]] = u[static_cast<Eigen::Index>(k)];
    return out;
}

ExitTimeProfile exit_time_profile(const GasketLevel& ctx, std::size_t x, int r) {
    ExitTimeProfile p;
    p.ball = graph_ball(ctx, x, r);
    std::vector<char> active(ctx.size(), 0);
    for (std::size_t y : p.ball) {
        if (ctx.is_boundary(y)) throw std::invalid_argument("exit-time ball leaves Tr");
        active[y] = 1;
    }
    Field rhs(ctx.size(), 0.0);
    for (std::size_t y : p.ball) rhs[y] = -1.0;
    p.expected = solve_masked(ctx, active, rhs);
    p.phi.assign(ctx.size(), 0.0);
    for (std::size_t y : p.ball) p.phi[y] = p.expected[x] - p.expected[y];
    return p;
}

ConstantLaplacianProfile constant_laplacian_profile(const LevelPtr& ctx, double value, std::size_t base) {
    const Hierarchy H(ctx);
    const Field loads(ctx->size(), value);
    ConstantLaplacianProfile out;
    out.phi = solve_dirichlet<double>(H, loads);
    out.shifted = out.phi;
    for (double& v : out.shifted) v -= out.phi[base];
    return out;
}

}  // namespace gasket
