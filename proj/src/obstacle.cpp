#include "gasket/obstacle.hpp"

#include "gasket/errors.hpp"
#include "gasket/refine.hpp"

#include <algorithm>
#include <cmath>

namespace gasket {

namespace {

double neighbor_mean(const GasketLevel& ctx, const Field& f, std::size_t x) {
    double s = 0;
    for (std::int32_t y : ctx.slots(x)) s += f[static_cast<std::size_t>(y)];
    return 0.25 * s;
}

// Spectral radius of the killed walk on the interior, by power iteration from 1.
double killed_walk_radius(const GasketLevel& ctx) {
    Field v(ctx.size(), 0.0), w(ctx.size(), 0.0);
    for (std::size_t x : ctx.interior()) v[x] = 1.0;
    double rho = 0;
    for (int it = 0; it < 400; ++it) {
        double num = 0, den = 0;
        for (std::size_t x : ctx.interior()) {
            w[x] = neighbor_mean(ctx, v, x);
            num += w[x] * v[x];
            den += v[x] * v[x];
        }
        rho = num / den;
        double norm = 0;
        for (std::size_t x : ctx.interior()) norm = std::max(norm, w[x]);
        for (std::size_t x : ctx.interior()) v[x] = w[x] / norm;
    }
    return std::min(rho, 1.0 - 1e-12);
}

}  // namespace

Field build_obstacle(const DensityField& sigma, const GreenTable& green) {
    if (sigma.ctx.get() != green.ctx().get() && sigma.ctx->size() != green.ctx()->size())
        throw std::invalid_argument("density and Green table live on different levels");
    Field load(sigma.values.size());
    for (std::size_t i = 0; i < load.size(); ++i) load[i] = sigma.values[i] - 1.0;
    Field g = green_apply(green, load);
    for (double& v : g) v = -v;
    return g;
}

Field build_obstacle(const DensityField& sigma) {
    Field load(sigma.values.size(), 0.0);
    for (std::size_t x : sigma.ctx->interior()) load[x] = sigma.values[x] - 1.0;
    return solve_dirichlet<double>(Hierarchy(sigma.ctx), load);
}

MajorantResult least_majorant(const GasketLevel& ctx, const Field& gamma, const MajorantOptions& opts) {
    MajorantResult r;
    const auto [lo, hi] = std::minmax_element(gamma.begin(), gamma.end());
    const double range = std::max(*hi - *lo, 1e-300);
    r.s.assign(ctx.size(), *hi);
    for (std::size_t b : ctx.boundary()) r.s[b] = gamma[b];

    const double rho = killed_walk_radius(ctx);
    r.omega = 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));
    const double tol = opts.tol_rel * range;
    for (;;) {
        if (r.sweeps >= opts.max_sweeps)
            throw ModelError("majorant sweeps did not converge, residual " + std::to_string(r.residual));
        double change = 0;
        for (std::size_t x : ctx.interior()) {
            const double relaxed = (1 - r.omega) * r.s[x] + r.omega * neighbor_mean(ctx, r.s, x);
            const double next = std::max(gamma[x], relaxed);
            change = std::max(change, std::abs(next - r.s[x]));
            r.s[x] = next;
        }
        ++r.sweeps;
        r.residual = change;
        if (change < tol) break;
    }
    if (!opts.polish) return r;

    // Active-set refinement: harmonic off the coincidence set, equal to γ on it.
    std::vector<char> coincide(ctx.size(), 1);
    for (std::size_t x : ctx.interior()) coincide[x] = r.s[x] - gamma[x] > tol ? 0 : 1;
    const Field lap_gamma = laplacian(gamma, ctx, LaplacianScaling::Raw);
    // Flat stretches of γ make both switching tests vanish exactly; ignore roundoff there.
    const double flip = 1e-13 * range;
    for (int round = 0; round < 200; ++round) {
        std::vector<char> free(ctx.size(), 0);
        Field rhs(ctx.size(), 0.0);
        for (std::size_t x : ctx.interior()) {
            free[x] = coincide[x] ? 0 : 1;
            rhs[x] = -lap_gamma[x];
        }
        const Field w = solve_masked(ctx, free, rhs);
        Field s(ctx.size());
        for (std::size_t x = 0; x < ctx.size(); ++x) s[x] = gamma[x] + w[x];
        bool changed = false;
        for (std::size_t x : ctx.interior()) {
            if (!coincide[x] && w[x] < -flip) {
                coincide[x] = 1;
                changed = true;
            } else if (coincide[x] && neighbor_mean(ctx, s, x) - s[x] > flip) {
                coincide[x] = 0;
                changed = true;
            }
        }
        r.polish_rounds = round + 1;
        r.s = std::move(s);
        if (!changed) return r;
    }
    throw ModelError("majorant active-set refinement did not settle");
}

Cluster noncoincidence(const GasketLevel& ctx, const Field& u, double tol_cluster) {
    Cluster c(ctx.size(), 0);
    for (std::size_t x = 0; x < ctx.size(); ++x) c[x] = u[x] > tol_cluster ? 1 : 0;
    return c;
}

Cluster extended_noncoincidence(const GasketLevel& ctx, const Cluster& d, const Field& sigma) {
    Cluster e = d;
    for (std::size_t x : ctx.interior()) {
        if (sigma[x] < 1) continue;
        bool all = true;
        for (std::int32_t y : ctx.slots(x)) all = all && sigma[static_cast<std::size_t>(y)] >= 1;
        if (all) e[x] = 1;
    }
    return e;
}

ObstacleProblem solve_obstacle(const DensityField& sigma, double tol_cluster, const MajorantOptions& opts) {
    ObstacleProblem p;
    p.ctx = sigma.ctx;
    p.sigma = sigma.values;
    p.gamma = build_obstacle(sigma);
    p.diagnostics = least_majorant(*p.ctx, p.gamma, opts);
    p.s = p.diagnostics.s;
    p.u.resize(p.s.size());
    for (std::size_t x = 0; x < p.s.size(); ++x) p.u[x] = std::max(p.s[x] - p.gamma[x], 0.0);
    p.cluster = noncoincidence(*p.ctx, p.u, tol_cluster);
    p.extended = extended_noncoincidence(*p.ctx, p.cluster, p.sigma);
    return p;
}

int default_kappa(int n) { return static_cast<int>(std::ceil(std::pow(2.0, n / 2.0))); }

DensityField smoothed_density(const DensityField& sigma, int kappa) {
    return {sigma.ctx, smooth(sigma.values, kappa, *sigma.ctx), false};
}

LadderReport continuum_ladder(const DensitySpec& spec, int n0, int n1, std::optional<int> domain_L) {
    if (n1 < n0) throw std::invalid_argument("empty level range");
    LadderReport rep;
    rep.domain_L = domain_L.value_or(initial_domain(spec));
    auto solve_at = [&](int n, int L) {
        const auto ctx = GasketLevel::make(n, L);
        ObstacleProblem p = solve_obstacle(discretize_avg(spec, ctx, false));
        for (std::size_t b : ctx->boundary())
            for (std::int32_t y : ctx->slots(b))
                if (y != kNoNeighbor && p.cluster[static_cast<std::size_t>(y)]) throw DomainContact("cluster reached domain boundary");
        return p;
    };
    // u_n is extended to level n+1 as a constant on each double triangle; a new
    // midpoint lies in the double triangles of both coarse endpoints of its edge.
    std::optional<ObstacleProblem> prev;
    for (int n = n0; n <= n1; ++n) {
        ObstacleProblem p = solve_at(n, rep.domain_L);
        rep.levels.push_back(n);
        rep.max_odometer.push_back(*std::max_element(p.u.begin(), p.u.end()));
        if (prev) {
            const GasketLevel& coarse = *prev->ctx;
            const GasketLevel& fine = *p.ctx;
            double d = 0;
            for (std::size_t x = 0; x < fine.size(); ++x) {
                const Vertex& v = fine.vertex(x);
                if (v.a % 2 == 0 && v.b % 2 == 0) {
                    d = std::max(d, std::abs(p.u[x] - prev->u[coarse.index(relevel(v, n, n - 1))]));
                    continue;
                }
                for (std::int32_t y : fine.slots(x)) {
                    if (y == kNoNeighbor) continue;
                    const Vertex& w = fine.vertex(static_cast<std::size_t>(y));
                    if (w.a % 2 != 0 || w.b % 2 != 0) continue;
                    d = std::max(d, std::abs(p.u[x] - prev->u[coarse.index(relevel(w, n, n - 1))]));
                }
            }
            rep.consecutive_diff.push_back(d);
        }
        if (n == n1) {
            const ObstacleProblem big = solve_at(n, rep.domain_L + 1);
            double d = 0;
            for (std::size_t x = 0; x < p.ctx->size(); ++x)
                d = std::max(d, std::abs(p.u[x] - big.u[big.ctx->index(p.ctx->vertex(x))]));
            rep.enlarged_diff = d;
            rep.enlarged_level = n;
        }
        prev = std::move(p);
    }
    return rep;
}

}  // namespace gasket
