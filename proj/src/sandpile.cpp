#include "gasket/sandpile.hpp"

#include "gasket/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gasket {

namespace {

constexpr double kStableSlack = 1e-13;

bool touches_boundary(const GasketLevel& ctx, std::size_t x) {
    if (ctx.is_boundary(x)) return true;
    for (std::int32_t y : ctx.slots(x))
        if (ctx.is_boundary(static_cast<std::size_t>(y))) return true;
    return false;
}

void send(SandpileState& s, std::size_t x, double amount) {
    if (amount <= 0) return;
    if (touches_boundary(*s.ctx, x)) throw DomainContact("cluster reached domain boundary");
    s.mass[x] -= amount;
    s.emitted[x] += amount;
    for (std::int32_t y : s.ctx->slots(x)) s.mass[static_cast<std::size_t>(y)] += 0.25 * amount;
}

double total_excess(const Field& mass) {
    double e = 0;
    for (double v : mass) e += std::max(v - 1.0, 0.0);
    return e;
}

// One Gauss-Seidel pass over `order`.
void gauss_seidel(SandpileState& s, const std::vector<std::size_t>& order) {
    for (std::size_t x : order) send(s, x, s.mass[x] - 1.0);
}

void jacobi(SandpileState& s, Field& excess) {
    for (std::size_t x = 0; x < s.mass.size(); ++x) excess[x] = std::max(s.mass[x] - 1.0, 0.0);
    for (std::size_t x = 0; x < s.mass.size(); ++x) send(s, x, excess[x]);
}

// Repeatedly topples, on the set of sites that have toppled or are unstable, the
// exact odometer that brings every site of the set to mass 1. That odometer never
// exceeds the remaining true odometer, so the run stays on a legal toppling path.
void accelerated(SandpileState& s, double tol, std::int64_t& rounds) {
    const GasketLevel& ctx = *s.ctx;
    std::vector<char> active(ctx.size(), 0);
    for (;;) {
        bool grew = false;
        for (std::size_t x = 0; x < ctx.size(); ++x) {
            if (!active[x] && s.mass[x] > 1.0 + kStableSlack) {
                if (touches_boundary(ctx, x)) throw DomainContact("cluster reached domain boundary");
                active[x] = 1;
                grew = true;
            }
        }
        if (!grew || total_excess(s.mass) < tol) return;
        Field rhs(ctx.size(), 0.0);
        for (std::size_t x = 0; x < ctx.size(); ++x)
            if (active[x]) rhs[x] = 1.0 - s.mass[x];  // Δ_SG z = 1 - ν on the active set
        const Field z = solve_masked(ctx, active, rhs);
        for (std::size_t x = 0; x < ctx.size(); ++x)
            if (active[x]) send(s, x, std::max(z[x], 0.0));
        ++rounds;
        ++s.generation;
    }
}

}  // namespace

SweepPolicy parse_policy(const std::string& name) {
    if (name == "accelerated") return SweepPolicy::Accelerated;
    if (name == "synchronous") return SweepPolicy::Synchronous;
    if (name == "lexicographic") return SweepPolicy::Lexicographic;
    if (name == "reverse") return SweepPolicy::Reverse;
    throw ConfigError("unknown sweep policy '" + name + "'");
}

std::string policy_name(SweepPolicy p) {
    switch (p) {
        case SweepPolicy::Accelerated: return "accelerated";
        case SweepPolicy::Synchronous: return "synchronous";
        case SweepPolicy::Lexicographic: return "lexicographic";
        case SweepPolicy::Reverse: return "reverse";
    }
    return "unknown";
}

SandpileState initial_state(const DensityField& sigma) {
    return {sigma.ctx, sigma.values, Field(sigma.ctx->size(), 0.0), 0};
}

void topple(SandpileState& s, std::size_t x) {
    send(s, x, s.mass[x] - 1.0);
    ++s.generation;
}

SandpileResult stabilize(const DensityField& sigma, const SandpileOptions& opts) {
    SandpileResult r;
    r.state = initial_state(sigma);
    SandpileState& s = r.state;
    const GasketLevel& ctx = *s.ctx;
    const double mass0 = std::accumulate(sigma.values.begin(), sigma.values.end(), 0.0);
    r.tol = opts.tol_total_rel * std::max(mass0, 1.0);

    std::vector<std::size_t> order(ctx.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (opts.policy == SweepPolicy::Reverse) std::reverse(order.begin(), order.end());
    Field scratch(ctx.size());

    try {
        if (opts.policy == SweepPolicy::Accelerated) accelerated(s, r.tol, r.sweeps);
        // Plain sweeps finish every policy; after the accelerated phase only
        // roundoff-level excess is left.
        while (total_excess(s.mass) >= r.tol) {
            if (r.sweeps >= opts.max_sweeps) throw ModelError("sandpile did not stabilize within the sweep cap");
            if (opts.policy == SweepPolicy::Synchronous) {
                jacobi(s, scratch);
            } else {
                gauss_seidel(s, order);
            }
            ++r.sweeps;
            ++s.generation;
        }
    } catch (const DomainContact&) {
        throw DomainContact("enlarge domain");
    }

    r.total_excess = total_excess(s.mass);
    r.odometer.resize(ctx.size());
    r.cluster.assign(ctx.size(), 0);
    r.full.assign(ctx.size(), 0);
    const double tb = ctx.time_weight();
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        r.odometer[x] = tb * s.emitted[x];
        r.cluster[x] = r.odometer[x] > opts.tol_cluster ? 1 : 0;
        r.full[x] = s.mass[x] >= 1.0 - r.tol ? 1 : 0;
    }
    return r;
}

LeastActionReport least_action_check(const SandpileState& s, const Field& sigma, double tol) {
    LeastActionReport rep;
    const Field lap = laplacian(s.emitted, *s.ctx, LaplacianScaling::Raw);
    for (std::size_t x = 0; x < s.ctx->size(); ++x) {
        // Δ_SG is taken on interior sites; ∂Tr never receives mass in a valid run.
        const double implied = sigma[x] + lap[x];
        const double d = std::abs(s.mass[x] - implied);
        if (d > rep.worst_identity) {
            rep.worst_identity = d;
            rep.worst_vertex = x;
        }
        if (implied - 1.0 > rep.max_excess) {
            rep.max_excess = implied - 1.0;
            if (rep.max_excess > tol) rep.worst_vertex = x;
        }
    }
    rep.ok = rep.worst_identity < 1e-8 && rep.max_excess <= tol;
    return rep;
}

}  // namespace gasket
