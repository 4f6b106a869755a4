#include "gasket/rotor.hpp"

#include "gasket/errors.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gasket {

namespace {

std::vector<std::int64_t> integral_counts(const DensityField& sigma) {
    std::vector<std::int64_t> out(sigma.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = sigma.values[i];
        if (v < 0 || v != std::floor(v)) throw std::invalid_argument("rotor aggregation needs an integer density");
        out[i] = static_cast<std::int64_t>(v);
    }
    return out;
}

bool fair_at(const RotorState& s, std::size_t x) {
    const auto& c = s.crossings[x];
    const auto [lo, hi] = std::minmax({c[0], c[1], c[2], c[3]});
    return hi - lo <= 1;
}

}  // namespace

RotorState initial_rotors(const LevelPtr& ctx, const RotorOptions& opts) {
    RotorState s;
    s.ctx = ctx;
    s.rotor.assign(ctx->size(), 0);
    if (opts.rotors) {
        if (opts.rotors->size() != ctx->size()) throw std::invalid_argument("rotor configuration size mismatch");
        s.rotor = *opts.rotors;
        for (std::size_t x = 0; x < ctx->size(); ++x) {
            // A boundary vertex never emits; interior slots are all valid.
            if (s.rotor[x] > 3) throw std::invalid_argument("rotor slot out of range");
        }
    } else if (opts.init == RotorInit::Random) {
        std::mt19937_64 rng(opts.seed);
        for (auto& r : s.rotor) r = static_cast<std::uint8_t>(rng() & 3);
    }
    s.occupied.assign(ctx->size(), 0);
    s.emitted.assign(ctx->size(), 0);
    s.crossings.assign(ctx->size(), {0, 0, 0, 0});
    return s;
}

std::size_t rotor_step(RotorState& s, std::size_t p) {
    if (s.ctx->is_boundary(p)) throw DomainContact("enlarge domain");
    const std::uint8_t slot = static_cast<std::uint8_t>((s.rotor[p] + 1) & 3);
    s.rotor[p] = slot;
    const auto target = static_cast<std::size_t>(s.ctx->slots(p)[slot]);
    ++s.crossings[p][slot];
    ++s.emitted[p];
    ++s.steps;
    if (s.ctx->is_boundary(target)) throw DomainContact("enlarge domain");
    return target;
}

RotorResult rotor_aggregate(const DensityField& sigma, const RotorOptions& opts) {
    const auto counts = integral_counts(sigma);
    RotorResult r;
    r.state = initial_rotors(sigma.ctx, opts);
    RotorState& s = r.state;
    std::vector<std::size_t> order;
    if (opts.source_order) {
        order = *opts.source_order;
    } else {
        order.resize(counts.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    for (std::size_t src : order) {
        for (std::int64_t k = 0; k < counts[src]; ++k) {
            std::size_t p = src;
            while (s.occupied[p]) p = rotor_step(s, p);
            if (s.ctx->is_boundary(p)) throw DomainContact("enlarge domain");
            s.occupied[p] = 1;
            if (opts.check_fairness) {
                for (std::size_t x = 0; x < s.ctx->size(); ++x)
                    if (!fair_at(s, x)) throw ModelError("rotor fairness violated");
            }
        }
    }
    r.cluster = s.occupied;
    r.odometer.resize(s.emitted.size());
    const double tb = s.ctx->time_weight();
    for (std::size_t x = 0; x < s.emitted.size(); ++x) r.odometer[x] = tb * static_cast<double>(s.emitted[x]);
    return r;
}

FluxReport flux_decomposition(const RotorState& s, const std::vector<double>& sigma) {
    const GasketLevel& ctx = *s.ctx;
    FluxReport rep;
    auto back_slot = [&](std::size_t x, std::size_t y) {
        const auto& sl = ctx.slots(y);
        for (int k = 0; k < 4; ++k)
            if (sl[static_cast<std::size_t>(k)] == static_cast<std::int32_t>(x)) return k;
        throw std::logic_error("adjacency is not symmetric");
    };
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        std::int64_t div = 0;
        for (int k = 0; k < 4; ++k) {
            const std::int32_t yy = ctx.slots(x)[static_cast<std::size_t>(k)];
            if (yy == kNoNeighbor) continue;
            const auto y = static_cast<std::size_t>(yy);
            const int kb = back_slot(x, y);
            const std::int64_t theta =
                s.crossings[x][static_cast<std::size_t>(k)] - s.crossings[y][static_cast<std::size_t>(kb)];
            const std::int64_t rho = s.emitted[y] - s.emitted[x] + 4 * theta;
            rep.edges.push_back({x, y, theta, rho});
            rep.max_abs_rho = std::max(rep.max_abs_rho, rho < 0 ? -rho : rho);
            // The reverse edge uses the same counts with roles swapped.
            const std::int64_t theta_back =
                s.crossings[y][static_cast<std::size_t>(kb)] - s.crossings[x][static_cast<std::size_t>(k)];
            const std::int64_t rho_back = s.emitted[x] - s.emitted[y] + 4 * theta_back;
            if (theta_back != -theta || rho_back != -rho) rep.antisymmetric = false;
            div += theta;
        }
        const std::int64_t expected = static_cast<std::int64_t>(sigma[x]) - (s.occupied[x] ? 1 : 0);
        if (div != expected) rep.divergence_exact = false;
        if (!ctx.is_boundary(x) && !fair_at(s, x)) rep.fair = false;
    }
    return rep;
}

}  // namespace gasket
