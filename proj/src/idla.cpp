#include "gasket/idla.hpp"

#include "gasket/errors.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gasket {

namespace {

std::mt19937_64 particle_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

IdlaRun idla_aggregate(const DensityField& sigma, const IdlaOptions& opts) {
    const GasketLevel& ctx = *sigma.ctx;
    IdlaRun run;
    run.ctx = sigma.ctx;
    run.seed = opts.seed;
    run.trial = opts.trial;
    run.occupied.assign(ctx.size(), 0);

    std::vector<std::size_t> order;
    if (opts.source_order) {
        order = *opts.source_order;
    } else {
        order.resize(ctx.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    std::uint64_t index = 0;
    for (std::size_t src : order) {
        const double v = sigma.values[src];
        if (v < 0 || v != std::floor(v)) throw std::invalid_argument("IDLA needs an integer density");
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(v); ++k, ++index) {
            std::mt19937_64 rng = particle_stream(opts.seed, opts.trial, index);
            std::uint64_t bits = 0;
            int left = 0;
            std::size_t p = src;
            std::int64_t steps = 0;
            while (run.occupied[p]) {
                if (ctx.is_boundary(p)) throw DomainContact("enlarge domain");
                if (left == 0) {
                    bits = rng();
                    left = 32;
                }
                p = static_cast<std::size_t>(ctx.slots(p)[bits & 3]);
                bits >>= 2;
                --left;
                if (++steps > opts.step_cap) throw ModelError("IDLA walk exceeded the step cap");
            }
            if (ctx.is_boundary(p)) throw DomainContact("enlarge domain");
            run.occupied[p] = 1;
            run.release_order.push_back(src);
            run.steps.push_back(steps);
            run.total_steps += steps;
        }
    }
    return run;
}

}  // namespace gasket
