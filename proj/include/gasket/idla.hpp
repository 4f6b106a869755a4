#pragma once

#include "gasket/density.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gasket {

// Each particle walks with its own std::mt19937_64, seeded through std::seed_seq
// from (seed, trial, particle index); every 64-bit draw supplies 32 steps.
inline constexpr const char* kIdlaRngName = "mt19937_64/seed_seq(seed_lo,seed_hi,trial,index_lo,index_hi)";

struct IdlaOptions {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::int64_t step_cap = 1'000'000'000;
    std::optional<std::vector<std::size_t>> source_order;
};

struct IdlaRun {
    LevelPtr ctx;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::vector<char> occupied;
    std::vector<std::size_t> release_order;  // source of each particle
    std::vector<std::int64_t> steps;         // per particle
    std::int64_t total_steps = 0;
};

// Throws DomainContact("enlarge domain") when a walk reaches ∂Tr and ModelError
// when the step cap is exceeded.
IdlaRun idla_aggregate(const DensityField& sigma, const IdlaOptions& opts = {});

}  // namespace gasket
