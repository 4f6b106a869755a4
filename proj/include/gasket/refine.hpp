#pragma once

// Piecewise-harmonic refinement between consecutive levels, splines, and an
// exact O(V) Dirichlet solver by decimation. Templated on the scalar so the
// same code runs in double and in exact rational arithmetic.

#include "gasket/gasket_level.hpp"
#include "gasket/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace gasket {

template <class T>
T pow5(int e) {
    if constexpr (std::is_same_v<T, Rational>) {
        return pow_rational(5, e);
    } else {
        T p = 1;
        for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= 5;
        return e < 0 ? T(1) / p : p;
    }
}

// Midpoint values of a cell with corners (A, B, C), returned as the midpoints
// opposite A, B, C. `raw_load` prescribes Δ_SG at those midpoints on the refined
// graph (same order); zero load gives the 1/5-2/5 rule.
template <class T>
std::array<T, 3> harmonic_extend(const T& A, const T& B, const T& C, const std::array<T, 3>& raw_load = {}) {
    const T oppA = (A + 2 * B + 2 * C) / 5;
    const T oppB = (2 * A + B + 2 * C) / 5;
    const T oppC = (2 * A + 2 * B + C) / 5;
    const T& tA = raw_load[0];
    const T& tB = raw_load[1];
    const T& tC = raw_load[2];
    // Local system 4 m_i - m_j - m_k = (sum of the two corners next to m_i) - 4 t_i.
    return {oppA - 2 * (3 * tA + tB + tC) / 5, oppB - 2 * (tA + 3 * tB + tC) / 5, oppC - 2 * (tA + tB + 3 * tC) / 5};
}

// Calls f(iA, iB, iC) with vertex indices of every cell of the level graph.
template <class F>
void for_each_cell(const GasketLevel& ctx, F&& f) {
    const std::int64_t S = ctx.side();
    for (Half h : {Half::Plus, Half::Minus}) {
        for (std::int64_t b = 0; b < S; ++b) {
            for (std::int64_t a = 0; a + b < S; ++a) {
                if (!cell_exists(a, b)) continue;
                f(ctx.index(canonical({h, a, b})), ctx.index(canonical({h, a + 1, b})),
                  ctx.index(canonical({h, a, b + 1})), h, a, b);
            }
        }
    }
}

// Levels -L .. n sharing one Tr.
class Hierarchy {
public:
    Hierarchy(int n, int L) {
        for (int m = -L; m <= n; ++m) levels_.push_back(GasketLevel::make(m, L));
    }
    explicit Hierarchy(const LevelPtr& finest) {
        const int L = finest->domain_L();
        for (int m = -L; m < finest->level(); ++m) levels_.push_back(GasketLevel::make(m, L));
        levels_.push_back(finest);
    }
    int finest_level() const { return levels_.back()->level(); }
    int coarsest_level() const { return levels_.front()->level(); }
    const GasketLevel& at(int m) const { return *levels_.at(static_cast<std::size_t>(m - coarsest_level())); }
    const LevelPtr& ptr(int m) const { return levels_.at(static_cast<std::size_t>(m - coarsest_level())); }
    const GasketLevel& finest() const { return *levels_.back(); }

private:
    std::vector<LevelPtr> levels_;
};

// Values on `fine` (one level finer than `coarse`) from values on `coarse`.
// `fine_loads`, when given, prescribes Δ_m at each fine vertex (m = fine level).
template <class T>
std::vector<T> refine(const GasketLevel& coarse, const std::vector<T>& values, const GasketLevel& fine,
                      const std::vector<T>* fine_loads = nullptr) {
    if (fine.level() != coarse.level() + 1 || fine.domain_L() != coarse.domain_L())
        throw std::invalid_argument("refine needs consecutive levels of one domain");
    std::vector<T> out(fine.size());
    const T raw = fine_loads ? pow5<T>(-fine.level()) : T(0);
    for_each_cell(coarse, [&](std::size_t iA, std::size_t iB, std::size_t iC, Half h, std::int64_t a, std::int64_t b) {
        const std::size_t fA = fine.index(canonical({h, 2 * a, 2 * b}));
        const std::size_t fB = fine.index(canonical({h, 2 * a + 2, 2 * b}));
        const std::size_t fC = fine.index(canonical({h, 2 * a, 2 * b + 2}));
        const std::size_t mBC = fine.index({h, 2 * a + 1, 2 * b + 1});
        const std::size_t mAC = fine.index({h, 2 * a, 2 * b + 1});
        const std::size_t mAB = fine.index({h, 2 * a + 1, 2 * b});
        std::array<T, 3> load{};
        if (fine_loads) load = {(*fine_loads)[mBC] * raw, (*fine_loads)[mAC] * raw, (*fine_loads)[mAB] * raw};
        const auto mid = harmonic_extend<T>(values[iA], values[iB], values[iC], load);
        out[fA] = values[iA];
        out[fB] = values[iB];
        out[fC] = values[iC];
        out[mBC] = mid[0];
        out[mAC] = mid[1];
        out[mAB] = mid[2];
    });
    return out;
}

// Piecewise-harmonic extension of level-m values to the finest level.
template <class T>
std::vector<T> extend(const Hierarchy& H, int m, std::vector<T> values) {
    for (int k = m; k < H.finest_level(); ++k) values = refine<T>(H.at(k), values, H.at(k + 1));
    return values;
}

// Harmonic spline ψ_z^{(m)} on the finest level.
template <class T>
std::vector<T> spline(const Hierarchy& H, int m, const Vertex& z) {
    std::vector<T> v(H.at(m).size(), T(0));
    v[H.at(m).index(z)] = T(1);
    return extend<T>(H, m, std::move(v));
}

// Consistent loads one level coarser: Δ_{k-1} of the solution at the old vertices.
template <class T>
std::vector<T> decimate_loads(const GasketLevel& coarse, const GasketLevel& fine, const std::vector<T>& loads) {
    std::vector<T> acc(coarse.size(), T(0));
    for_each_cell(coarse, [&](std::size_t iA, std::size_t iB, std::size_t iC, Half h, std::int64_t a, std::int64_t b) {
        const T& lBC = loads[fine.index({h, 2 * a + 1, 2 * b + 1})];
        const T& lAC = loads[fine.index({h, 2 * a, 2 * b + 1})];
        const T& lAB = loads[fine.index({h, 2 * a + 1, 2 * b})];
        acc[iA] += (2 * lAB + 2 * lAC + lBC) / 5;
        acc[iB] += (2 * lAB + 2 * lBC + lAC) / 5;
        acc[iC] += (2 * lAC + 2 * lBC + lAB) / 5;
    });
    std::vector<T> out(coarse.size(), T(0));
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        if (coarse.is_boundary(i)) continue;
        const Vertex& v = coarse.vertex(i);
        out[i] = (loads[fine.index(canonical({v.half, 2 * v.a, 2 * v.b}))] + acc[i]) / 3;
    }
    return out;
}

// Solves Δ_n u = loads on the interior of Tr with u = corner_values on ∂Tr
// (order of GasketLevel::boundary()). Exact for rational T.
template <class T>
std::vector<T> solve_dirichlet(const Hierarchy& H, const std::vector<T>& loads,
                               const std::array<T, 4>& corner_values = {}) {
    const int top = H.finest_level();
    const int bottom = H.coarsest_level();
    std::vector<std::vector<T>> per_level(static_cast<std::size_t>(top - bottom + 1));
    per_level.back() = loads;
    for (int k = top; k > bottom; --k)
        per_level[static_cast<std::size_t>(k - 1 - bottom)] =
            decimate_loads<T>(H.at(k - 1), H.at(k), per_level[static_cast<std::size_t>(k - bottom)]);

    const GasketLevel& g0 = H.at(bottom);
    std::vector<T> u(g0.size(), T(0));
    T mean = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        u[g0.boundary()[k]] = corner_values[k];
        mean += corner_values[k];
    }
    mean /= 4;
    u[g0.origin()] = mean - per_level.front()[g0.origin()] * pow5<T>(-bottom);
    for (int k = bottom; k < top; ++k)
        u = refine<T>(H.at(k), u, H.at(k + 1), &per_level[static_cast<std::size_t>(k + 1 - bottom)]);
    return u;
}

}  // namespace gasket
