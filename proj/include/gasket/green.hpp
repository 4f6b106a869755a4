#pragma once

#include "gasket/gasket_level.hpp"
#include "gasket/harmonic.hpp"
#include "gasket/rational.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace gasket {

inline constexpr std::size_t kDenseGreenLimit = 20000;

// Stopped Green function g^n_Tr(x, y) = (3/5)^n * E_x[visits to y before ∂Tr].
class GreenTable {
public:
    GreenTable(LevelPtr ctx, Eigen::MatrixXd interior_values);

    const LevelPtr& ctx() const { return ctx_; }
    double operator()(std::size_t x, std::size_t y) const;
    Field column(std::size_t y) const;
    // g^n f(x) = δ_n^α Σ_y g(x, y) f(y)
    Field apply(const Field& f) const;
    const Eigen::MatrixXd& interior_values() const { return g_; }

private:
    LevelPtr ctx_;
    Eigen::MatrixXd g_;
};

// Sparse LDLT of I - P on the interior, solved against all unit sources.
// Refuses more than kDenseGreenLimit interior vertices.
GreenTable green_stopped(const LevelPtr& ctx);

Field green_apply(const GreenTable& table, const Field& f);

// Same operator without a table: solves Δ_n u = -f with zero boundary values.
Field green_apply_solve(const LevelPtr& ctx, const Field& f);

void write_green_csv(const GreenTable& table, const std::string& path);

// Truncated spline series for the Green function of Tr, evaluated pointwise.
// Each term couples the new vertices of one level through their splines.
template <class T>
class SplineGreen {
public:
    explicit SplineGreen(const GasketLevel& ctx);

    int depth() const { return depth_; }
    T operator()(std::size_t x, std::size_t y) const { return combine(cache_[x], cache_[y]); }
    // Level-n addresses of the context this evaluator was built for.
    T evaluate(const Vertex& x, const Vertex& y) const { return combine(path(x), path(y)); }
    std::vector<T> table() const;  // row-major V x V

private:
    struct Term {
        std::uint64_t parent = 0;
        std::array<T, 3> mid{};  // weights on the midpoints opposite A, B, C
    };
    struct Path {
        T top{};
        std::vector<Term> terms;
    };
    Path path(const Vertex& v) const;
    T combine(const Path& p, const Path& q) const;

    int L_;
    int depth_;
    std::size_t size_;
    std::vector<T> coeff_;
    T top_coeff_;
    std::vector<Path> cache_;
};

}  // namespace gasket

#include "gasket/green_spline_impl.hpp"
