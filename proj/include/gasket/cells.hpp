#pragma once

#include "gasket/gasket_level.hpp"
#include "gasket/lattice.hpp"
#include "gasket/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace gasket {

// Closed upward triangle of side 2^-scale; (a, b) is its lower-left corner in
// units of 2^-scale. Mirrored for the Minus half.
struct Cell {
    int scale = 0;
    Half half = Half::Plus;
    std::int64_t a = 0;
    std::int64_t b = 0;
    friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

    // Corners in scale units: lower-left, right, top.
    std::array<Vertex, 3> corners() const {
        return {canonical({half, a, b}), canonical({half, a + 1, b}), canonical({half, a, b + 1})};
    }
    Cell parent() const { return {scale - 1, half, a >> 1, b >> 1}; }
    // Corner subcells at A, B, C.
    std::array<Cell, 3> children() const {
        return {Cell{scale + 1, half, 2 * a, 2 * b}, Cell{scale + 1, half, 2 * a + 1, 2 * b},
                Cell{scale + 1, half, 2 * a, 2 * b + 1}};
    }
};

bool cell_in_tr(const Cell& c, int L);

// μ(single cell of scale k) = 3^-k / 2.
Rational cell_measure(int k);

// All scale-k cells of Tr = B(0, 2^L): 2 * 3^{k+L} of them, deterministic order.
std::vector<Cell> cells_in_tr(int k, int L);

// Cells of the unbounded gasket at `scale` containing the level-`level` point v.
// One cell for points off the scale-`scale` grid, two for grid points (origin included).
std::vector<Cell> cells_containing(const Vertex& v, int level, int scale);

// Both scale-k cells incident to the vertex, clipped to Tr (one at the corners of Tr).
// Throws if k is coarser than the vertex level.
std::vector<Cell> double_triangle(const Vertex& v, const GasketLevel& ctx, int k);

// Scale-k cells of Tr (k <= n) all of whose level-n vertices lie in `members`
// (a flag per vertex of ctx).
std::vector<Cell> cells_of(const std::vector<char>& members, const GasketLevel& ctx, int k);

// Euclidean distance from a point to the solid triangle of a cell.
double distance_to_cell(const Point& p, const Cell& c);

// A finite union of scale-k cells inside Tr with a count tree for fast distance
// queries and boundary counting.
class CellRegion {
public:
    CellRegion(int scale, int L, const std::vector<Cell>& cells);

    int scale() const { return scale_; }
    int domain_L() const { return L_; }
    std::size_t cell_count() const { return cells_.size(); }
    const std::vector<Cell>& cells() const { return cells_; }
    Rational measure() const;

    bool contains_cell(const Cell& c) const;  // c at the region scale
    // Does the closed region (resp. the closure of its complement in the gasket,
    // including the gasket beyond Tr) contain the point?
    bool point_in_region(const Vertex& v, int level) const;
    bool point_in_complement(const Vertex& v, int level) const;

    double distance_to_region(const Point& p) const;
    double distance_to_complement(const Point& p) const;

    // Number of scale-j cells of Tr meeting both the closed region and the
    // closure of its complement.
    std::int64_t boundary_cell_count(int j) const;

private:
    std::int64_t count_in(const Cell& c) const;
    std::int64_t full_count(const Cell& c) const;
    double search(const Point& p, bool want_region) const;

    int scale_;
    int L_;
    std::vector<Cell> cells_;
    std::unordered_map<std::uint64_t, std::int64_t> counts_;
};

}  // namespace gasket
