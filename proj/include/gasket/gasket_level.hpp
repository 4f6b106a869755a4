#pragma once

#include "gasket/lattice.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gasket {

inline constexpr std::int32_t kNoNeighbor = -1;
inline constexpr int kMaxDepth = 12;

// SG_n ∩ Tr for Tr = B(0, 2^L): enumeration, adjacency and boundary.
// Immutable after construction. Negative n (down to -L) gives the coarse graphs
// used by spline constructions.
class GasketLevel {
public:
    GasketLevel(int n, int L);

    static std::shared_ptr<const GasketLevel> make(int n, int L) {
        return std::make_shared<const GasketLevel>(n, L);
    }

    int level() const { return n_; }
    int domain_L() const { return L_; }
    int depth() const { return n_ + L_; }
    std::int64_t side() const { return side_; }
    std::size_t size() const { return vertices_.size(); }

    double mesh() const;             // δ_n = 2^-n
    double volume_weight() const;    // δ_n^α = 3^-n
    double laplacian_scale() const;  // δ_n^-β = 5^n
    double time_weight() const;      // δ_n^β = 5^-n

    std::span<const Vertex> vertices() const { return vertices_; }
    const Vertex& vertex(std::size_t i) const { return vertices_[i]; }

    std::optional<std::size_t> find(const Vertex& v) const;
    // Throws std::invalid_argument("not a gasket vertex") for non-members.
    std::size_t index(const Vertex& v) const;
    bool contains(const Vertex& v) const { return find(v).has_value(); }

    // Counterclockwise from the +x direction; missing slots hold kNoNeighbor
    // and only occur on ∂Tr.
    const std::array<std::int32_t, 4>& slots(std::size_t i) const { return slots_[i]; }
    int degree(std::size_t i) const { return degree_[i]; }
    bool is_boundary(std::size_t i) const { return boundary_[i] != 0; }
    const std::vector<std::size_t>& boundary() const { return boundary_list_; }
    std::vector<Vertex> neighbors(const Vertex& v) const;

    std::size_t origin() const { return 0; }

    // Interior vertices in enumeration order and the inverse map (-1 on ∂Tr).
    const std::vector<std::size_t>& interior() const { return interior_; }
    const std::vector<std::int32_t>& interior_index() const { return interior_index_; }

private:
    std::size_t lookup_offset(Half h, std::int64_t a, std::int64_t b) const;

    int n_;
    int L_;
    std::int64_t side_;
    std::vector<Vertex> vertices_;
    std::vector<std::int32_t> lookup_;
    std::vector<std::array<std::int32_t, 4>> slots_;
    std::vector<std::uint8_t> degree_;
    std::vector<std::uint8_t> boundary_;
    std::vector<std::size_t> boundary_list_;
    std::vector<std::size_t> interior_;
    std::vector<std::int32_t> interior_index_;
};

using LevelPtr = std::shared_ptr<const GasketLevel>;

// Breadth-first ball in the graph metric, as sorted vertex indices.
std::vector<std::size_t> graph_ball(const GasketLevel& ctx, std::size_t center, int radius);

// Closed-triangle vertex count (3^{d+1}+3)/2 and double-triangle count 3^{d+1}+2.
std::int64_t triangle_vertex_count(int depth);
std::int64_t double_triangle_vertex_count(int depth);

}  // namespace gasket
