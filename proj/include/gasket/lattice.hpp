#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace gasket {

enum class Half : std::uint8_t { Plus = 0, Minus = 1 };

// Lattice address in units of the mesh 2^-n of some level n:
// planar point 2^-n * (a + b/2, b*sqrt(3)/2), x mirrored for Minus.
// The origin is stored as Plus.
struct Vertex {
    Half half = Half::Plus;
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr bool is_origin() const { return a == 0 && b == 0; }
    friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

constexpr Vertex canonical(Vertex v) {
    if (v.a == 0 && v.b == 0) v.half = Half::Plus;
    return v;
}

std::string to_string(const Vertex& v);

// An upward unit cell with lower-left corner (a, b) belongs to the unbounded
// half-gasket. Holds at every scale.
constexpr bool cell_exists(std::int64_t a, std::int64_t b) {
    return a >= 0 && b >= 0 && (a & b) == 0;
}

// Same, restricted to the half-triangle of lattice side `side`.
constexpr bool cell_in_domain(std::int64_t a, std::int64_t b, std::int64_t side) {
    return cell_exists(a, b) && a + b < side;
}

// Membership in SG_n ∩ Tr for Tr of lattice side 2^depth, depth = n + L.
// Recursive descent through corner subtriangles.
bool is_member(const Vertex& v, int depth);

// Same predicate through the cell rule; used as the fast path by GasketLevel.
bool is_member_by_cells(const Vertex& v, int depth);

// Doubled planar coordinates in mesh units: x = X*mesh/2, y = Y*mesh*sqrt(3)/2.
struct PlanarKey {
    std::int64_t X = 0;
    std::int64_t Y = 0;
    friend constexpr auto operator<=>(const PlanarKey&, const PlanarKey&) = default;
};

constexpr PlanarKey planar_key(const Vertex& v) {
    const std::int64_t X = 2 * v.a + v.b;
    return {v.half == Half::Plus ? X : -X, v.b};
}

// 4*|p-q|^2 / mesh^2, exact.
constexpr std::int64_t dist2_x4(const PlanarKey& p, const PlanarKey& q) {
    const std::int64_t dx = p.X - q.X;
    const std::int64_t dy = p.Y - q.Y;
    return dx * dx + 3 * dy * dy;
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Physical coordinates of a level-n address.
Point planar(const Vertex& v, int n);

// Address of the same point at another level; throws if not representable.
Vertex relevel(const Vertex& v, int from_level, int to_level);

// Coarsest level at which the point is a vertex (assuming membership at `n`).
// The origin belongs to every level.
constexpr int kOriginLevel = std::numeric_limits<int>::min() / 2;
int vertex_level(const Vertex& v, int n);

}  // namespace gasket
