#include "gasket/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gasket {

std::string to_string(const Vertex& v) {
    return std::string(v.half == Half::Plus ? "+" : "-") + "(" + std::to_string(v.a) + "," +
           std::to_string(v.b) + ")";
}

namespace {

// Point (a, b) in the closed triangle of side 2^k with corner at the local origin.
bool in_gasket_triangle(std::int64_t a, std::int64_t b, int k) {
    for (;;) {
        if (a < 0 || b < 0) return false;
        const std::int64_t side = std::int64_t{1} << k;
        if (a + b > side) return false;
        if (k == 0) return true;
        const std::int64_t h = side >> 1;
        if (a + b <= h) {
        } else if (a >= h) {
            a -= h;
        } else if (b >= h) {
            b -= h;
        } else {
            return false;  // strictly inside the removed middle triangle
        }
        --k;
    }
}

}  // namespace

bool is_member(const Vertex& v, int depth) {
    if (depth < 0) return false;
    return in_gasket_triangle(v.a, v.b, depth);
}

bool is_member_by_cells(const Vertex& v, int depth) {
    if (depth < 0 || v.a < 0 || v.b < 0) return false;
    const std::int64_t side = std::int64_t{1} << depth;
    if (v.a + v.b > side) return false;
    return cell_in_domain(v.a, v.b, side) || cell_in_domain(v.a - 1, v.b, side) ||
           cell_in_domain(v.a, v.b - 1, side);
}

Point planar(const Vertex& v, int n) {
    const double mesh = std::ldexp(1.0, -n);
    const PlanarKey k = planar_key(v);
    return {0.5 * mesh * static_cast<double>(k.X), 0.5 * std::sqrt(3.0) * mesh * static_cast<double>(k.Y)};
}

Vertex relevel(const Vertex& v, int from_level, int to_level) {
    if (to_level >= from_level) {
        const int s = to_level - from_level;
        return canonical({v.half, v.a << s, v.b << s});
    }
    const int s = from_level - to_level;
    const std::int64_t mask = (std::int64_t{1} << s) - 1;
    if ((v.a & mask) != 0 || (v.b & mask) != 0)
        throw std::invalid_argument("vertex " + to_string(v) + " is not on level " + std::to_string(to_level));
    return canonical({v.half, v.a >> s, v.b >> s});
}

int vertex_level(const Vertex& v, int n) {
    if (v.is_origin()) return kOriginLevel;
    const auto ua = static_cast<std::uint64_t>(v.a);
    const auto ub = static_cast<std::uint64_t>(v.b);
    const int ta = ua == 0 ? 64 : std::countr_zero(ua);
    const int tb = ub == 0 ? 64 : std::countr_zero(ub);
    return n - std::min(ta, tb);
}

}  // namespace gasket
