#include "gasket/gasket_level.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace gasket {

namespace {

struct Step {
    std::int64_t da;
    std::int64_t db;
    int sector;  // angle in units of 60 degrees for the Plus half
};

// Lattice directions and the cell whose presence carries the edge, relative to p.
struct Move {
    Step step;
    std::int64_t ca;
    std::int64_t cb;
};

constexpr std::array<Move, 6> kMoves{{
    {{1, 0, 0}, 0, 0},
    {{0, 1, 1}, 0, 0},
    {{-1, 1, 2}, -1, 0},
    {{-1, 0, 3}, -1, 0},
    {{0, -1, 4}, 0, -1},
    {{1, -1, 5}, 0, -1},
}};

int mirrored_sector(int s) { return ((3 - s) % 6 + 6) % 6; }

}  // namespace

GasketLevel::GasketLevel(int n, int L) : n_(n), L_(L) {
    if (n + L < 0) throw std::invalid_argument("level below the coarsest level of Tr");
    if (n + L > kMaxDepth) throw std::invalid_argument("gasket depth " + std::to_string(n + L) + " too large");
    side_ = std::int64_t{1} << (n + L);
    const std::int64_t S = side_;
    lookup_.assign(2 * static_cast<std::size_t>((S + 1) * (S + 2) / 2), -1);

    for (Half h : {Half::Plus, Half::Minus}) {
        for (std::int64_t b = 0; b <= S; ++b) {
            for (std::int64_t a = 0; a + b <= S; ++a) {
                if (h == Half::Minus && a == 0 && b == 0) continue;
                const Vertex v{h, a, b};
                if (!is_member_by_cells(v, n + L)) continue;
                lookup_[lookup_offset(h, a, b)] = static_cast<std::int32_t>(vertices_.size());
                vertices_.push_back(v);
            }
        }
    }
    lookup_[lookup_offset(Half::Minus, 0, 0)] = 0;

    const std::size_t V = vertices_.size();
    slots_.assign(V, {kNoNeighbor, kNoNeighbor, kNoNeighbor, kNoNeighbor});
    degree_.assign(V, 0);
    boundary_.assign(V, 0);
    interior_index_.assign(V, -1);

    for (std::size_t i = 0; i < V; ++i) {
        const Vertex& v = vertices_[i];
        std::vector<std::pair<int, std::int32_t>> found;
        auto scan = [&](Half h) {
            for (const Move& m : kMoves) {
                if (!cell_in_domain(v.a + m.ca, v.b + m.cb, S)) continue;
                const Vertex w = canonical({h, v.a + m.step.da, v.b + m.step.db});
                const int sector = h == Half::Plus ? m.step.sector : mirrored_sector(m.step.sector);
                found.emplace_back(sector, static_cast<std::int32_t>(index(w)));
            }
        };
        scan(v.half);
        if (v.is_origin()) scan(Half::Minus);
        std::sort(found.begin(), found.end());
        if (found.size() > 4) throw std::logic_error("vertex with more than four neighbors");
        for (std::size_t k = 0; k < found.size(); ++k) slots_[i][k] = found[k].second;
        degree_[i] = static_cast<std::uint8_t>(found.size());
    }

    for (Half h : {Half::Plus, Half::Minus}) {
        for (const Vertex c : {Vertex{h, S, 0}, Vertex{h, 0, S}}) {
            const std::size_t i = index(c);
            boundary_[i] = 1;
            boundary_list_.push_back(i);
        }
    }
    std::sort(boundary_list_.begin(), boundary_list_.end());
    for (std::size_t i = 0; i < V; ++i) {
        if (boundary_[i]) continue;
        interior_index_[i] = static_cast<std::int32_t>(interior_.size());
        interior_.push_back(i);
    }
}

std::size_t GasketLevel::lookup_offset(Half h, std::int64_t a, std::int64_t b) const {
    const std::int64_t S = side_;
    const std::int64_t row = b * (S + 1) - b * (b - 1) / 2;
    const std::int64_t per_half = (S + 1) * (S + 2) / 2;
    return static_cast<std::size_t>((h == Half::Plus ? 0 : per_half) + row + a);
}

double GasketLevel::mesh() const { return std::ldexp(1.0, -n_); }
double GasketLevel::volume_weight() const { return std::pow(3.0, -n_); }
double GasketLevel::laplacian_scale() const { return std::pow(5.0, n_); }
double GasketLevel::time_weight() const { return std::pow(5.0, -n_); }

std::optional<std::size_t> GasketLevel::find(const Vertex& v) const {
    if (v.a < 0 || v.b < 0 || v.a + v.b > side_) return std::nullopt;
    const std::int32_t i = lookup_[lookup_offset(v.half, v.a, v.b)];
    if (i < 0) return std::nullopt;
    return static_cast<std::size_t>(i);
}

std::size_t GasketLevel::index(const Vertex& v) const {
    const auto i = find(v);
    if (!i) throw std::invalid_argument("not a gasket vertex: " + to_string(v));
    return *i;
}

std::vector<Vertex> GasketLevel::neighbors(const Vertex& v) const {
    const std::size_t i = index(v);
    std::vector<Vertex> out;
    for (std::int32_t j : slots_[i])
        if (j != kNoNeighbor) out.push_back(vertices_[static_cast<std::size_t>(j)]);
    return out;
}

std::vector<std::size_t> graph_ball(const GasketLevel& ctx, std::size_t center, int radius) {
    std::vector<int> dist(ctx.size(), -1);
    std::deque<std::size_t> queue{center};
    dist[center] = 0;
    std::vector<std::size_t> out;
    while (!queue.empty()) {
        const std::size_t x = queue.front();
        queue.pop_front();
        out.push_back(x);
        if (dist[x] == radius) continue;
        for (std::int32_t y : ctx.slots(x)) {
            if (y == kNoNeighbor || dist[static_cast<std::size_t>(y)] >= 0) continue;
            dist[static_cast<std::size_t>(y)] = dist[x] + 1;
            queue.push_back(static_cast<std::size_t>(y));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t triangle_vertex_count(int depth) {
    std::int64_t p = 1;
    for (int i = 0; i <= depth; ++i) p *= 3;
    return (p + 3) / 2;
}

std::int64_t double_triangle_vertex_count(int depth) {
    std::int64_t p = 1;
    for (int i = 0; i <= depth; ++i) p *= 3;
    return p + 2;
}

}  // namespace gasket
