#include "gasket/cells.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace gasket {

namespace {

std::uint64_t cell_key(const Cell& c, int L) {
    const auto depth = static_cast<std::uint64_t>(c.scale + L);
    return (depth << 58) | (static_cast<std::uint64_t>(c.half) << 57) |
           (static_cast<std::uint64_t>(c.a) << 28) | static_cast<std::uint64_t>(c.b);
}

Point corner_point(const Vertex& v, int scale) { return planar(v, scale); }

double segment_distance(const Point& p, const Point& a, const Point& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double wx = p.x - a.x, wy = p.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? (wx * vx + wy * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::sqrt(dx * dx + dy * dy);
}

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

bool cell_in_tr(const Cell& c, int L) {
    if (c.scale + L < 0) return false;
    return cell_in_domain(c.a, c.b, std::int64_t{1} << (c.scale + L));
}

Rational cell_measure(int k) { return pow_rational(3, -k) / 2; }

std::vector<Cell> cells_in_tr(int k, int L) {
    if (k + L < 0) throw std::invalid_argument("cell scale coarser than Tr");
    const std::int64_t S = std::int64_t{1} << (k + L);
    std::vector<Cell> out;
    for (Half h : {Half::Plus, Half::Minus})
        for (std::int64_t b = 0; b < S; ++b)
            for (std::int64_t a = 0; a + b < S; ++a)
                if (cell_exists(a, b)) out.push_back({k, h, a, b});
    return out;
}

std::vector<Cell> cells_containing(const Vertex& v, int level, int scale) {
    const Vertex x = level >= scale ? v : relevel(v, level, scale);
    const int s = std::max(0, level - scale);
    const std::int64_t side = std::int64_t{1} << s;
    const std::int64_t a0 = x.a >> s, b0 = x.b >> s;
    const std::int64_t ra = x.a - (a0 << s), rb = x.b - (b0 << s);
    std::vector<Cell> out;
    auto consider = [&](Half h, std::int64_t ca, std::int64_t cb) {
        if (!cell_exists(ca, cb)) return;
        const std::int64_t pa = x.a - (ca << s), pb = x.b - (cb << s);
        if (pa < 0 || pb < 0 || pa + pb > side) return;
        const Cell c{scale, h, ca, cb};
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    consider(x.half, a0, b0);
    if (ra == 0) consider(x.half, a0 - 1, b0);
    if (rb == 0) consider(x.half, a0, b0 - 1);
    if (x.is_origin()) consider(Half::Minus, 0, 0);
    return out;
}

std::vector<Cell> double_triangle(const Vertex& v, const GasketLevel& ctx, int k) {
    const int lv = vertex_level(v, ctx.level());
    if (k < lv) throw std::invalid_argument("cell scale finer than vertex level required");
    const Vertex x = relevel(v, ctx.level(), k);
    std::vector<Cell> out;
    for (const Cell& c : cells_containing(x, k, k))
        if (cell_in_tr(c, ctx.domain_L())) out.push_back(c);
    return out;
}

std::vector<Cell> cells_of(const std::vector<char>& members, const GasketLevel& ctx, int k) {
    const int n = ctx.level();
    if (k > n) throw std::invalid_argument("cells_of needs a scale no finer than the level");
    const int s = n - k;
    const std::int64_t side = std::int64_t{1} << s;
    std::vector<Cell> out;
    for (const Cell& c : cells_in_tr(k, ctx.domain_L())) {
        bool all = true;
        for (std::int64_t rb = 0; rb <= side && all; ++rb) {
            for (std::int64_t ra = 0; ra + rb <= side && all; ++ra) {
                const Vertex v = canonical({c.half, (c.a << s) + ra, (c.b << s) + rb});
                const auto i = ctx.find(v);
                if (!i) continue;
                if (!is_member({Half::Plus, ra, rb}, s)) continue;
                if (!members[*i]) all = false;
            }
        }
        if (all) out.push_back(c);
    }
    return out;
}

double distance_to_cell(const Point& p, const Cell& c) {
    const auto cs = c.corners();
    const Point A = corner_point(cs[0], c.scale);
    const Point B = corner_point(cs[1], c.scale);
    const Point C = corner_point(cs[2], c.scale);
    const double d1 = cross(A, B, p), d2 = cross(B, C, p), d3 = cross(C, A, p);
    const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
    if (!(neg && pos)) return 0.0;
    return std::min({segment_distance(p, A, B), segment_distance(p, B, C), segment_distance(p, C, A)});
}

CellRegion::CellRegion(int scale, int L, const std::vector<Cell>& cells) : scale_(scale), L_(L), cells_(cells) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    for (const Cell& c : cells_) {
        if (c.scale != scale) throw std::invalid_argument("region cells must share one scale");
        if (!cell_in_tr(c, L)) throw std::invalid_argument("region cell outside Tr");
        Cell up = c;
        for (;;) {
            ++counts_[cell_key(up, L)];
            if (up.scale + L == 0) break;
            up = up.parent();
        }
    }
}

Rational CellRegion::measure() const { return cell_measure(scale_) * static_cast<long>(cells_.size()); }

std::int64_t CellRegion::count_in(const Cell& c) const {
    if (c.scale > scale_) {
        Cell up = c;
        while (up.scale > scale_) up = up.parent();
        return contains_cell(up) ? 1 : 0;
    }
    const auto it = counts_.find(cell_key(c, L_));
    return it == counts_.end() ? 0 : it->second;
}

std::int64_t CellRegion::full_count(const Cell& c) const {
    if (c.scale >= scale_) return 1;
    std::int64_t p = 1;
    for (int i = c.scale; i < scale_; ++i) p *= 3;
    return p;
}

bool CellRegion::contains_cell(const Cell& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

bool CellRegion::point_in_region(const Vertex& v, int level) const {
    for (const Cell& c : cells_containing(v, level, scale_))
        if (contains_cell(c)) return true;
    return false;
}

bool CellRegion::point_in_complement(const Vertex& v, int level) const {
    for (const Cell& c : cells_containing(v, level, scale_))
        if (!cell_in_tr(c, L_) || !contains_cell(c)) return true;
    return false;
}

double CellRegion::search(const Point& p, bool want_region) const {
    double best = std::numeric_limits<double>::infinity();
    std::function<void(const Cell&)> visit = [&](const Cell& c) {
        const double lb = distance_to_cell(p, c);
        if (lb >= best) return;
        const std::int64_t cnt = count_in(c);
        const std::int64_t full = full_count(c);
        const std::int64_t wanted = want_region ? cnt : full - cnt;
        if (wanted == 0) return;
        if (wanted == full) {
            best = lb;
            return;
        }
        for (const Cell& ch : c.children()) visit(ch);
    };
    for (Half h : {Half::Plus, Half::Minus}) visit(Cell{-L_, h, 0, 0});
    if (!want_region) {
        // The gasket continues beyond Tr through its four corners.
        for (Half h : {Half::Plus, Half::Minus})
            for (const Cell& c : {Cell{-L_, h, 1, 0}, Cell{-L_, h, 0, 1}}) best = std::min(best, distance_to_cell(p, c));
    }
    return best;
}

double CellRegion::distance_to_region(const Point& p) const { return search(p, true); }
double CellRegion::distance_to_complement(const Point& p) const { return search(p, false); }

std::int64_t CellRegion::boundary_cell_count(int j) const {
    std::int64_t total = 0;
    for (const Cell& c : cells_in_tr(j, L_)) {
        const std::int64_t cnt = count_in(c);
        const std::int64_t full = full_count(c);
        bool has_r = cnt > 0;
        bool has_c = cnt < full;
        if (has_r && has_c) {
            ++total;
            continue;
        }
        for (const Vertex& corner : c.corners()) {
            if (!has_r && point_in_region(corner, j)) has_r = true;
            if (!has_c && point_in_complement(corner, j)) has_c = true;
        }
        if (has_r && has_c) ++total;
    }
    return total;
}

}  // namespace gasket
