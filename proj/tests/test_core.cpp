#include "gasket/cells.hpp"
#include "gasket/gasket_level.hpp"
#include "gasket/lattice.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace gasket;

namespace {

// Iterated union of the unit triangle and its translates by 2^k e1, 2^k e2.
std::set<std::pair<std::int64_t, std::int64_t>> iterated_union(int depth) {
    std::set<std::pair<std::int64_t, std::int64_t>> F{{0, 0}, {1, 0}, {0, 1}};
    for (int k = 0; k < depth; ++k) {
        const std::int64_t s = std::int64_t{1} << k;
        auto next = F;
        for (auto [a, b] : F) {
            next.insert({a + s, b});
            next.insert({a, b + s});
        }
        F = std::move(next);
    }
    return F;
}

// Unit triangles of the iterated union, by lower-left corner.
std::set<std::pair<std::int64_t, std::int64_t>> unit_triangles(int depth) {
    std::set<std::pair<std::int64_t, std::int64_t>> T{{0, 0}};
    for (int k = 0; k < depth; ++k) {
        const std::int64_t s = std::int64_t{1} << k;
        auto next = T;
        for (auto [a, b] : T) {
            next.insert({a + s, b});
            next.insert({a, b + s});
        }
        T = std::move(next);
    }
    return T;
}

// Edge sets of the level graph: the three sides of every unit triangle, both halves.
std::set<std::pair<Vertex, Vertex>> brute_edges(int depth) {
    std::set<std::pair<Vertex, Vertex>> E;
    for (auto [a, b] : unit_triangles(depth)) {
        for (Half h : {Half::Plus, Half::Minus}) {
            const Vertex p = canonical({h, a, b}), q = canonical({h, a + 1, b}), r = canonical({h, a, b + 1});
            for (auto [u, v] : {std::pair{p, q}, std::pair{p, r}, std::pair{q, r}}) {
                E.insert({u, v});
                E.insert({v, u});
            }
        }
    }
    return E;
}

}  // namespace

TEST_CASE("membership agrees with the iterated-union construction") {
    for (int n = 0; n <= 4; ++n) {
        for (int L = 0; L <= 2; ++L) {
            const int D = n + L;
            const auto F = iterated_union(D);
            const std::int64_t S = std::int64_t{1} << D;
            for (Half h : {Half::Plus, Half::Minus}) {
                for (std::int64_t a = 0; a <= S + 1; ++a) {
                    for (std::int64_t b = 0; b <= S + 1; ++b) {
                        const bool expected = F.count({a, b}) > 0;
                        const Vertex v{h, a, b};
                        CHECK(is_member(v, D) == expected);
                        CHECK(is_member_by_cells(v, D) == expected);
                    }
                }
            }
        }
    }
    CHECK(is_member({Half::Plus, 0, 0}, 0));
    CHECK(is_member({Half::Plus, 1, 1}, 2));
    CHECK_FALSE(is_member({Half::Plus, 3, 3}, 3));  // inside the central hole
}

TEST_CASE("vertex counts") {
    CHECK(GasketLevel(0, 0).size() == 5);
    CHECK(GasketLevel(1, 0).size() == 11);
    CHECK(GasketLevel(3, 1).size() == 245);
    for (int d = 0; d <= 8; ++d) {
        CHECK(static_cast<std::int64_t>(iterated_union(d).size()) == triangle_vertex_count(d));
        CHECK(static_cast<std::int64_t>(GasketLevel(d - d / 2, d / 2).size()) == double_triangle_vertex_count(d));
    }
}

TEST_CASE("enumeration order is half, then b, then a") {
    const GasketLevel g(2, 1);
    for (std::size_t i = 1; i < g.size(); ++i) {
        const Vertex& p = g.vertex(i - 1);
        const Vertex& q = g.vertex(i);
        CHECK(std::tie(p.half, p.b, p.a) < std::tie(q.half, q.b, q.a));
    }
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.index(g.vertex(i)) == i);
    CHECK_THROWS_WITH(g.index({Half::Plus, 3, 3}), doctest::Contains("not a gasket vertex"));
}

TEST_CASE("neighbors") {
    const GasketLevel g0(0, 1);
    const auto origin = g0.neighbors({Half::Plus, 0, 0});
    const std::vector<Vertex> expected{
        {Half::Plus, 1, 0}, {Half::Plus, 0, 1}, {Half::Minus, 0, 1}, {Half::Minus, 1, 0}};
    CHECK(origin == expected);

    auto right = g0.neighbors({Half::Plus, 1, 0});
    std::sort(right.begin(), right.end());
    const std::vector<Vertex> want{{Half::Plus, 0, 0}, {Half::Plus, 2, 0}, {Half::Plus, 0, 1}, {Half::Plus, 1, 1}};
    auto sorted_want = want;
    std::sort(sorted_want.begin(), sorted_want.end());
    CHECK(right == sorted_want);

    for (auto [n, L] : {std::pair{3, 2}, std::pair{4, 1}, std::pair{2, 2}}) {
        const GasketLevel g(n, L);
        const auto E = brute_edges(n + L);
        std::size_t boundary = 0;
        for (std::size_t x = 0; x < g.size(); ++x) {
            std::set<Vertex> scan;
            for (auto it = E.lower_bound({g.vertex(x), Vertex{Half::Plus, -1, -1}});
                 it != E.end() && it->first == g.vertex(x); ++it)
                scan.insert(it->second);
            const auto nb = g.neighbors(g.vertex(x));
            CHECK(std::set<Vertex>(nb.begin(), nb.end()) == scan);
            for (const Vertex& y : nb)
                CHECK(dist2_x4(planar_key(g.vertex(x)), planar_key(y)) == 4);
            if (g.is_boundary(x)) {
                ++boundary;
            } else {
                CHECK(g.degree(x) == 4);
            }
            for (const Vertex& y : nb) {
                const auto back = g.neighbors(y);
                CHECK(std::find(back.begin(), back.end(), g.vertex(x)) != back.end());
            }
            // Counterclockwise order from +x.
            double prev = -1;
            for (const Vertex& y : nb) {
                const Point p = planar(g.vertex(x), n), q = planar(y, n);
                double ang = std::atan2(q.y - p.y, q.x - p.x);
                if (ang < -1e-12) ang += 2 * M_PI;
                CHECK(ang > prev);
                prev = ang;
            }
        }
        CHECK(boundary == 4);
    }
}

TEST_CASE("graph ball") {
    const GasketLevel g(0, 1);
    CHECK(graph_ball(g, 0, 0) == std::vector<std::size_t>{0});
    CHECK(graph_ball(g, 0, 1).size() == 5);
    for (int n = 1; n <= 6; ++n) {
        const GasketLevel gn(n, 1);
        const double ratio =
            static_cast<double>(graph_ball(gn, gn.origin(), 1 << n).size()) / std::pow(std::pow(2.0, n), std::log2(3.0));
        CHECK(ratio > 0.25);
        CHECK(ratio < 4.0);
    }
}

TEST_CASE("cell measures") {
    const GasketLevel g(3, 2);
    Rational dt = 0;
    for (const Cell& c : double_triangle({Half::Plus, 0, 0}, g, 0)) dt += cell_measure(c.scale);
    CHECK(dt == 1);
    Rational dt3 = 0;
    for (const Cell& c : double_triangle({Half::Plus, 0, 0}, g, 3)) dt3 += cell_measure(c.scale);
    CHECK(dt3 == Rational(1, 27));
    for (int L = 0; L <= 2; ++L) {
        for (int k = -L; k <= 3; ++k) {
            Rational total = 0;
            for (const Cell& c : cells_in_tr(k, L)) total += cell_measure(c.scale);
            CHECK(total == pow_rational(3, L));
        }
    }
    CHECK(double_triangle({Half::Plus, 32, 0}, g, 4).size() == 1);
    CHECK_THROWS_WITH(double_triangle({Half::Plus, 1, 0}, g, 0), doctest::Contains("cell scale finer"));
}

TEST_CASE("cell region distances") {
    const int L = 1;
    const GasketLevel g(2, L);
    std::vector<char> members(g.size(), 0);
    for (std::size_t x = 0; x < g.size(); ++x) {
        const PlanarKey p = planar_key(g.vertex(x));
        members[x] = p.X * p.X + 3 * p.Y * p.Y <= 4 * 16 ? 1 : 0;  // B(0, 1) in mesh 1/4
    }
    const CellRegion region(2, L, cells_of(members, g, 2));
    CHECK(region.measure() == 1);
    CHECK(region.distance_to_region({0.0, 0.0}) == 0.0);
    CHECK(region.distance_to_complement({0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(region.distance_to_region({2.0, 0.0}) == doctest::Approx(1.0));
    CHECK(region.point_in_complement({Half::Plus, 4, 0}, 2));
    CHECK(region.point_in_region({Half::Plus, 4, 0}, 2));
    CHECK_FALSE(region.point_in_region({Half::Plus, 6, 0}, 2));
    CHECK(region.boundary_cell_count(0) == 6);  // every cell touches the two inner cells
}
