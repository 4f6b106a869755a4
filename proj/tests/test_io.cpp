#include "gasket/cluster_io.hpp"
#include "gasket/density.hpp"
#include "gasket/errors.hpp"
#include "gasket/obstacle.hpp"
#include "gasket/svg.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>
#include <regex>

using namespace gasket;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t k = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++k;
    return k;
}

std::vector<char> origin_star(const GasketLevel& ctx) {
    std::vector<char> m(ctx.size(), 0);
    m[ctx.origin()] = 1;
    for (auto s : ctx.slots(ctx.origin()))
        if (s != kNoNeighbor) m[static_cast<std::size_t>(s)] = 1;
    return m;
}

}  // namespace

TEST_CASE("cluster csv round trip") {
    const auto ctx = GasketLevel::make(4, 2);
    std::mt19937_64 rng(7);
    std::vector<char> m(ctx->size());
    for (auto& c : m) c = static_cast<char>(rng() % 2);
    const std::string text = cluster_csv(*ctx, m, {"model=test"});
    CHECK(text.rfind("# level=4 domain_L=2\n", 0) == 0);
    const ClusterFile f = parse_cluster_csv(text);
    CHECK(f.level == 4);
    CHECK(f.domain_L == 2);
    CHECK(to_members(f, *ctx) == m);
    CHECK(cluster_csv(*ctx, to_members(f, *ctx), {"model=test"}) == text);

    const auto path = std::filesystem::temp_directory_path() / "gasket_io_roundtrip.csv";
    write_text(path.string(), text);
    CHECK(to_members(load_cluster_csv(path.string()), *ctx) == m);
    std::filesystem::remove(path);
}

TEST_CASE("field csv is bit exact") {
    const auto ctx = GasketLevel::make(3, 1);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    Field v(ctx->size());
    for (auto& x : v) x = u(rng);
    v[0] = 0.1;
    v[1] = -0.0;
    v[2] = 5e-324;
    const FieldFile f = parse_field_csv(field_csv(*ctx, v));
    REQUIRE(f.values.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(f.values[i] == v[i]);
        CHECK(f.vertices[i] == ctx->vertex(i));
    }
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("malformed cluster files") {
    const auto ctx = GasketLevel::make(2, 1);
    CHECK_THROWS_AS(parse_cluster_csv("+,0,0\n"), ConfigError);
    CHECK_THROWS_AS(parse_cluster_csv("# level=2 domain_L=1\n*,0,0\n"), ConfigError);
    CHECK_THROWS_AS(parse_cluster_csv("# level=2 domain_L=1\n+,0\n"), ConfigError);
    CHECK_THROWS_AS(parse_cluster_csv("# level=2 domain_L=1\n+,x,0\n"), ConfigError);
    // (3,3) at depth 3 lies inside the central hole.
    CHECK_THROWS_AS(to_members(parse_cluster_csv("# level=2 domain_L=1\n+,3,3\n"), *ctx), ConfigError);
    CHECK_THROWS_AS(to_members(parse_cluster_csv("# level=3 domain_L=1\n+,0,0\n"), *ctx), ConfigError);
    CHECK_THROWS_AS(load_cluster_csv("/nonexistent/gasket.csv"), ConfigError);
}

TEST_CASE("svg structure") {
    const auto ctx = GasketLevel::make(3, 1);
    SUBCASE("origin and its neighbors") {
        const std::string svg = render_svg(*ctx, {{"star", origin_star(*ctx)}});
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(count(svg, "<circle") == 5);
        CHECK(svg.find("<g id=\"outline\"") != std::string::npos);
        CHECK(svg.find("star: 5") != std::string::npos);
    }
    SUBCASE("empty cluster draws the wireframe only") {
        const std::string svg = render_svg(*ctx, {{"none", std::vector<char>(ctx->size(), 0)}});
        CHECK(count(svg, "<circle") == 0);
        const auto layer = svg.find("<g id=\"layer0\"");
        REQUIRE(layer != std::string::npos);
        CHECK(count(svg.substr(layer, svg.find("</g>", layer) - layer), "<polygon") == 0);
        CHECK(count(svg, "<polygon") > 2);
    }
    SUBCASE("two layers and escaping") {
        std::vector<char> all(ctx->size(), 1);
        const std::string svg = render_svg(*ctx, {{"a<b", all}, {"star", origin_star(*ctx)}});
        CHECK(svg.find("<g id=\"layer0\"") != std::string::npos);
        CHECK(svg.find("<g id=\"layer1\"") != std::string::npos);
        CHECK(svg.find("a&lt;b") != std::string::npos);
    }
    SUBCASE("layer size mismatch") {
        CHECK_THROWS_AS(render_svg(*ctx, {{"bad", std::vector<char>(3, 1)}}), std::invalid_argument);
    }
    SUBCASE("deterministic") {
        CHECK(render_svg(*ctx, {{"s", origin_star(*ctx)}}) == render_svg(*ctx, {{"s", origin_star(*ctx)}}));
    }
}

TEST_CASE("svg of the two-ball cluster stays inside the viewBox") {
    const DensitySpec spec = parse_density_json(R"({"bound_L": 2, "terms": [
        {"coeff": "1", "center": {"half": "-", "a": 2, "b": 0, "level": 0}, "radius_log2": 0},
        {"coeff": "1", "center": {"half": "-", "a": 1, "b": 0, "level": 1}, "radius_log2": 1}]})");
    const auto ctx = GasketLevel::make(2, initial_domain(spec));
    const ObstacleProblem p = solve_obstacle(discretize_avg(spec, ctx, false));
    const std::string svg = render_svg(*ctx, {{"D", p.extended}});

    std::smatch vb;
    REQUIRE(std::regex_search(svg, vb, std::regex("viewBox=\"0 0 ([0-9.]+) ([0-9.]+)\"")));
    const double w = std::stod(vb[1]), h = std::stod(vb[2]);
    const std::regex pt("(-?[0-9.]+),(-?[0-9.]+)");
    std::size_t points = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), pt); it != std::sregex_iterator(); ++it, ++points) {
        const double x = std::stod((*it)[1]), y = std::stod((*it)[2]);
        CHECK(x >= 0);
        CHECK(x <= w);
        CHECK(y >= 0);
        CHECK(y <= h);
    }
    CHECK(points > 0);
}
