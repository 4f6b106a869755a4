#include "gasket/density.hpp"
#include "gasket/errors.hpp"

#include <doctest.h>

using namespace gasket;

namespace {

DensitySpec single(const std::string& coeff, Vertex c, int level, int radius_log2, int bound_L) {
    DensitySpec s;
    s.bound_L = bound_L;
    s.terms.push_back({parse_rational(coeff), c, level, radius_log2});
    return s;
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("1.25") == Rational(5, 4));
    CHECK(parse_rational("7/3") == Rational(7, 3));
    CHECK(parse_rational("-2") == -2);
    CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
}

TEST_CASE("constant ball averages") {
    const DensitySpec spec = single("3", {}, 0, 0, 1);
    for (int n = 0; n <= 3; ++n) {
        const auto ctx = GasketLevel::make(n, 1);
        const auto exact = discretize_avg_exact(spec, *ctx);
        const auto floored = discretize_avg(spec, ctx, true);
        const std::int64_t R = std::int64_t{1} << n;
        for (std::size_t i = 0; i < ctx->size(); ++i) {
            const Vertex& v = ctx->vertex(i);
            if (v.a + v.b < R) {
                CHECK(exact[i] == 3);
            } else if (v.a + v.b == R && (v.a == 0 || v.b == 0)) {
                CHECK(exact[i] == Rational(3, 2));
                CHECK(floored.values[i] == 1.0);
            } else if (v.a + v.b == R) {
                CHECK(exact[i] == 3);  // both incident cells inside the ball
            } else {
                CHECK(exact[i] == 0);
            }
        }
    }
}

TEST_CASE("integral and discrete mass") {
    CHECK(integral(single("1", {}, 0, 0, 1)) == 1);
    CHECK(integral(single("1", {}, 0, 2, 2)) == 9);
    CHECK(integral(ball_density(0, 2)) == 9);
    const DensitySpec unit = single("1", {}, 0, 0, 1);
    const auto f = discretize_avg(unit, GasketLevel::make(6, 1), false);
    // Level-n vertices carry disjoint double triangles of scale n+1, each of
    // measure 3^-(n+1); the 3^-n weighted sum therefore tends to 3 ∫σ dμ.
    CHECK(std::abs(measure_weighted_mass(f) - 1.0) < 0.05);
    CHECK(std::abs(rescaled_mass(f) - 3.0) < 0.15);
    const DensityField empty{GasketLevel::make(0, 0), std::vector<double>(5, 0.0), false};
    CHECK(total_mass(empty) == 0.0);
}

TEST_CASE("off-center balls are decomposed at a finer resolution") {
    // Ball of radius 1/2 around the level-1 vertex (1/2, 0).
    const DensitySpec spec = single("1", {Half::Plus, 1, 0}, 1, -1, 1);
    CHECK(spec.exact_balls() == false);
    const Rational mu = integral(spec);
    CHECK(mu > Rational(1, 3));  // the three cells touching the center, at least
    CHECK(mu < 1);
    // Refining the representation can only add cells.
    DensitySpec finer = spec;
    finer.resolution_override = spec.resolution() + 2;
    CHECK(integral(finer) >= mu);
    CHECK(to_double(integral(finer) - mu) < 0.02);
}

TEST_CASE("monotone in the coefficients") {
    const auto ctx = GasketLevel::make(3, 2);
    DensitySpec lo = single("1", {Half::Minus, 0, 2}, 1, 0, 2);
    DensitySpec hi = lo;
    hi.terms[0].coeff = 2;
    hi.terms.push_back({Rational(1), {}, 0, 1});
    const auto a = discretize_avg_exact(lo, *ctx);
    const auto b = discretize_avg_exact(hi, *ctx);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] <= b[i]);
}

TEST_CASE("support and JSON") {
    CHECK_THROWS_WITH(check_support(single("1", {}, 0, 2, 1), 1), doctest::Contains("support exceeds domain"));
    CHECK_THROWS_WITH(check_support(single("1", {Half::Plus, 1, 0}, 0, 0, 0), 0),
                      doctest::Contains("support exceeds domain"));
    CHECK_NOTHROW(check_support(single("1", {Half::Plus, 1, 0}, 0, 0, 2), 2));
    const std::string text =
        R"({"bound_L": 1, "terms": [{"coeff": "3", "center": {"half":"+","a":0,"b":0,"level":0}, "radius_log2": 0}]})";
    const DensitySpec s = parse_density_json(text);
    CHECK(s.terms.size() == 1);
    CHECK(s.terms[0].coeff == 3);
    const DensitySpec round = parse_density_json(density_to_json(s));
    CHECK(round.terms[0].coeff == 3);
    CHECK(round.bound_L == 1);
    CHECK_THROWS_AS(parse_density_json("{"), ConfigError);
    CHECK_THROWS_AS(parse_density_json(R"({"bound_L": 1, "terms": [{"coeff": "-1", "center": {"half":"+","a":0,"b":0}, "radius_log2": 0}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_density_json(R"({"bound_L": 3, "terms": [{"coeff": "1", "center": {"half":"+","a":3,"b":3,"level":0}, "radius_log2": 0}]})"),
                    ConfigError);
    CHECK_THROWS_WITH(load_density("/nonexistent/density.json"), doctest::Contains("/nonexistent/density.json"));
}

TEST_CASE("initial domain holds twice the mass") {
    const DensitySpec s = ball_density(1, 3);  // mass 27
    const int L = initial_domain(s);
    CHECK(L >= s.bound_L + 1);
    CHECK(std::pow(3.0, L) >= 54);
}
