#include "gasket/harmonic.hpp"
#include "gasket/refine.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gasket;

namespace {

Field random_field(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Field f(n);
    for (double& v : f) v = u(rng);
    return f;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("laplacian of simple fields") {
    const GasketLevel g(2, 1);
    for (double v : laplacian(Field(g.size(), 2.5), g)) CHECK(v == 0.0);
    const GasketLevel g0(0, 1);
    Field delta(g0.size(), 0.0);
    delta[g0.origin()] = 1.0;
    const Field lap = laplacian(delta, g0, LaplacianScaling::Raw);
    CHECK(lap[g0.origin()] == -1.0);
    for (const Vertex& y : g0.neighbors(g0.vertex(g0.origin()))) CHECK(lap[g0.index(y)] == 0.25);
}

TEST_CASE("energy") {
    const auto coarse = GasketLevel::make(2, 1);
    const Hierarchy H(3, 1);
    CHECK(energy(Field(coarse->size(), 1.0), Field(coarse->size(), 1.0), *coarse) == 0.0);
    // Harmonic extension preserves energy.
    Field f = random_field(H.at(0).size(), 1);
    double prev = energy(f, f, H.at(0));
    for (int m = 0; m < 3; ++m) {
        f = refine<double>(H.at(m), f, H.at(m + 1));
        const double e = energy(f, f, H.at(m + 1));
        CHECK(e == doctest::Approx(prev).epsilon(1e-12));
        prev = e;
    }
    // E(f, ψ_x) = -δ^α Δ_n f(x).
    const GasketLevel& g = H.finest();
    const Field r = random_field(g.size(), 2);
    const Field lap = laplacian(r, g);
    for (std::size_t x : g.interior()) {
        Field psi(g.size(), 0.0);
        psi[x] = 1.0;
        CHECK(energy(r, psi, g) == doctest::Approx(-g.volume_weight() * lap[x]).epsilon(1e-10));
    }
}

TEST_CASE("harmonic extension rule") {
    const auto m1 = harmonic_extend<Rational>(1, 1, 1);
    for (const Rational& v : m1) CHECK(v == 1);
    const auto m2 = harmonic_extend<Rational>(1, 0, 0);
    CHECK(m2[0] == Rational(1, 5));
    CHECK(m2[1] == Rational(2, 5));
    CHECK(m2[2] == Rational(2, 5));
    // Loaded midpoints satisfy the local equations 4 m_i - m_j - m_k = corners - 4 t_i.
    const std::array<Rational, 3> t{Rational(1, 7), Rational(-2, 3), Rational(5)};
    const Rational A = 3, B = -1, C = Rational(1, 2);
    const auto m = harmonic_extend<Rational>(A, B, C, t);
    CHECK(4 * m[0] - m[1] - m[2] == B + C - 4 * t[0]);
    CHECK(4 * m[1] - m[0] - m[2] == A + C - 4 * t[1]);
    CHECK(4 * m[2] - m[0] - m[1] == A + B - 4 * t[2]);
}

TEST_CASE("splines") {
    const Hierarchy H(3, 1);
    const auto psi = spline<Rational>(H, 0, Vertex{});
    const GasketLevel& g1 = H.at(1);
    const auto psi1 = extend<Rational>(H, 0, [&] {
        std::vector<Rational> v(H.at(0).size(), 0);
        v[H.at(0).origin()] = 1;
        return v;
    }());
    CHECK(psi == psi1);
    const auto at1 = [&] {
        std::vector<Rational> v(H.at(0).size(), 0);
        v[H.at(0).origin()] = 1;
        return refine<Rational>(H.at(0), v, g1);
    }();
    CHECK(at1[g1.index({Half::Plus, 1, 0})] == Rational(2, 5));
    // ψ^{(n)} is the indicator at the finest level.
    const auto ind = spline<Rational>(H, 3, Vertex{Half::Minus, 3, 0});
    for (std::size_t i = 0; i < ind.size(); ++i) CHECK(ind[i] == (H.finest().vertex(i) == Vertex{Half::Minus, 3, 0} ? 1 : 0));
    // Partition of unity.
    for (int m = -1; m <= 2; ++m) {
        std::vector<Rational> sum(H.finest().size(), 0);
        for (const Vertex& z : H.at(m).vertices()) {
            const auto s = spline<Rational>(H, m, z);
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += s[i];
        }
        for (const Rational& v : sum) CHECK(v == 1);
    }
}

TEST_CASE("dirichlet solver matches a sparse solve") {
    for (auto [n, L] : {std::pair{0, 0}, std::pair{3, 1}, std::pair{2, 2}}) {
        const auto ctx = GasketLevel::make(n, L);
        const Hierarchy H(ctx);
        const Field loads = random_field(ctx->size(), 7);
        const Field u = solve_dirichlet<double>(H, loads);
        const Field lap = laplacian(u, *ctx);
        for (std::size_t x : ctx->interior()) CHECK(lap[x] == doctest::Approx(loads[x]).epsilon(1e-9).scale(1.0));
        for (std::size_t b : ctx->boundary()) CHECK(u[b] == 0.0);
        std::vector<char> active(ctx->size(), 0);
        Field raw(ctx->size(), 0.0);
        for (std::size_t x : ctx->interior()) {
            active[x] = 1;
            raw[x] = loads[x] / ctx->laplacian_scale();
        }
        const Field v = solve_masked(*ctx, active, raw);
        for (std::size_t x = 0; x < ctx->size(); ++x) CHECK(u[x] == doctest::Approx(v[x]).epsilon(1e-9).scale(1.0));
    }
    // Exact rational mode, with boundary data.
    const Hierarchy H(2, 1);
    std::vector<Rational> loads(H.finest().size(), Rational(4, 3));
    const auto u = solve_dirichlet<Rational>(H, loads, {1, 2, 3, 4});
    const GasketLevel& g = H.finest();
    for (std::size_t x : g.interior()) {
        Rational s = 0;
        for (std::int32_t y : g.slots(x)) s += u[static_cast<std::size_t>(y)];
        CHECK((s / 4 - u[x]) * 25 == Rational(4, 3));
    }
}

TEST_CASE("constant laplacian profiles") {
    const auto p0 = constant_laplacian_profile(GasketLevel::make(0, 0), 1.0, 0);
    CHECK(p0.phi[0] == -1.0);
    for (int L = 0; L <= 2; ++L) {
        const auto ctx = GasketLevel::make(3, L);
        const auto p = constant_laplacian_profile(ctx, 1.0, ctx->origin());
        CHECK(p.phi[ctx->origin()] == doctest::Approx(-std::pow(5.0, L)));
        const Field lap = laplacian(p.phi, *ctx);
        for (std::size_t x : ctx->interior()) CHECK(lap[x] == doctest::Approx(1.0));
        double sup = 0;
        for (double v : p.phi) sup = std::max(sup, v + std::pow(5.0, L));
        CHECK(sup == doctest::Approx(std::pow(5.0, L)));
    }
}

TEST_CASE("exit times") {
    const auto ctx = GasketLevel::make(6, 2);
    const auto p0 = exit_time_profile(*ctx, ctx->origin(), 0);
    CHECK(p0.expected[ctx->origin()] == doctest::Approx(1.0));
    CHECK(p0.phi[ctx->origin()] == 0.0);
    std::vector<double> lr, lt;
    for (int j = 3; j <= 6; ++j) {
        const auto p = exit_time_profile(*ctx, ctx->origin(), 1 << j);
        CHECK(p.phi[ctx->origin()] == 0.0);
        lr.push_back(std::log(static_cast<double>(1 << j)));
        lt.push_back(std::log(p.expected[ctx->origin()]));
    }
    const double beta = std::log2(5.0);
    CHECK(std::abs(slope(lr, lt) - beta) < 0.05 * beta);
    CHECK_THROWS_AS(exit_time_profile(GasketLevel(2, 0), 0, 4), std::invalid_argument);
}

TEST_CASE("lazy smoothing") {
    const GasketLevel g(3, 1);
    const Field f = random_field(g.size(), 3);
    CHECK(smooth(f, 0, g) == f);
    const Field s1 = smooth(f, 1, g);
    const Field lap = laplacian(f, g);
    for (std::size_t x : g.interior())
        CHECK(lap[x] == doctest::Approx(2 * g.laplacian_scale() * (s1[x] - f[x])).epsilon(1e-12));
    const Field a = smooth(smooth(f, 3, g), 4, g);
    const Field b = smooth(f, 7, g);
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
        ma += a[i];
        mb += f[i];
    }
    CHECK(ma == doctest::Approx(mb));
    // Commutes with the Laplacian for fields supported away from ∂Tr.
    Field local(g.size(), 0.0);
    for (std::size_t x : graph_ball(g, g.origin(), 3)) local[x] = f[x];
    const Field lhs = laplacian(smooth(local, 2, g), g);
    const Field rhs = smooth(laplacian(local, g), 2, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("on-diagonal heat kernel decay") {
    const GasketLevel g(6, 1);
    Field p(g.size(), 0.0);
    p[g.origin()] = 1.0;
    const double ab = std::log(3.0) / std::log(5.0);
    double lo = 1e300, hi = 0;
    for (int t = 1; t <= 1024; ++t) {
        p = smooth(p, 1, g);
        if (t < 2 || (t & (t - 1)) != 0) continue;
        const double v = p[g.origin()] * std::pow(t, ab);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo > 0.1);
    CHECK(hi / lo < 4.0);
}
