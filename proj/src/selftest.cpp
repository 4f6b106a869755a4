#include "gasket/selftest.hpp"

#include "gasket/ball_oracle.hpp"
#include "gasket/green.hpp"
#include "gasket/harmonic.hpp"
#include "gasket/refine.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace gasket {

namespace {

std::string sci(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

SelfCheck green_equality() {
    double worst = 0;
    for (int L = 0; L <= 1; ++L) {
        for (int n = 0; n <= 3; ++n) {
            const auto ctx = GasketLevel::make(n, L);
            const GreenTable g = green_stopped(ctx);
            const SplineGreen<double> s(*ctx);
            for (std::size_t x = 0; x < ctx->size(); ++x)
                for (std::size_t y = 0; y < ctx->size(); ++y) worst = std::max(worst, std::abs(g(x, y) - s(x, y)));
        }
    }
    return {"green: stopped walk = spline series (n<=3, L<=1)", worst < 1e-9, "max diff " + sci(worst)};
}

SelfCheck spline_point_source() {
    const int n = 2;
    const auto ctx = GasketLevel::make(n, 1);
    const SplineGreen<Rational> s(*ctx);
    const Rational scale = pow_rational(5, n), inv_alpha = pow_rational(3, n);
    bool ok = true;
    for (std::size_t x : ctx->interior()) {
        for (std::size_t y : ctx->interior()) {
            Rational nb = 0;
            for (std::int32_t z : ctx->slots(y)) nb += s(x, static_cast<std::size_t>(z));
            ok = ok && scale * (nb / 4 - s(x, y)) == (x == y ? -inv_alpha : Rational(0));
        }
        for (std::size_t b : ctx->boundary()) ok = ok && s(x, b) == 0;
    }
    return {"green: spline series solves the point-source problem exactly (n=2)", ok, ""};
}

SelfCheck profile_centers() {
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= 2; ++i) {
        const Hierarchy H(i + 3, i);
        std::vector<Rational> load(H.finest().size(), Rational(0));
        for (std::size_t x : H.finest().interior()) load[x] = Rational(4, 3);
        const auto f = solve_dirichlet<Rational>(H, load);
        ok = ok && f[H.finest().origin()] == profile_center(i);
        detail += (i ? " f_" : "f_") + std::to_string(i) + "(0)=" + f[H.finest().origin()].str();
    }
    return {"ball family: f_i(0) = -4/3 5^i (i<=2, exact)", ok, detail};
}

SelfCheck corner_forms() {
    bool ok = true;
    for (int i = 0; i <= 2; ++i) {
        const CornerProfile p = corner_profile(i, 8);
        for (int j = 0; j <= 8; ++j) {
            const auto [ma, mb] = corner_by_matrix(i, j);
            const auto k = static_cast<std::size_t>(j);
            ok = ok && p.a[k] == ma && p.b[k] == mb && ma == corner_a_closed(i, j) && mb == corner_b_closed(i, j);
        }
    }
    return {"ball family: corner path values, recursion = matrix = closed form (i<=2, j<=8)", ok, ""};
}

SelfCheck normal_derivative() {
    bool ok = true;
    for (int i = 0; i <= 2; ++i) {
        const CornerProfile p = corner_profile(i, i + 8);
        for (int j = 0; j <= i + 8; ++j) {
            const auto k = static_cast<std::size_t>(j);
            ok = ok && normal_derivative_partial(i, p.a[k], p.b[k], j) ==
                           normal_derivative_limit(i) - 8 * pow_rational(3, i - j - 1);
        }
    }
    return {"ball family: normal-derivative partial sums = 4 3^i - 8 3^(i-j-1)", ok, ""};
}

SelfCheck junctions() {
    const BallOracle o(0, 1);
    bool ok = true;
    std::size_t checked = 0;
    for (const JunctionCheck& jc : junction_checks(o, 3)) {
        if (jc.label[0] == 'z') continue;
        ok = ok && jc.computed == jc.closed_form;
        ++checked;
    }
    const auto gamma = exact_continuum_gamma(o, 3);
    ok = ok && gamma[0] == 3 * (profile_center(0) + o.gluing_constant()) - profile_center(2);
    return {"ball family: continuum obstacle at junction points (l=0, L=1, n=3)", ok && checked > 0,
            std::to_string(checked) + " points"};
}

SelfCheck smoothing_identity() {
    const auto ctx = GasketLevel::make(4, 1);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1, 1);
    Field f(ctx->size());
    for (auto& v : f) v = u(rng);
    const Field lap = laplacian(f, *ctx);
    const Field s1 = smooth(f, 1, *ctx);
    const double five_n = std::pow(5.0, ctx->level());
    double worst = 0;
    for (std::size_t x : ctx->interior()) worst = std::max(worst, std::abs(lap[x] - 2 * five_n * (s1[x] - f[x])));
    return {"smoothing: Delta_n = 2 5^n (S_1 - S_0) on a random field", worst < 1e-9 * five_n,
            "max diff " + sci(worst)};
}

}  // namespace

std::vector<SelfCheck> exact_identity_suite() {
    return {green_equality(), spline_point_source(), profile_centers(), corner_forms(),
            normal_derivative(), junctions(), smoothing_identity()};
}

}  // namespace gasket
