#include "gasket/ball_oracle.hpp"

#include "gasket/limits.hpp"
#include "gasket/refine.hpp"

#include <stdexcept>

namespace gasket {

namespace {

Rational p3(int e) { return pow_rational(3, e); }
Rational p5(int e) { return pow_rational(5, e); }

// (num/den)^e for small non-negative e.
Rational ratio_pow(long num, long den, int e) { return pow_rational(num, e) / pow_rational(den, e); }

std::int64_t scaled(int log2_len, int n) {
    if (log2_len + n < 0) throw std::invalid_argument("point is not a vertex at this level");
    return std::int64_t{1} << (log2_len + n);
}

}  // namespace

BallOracle::BallOracle(int l, int L) : l_(l), L_(L) {
    if (l < 0 || L <= l) throw std::invalid_argument("ball oracle needs L > l >= 0");
}

Rational BallOracle::gluing_constant() const { return -4 * p5(l_) * (ratio_pow(5, 3, L_ - l_ + 1) - 1); }

Rational BallOracle::majorant_on_cluster() const { return Rational(8, 3) * p5(L_); }

Rational BallOracle::gamma_on_support_edge() const { return Rational(4, 3) * p5(l_) * (p3(L_ - l_ + 1) - 1); }

Rational BallOracle::gamma_x0(int j) const { return Rational(4, 3) * p5(L_ - j) * (p3(j + 1) - 1); }

Rational BallOracle::gamma_y0(int j) const { return Rational(4, 3) * p5(L_ - j) * (4 * p3(j) - 2); }

Rational BallOracle::gamma_x(int j, int k) const {
    const Rational scale = p5(L_ - j);
    return gamma_x0(j - 1) - Rational(2, 3) * (p3(j + 1) - 9) * ratio_pow(3, 5, k) * scale -
           Rational(2, 3) * (p3(j) + 1) * p5(-k) * scale;
}

Rational BallOracle::gamma_y(int j, int k) const {
    const Rational scale = p5(L_ - j);
    return gamma_x0(j - 1) - Rational(2, 3) * (p3(j + 1) - 9) * ratio_pow(3, 5, k) * scale +
           Rational(2, 3) * (p3(j) - 3) * p5(-k) * scale;
}

Rational BallOracle::gamma_z(int j, int k) const {
    const Rational scale = p5(L_ - j);
    return gamma_x0(j - 1) - Rational(8, 15) * (p3(j + 1) - 9) * ratio_pow(3, 5, k) * scale +
           Rational(8, 15) * p5(-k) * scale;
}

Vertex BallOracle::x0(int j, int n) const { return {Half::Plus, scaled(L_ - j, n), 0}; }

Vertex BallOracle::y0(int j, int n) const {
    const std::int64_t u = scaled(L_ - j, n);
    return {Half::Plus, u, u};
}

Vertex BallOracle::x(int j, int k, int n) const {
    const std::int64_t u = scaled(L_ - j, n);
    const std::int64_t step = scaled(L_ - j - k, n);
    return {Half::Plus, 2 * u - step, 0};
}

Vertex BallOracle::y(int j, int k, int n) const {
    const std::int64_t u = scaled(L_ - j, n);
    const std::int64_t step = scaled(L_ - j - k, n);
    return {Half::Plus, 2 * u - step, step};
}

Vertex BallOracle::z(int j, int k, int n) const {
    const std::int64_t u = scaled(L_ - j, n);
    const std::int64_t step = scaled(L_ - j - k, n);
    return {Half::Plus, 2 * u - step, scaled(L_ - j - k - 1, n)};
}

CellRegion BallOracle::predicted_cluster(int scale) const { return centered_ball_region(L_, scale, domain_L()); }

std::optional<BallOracle> detect_ball_family(const DensitySpec& spec) {
    if (spec.terms.size() != 1) return std::nullopt;
    const DensityTerm& t = spec.terms.front();
    if (!t.center.is_origin() || t.radius_log2 < 0 || t.coeff <= 1) return std::nullopt;
    Rational c = t.coeff;
    int e = 0;
    while (c > 1) {
        c /= 3;
        ++e;
    }
    if (c != 1) return std::nullopt;
    return BallOracle(t.radius_log2, t.radius_log2 + e);
}

std::vector<Rational> exact_continuum_gamma(const BallOracle& oracle, int n) {
    const Hierarchy H(n, oracle.domain_L());
    const GasketLevel& ctx = H.finest();
    std::vector<Rational> sigma = discretize_avg_exact(oracle.density(), ctx);
    std::vector<Rational> load(ctx.size(), Rational(0));
    for (std::size_t x : ctx.interior()) load[x] = Rational(4, 3) * (sigma[x] - 1);
    return solve_dirichlet<Rational>(H, load);
}

std::vector<JunctionCheck> junction_checks(const BallOracle& oracle, int n) {
    const std::vector<Rational> gamma = exact_continuum_gamma(oracle, n);
    const GasketLevel ctx(n, oracle.domain_L());
    std::vector<JunctionCheck> out;
    auto add = [&](std::string label, const Vertex& v, const Rational& closed) {
        out.push_back({std::move(label), v, gamma[ctx.index(v)], closed});
    };
    const int span = oracle.outer_log2() - oracle.support_log2();
    for (int j = 0; j <= span; ++j) {
        if (oracle.outer_log2() - j + n < 0) break;
        add("x0^" + std::to_string(j), oracle.x0(j, n), oracle.gamma_x0(j));
        add("y0^" + std::to_string(j), oracle.y0(j, n), oracle.gamma_y0(j));
    }
    for (int j = 1; j < span; ++j) {
        for (int k = 1; oracle.outer_log2() - j - k - 1 + n >= 0; ++k) {
            const std::string tag = "^" + std::to_string(j) + "_" + std::to_string(k);
            add("x" + tag, oracle.x(j, k, n), oracle.gamma_x(j, k));
            add("y" + tag, oracle.y(j, k, n), oracle.gamma_y(j, k));
            add("z" + tag, oracle.z(j, k, n), oracle.gamma_z(j, k));
        }
    }
    return out;
}

Rational profile_center(int i) { return Rational(-4, 3) * p5(i); }

CornerProfile corner_profile(int i, int depth) {
    CornerProfile p;
    p.i = i;
    // Corner cell (a_j, x, b_j); x stays at zero.
    Rational A = profile_center(i), C = 0;
    const Rational B = 0;
    p.a.push_back(A);
    p.b.push_back(C);
    for (int j = 0; j < depth; ++j) {
        // Midpoints created at step j+1 live on mesh 2^{i-j-1}, i.e. level j+1-i.
        const Rational t = Rational(4, 3) * p5(-(j + 1 - i));
        const auto mid = harmonic_extend<Rational>(A, B, C, {t, t, t});
        A = mid[2];
        C = mid[0];
        p.a.push_back(A);
        p.b.push_back(C);
    }
    return p;
}

std::pair<Rational, Rational> corner_by_matrix(int i, int j) {
    const Rational fa0 = profile_center(i), fb0 = 0;
    const Rational slow = ratio_pow(3, 5, j), fast = p5(-j);
    const Rational shift = Rational(4, 3) * p5(i - j) * (p3(j) - 1);
    const Rational a = ((slow + fast) * fa0 + (slow - fast) * fb0) / 2 - shift;
    const Rational b = ((slow - fast) * fa0 + (slow + fast) * fb0) / 2 - shift;
    return {a, b};
}

Rational corner_a_closed(int i, int j) { return -2 * ratio_pow(3, 5, j) * p5(i) + Rational(2, 3) * p5(i - j); }
Rational corner_b_closed(int i, int j) { return -2 * ratio_pow(3, 5, j) * p5(i) + 2 * p5(i - j); }

// (3/5)^{j-i}3^i = (3/5)^j 5^i, kept in the printed shape below.
Rational corner_a_printed(int i, int j) { return -2 * ratio_pow(3, 5, j) * p5(i) + Rational(2, 3) * p5(-j); }
Rational corner_b_printed(int i, int j) { return -2 * ratio_pow(3, 5, j) * p5(i) + 2 * p5(-j); }

Rational normal_derivative_partial(int i, const Rational& fa, const Rational& fb, int j) {
    const int m = j - i;
    const Rational weight = m >= 0 ? ratio_pow(5, 3, m) : ratio_pow(3, 5, -m);
    return weight * (-fa - fb);
}

Rational normal_derivative_limit(int i) { return 4 * p3(i); }

Vertex corner_a_vertex(int i, int j, int n) {
    const std::int64_t S = scaled(i, n);
    return {Half::Plus, S - scaled(i - j, n), 0};
}

Vertex corner_b_vertex(int i, int j, int n) {
    const std::int64_t S = scaled(i, n);
    const std::int64_t step = scaled(i - j, n);
    return {Half::Plus, S - step, step};
}

}  // namespace gasket
