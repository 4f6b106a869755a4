#pragma once

#include "gasket/cells.hpp"
#include "gasket/density.hpp"
#include "gasket/lattice.hpp"
#include "gasket/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gasket {

// Closed-form odometer data for σ = 3^{L-l} 1_{B(0,2^l)} solved on Tr = B(0, 2^{L+1}).
// The continuum obstacle is γ with Δγ = σ - 1; its least majorant is the constant
// 8/3·5^L on B(0,2^L), so the predicted cluster is B(0,2^L).
class BallOracle {
public:
    BallOracle(int l, int L);  // requires L > l >= 0

    int support_log2() const { return l_; }
    int outer_log2() const { return L_; }
    int domain_L() const { return L_ + 1; }

    // η = f_l + c on B(0,2^l), harmonic on the annulus, zero on ∂Tr; Δη = 1 on the
    // support forces η <= 0, so c = -4·5^l((5/3)^{L-l+1} - 1).
    Rational gluing_constant() const;
    Rational majorant_on_cluster() const;    // 8/3·5^L
    Rational gamma_on_support_edge() const;  // 4/3·5^l(3^{L-l+1} - 1)

    // Junction points on the ray towards the corner (2^{L+1}, 0). x_0^j sits at
    // distance 2^{L-j} from the origin; x_k^j, y_k^j, z_k^j approach x_0^{j-1}.
    Rational gamma_x0(int j) const;
    Rational gamma_y0(int j) const;
    Rational gamma_x(int j, int k) const;
    Rational gamma_y(int j, int k) const;
    Rational gamma_z(int j, int k) const;

    // Level-n addresses of those points; throw std::invalid_argument when the
    // point is not a level-n vertex.
    Vertex x0(int j, int n) const;
    Vertex y0(int j, int n) const;
    Vertex x(int j, int k, int n) const;
    Vertex y(int j, int k, int n) const;
    Vertex z(int j, int k, int n) const;

    DensitySpec density() const { return ball_density(l_, L_); }
    CellRegion predicted_cluster(int scale) const;

private:
    int l_;
    int L_;
};

// Recognizes a single centered ball with coefficient 3^{L-l}, L > l.
std::optional<BallOracle> detect_ball_family(const DensitySpec& spec);

// Continuum γ restricted to level n, exact: Δ_n γ = (4/3)(σ_n - 1), zero on ∂Tr.
std::vector<Rational> exact_continuum_gamma(const BallOracle& oracle, int n);

struct JunctionCheck {
    std::string label;
    Vertex where;  // level-n address
    Rational computed;
    Rational closed_form;
};

// Every junction point representable at level n, compared against the closed forms.
std::vector<JunctionCheck> junction_checks(const BallOracle& oracle, int n);

// Profile f_i with Δ ≡ 4/3 on B(0,2^i), zero on the boundary. The path a_j runs from
// the origin to the corner x = (2^i, 0) along the bottom edge, b_j from the opposite
// corner to x, both at distance 2^{i-j} from x.
Rational profile_center(int i);  // -4/3·5^i

struct CornerProfile {
    int i = 0;
    std::vector<Rational> a;  // f_i(a_j), j = 0..depth
    std::vector<Rational> b;
};

// Exact values by refining the corner cell with the loaded 1/5-2/5 rule.
CornerProfile corner_profile(int i, int depth);

// Two-step closed form from the matrix recursion in (f(a_0), f(b_0)).
std::pair<Rational, Rational> corner_by_matrix(int i, int j);
// Closed forms solved from the recursion.
Rational corner_a_closed(int i, int j);  // -2(3/5)^{j-i}3^i + (2/3)5^{i-j}
Rational corner_b_closed(int i, int j);  // -2(3/5)^{j-i}3^i + 2·5^{i-j}
// The same forms with (1/5)^j in place of 5^{i-j}; they agree with the above only for i = 0.
Rational corner_a_printed(int i, int j);
Rational corner_b_printed(int i, int j);

// (5/3)^{j-i} Σ_{y ~ x} (f(x) - f(y)) over the two neighbors at mesh 2^{i-j}.
Rational normal_derivative_partial(int i, const Rational& fa, const Rational& fb, int j);
Rational normal_derivative_limit(int i);  // 4·3^i

// Level-n addresses (on Tr = B(0,2^i)) of a_j, b_j and x.
Vertex corner_a_vertex(int i, int j, int n);
Vertex corner_b_vertex(int i, int j, int n);

}  // namespace gasket
