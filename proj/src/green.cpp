#include "gasket/green.hpp"

#include "gasket/errors.hpp"
#include "gasket/refine.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace gasket {

GreenTable::GreenTable(LevelPtr ctx, Eigen::MatrixXd interior_values)
    : ctx_(std::move(ctx)), g_(std::move(interior_values)) {}

double GreenTable::operator()(std::size_t x, std::size_t y) const {
    const auto& idx = ctx_->interior_index();
    const std::int32_t i = idx[x], j = idx[y];
    if (i < 0 || j < 0) return 0.0;
    return g_(i, j);
}

Field GreenTable::column(std::size_t y) const {
    Field out(ctx_->size(), 0.0);
    const std::int32_t j = ctx_->interior_index()[y];
    if (j < 0) return out;
    const auto& interior = ctx_->interior();
    for (std::size_t i = 0; i < interior.size(); ++i) out[interior[i]] = g_(static_cast<Eigen::Index>(i), j);
    return out;
}

Field GreenTable::apply(const Field& f) const {
    if (f.size() != ctx_->size()) throw std::invalid_argument("field does not match the Green table level");
    const auto& interior = ctx_->interior();
    Eigen::VectorXd v(static_cast<Eigen::Index>(interior.size()));
    for (std::size_t i = 0; i < interior.size(); ++i) v[static_cast<Eigen::Index>(i)] = f[interior[i]];
    const Eigen::VectorXd r = ctx_->volume_weight() * (g_ * v);
    Field out(ctx_->size(), 0.0);
    for (std::size_t i = 0; i < interior.size(); ++i) out[interior[i]] = r[static_cast<Eigen::Index>(i)];
    return out;
}

GreenTable green_stopped(const LevelPtr& ctx) {
    const auto& interior = ctx->interior();
    const auto& idx = ctx->interior_index();
    const auto m = static_cast<Eigen::Index>(interior.size());
    if (interior.empty()) throw std::invalid_argument("Tr has no interior vertices");
    if (interior.size() > kDenseGreenLimit)
        throw std::invalid_argument("dense Green table refused above " + std::to_string(kDenseGreenLimit) +
                                    " interior vertices");
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(interior.size() * 5);
    for (std::size_t k = 0; k < interior.size(); ++k) {
        trip.emplace_back(static_cast<int>(k), static_cast<int>(k), 1.0);
        for (std::int32_t y : ctx->slots(interior[k])) {
            const std::int32_t j = idx[static_cast<std::size_t>(y)];
            if (j >= 0) trip.emplace_back(static_cast<int>(k), j, -0.25);
        }
    }
    Eigen::SparseMatrix<double> K(m, m);
    K.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(K);
    if (solver.info() != Eigen::Success) throw ModelError("Green factorization failed");
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd visits = solver.solve(identity);
    const double resid = (K * visits - identity).lpNorm<Eigen::Infinity>();
    if (!(resid < 1e-9)) throw ModelError("Green solve residual " + std::to_string(resid));
    visits *= std::pow(0.6, ctx->level());
    return GreenTable(ctx, std::move(visits));
}

Field green_apply(const GreenTable& table, const Field& f) { return table.apply(f); }

Field green_apply_solve(const LevelPtr& ctx, const Field& f) {
    Field loads(ctx->size(), 0.0);
    for (std::size_t x : ctx->interior()) loads[x] = -f[x];
    return solve_dirichlet<double>(Hierarchy(ctx), loads);
}

void write_green_csv(const GreenTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    const GasketLevel& ctx = *table.ctx();
    out << "# level=" << ctx.level() << " domain_L=" << ctx.domain_L() << '\n';
    out << "x";
    for (const Vertex& v : ctx.vertices()) out << ",\"" << to_string(v) << '"';
    out << '\n' << std::setprecision(17);
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        out << '"' << to_string(ctx.vertex(x)) << '"';
        for (std::size_t y = 0; y < ctx.size(); ++y) out << ',' << table(x, y);
        out << '\n';
    }
}

}  // namespace gasket
