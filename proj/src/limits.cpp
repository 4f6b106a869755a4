#include "gasket/limits.hpp"

#include "gasket/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gasket {

Margins containment_margins(const GasketLevel& ctx, const Cluster& cluster, const CellRegion& ref) {
    if (cluster.size() != ctx.size()) throw std::invalid_argument("cluster does not match the level");
    Margins m;
    const int n = ctx.level();
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        const Vertex& v = ctx.vertex(x);
        const bool in_ref = ref.point_in_region(v, n);
        if (cluster[x]) {
            if (!in_ref) {
                ++m.extra;
                m.eps_out = std::max(m.eps_out, ref.distance_to_region(planar(v, n)));
            }
        } else if (in_ref) {
            ++m.missing;
            m.eps_in = std::max(m.eps_in, ref.distance_to_complement(planar(v, n)));
        }
    }
    return m;
}

CellRegion centered_ball_region(int radius_log2, int k, int L) {
    if (radius_log2 > L) throw std::invalid_argument("ball larger than Tr");
    return CellRegion(k, L, cells_in_tr(k, radius_log2));
}

CellRegion cluster_region(const GasketLevel& ctx, const Cluster& cluster, int k) {
    return CellRegion(k, ctx.domain_L(), cells_of(cluster, ctx, k));
}

Rational symmetric_difference_measure(const GasketLevel& ctx, const Cluster& a, const Cluster& b) {
    if (a.size() != ctx.size() || b.size() != ctx.size()) throw std::invalid_argument("clusters at different levels");
    long count = 0;
    for (std::size_t x = 0; x < a.size(); ++x) count += (a[x] != 0) != (b[x] != 0) ? 1 : 0;
    return Rational(count) * pow_rational(3, -ctx.level());
}

std::vector<BoundaryEstimate> boundary_measure_estimate(const CellRegion& region, int k0, int k1) {
    std::vector<BoundaryEstimate> out;
    for (int k = k0; k <= k1; ++k) {
        const std::int64_t c = region.boundary_cell_count(k);
        out.push_back({k, c, static_cast<double>(c) * 0.5 * std::pow(3.0, -k)});
    }
    return out;
}

bool decreases_by(const std::vector<BoundaryEstimate>& seq, double factor) {
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (!(seq[i].measure * factor <= seq[i - 1].measure)) return false;
    return true;
}

MassReport mass_conservation_check(const GasketLevel& ctx, const std::vector<double>& sigma, const Cluster& cluster) {
    MassReport r;
    for (std::size_t x = 0; x < ctx.size(); ++x) {
        r.sigma_total += sigma[x];
        r.max_sigma = std::max(r.max_sigma, sigma[x]);
        if (cluster[x]) {
            ++r.cluster_size;
            continue;
        }
        for (std::int32_t y : ctx.slots(x)) {
            if (y != kNoNeighbor && cluster[static_cast<std::size_t>(y)]) {
                ++r.outer_boundary;
                break;
            }
        }
    }
    const double w = ctx.volume_weight();
    r.gap = w * std::abs(static_cast<double>(r.cluster_size) - r.sigma_total);
    r.allowed = w * static_cast<double>(r.outer_boundary) * r.max_sigma;
    r.relative_gap = r.sigma_total > 0 ? std::abs(static_cast<double>(r.cluster_size) - r.sigma_total) / r.sigma_total : 0;
    r.within_bound = r.gap <= r.allowed + 1e-9 * w * r.sigma_total;
    return r;
}

ExponentFit exponent_fit(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 4) throw std::invalid_argument("exponent fit needs at least 4 scales");
    std::vector<double> x, y;
    for (auto [s, v] : series) {
        if (!(s > 0) || !(v > 0)) throw std::invalid_argument("exponent fit needs positive data");
        x.push_back(std::log(s));
        y.push_back(std::log(v));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("exponent fit needs distinct scales");
    ExponentFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - f.intercept - f.slope * x[i];
        rss += e * e;
    }
    f.stderr_slope = std::sqrt(rss / (n - 2) / sxx);
    f.band = 2 * f.stderr_slope;
    return f;
}

std::vector<std::pair<double, double>> volume_growth_series(const GasketLevel& ctx, int j0, int j1) {
    std::vector<std::pair<double, double>> out;
    for (int j = j0; j <= j1; ++j) {
        const double r = std::ldexp(1.0, j);
        out.emplace_back(r, static_cast<double>(graph_ball(ctx, ctx.origin(), 1 << j).size()));
    }
    return out;
}

std::vector<std::pair<double, double>> exit_time_series(const GasketLevel& ctx, int j0, int j1) {
    std::vector<std::pair<double, double>> out;
    for (int j = j0; j <= j1; ++j) {
        const auto p = exit_time_profile(ctx, ctx.origin(), 1 << j);
        out.emplace_back(std::ldexp(1.0, j), p.expected[ctx.origin()]);
    }
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    // Nearest rank.
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
    return values[std::min(values.size() - 1, rank == 0 ? 0 : rank - 1)];
}

IdlaStatistics idla_statistics(const std::vector<IdlaRun>& runs, int level, const CellRegion& ref) {
    IdlaStatistics st;
    std::vector<double> ein, eout;
    for (const IdlaRun& r : runs) {
        const GasketLevel& ctx = *r.ctx;
        if (ctx.level() != level) throw std::invalid_argument("IDLA runs do not share the reference level");
        Cluster ref_cluster(ctx.size(), 0);
        for (std::size_t x = 0; x < ctx.size(); ++x) ref_cluster[x] = ref.point_in_region(ctx.vertex(x), level);
        IdlaTrialStats t{r.trial, containment_margins(ctx, r.occupied, ref),
                         to_double(symmetric_difference_measure(ctx, r.occupied, ref_cluster))};
        ein.push_back(t.margins.eps_in);
        eout.push_back(t.margins.eps_out);
        st.mean_symmetric_difference += t.symmetric_difference / static_cast<double>(runs.size());
        st.trials.push_back(t);
    }
    st.eps_in_q90 = quantile(ein, 0.9);
    st.eps_out_q90 = quantile(eout, 0.9);
    st.eps_in_max = ein.empty() ? 0 : *std::max_element(ein.begin(), ein.end());
    st.eps_out_max = eout.empty() ? 0 : *std::max_element(eout.begin(), eout.end());
    return st;
}

}  // namespace gasket
