#include "gasket/density.hpp"

#include "gasket/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace gasket {

namespace {

using i128 = __int128;

// Center and radius expressed at a common fine level F in doubled coordinates.
struct BallGeom {
    PlanarKey center;
    int level;
    i128 radius2_x4;
};

BallGeom geometry(const DensityTerm& t, int F) {
    const Vertex c = relevel(t.center, t.center_level, F);
    const i128 r = i128{1} << (t.radius_log2 + F);
    return {planar_key(c), F, 4 * r * r};
}

bool inside(const BallGeom& g, const Vertex& v) {
    const PlanarKey k = planar_key(v);
    const i128 dx = k.X - g.center.X, dy = k.Y - g.center.Y;
    return dx * dx + 3 * dy * dy <= g.radius2_x4;
}

// Number of scale-s subcells of c lying inside the ball (c.scale <= s), or the
// ancestor test when c is finer than s.
BigInt count_inside(const BallGeom& g, const DensityTerm& t, const Cell& c, int s) {
    if (c.scale > s) {
        Cell up = c;
        while (up.scale > s) up = up.parent();
        return count_inside(g, t, up, s);
    }
    const int shift = g.level - c.scale;
    bool all = true;
    for (const Vertex& corner : c.corners()) {
        const Vertex f = canonical({corner.half, corner.a << shift, corner.b << shift});
        if (!inside(g, f)) {
            all = false;
            break;
        }
    }
    BigInt full = 1;
    for (int i = c.scale; i < s; ++i) full *= 3;
    if (all) return full;
    if (c.scale == s) return 0;
    const Point p = planar(t.center, t.center_level);
    const double r = std::ldexp(1.0, t.radius_log2);
    if (distance_to_cell(p, c) > r * (1 + 1e-12)) return 0;
    BigInt total = 0;
    for (const Cell& ch : c.children()) total += count_inside(g, t, ch, s);
    return total;
}

int center_level_with(const DensityTerm& t) {
    return std::max(t.center_level, vertex_level(t.center, t.center_level));
}

}  // namespace

bool DensitySpec::exact_balls() const {
    for (const DensityTerm& t : terms) {
        if (t.center.is_origin()) continue;
        if (vertex_level(t.center, t.center_level) <= -t.radius_log2 - 1) continue;
        return false;
    }
    return true;
}

int DensitySpec::resolution() const {
    if (resolution_override) return *resolution_override;
    int s = std::numeric_limits<int>::min();
    for (const DensityTerm& t : terms) {
        s = std::max(s, -t.radius_log2);
        if (!t.center.is_origin()) s = std::max(s, vertex_level(t.center, t.center_level));
    }
    if (terms.empty()) return 0;
    return exact_balls() ? s : s + 6;
}

Rational DensitySpec::bound() const {
    Rational b = 0;
    for (const DensityTerm& t : terms) b += t.coeff;
    return b;
}

DensitySpec parse_density_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("density spec is not valid JSON: ") + e.what());
    }
    DensitySpec spec;
    try {
        spec.bound_L = j.at("bound_L").get<int>();
        if (j.contains("resolution")) spec.resolution_override = j.at("resolution").get<int>();
        for (const auto& jt : j.at("terms")) {
            DensityTerm t;
            const auto& jc = jt.at("coeff");
            t.coeff = jc.is_string() ? parse_rational(jc.get<std::string>()) : parse_rational(jc.dump());
            if (t.coeff < 0) throw ConfigError("negative coefficient");
            const auto& c = jt.at("center");
            const std::string half = c.at("half").get<std::string>();
            if (half != "+" && half != "-") throw ConfigError("center half must be '+' or '-'");
            t.center = canonical({half == "+" ? Half::Plus : Half::Minus, c.at("a").get<std::int64_t>(),
                                  c.at("b").get<std::int64_t>()});
            t.center_level = c.value("level", 0);
            t.radius_log2 = jt.at("radius_log2").get<int>();
            if (t.center.a < 0 || t.center.b < 0) throw ConfigError("negative center coordinates");
            if (!is_member_by_cells(t.center, t.center_level + 40))
                throw ConfigError("ball center " + to_string(t.center) + " is not a gasket vertex");
            spec.terms.push_back(t);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed density spec: ") + e.what());
    }
    check_support(spec, spec.bound_L);
    return spec;
}

DensitySpec load_density(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read density file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_density_json(ss.str());
}

std::string density_to_json(const DensitySpec& spec) {
    nlohmann::ordered_json j;
    j["bound_L"] = spec.bound_L;
    if (spec.resolution_override) j["resolution"] = *spec.resolution_override;
    j["terms"] = nlohmann::ordered_json::array();
    for (const DensityTerm& t : spec.terms) {
        nlohmann::ordered_json jt;
        jt["coeff"] = t.coeff.str();
        jt["center"] = {{"half", t.center.half == Half::Plus ? "+" : "-"},
                        {"a", t.center.a},
                        {"b", t.center.b},
                        {"level", t.center_level}};
        jt["radius_log2"] = t.radius_log2;
        j["terms"].push_back(jt);
    }
    return j.dump();
}

DensitySpec ball_density(int l, int L) {
    DensitySpec spec;
    spec.bound_L = L + 1;
    spec.terms.push_back({pow_rational(3, L - l), Vertex{}, 0, l});
    return spec;
}

void check_support(const DensitySpec& spec, int L) {
    for (const DensityTerm& t : spec.terms) {
        // |c| + 2^j <= 2^L, in units of 2^-m.
        const int m = std::max({0, t.center_level, -t.radius_log2});
        if (t.radius_log2 > L) throw ConfigError("support exceeds domain");
        const PlanarKey k = planar_key(relevel(t.center, t.center_level, m));
        const i128 room = (i128{1} << (L + m)) - (i128{1} << (t.radius_log2 + m));
        const i128 lhs = i128{k.X} * k.X + 3 * i128{k.Y} * k.Y;
        if (room < 0 || lhs > 4 * room * room) throw ConfigError("support exceeds domain");
    }
}

Rational cell_average(const DensitySpec& spec, const Cell& c) {
    const int s = std::max(spec.resolution(), c.scale);
    Rational total = 0;
    for (const DensityTerm& t : spec.terms) {
        if (t.coeff == 0) continue;
        const int F = std::max({s, center_level_with(t), t.center_level});
        const BallGeom g = geometry(t, F);
        const BigInt cnt = count_inside(g, t, c, s);
        BigInt full = 1;
        for (int i = c.scale; i < s; ++i) full *= 3;
        total += t.coeff * Rational(cnt, full);
    }
    return total;
}

std::vector<Rational> discretize_avg_exact(const DensitySpec& spec, const GasketLevel& ctx) {
    check_support(spec, ctx.domain_L());
    const int k = ctx.level() + 1;
    std::unordered_map<std::uint64_t, Rational> memo;
    auto key = [](const Cell& c) {
        return (static_cast<std::uint64_t>(c.half) << 62) | (static_cast<std::uint64_t>(c.a) << 31) |
               static_cast<std::uint64_t>(c.b);
    };
    std::vector<Rational> out(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        const auto cells = double_triangle(ctx.vertex(i), ctx, k);
        Rational sum = 0;
        for (const Cell& c : cells) {
            auto it = memo.find(key(c));
            if (it == memo.end()) it = memo.emplace(key(c), cell_average(spec, c)).first;
            sum += it->second;
        }
        out[i] = sum / static_cast<long>(cells.size());
    }
    return out;
}

DensityField discretize_avg(const DensitySpec& spec, const LevelPtr& ctx, bool floor) {
    const auto exact = discretize_avg_exact(spec, *ctx);
    DensityField f{ctx, std::vector<double>(ctx->size()), floor};
    for (std::size_t i = 0; i < exact.size(); ++i) {
        if (floor) {
            BigInt q = numerator(exact[i]) / denominator(exact[i]);
            f.values[i] = q.convert_to<double>();
        } else {
            f.values[i] = to_double(exact[i]);
        }
    }
    return f;
}

Rational integral(const DensitySpec& spec) {
    const int s = spec.resolution();
    Rational total = 0;
    for (const DensityTerm& t : spec.terms) {
        const int F = std::max({s, center_level_with(t), t.center_level});
        const BallGeom g = geometry(t, F);
        BigInt cnt = 0;
        for (Half h : {Half::Plus, Half::Minus}) cnt += count_inside(g, t, Cell{-spec.bound_L, h, 0, 0}, s);
        total += t.coeff * Rational(cnt) * cell_measure(s);
    }
    return total;
}

double total_mass(const DensityField& f) {
    double s = 0;
    for (double v : f.values) s += v;
    return s;
}

double rescaled_mass(const DensityField& f) { return f.ctx->volume_weight() * total_mass(f); }

double measure_weighted_mass(const DensityField& f) {
    const GasketLevel& ctx = *f.ctx;
    const double cell = 0.5 * std::pow(3.0, -(ctx.level() + 1));
    double s = 0;
    for (std::size_t i = 0; i < ctx.size(); ++i) s += f.values[i] * cell * (ctx.is_boundary(i) ? 1 : 2);
    return s;
}

int initial_domain(const DensitySpec& spec) {
    const double mass = to_double(integral(spec));
    int L = spec.bound_L + 1;
    while (std::pow(3.0, L) < 2 * mass) ++L;
    return L;
}

}  // namespace gasket
