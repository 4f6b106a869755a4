#pragma once

#include "gasket/green.hpp"

namespace gasket {

template <class T>
SplineGreen<T>::SplineGreen(const GasketLevel& ctx)
    : L_(ctx.domain_L()), depth_(ctx.depth()), size_(ctx.size()) {
    const T r = T(3) / T(5);
    auto rpow = [&](int e) {
        T p = 1;
        for (int i = 0; i < (e < 0 ? -e : e); ++i) p *= r;
        return e < 0 ? T(1) / p : p;
    };
    top_coeff_ = rpow(-L_);
    for (int d = 0; d < depth_; ++d) coeff_.push_back(T(6) / T(25) * rpow(d - L_));
    cache_.reserve(ctx.size());
    for (const Vertex& v : ctx.vertices()) cache_.push_back(path(v));
}

template <class T>
typename SplineGreen<T>::Path SplineGreen<T>::path(const Vertex& v) const {
    struct Step {
        std::int64_t ca, cb;
        int choice;
    };
    std::vector<Step> steps;
    steps.reserve(static_cast<std::size_t>(depth_));
    std::int64_t ca = 0, cb = 0, ra = v.a, rb = v.b;
    std::int64_t s = std::int64_t{1} << depth_;
    for (int d = 0; d < depth_; ++d) {
        const std::int64_t h = s >> 1;
        int choice;
        if (ra + rb <= h) {
            choice = 0;
        } else if (ra >= h) {
            choice = 1;
            ra -= h;
        } else if (rb >= h) {
            choice = 2;
            rb -= h;
        } else {
            throw std::invalid_argument("not a gasket vertex: " + to_string(v));
        }
        steps.push_back({ca, cb, choice});
        ca = 2 * ca + (choice == 1 ? 1 : 0);
        cb = 2 * cb + (choice == 2 ? 1 : 0);
        s = h;
    }
    std::array<T, 3> w{T(0), T(0), T(0)};
    if (ra == 0 && rb == 0) w[0] = 1;
    else if (ra == 1 && rb == 0) w[1] = 1;
    else if (ra == 0 && rb == 1) w[2] = 1;
    else throw std::invalid_argument("not a gasket vertex: " + to_string(v));

    Path p;
    p.terms.resize(static_cast<std::size_t>(depth_));
    for (int d = depth_ - 1; d >= 0; --d) {
        const Step& st = steps[static_cast<std::size_t>(d)];
        // Parent corners A, B, C and midpoints oppA = BC, oppB = AC, oppC = AB.
        // Subcell corner roles: 0..2 = A, B, C; 3..5 = oppA, oppB, oppC.
        static constexpr int kRole[3][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}};
        std::array<T, 6> full{T(0), T(0), T(0), T(0), T(0), T(0)};
        for (int i = 0; i < 3; ++i) full[static_cast<std::size_t>(kRole[st.choice][i])] += w[static_cast<std::size_t>(i)];
        Term& term = p.terms[static_cast<std::size_t>(d)];
        term.parent = (static_cast<std::uint64_t>(v.half) << 62) | (static_cast<std::uint64_t>(st.ca) << 31) |
                      static_cast<std::uint64_t>(st.cb);
        term.mid = {full[3], full[4], full[5]};
        // oppA = (A + 2B + 2C)/5, oppB = (2A + B + 2C)/5, oppC = (2A + 2B + C)/5.
        w = {full[0] + (full[3] + 2 * full[4] + 2 * full[5]) / 5, full[1] + (2 * full[3] + full[4] + 2 * full[5]) / 5,
             full[2] + (2 * full[3] + 2 * full[4] + full[5]) / 5};
    }
    p.top = w[0];
    return p;
}

template <class T>
T SplineGreen<T>::combine(const Path& p, const Path& q) const {
    T g = top_coeff_ * p.top * q.top;
    for (std::size_t d = 0; d < p.terms.size(); ++d) {
        const Term& a = p.terms[d];
        const Term& b = q.terms[d];
        if (a.parent != b.parent) continue;
        const T sa = a.mid[0] + a.mid[1] + a.mid[2];
        const T sb = b.mid[0] + b.mid[1] + b.mid[2];
        if (sa == 0 || sb == 0) continue;
        const T dot = a.mid[0] * b.mid[0] + a.mid[1] * b.mid[1] + a.mid[2] * b.mid[2];
        g += coeff_[d] * (sa * sb + 2 * dot);
    }
    return g;
}

template <class T>
std::vector<T> SplineGreen<T>::table() const {
    std::vector<T> out(size_ * size_);
    for (std::size_t x = 0; x < size_; ++x) {
        for (std::size_t y = x; y < size_; ++y) {
            const T g = (*this)(x, y);
            out[x * size_ + y] = g;
            out[y * size_ + x] = g;
        }
    }
    return out;
}

}  // namespace gasket
