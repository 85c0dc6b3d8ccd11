#pragma once

#include <cmath>

#include "algact/ball.hpp"
#include "algact/l2.hpp"

namespace algact {

/// Reduce to the torus representative in [0, 1).
inline double mod_one(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;  // guard against floor rounding at the seam
    return r;
}

/// Distance on R/Z between representatives in [0, 1).
inline double torus_dist(double x, double y) {
    double d = std::fabs(x - y);
    return std::min(d, 1.0 - d);
}

/// A finite window W ⊆ {1..n} x G together with T = R/Z values on it,
/// stored as representatives in [0, 1). Houses points of (T^G)^{oplus n}
/// and of X_f restricted to a window.
class TorusConfiguration {
public:
    struct KeyLess {
        GroupDescriptor G;
        bool operator()(const std::pair<int, GroupElement>& a,
                        const std::pair<int, GroupElement>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return canonical_less(G, a.second, b.second);
        }
    };
    using map_type = std::map<std::pair<int, GroupElement>, double, KeyLess>;

    TorusConfiguration(const GroupDescriptor& G, int n)
        : G_(G), n_(n), values_(KeyLess{G}) {}

    const GroupDescriptor& group() const { return G_; }
    int components() const { return n_; }
    const map_type& values() const { return values_; }
    std::size_t window_size() const { return values_.size(); }

    bool contains(int l, const GroupElement& g) const {
        return values_.count({l, g}) != 0;
    }

    double at(int l, const GroupElement& g) const {
        auto it = values_.find({l, g});
        if (it == values_.end()) throw config_error("point outside torus window");
        return it->second;
    }

    /// Window duplicates are forbidden; values are reduced into [0,1).
    void set(int l, const GroupElement& g, double raw) {
        values_[{l, g}] = mod_one(raw);
    }

private:
    GroupDescriptor G_;
    int n_;
    map_type values_;
};

/// Window = ball of the given radius in every component.
inline std::vector<std::pair<int, GroupElement>> ball_window(const GroupDescriptor& G, int n,
                                                             std::int64_t radius,
                                                             std::size_t cap = kDefaultBallCap) {
    std::vector<std::pair<int, GroupElement>> w;
    auto ball = enumerate_ball(G, radius, cap);
    for (int l = 0; l < n; ++l)
        for (const auto& g : ball) w.emplace_back(l, g);
    return w;
}

/// The quotient map q: (q zeta)(l)(g) = zeta(l)(g) + Z, evaluated on the
/// given window (points outside supp(zeta) read 0).
inline TorusConfiguration q_map(const FinSuppVector<double>& zeta,
                                const std::vector<std::pair<int, GroupElement>>& window) {
    TorusConfiguration out(zeta.G, zeta.size());
    for (const auto& [l, g] : window) out.set(l, g, zeta[l].at(g));
    return out;
}

/// Duality pairing <theta, alpha>_T = sum_l sum_g hat(alpha)(l)(g) theta(l)(g)
/// mod 1 — requires supp(alpha) inside the window of theta.
inline double duality_pairing(const TorusConfiguration& theta,
                              const FinSuppVector<std::int64_t>& alpha) {
    check_same_group(theta.group(), alpha.G);
    if (alpha.size() != theta.components()) throw config_error("pairing arity mismatch");
    double acc = 0.0;
    for (int l = 0; l < alpha.size(); ++l)
        for (const auto& [g, c] : alpha[l].coeffs())
            acc += double(c) * theta.at(l, g);  // throws if support escapes window
    return mod_one(acc);
}

}  // namespace algact
