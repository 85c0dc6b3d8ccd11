#pragma once

#include "algact/torus.hpp"

namespace algact {

/// A point of the homoclinic group candidate q(r(xi*) Z(G)^{oplus n}),
/// restricted to a window, with its decay toward the identity recorded per
/// radius. Density of these points in X_f is what makes the actions mixing.
struct HomoclinicPoint {
    FinSuppVector<std::int64_t> beta;
    TorusConfiguration configuration;
    std::vector<double> decay_profile;  // per-radius sup of torus distance to 0

    HomoclinicPoint(const GroupDescriptor& G, int n)
        : beta(G, n), configuration(G, n) {}
};

/// configuration = q(r(xi*) beta) on the ball window of the given radius.
inline HomoclinicPoint homoclinic_point(const TruncatedL2Matrix& xi,
                                        const FinSuppVector<std::int64_t>& beta,
                                        std::int64_t window_radius,
                                        std::size_t cap = kDefaultBallCap) {
    const GroupDescriptor& G = xi.G;
    HomoclinicPoint out(G, xi.n);
    out.beta = beta;
    FinSuppVector<double> zeta = r_xi_apply(xi.star(), beta);
    auto window = ball_window(G, xi.n, window_radius, cap);
    out.configuration = q_map(zeta, window);
    out.decay_profile.assign(static_cast<std::size_t>(window_radius) + 1, 0.0);
    for (const auto& [key, v] : out.configuration.values()) {
        auto r = static_cast<std::size_t>(word_length(G, key.second));
        out.decay_profile[r] = std::max(out.decay_profile[r], torus_dist(v, 0.0));
    }
    return out;
}

/// The Prop 2.3 membership pairing: <r(f) alpha, q(r(xi*) beta)>_T, which
/// is 0 mod 1 up to solver residual when xi is a formal inverse of f.
inline double homoclinic_pairing(const GroupRingMatrix<std::int64_t>& f,
                                 const TruncatedL2Matrix& xi,
                                 const FinSuppVector<std::int64_t>& alpha,
                                 const FinSuppVector<std::int64_t>& beta) {
    FinSuppVector<std::int64_t> fa = r_apply(f, alpha);
    FinSuppVector<double> zeta = r_xi_apply(xi.star(), beta);
    std::vector<std::pair<int, GroupElement>> window;
    for (int l = 0; l < fa.size(); ++l)
        for (const auto& [g, c] : fa[l].coeffs()) window.emplace_back(l, g);
    return duality_pairing(q_map(zeta, window), fa);
}

}  // namespace algact
