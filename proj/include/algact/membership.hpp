#pragma once

#include "algact/l2.hpp"

namespace algact {

/// Three-valued answer to "alpha in r(f)(Z(G)^{oplus n})?". A yes always
/// carries an exact integer witness verified over Z; inconclusive is a
/// value, not an error.
enum class Membership { Yes, No, Inconclusive };

struct MembershipConfig {
    // r(xi)alpha is contaminated by solver residuals; the gap between the
    // two thresholds is an explicit inconclusive zone instead of a silent
    // misclassification.
    double integrality_tol = 1e-6;
    double rejection_threshold = 1e-2;
};

struct MembershipResult {
    Membership verdict = Membership::Inconclusive;
    FinSuppVector<std::int64_t> witness;  // valid when verdict == Yes
    double max_deviation = 0.0;           // max distance of r(xi)alpha to Z

    explicit MembershipResult(const GroupDescriptor& G, int n)
        : witness(G, n) {}
};

/// Prop 2.3 criterion: alpha lies in the image of r(f) iff r(xi)alpha is
/// integral. Rounds v = r(xi)alpha to an integer vector beta and accepts
/// only if r(f)beta = alpha holds exactly over Z.
inline MembershipResult image_membership(const GroupRingMatrix<std::int64_t>& f,
                                         const TruncatedL2Matrix& xi,
                                         const FinSuppVector<std::int64_t>& alpha,
                                         const MembershipConfig& cfg = {}) {
    check_same_group(f.group(), alpha.G);
    MembershipResult res(f.group(), f.cols());
    FinSuppVector<double> v = r_xi_apply(xi, alpha);

    FinSuppVector<std::int64_t> beta(f.group(), f.cols());
    double max_dev = 0.0;
    for (int l = 0; l < v.size(); ++l) {
        for (const auto& [g, x] : v[l].coeffs()) {
            double r = std::nearbyint(x);
            max_dev = std::max(max_dev, std::fabs(x - r));
            auto ri = static_cast<std::int64_t>(r);
            if (ri != 0) beta[l].set(g, ri);
        }
    }
    res.max_deviation = max_dev;

    if (max_dev <= cfg.integrality_tol) {
        if (r_apply(f, beta) == alpha) {
            res.verdict = Membership::Yes;
            res.witness = beta;
            return res;
        }
        // integral-looking but the exact check failed: truncation hid mass
        res.verdict = Membership::Inconclusive;
        return res;
    }
    res.verdict = max_dev >= cfg.rejection_threshold ? Membership::No : Membership::Inconclusive;
    return res;
}

}  // namespace algact
