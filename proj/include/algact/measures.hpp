#pragma once

#include <complex>

#include "algact/dirichlet.hpp"
#include "algact/membership.hpp"
#include "algact/torus.hpp"

namespace algact {

/// The data of mu_{m,xi}: alphabet half-width m (alphabet {-m,...,m}) and a
/// real truncated xi.
struct MuSpec {
    int m = 1;
    TruncatedL2Matrix xi;

    MuSpec(int mm, TruncatedL2Matrix x) : m(mm), xi(std::move(x)) {
        if (m < 0) throw config_error("alphabet half-width must be >= 0");
    }
    int components() const { return xi.n; }
};

/// Per-alpha record: the exact product value for the stored xi, a bound on
/// what truncation may have dropped, and the Monte Carlo side.
struct FourierReport {
    std::string alpha_id;
    double exact_value = 0.0;
    double tail_bound = 0.0;
    std::complex<double> mc_estimate{0.0, 0.0};
    double mc_stderr = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

/// hat(mu)_{m,xi}(alpha) = prod over (l,g) of F_m((r(xi) alpha)(l)(g)).
/// The product over the stored support is exact for the stored xi (factors
/// off the support are F_m(0) = 1); tail_bound covers the factors the
/// untruncated r(xi_true) alpha would add, via |1 - F_m(x)| <= C_m x^2
/// applied to the solver-reported tail mass. Evaluated in log space with
/// sign tracking; a factor of exact 0 short-circuits.
inline FourierReport mu_fourier_exact(const MuSpec& spec, const FinSuppVector<std::int64_t>& alpha) {
    FourierReport rep;
    rep.alpha_id = "";
    FinSuppVector<double> v = r_xi_apply(spec.xi, alpha);
    double log_abs = 0.0;
    int sign = 1;
    bool zero = false;
    for (int l = 0; l < v.size() && !zero; ++l)
        for (const auto& [g, t] : v[l].coeffs()) {
            double fv = dirichlet_kernel(spec.m, t);
            if (fv == 0.0) { zero = true; break; }
            if (fv < 0) { sign = -sign; fv = -fv; }
            log_abs += std::log(fv);
        }
    rep.exact_value = zero ? 0.0 : sign * std::exp(log_abs);

    double tail = alpha.l1_norm() * spec.xi.tail_mass;
    rep.tail_bound = std::min(2.0, dirichlet_quadratic_constant(spec.m) * tail * tail);
    return rep;
}

enum class HaarValue { One, Zero, Inconclusive };

/// Fourier coefficient of the Haar measure m_{X_f}: 1 on the image of
/// r(f), 0 off it, decided through the integrality criterion.
inline HaarValue haar_fourier(const GroupRingMatrix<std::int64_t>& f, const TruncatedL2Matrix& xi,
                              const FinSuppVector<std::int64_t>& alpha,
                              const MembershipConfig& cfg = {}) {
    switch (image_membership(f, xi, alpha, cfg).verdict) {
        case Membership::Yes: return HaarValue::One;
        case Membership::No: return HaarValue::Zero;
        default: return HaarValue::Inconclusive;
    }
}

struct SweepRow {
    int m = 0;
    double exact_value = 0.0;
    double tail_bound = 0.0;
    double envelope = 1.0;  // |F_m(t0)| at the most non-integral t-value
};

/// Evaluates hat(mu)_{m,xi}(alpha) along the m-list, with the single-factor
/// envelope from the two-case limit argument: the whole product is bounded
/// by the factor at the t-value farthest from Z.
inline std::vector<SweepRow> convergence_sweep(const MuSpec& base,
                                               const FinSuppVector<std::int64_t>& alpha,
                                               const std::vector<int>& m_list) {
    if (m_list.empty()) throw config_error("m-list must be nonempty");
    for (std::size_t i = 1; i < m_list.size(); ++i)
        if (m_list[i] <= m_list[i - 1]) throw config_error("m-list must be increasing");

    FinSuppVector<double> v = r_xi_apply(base.xi, alpha);
    double t0 = 0.0, best = 0.0;
    for (int l = 0; l < v.size(); ++l)
        for (const auto& [g, t] : v[l].coeffs()) {
            double d = std::fabs(t - std::nearbyint(t));
            if (d > best) { best = d; t0 = t; }
        }

    std::vector<SweepRow> rows;
    for (int m : m_list) {
        MuSpec spec(m, base.xi);
        auto rep = mu_fourier_exact(spec, alpha);
        SweepRow row;
        row.m = m;
        row.exact_value = rep.exact_value;
        row.tail_bound = rep.tail_bound;
        row.envelope = best > 0 ? std::fabs(dirichlet_kernel(m, t0)) : 1.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace algact
