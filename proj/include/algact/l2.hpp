#pragma once

#include <string>

#include "algact/group_ring.hpp"

namespace algact {

/// n x n matrix of real coefficient functions supported in the ball B_R,
/// with the residual metadata recorded by whichever solver produced it.
/// Houses the truncated l2 formal inverse xi and its adjoint.
struct TruncatedL2Matrix {
    GroupDescriptor G;
    int n = 1;
    std::int64_t radius = 0;
    std::vector<FinSupp<double>> e;  // row-major n*n

    // residuals of lambda(f) xi - delta⊗id and xi lambda(f) - delta⊗id,
    // measured on the interior ball B_{R-deg f} and on the full support
    std::int64_t interior_radius = 0;
    double residual_left = 0.0;
    double residual_right = 0.0;
    double residual_left_full = 0.0;
    double residual_right_full = 0.0;
    // solver's l2 estimate of the mass it could not represent
    double tail_mass = 0.0;
    std::string method;

    TruncatedL2Matrix(const GroupDescriptor& g, int nn, std::int64_t R)
        : G(g), n(nn), radius(R), e(std::size_t(nn) * nn, FinSupp<double>(g)) {}

    FinSupp<double>& at(int i, int j) { return e[std::size_t(i) * n + j]; }
    const FinSupp<double>& at(int i, int j) const { return e[std::size_t(i) * n + j]; }

    static TruncatedL2Matrix identity_matrix(const GroupDescriptor& g, int n) {
        TruncatedL2Matrix out(g, n, 0);
        for (int i = 0; i < n; ++i) out.at(i, i) = delta<double>(g, identity(g));
        return out;
    }

    /// Adjoint; the ball is inversion-invariant so the radius is kept.
    TruncatedL2Matrix star() const {
        TruncatedL2Matrix out(G, n, radius);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(j, i) = at(i, j).star();
        out.interior_radius = interior_radius;
        out.residual_left = residual_right;
        out.residual_right = residual_left;
        out.residual_left_full = residual_right_full;
        out.residual_right_full = residual_left_full;
        out.tail_mass = tail_mass;
        out.method = method;
        return out;
    }

    double l2_norm() const {
        double s = 0;
        for (const auto& f : e) s += f.l2_norm_sq();
        return std::sqrt(s);
    }

    GroupRingMatrix<double> as_matrix() const {
        GroupRingMatrix<double> out(G, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(i, j) = at(i, j);
        return out;
    }
};

/// The map r(xi): (r(xi) alpha)(l) = sum_k lambda(alpha(k)) xi_{kl},
/// an exact finite sum of translates of the stored xi entries.
inline FinSuppVector<double> r_xi_apply(const TruncatedL2Matrix& xi,
                                        const FinSuppVector<double>& alpha) {
    check_same_group(xi.G, alpha.G);
    if (alpha.size() != xi.n) throw config_error("r_xi_apply dimension mismatch");
    FinSuppVector<double> out(xi.G, xi.n);
    for (int l = 0; l < xi.n; ++l)
        for (int k = 0; k < xi.n; ++k)
            out[l] += convolve(alpha[k], xi.at(k, l));
    return out;
}

inline FinSuppVector<double> r_xi_apply(const TruncatedL2Matrix& xi,
                                        const FinSuppVector<std::int64_t>& alpha) {
    return r_xi_apply(xi, to_real(alpha));
}

}  // namespace algact
