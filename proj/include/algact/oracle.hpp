#pragma once

#include <complex>
#include <numbers>

#include "algact/ball.hpp"
#include "algact/dirichlet.hpp"
#include "algact/l2.hpp"

namespace algact {

/// Exact brute-force ground truth on a finite abelian group: the full
/// operator matrix of lambda(f) on C(G)^{oplus n}, over rationals. The
/// group violates the standing infiniteness hypothesis of the theory; the
/// oracle validates algebraic identities and formulas, never the main
/// convergence statement itself.
struct FiniteModel {
    GroupDescriptor G;
    GroupRingMatrix<std::int64_t> f;
    std::vector<GroupElement> elements;  // canonical order

    FiniteModel(const GroupDescriptor& g, GroupRingMatrix<std::int64_t> ff,
                std::int64_t cap = 64)
        : G(g), f(std::move(ff)), elements(enumerate_ball(g, 0)) {
        if (g.kind != GroupKind::FiniteAbelian)
            throw config_error("FiniteModel requires a finite abelian group");
        if (static_cast<std::int64_t>(elements.size()) * f.rows() > cap)
            throw config_error("finite model dimension exceeds cap");
    }

    std::size_t dim() const { return elements.size() * std::size_t(f.rows()); }

    std::size_t elem_index(const GroupElement& g) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), g, CanonicalLess{G});
        return static_cast<std::size_t>(it - elements.begin());
    }

    // basis index (component l, element g) -> flat row
    std::size_t flat(int l, std::size_t gi) const { return std::size_t(l) * elements.size() + gi; }

    /// Operator matrix M[(l,x),(k,y)] = fhat_{lk}(x y^{-1}) of lambda(f).
    std::vector<std::vector<Rational>> lambda_matrix() const {
        std::size_t N = dim();
        std::vector<std::vector<Rational>> M(N, std::vector<Rational>(N));
        int n = f.rows();
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (const auto& [h, c] : f.at(l, k).coeffs())
                    for (std::size_t yi = 0; yi < elements.size(); ++yi) {
                        std::size_t xi = elem_index(mul(G, h, elements[yi]));
                        M[flat(l, xi)][flat(k, yi)] += Rational(c);
                    }
        return M;
    }
};

namespace detail {

// Gauss-Jordan over rationals; throws on a singular matrix.
inline std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<Rational>> M) {
    std::size_t N = M.size();
    std::vector<std::vector<Rational>> inv(N, std::vector<Rational>(N));
    for (std::size_t i = 0; i < N; ++i) inv[i][i] = Rational(1);
    for (std::size_t c = 0; c < N; ++c) {
        std::size_t piv = c;
        while (piv < N && M[piv][c].is_zero()) ++piv;
        if (piv == N) throw std::domain_error("lambda(f) matrix is singular over Q");
        std::swap(M[c], M[piv]);
        std::swap(inv[c], inv[piv]);
        Rational p = M[c][c];
        for (std::size_t j = 0; j < N; ++j) { M[c][j] /= p; inv[c][j] /= p; }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == c || M[r][c].is_zero()) continue;
            Rational factor = M[r][c];
            for (std::size_t j = 0; j < N; ++j) {
                M[r][j] -= factor * M[c][j];
                inv[r][j] -= factor * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Exact formal inverse on the finite model: xi with lambda(f) xi = delta⊗id
/// and xi lambda(f) = delta⊗id exactly over Q. Both identities are
/// re-verified by exact convolution before returning.
inline GroupRingMatrix<Rational> exact_inverse_finite(const FiniteModel& model) {
    auto inv = detail::rational_inverse(model.lambda_matrix());
    int n = model.f.rows();
    GroupRingMatrix<Rational> xi(model.G, n, n);
    std::size_t e_idx = model.elem_index(identity(model.G));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (std::size_t gi = 0; gi < model.elements.size(); ++gi) {
                Rational v = inv[model.flat(k, gi)][model.flat(l, e_idx)];
                if (!v.is_zero()) xi.at(k, l).set(model.elements[gi], v);
            }
    auto fq = model.f.map_values<Rational>([](std::int64_t v) { return Rational(v); });
    auto id = GroupRingMatrix<Rational>::identity_matrix(model.G, n);
    if (!(fq * xi - id).is_zero() || !(xi * fq - id).is_zero())
        throw std::logic_error("finite inverse failed exact verification");
    return xi;
}

inline TruncatedL2Matrix to_truncated(const GroupDescriptor& G,
                                      const GroupRingMatrix<Rational>& xi) {
    std::int64_t R = 0;
    for (int i = 0; i < xi.rows(); ++i)
        for (int j = 0; j < xi.cols(); ++j)
            R = std::max(R, xi.at(i, j).support_radius());
    TruncatedL2Matrix out(G, xi.rows(), R);
    for (int i = 0; i < xi.rows(); ++i)
        for (int j = 0; j < xi.cols(); ++j)
            out.at(i, j) = to_real(xi.at(i, j));
    out.method = "exact-finite";
    out.tail_mass = 0.0;
    return out;
}

/// hat(mu)_{m,xi}(alpha) by exhaustive average of exp(2 pi i <rho(x),alpha>)
/// over all (2m+1)^{n|G|} Bernoulli configurations, with the pairing
/// carried as an exact rational until the final exponential.
inline std::complex<double> brute_force_mu_fourier(const FiniteModel& model,
                                                   const GroupRingMatrix<Rational>& xi, int m,
                                                   const FinSuppVector<std::int64_t>& alpha,
                                                   std::int64_t state_cap = 10'000'000) {
    const GroupDescriptor& G = model.G;
    int n = model.f.rows();
    std::size_t ng = model.elements.size();
    std::size_t coords = std::size_t(n) * ng;

    double states_d = std::pow(double(2 * m + 1), double(coords));
    if (states_d > double(state_cap)) throw config_error("oracle state space exceeds cap");
    std::int64_t states = 1;
    for (std::size_t i = 0; i < coords; ++i) states *= (2 * m + 1);

    // weight of coordinate (k,h) in the pairing:
    // w(k,h) = sum_{l,g} alphahat(l)(g) xistar_{kl}(h^{-1} g)
    auto xistar = xi.star();
    std::vector<Rational> w(coords);
    for (int k = 0; k < n; ++k)
        for (std::size_t hi = 0; hi < ng; ++hi) {
            Rational acc;
            const GroupElement hinv = inverse(G, model.elements[hi]);
            for (int l = 0; l < n; ++l)
                for (const auto& [g, c] : alpha[l].coeffs())
                    acc += Rational(c) * xistar.at(k, l).at(mul(G, hinv, g));
            w[model.flat(k, hi)] = acc;
        }

    // Kahan-compensated complex average over the odometer of configurations
    std::vector<int> x(coords, -m);
    std::complex<double> sum(0, 0), comp(0, 0);
    for (std::int64_t s = 0; s < states; ++s) {
        Rational t;
        for (std::size_t i = 0; i < coords; ++i)
            if (x[i] != 0) t += Rational(x[i]) * w[i];
        double ang = 2.0 * std::numbers::pi * t.mod_one().to_double();
        std::complex<double> z(std::cos(ang), std::sin(ang));
        std::complex<double> y = z - comp;
        std::complex<double> tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
        for (std::size_t i = 0; i < coords; ++i) {
            if (x[i] < m) { ++x[i]; break; }
            x[i] = -m;
        }
    }
    return sum / double(states);
}

/// The product formula evaluated with exact rational t-values — the other
/// route to the same number as brute_force_mu_fourier.
inline double finite_product_formula(const FiniteModel& model, const GroupRingMatrix<Rational>& xi,
                                     int m, const FinSuppVector<std::int64_t>& alpha) {
    const GroupDescriptor& G = model.G;
    int n = model.f.rows();
    // r(xi) alpha (l) = sum_k lambda(alpha(k)) xi_{kl}, exact over Q
    double prod = 1.0;
    for (int l = 0; l < n; ++l) {
        FinSupp<Rational> v(G);
        for (int k = 0; k < n; ++k) {
            FinSupp<Rational> ak = to_rational(alpha[k]);
            v += convolve(ak, xi.at(k, l));
        }
        for (const auto& g : model.elements) {
            Rational t = v.at(g);
            prod *= t.is_integer() ? 1.0 : dirichlet_kernel(m, t.mod_one().to_double());
        }
    }
    return prod;
}

struct IdentityReport {
    bool pass = true;
    std::string witness;  // description of the first failing identity
};

namespace detail {

inline FinSupp<Rational> random_rational_fn(const GroupDescriptor& G,
                                            const std::vector<GroupElement>& elems,
                                            std::uint64_t& state, int max_num, int max_den) {
    auto next = [&state]() {
        state ^= state << 13; state ^= state >> 7; state ^= state << 17;
        return state;
    };
    FinSupp<Rational> out(G);
    for (const auto& g : elems) {
        std::int64_t num = std::int64_t(next() % std::uint64_t(2 * max_num + 1)) - max_num;
        std::int64_t den = 1 + std::int64_t(next() % std::uint64_t(max_den));
        out.set(g, Rational(num, den));
    }
    return out;
}

}  // namespace detail

/// Exact randomized verification of the hat-switch and adjoint-pairing
/// identities on the finite model. corrupt_star replaces the adjoint with
/// transpose-conjugation *without* the group inversion — the negative
/// control must then fail with a witness.
inline IdentityReport brute_force_identities(const FiniteModel& model, int trials,
                                             std::uint64_t seed, bool corrupt_star = false) {
    const GroupDescriptor& G = model.G;
    int n = model.f.rows();
    std::uint64_t state = seed | 1;
    IdentityReport rep;

    auto corrupted_star = [&](const GroupRingMatrix<Rational>& x) {
        GroupRingMatrix<Rational> out(G, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.at(j, i) = x.at(i, j);  // no g -> g^-1
        return out;
    };

    for (int t = 0; t < trials; ++t) {
        GroupRingMatrix<Rational> a(G, n, n), b(G, n, n), xi(G, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a.at(i, j) = detail::random_rational_fn(G, model.elements, state, 3, 4);
                b.at(i, j) = detail::random_rational_fn(G, model.elements, state, 3, 4);
                xi.at(i, j) = detail::random_rational_fn(G, model.elements, state, 3, 4);
            }

        // Prop 2.1(i): hat(ab) applied to xi = a (b xi). The left side
        // multiplies in the ring first, the right acts twice on the l2
        // side; their exact agreement is the hat-switch content.
        if (((a * b) * xi) != (a * (b * xi))) {
            rep.pass = false;
            rep.witness = "hat-switch failed at trial " + std::to_string(t);
            return rep;
        }

        // Prop 2.1(iv): <r(xi)alpha, hat(beta)> = <hat(alpha), r(xi*)beta>
        // with alpha = row 0 of a, beta = row 0 of b
        FinSuppVector<Rational> alpha(G, n), beta(G, n);
        for (int k = 0; k < n; ++k) { alpha[k] = a.at(0, k); beta[k] = b.at(0, k); }
        auto xs = corrupt_star ? corrupted_star(xi) : xi.star();
        Rational lhs, rhs;
        for (int l = 0; l < n; ++l) {
            FinSupp<Rational> rxa(G), rxsb(G);
            for (int k = 0; k < n; ++k) {
                rxa += convolve(alpha[k], xi.at(k, l));
                rxsb += convolve(beta[k], xs.at(k, l));
            }
            for (const auto& [g, v] : rxa.coeffs()) lhs += v * beta[l].at(g);
            for (const auto& [g, v] : rxsb.coeffs()) rhs += v * alpha[l].at(g);
        }
        if (lhs != rhs) {
            rep.pass = false;
            rep.witness = "adjoint pairing failed at trial " + std::to_string(t) + ": " +
                          lhs.str() + " != " + rhs.str();
            return rep;
        }
    }
    return rep;
}

// --- exact Z-module membership via Smith normal form --------------------

namespace detail {

struct SnfResult {
    std::vector<std::vector<std::int64_t>> D, U, V;  // U A V = D
};

// Diagonalization by unimodular row/column operations (the Smith algorithm
// without the final divisibility chain, which solvability does not need).
inline SnfResult smith_normal_form(std::vector<std::vector<std::int64_t>> A) {
    std::size_t rows = A.size(), cols = A[0].size();
    SnfResult out;
    out.U.assign(rows, std::vector<std::int64_t>(rows, 0));
    out.V.assign(cols, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) out.U[i][i] = 1;
    for (std::size_t i = 0; i < cols; ++i) out.V[i][i] = 1;

    auto row_op = [&](std::size_t r1, std::size_t r2, std::int64_t c) {  // r1 -= c*r2
        for (std::size_t j = 0; j < cols; ++j) A[r1][j] = checked_sub(A[r1][j], checked_mul(c, A[r2][j]));
        for (std::size_t j = 0; j < rows; ++j) out.U[r1][j] = checked_sub(out.U[r1][j], checked_mul(c, out.U[r2][j]));
    };
    auto col_op = [&](std::size_t c1, std::size_t c2, std::int64_t c) {  // c1 -= c*c2
        for (std::size_t i = 0; i < rows; ++i) A[i][c1] = checked_sub(A[i][c1], checked_mul(c, A[i][c2]));
        for (std::size_t i = 0; i < cols; ++i) out.V[i][c1] = checked_sub(out.V[i][c1], checked_mul(c, out.V[i][c2]));
    };
    auto swap_rows = [&](std::size_t a, std::size_t b) { std::swap(A[a], A[b]); std::swap(out.U[a], out.U[b]); };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][a], A[i][b]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(out.V[i][a], out.V[i][b]);
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot of minimal magnitude
        std::size_t pi = t, pj = t;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (A[i][j] != 0 && (best == 0 || std::abs(A[i][j]) < best)) {
                    best = std::abs(A[i][j]);
                    pi = i; pj = j;
                }
        if (best == 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i)
            if (A[i][t] != 0) { row_op(i, t, A[i][t] / A[t][t]); clean = clean && A[i][t] == 0; }
        for (std::size_t j = t + 1; j < cols; ++j)
            if (A[t][j] != 0) { col_op(j, t, A[t][j] / A[t][t]); clean = clean && A[t][j] == 0; }
        if (!clean) continue;  // remainders left; repeat with a smaller pivot
        if (A[t][t] < 0) { row_op(t, t, 2); }  // negate via r -= 2r
        ++t;
    }
    out.D = std::move(A);
    return out;
}

}  // namespace detail

struct ExactMembership {
    bool member = false;
    FinSuppVector<std::int64_t> witness;
    explicit ExactMembership(const GroupDescriptor& G, int n) : witness(G, n) {}
};

/// Solves r(f) beta = alpha over Z exactly by Smith normal form — no
/// inconclusive zone at oracle scale.
inline ExactMembership snf_membership(const FiniteModel& model,
                                      const FinSuppVector<std::int64_t>& alpha) {
    const GroupDescriptor& G = model.G;
    int n = model.f.rows();
    std::size_t ng = model.elements.size();
    std::size_t N = model.dim();

    // matrix of r(f): column (k,h) holds the coefficients of (delta_h e_k) f
    std::vector<std::vector<std::int64_t>> A(N, std::vector<std::int64_t>(N, 0));
    for (int k = 0; k < n; ++k)
        for (std::size_t hi = 0; hi < ng; ++hi)
            for (int l = 0; l < n; ++l)
                for (const auto& [h2, c] : model.f.at(k, l).coeffs()) {
                    std::size_t gi = model.elem_index(mul(G, model.elements[hi], h2));
                    A[model.flat(l, gi)][model.flat(k, hi)] =
                        checked_add(A[model.flat(l, gi)][model.flat(k, hi)], c);
                }

    std::vector<std::int64_t> b(N, 0);
    for (int l = 0; l < n; ++l)
        for (const auto& [g, c] : alpha[l].coeffs()) b[model.flat(l, model.elem_index(g))] = c;

    auto snf = detail::smith_normal_form(A);
    // y = U b ; solvable iff D_ii | y_i and y_i = 0 where D_ii = 0
    std::vector<std::int64_t> y(N, 0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            y[i] = checked_add(y[i], checked_mul(snf.U[i][j], b[j]));

    ExactMembership out(G, n);
    std::vector<std::int64_t> z(N, 0);
    for (std::size_t i = 0; i < N; ++i) {
        std::int64_t d = snf.D[i][i];
        if (d == 0) {
            if (y[i] != 0) return out;
        } else {
            if (y[i] % d != 0) return out;
            z[i] = y[i] / d;
        }
    }
    out.member = true;
    std::vector<std::int64_t> x(N, 0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            x[i] = checked_add(x[i], checked_mul(snf.V[i][j], z[j]));
    for (int k = 0; k < n; ++k)
        for (std::size_t hi = 0; hi < ng; ++hi) {
            std::int64_t v = x[model.flat(k, hi)];
            if (v != 0) out.witness[k].set(model.elements[hi], v);
        }
    return out;
}

}  // namespace algact
