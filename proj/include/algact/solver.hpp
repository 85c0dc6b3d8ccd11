#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algact/ball.hpp"
#include "algact/l2.hpp"

namespace algact {

enum class SolverMethod { Neumann, CgNormal, TorusGrid };

inline std::string method_name(SolverMethod m) {
    switch (m) {
        case SolverMethod::Neumann: return "neumann";
        case SolverMethod::CgNormal: return "cg-normal";
        case SolverMethod::TorusGrid: return "torus-grid";
    }
    return "?";
}

inline SolverMethod parse_method(const std::string& s) {
    if (s == "neumann") return SolverMethod::Neumann;
    if (s == "cg-normal" || s == "cg") return SolverMethod::CgNormal;
    if (s == "torus-grid" || s == "torus") return SolverMethod::TorusGrid;
    throw config_error("unknown solver method: " + s);
}

struct SolverConfig {
    std::int64_t radius = 20;
    double eps = 0.0;  // 0 = default for the group kind: 1e-8 lattice, 1e-6 free
    int max_iters = 2000;
    SolverMethod method = SolverMethod::Neumann;
    int grid = 1 << 12;            // torus method, points per dimension (power of 2)
    std::size_t ball_cap = kDefaultBallCap;
    double decay_gate = 0.5;       // shell-decay certificate threshold

    double resolved_eps(const GroupDescriptor& G) const {
        if (eps > 0) return eps;
        return G.kind == GroupKind::Free ? 1e-6 : 1e-8;
    }
};

struct SolverReport {
    std::string method;
    std::int64_t radius = 0;
    double eps = 0;
    int iterations = 0;
    std::int64_t interior_radius = 0;
    double residual_left = 0;        // interior ball
    double residual_right = 0;
    double residual_left_full = 0;   // full support of lambda(f)xi - delta
    double residual_right_full = 0;
    double tail_mass = 0;
    double shell_ratio = 0;          // outermost / max shell l2 mass
    bool terminated_exactly = false;
    std::vector<double> residual_history;
    // torus method extras
    double imag_residue = 0;
    double aliasing_error = 0;
    double min_symbol = 0;
    int grid = 0;
    std::string message;
};

/// Solver failure with the diagnostics that led to it. The CLI maps this
/// to exit status 2.
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& msg, SolverReport rep)
        : std::runtime_error(msg), report(std::move(rep)) {}
    SolverReport report;
};

struct SolveResult {
    TruncatedL2Matrix xi;
    SolverReport report;
};

struct LeftRightResiduals {
    std::int64_t interior_radius = 0;
    double left_interior = 0, left_full = 0;
    double right_interior = 0, right_full = 0;
};

namespace detail {

// Dense translation machinery on a ball. Column vectors live on B_R; the
// image of lambda(f) lives on B_{R+deg f}, whose canonical enumeration has
// the column ball as a prefix, so clipping is a prefix restriction.
class LambdaWorkspace {
public:
    LambdaWorkspace(const GroupDescriptor& G, const GroupRingMatrix<double>& f,
                    std::int64_t R, std::size_t cap)
        : G_(G), n_(f.cols()), m_(f.rows()),
          col_(G, R, cap), row_(G, R + f.degree(), cap) {
        entries_.resize(std::size_t(m_) * n_);
        for (int l = 0; l < m_; ++l)
            for (int k = 0; k < n_; ++k) {
                auto& ent = entries_[std::size_t(l) * n_ + k];
                for (const auto& [h, c] : f.at(l, k).coeffs()) {
                    Term t;
                    t.coeff = c;
                    t.tab = translation_table(inverse(G, h));
                    ent.push_back(std::move(t));
                }
            }
    }

    const BallIndex& col() const { return col_; }
    const BallIndex& row() const { return row_; }
    std::size_t col_size() const { return col_.size(); }
    std::size_t row_size() const { return row_.size(); }
    int nin() const { return n_; }
    int nout() const { return m_; }

    // w(l, j) = sum_k sum_h f_{lk}(h) z(k, index(h^-1 row_j))
    void apply(const std::vector<double>& z, std::vector<double>& w) const {
        std::size_t cn = col_.size(), rn = row_.size();
        w.assign(std::size_t(m_) * rn, 0.0);
        for (int l = 0; l < m_; ++l)
            for (int k = 0; k < n_; ++k) {
                const double* zk = z.data() + std::size_t(k) * cn;
                double* wl = w.data() + std::size_t(l) * rn;
                for (const auto& t : entries_[std::size_t(l) * n_ + k]) {
                    const std::uint32_t* tab = t.tab->data();
                    double c = t.coeff;
                    for (std::size_t j = 0; j < rn; ++j) {
                        std::uint32_t src = tab[j];
                        if (src != kOut) wl[j] += c * zk[src];
                    }
                }
            }
    }

    static constexpr std::uint32_t kOut = 0xffffffffu;

private:
    using Table = std::vector<std::uint32_t>;

    const Table* translation_table(const GroupElement& hinv) {
        auto key = element_str(G_, hinv);
        auto it = tables_.find(key);
        if (it != tables_.end()) return &it->second;
        Table tab(row_.size(), kOut);
        for (std::size_t j = 0; j < row_.size(); ++j) {
            std::size_t src = col_.index_of(mul(G_, hinv, row_.element(j)));
            if (src != BallIndex::npos) tab[j] = static_cast<std::uint32_t>(src);
        }
        return &tables_.emplace(key, std::move(tab)).first->second;
    }

    struct Term {
        double coeff;
        const Table* tab;
    };

    GroupDescriptor G_;
    int n_, m_;
    BallIndex col_, row_;
    std::vector<std::vector<Term>> entries_;
    std::map<std::string, Table> tables_;
};

inline double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// l2 mass per word-length shell of an n x n block of column vectors.
inline std::vector<double> shell_masses(const BallIndex& ball, int ncomp,
                                        const std::vector<double>& z) {
    std::vector<double> s(static_cast<std::size_t>(ball.radius()) + 1, 0.0);
    std::size_t bn = ball.size();
    for (int k = 0; k < ncomp; ++k)
        for (std::size_t j = 0; j < bn; ++j) {
            double v = z[std::size_t(k) * bn + j];
            s[static_cast<std::size_t>(ball.length(j))] += v * v;
        }
    for (auto& x : s) x = std::sqrt(x);
    return s;
}

}  // namespace detail

/// Residuals of both inverse identities, on the interior ball B_{R-deg f}
/// (where truncation does not clip the convolution) and on the full
/// support. The identity in the source theory lives on all of G; clipping
/// to the interior alone would hide tail error, so both are reported.
inline LeftRightResiduals verify_left_right(const GroupRingMatrix<std::int64_t>& f,
                                            const TruncatedL2Matrix& xi) {
    check_same_group(f.group(), xi.G);
    auto fd = f.map_values<double>([](std::int64_t v) { return double(v); });
    std::int64_t deg = f.degree();
    LeftRightResiduals out;
    out.interior_radius = std::max<std::int64_t>(0, xi.radius - deg);

    auto id = GroupRingMatrix<double>::identity_matrix(f.group(), f.rows());
    auto left = lambda_apply(fd, xi.as_matrix()) - id;
    auto right = xi_times(xi.as_matrix(), fd) - id;

    auto norms = [&](const GroupRingMatrix<double>& M, double& interior, double& full) {
        double si = 0, sf = 0;
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j)
                for (const auto& [g, v] : M.at(i, j).coeffs()) {
                    sf += v * v;
                    if (word_length(f.group(), g) <= out.interior_radius) si += v * v;
                }
        interior = std::sqrt(si);
        full = std::sqrt(sf);
    };
    norms(left, out.left_interior, out.left_full);
    norms(right, out.right_interior, out.right_full);
    return out;
}

namespace detail {

// Shared success verdict. A converged iteration is accepted only if the
// interior residual meets the tolerance AND the output looks like the
// truncation of an l2 object: either the inverse identity holds on the
// whole support (exact inverse inside the ball), or the series terminated
// with nothing clipped, or the outermost shell carries a small fraction of
// the peak shell mass. Without the certificate, f = e - g on Z would
// "succeed" with a non-decaying staircase whose interior residual is zero.
inline void finish_or_throw(const GroupRingMatrix<std::int64_t>& f, TruncatedL2Matrix& xi,
                            SolverReport& rep, double eps, double decay_gate,
                            bool terminated_exactly) {
    auto res = verify_left_right(f, xi);
    rep.interior_radius = res.interior_radius;
    rep.residual_left = res.left_interior;
    rep.residual_right = res.right_interior;
    rep.residual_left_full = res.left_full;
    rep.residual_right_full = res.right_full;
    rep.terminated_exactly = terminated_exactly;

    std::vector<double> shells(static_cast<std::size_t>(xi.radius) + 1, 0.0);
    for (const auto& ent : xi.e)
        for (const auto& [g, v] : ent.coeffs())
            shells[static_cast<std::size_t>(word_length(xi.G, g))] += v * v;
    double smax = 0;
    for (auto& s : shells) { s = std::sqrt(s); smax = std::max(smax, s); }
    rep.shell_ratio = smax > 0 ? shells.back() / smax : 0.0;

    xi.interior_radius = res.interior_radius;
    xi.residual_left = res.left_interior;
    xi.residual_right = res.right_interior;
    xi.residual_left_full = res.left_full;
    xi.residual_right_full = res.right_full;

    if (rep.residual_left > eps) {
        rep.message = "interior residual " + std::to_string(rep.residual_left) +
                      " above tolerance " + std::to_string(eps);
        throw solver_error(rep.message, rep);
    }
    bool certificate = rep.residual_left_full <= eps || terminated_exactly ||
                       rep.shell_ratio <= decay_gate;
    if (!certificate) {
        rep.message = "solution fails the tail-decay certificate (outermost shell carries " +
                      std::to_string(rep.shell_ratio) +
                      " of peak shell mass); no l2 formal inverse visible at this radius";
        throw solver_error(rep.message, rep);
    }
}

inline TruncatedL2Matrix from_dense(const GroupDescriptor& G, int n, std::int64_t R,
                                    const BallIndex& ball,
                                    const std::vector<std::vector<double>>& cols) {
    TruncatedL2Matrix xi(G, n, R);
    std::size_t bn = ball.size();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (std::size_t i = 0; i < bn; ++i) {
                double v = cols[j][std::size_t(k) * bn + i];
                if (v != 0.0) xi.at(k, j).set(ball.element(i), v);
            }
    return xi;
}

}  // namespace detail

/// Truncated Neumann series for f = b (e⊗id) - a with scalar b != 0:
/// xi = sum_k b^{-k-1} a^k, every term clipped to B_R. Convergence is
/// judged on the pre-clip term norms so the ball cannot mask divergence.
inline SolveResult neumann_inverse(const GroupRingMatrix<std::int64_t>& f, const SolverConfig& cfg) {
    const GroupDescriptor& G = f.group();
    if (f.rows() != f.cols()) throw config_error("neumann_inverse requires a square matrix");
    int n = f.rows();
    double eps = cfg.resolved_eps(G);
    std::int64_t deg = f.degree();
    if (cfg.radius < deg) throw config_error("solver radius smaller than deg(f)");

    std::int64_t b = f.at(0, 0).at(identity(G));
    for (int i = 0; i < n; ++i)
        if (f.at(i, i).at(identity(G)) != b)
            throw config_error("neumann_inverse: diagonal identity coefficients differ");
    if (b == 0) throw config_error("neumann_inverse: zero identity coefficient, no b(e⊗id)-a split");

    // a = b (e⊗id) - f
    GroupRingMatrix<double> a(G, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a.at(i, j) = -to_real(f.at(i, j));
            if (i == j) a.at(i, j).add_to(identity(G), double(b));
        }

    detail::LambdaWorkspace ws(G, a, cfg.radius, cfg.ball_cap);
    std::size_t cn = ws.col_size();

    SolverReport rep;
    rep.method = "neumann";
    rep.radius = cfg.radius;
    rep.eps = eps;

    std::vector<std::vector<double>> cols(n);
    std::vector<double> preclip_hist;
    double clip_l2_sum = 0;
    bool terminated = true;  // stays true only if all columns terminate exactly
    int total_iters = 0;
    double last_ratio = 0;

    std::size_t e_idx = 0;  // rank of identity element is 0
    for (int j = 0; j < n; ++j) {
        std::vector<double> xi(std::size_t(n) * cn, 0.0), t(std::size_t(n) * cn, 0.0), w;
        t[std::size_t(j) * cn + e_idx] = 1.0 / double(b);
        std::vector<double> pre;   // pre-clip term norms for this column
        pre.push_back(detail::norm2(t));
        bool col_terminated = false;
        bool col_converged = false;
        double col_clip = 0;       // l2 mass this column lost to the ball boundary
        int it = 0;
        for (; it < cfg.max_iters; ++it) {
            for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += t[i];
            ws.apply(t, w);
            // next term = clip(lambda(a) t)/b; suffix of the row ball is the clip
            double preclip_sq = 0, clip_sq = 0;
            std::size_t rn = ws.row_size();
            for (int k = 0; k < n; ++k) {
                const double* wk = w.data() + std::size_t(k) * rn;
                double* tk = t.data() + std::size_t(k) * cn;
                for (std::size_t i = 0; i < cn; ++i) {
                    double v = wk[i] / double(b);
                    tk[i] = v;
                    preclip_sq += v * v;
                }
                for (std::size_t i = cn; i < rn; ++i) {
                    double v = wk[i] / double(b);
                    preclip_sq += v * v;
                    clip_sq += v * v;
                }
            }
            double preclip = std::sqrt(preclip_sq);
            pre.push_back(preclip);
            col_clip += std::sqrt(clip_sq);
            clip_l2_sum += std::sqrt(clip_sq);

            if (preclip == 0.0) { col_terminated = true; break; }  // series ended exactly

            // interior residual of the accumulated xi equals |b| * norm of
            // the next term restricted to the interior ball
            double ir_sq = 0;
            for (int k = 0; k < n; ++k)
                for (std::size_t i = 0; i < cn; ++i)
                    if (ws.col().length(i) <= cfg.radius - deg) {
                        double v = t[std::size_t(k) * cn + i];
                        ir_sq += v * v;
                    }
            double interior_res = std::abs(double(b)) * std::sqrt(ir_sq);
            rep.residual_history.push_back(interior_res);

            // spec patience rule on pre-clip term norms
            if (pre.size() > 50 && pre.back() > 0.999 * pre[pre.size() - 51]) {
                rep.iterations = total_iters + it + 1;
                rep.message = "Neumann series diverges: term norms failed to shrink by 0.999 "
                              "over 50 consecutive terms (|b|^-1 lambda(a) is not a visible contraction)";
                throw solver_error(rep.message, rep);
            }

            std::size_t wnd = std::min<std::size_t>(pre.size() - 1, 50);
            double ratio = std::pow(pre.back() / pre[pre.size() - 1 - wnd], 1.0 / double(wnd));
            last_ratio = ratio;
            if (interior_res <= eps && ratio <= 0.999) {
                for (std::size_t i = 0; i < xi.size(); ++i) xi[i] += t[i];
                ++it;
                col_converged = true;
                break;
            }
        }
        if (!col_terminated && !col_converged) {
            rep.iterations = total_iters + it;
            rep.message = "Neumann series did not reach tolerance within max iterations";
            throw solver_error(rep.message, rep);
        }
        if (col_terminated && col_clip > 0) {
            // the terms left the ball rather than ending; that is only
            // convergence if they were decaying on the way out
            double rl = 0;
            std::size_t last = pre.size() - 1;
            while (last > 0 && pre[last] == 0.0) --last;  // trailing zeros are the clip artifact
            for (std::size_t i = 0; i < last; ++i) rl = std::max(rl, pre[i + 1] / pre[i]);
            if (last >= 1 && rl > 0.999 && pre[last] > eps) {
                rep.iterations = total_iters + it;
                rep.message = "Neumann terms left the ball without decaying (ratio " +
                              std::to_string(rl) + "); series diverges";
                throw solver_error(rep.message, rep);
            }
            last_ratio = std::min(std::max(last_ratio, rl), 0.999);
            terminated = false;  // mass was clipped; not an exact inverse
        } else if (!col_terminated) {
            terminated = false;
        }
        total_iters += it;
        cols[j] = std::move(xi);
        // last nonzero term norm seeds the geometric remainder estimate
        std::size_t lastnz = pre.size();
        while (lastnz > 0 && pre[lastnz - 1] == 0.0) --lastnz;
        if (lastnz > 0) preclip_hist.push_back(pre[lastnz - 1]);
    }
    rep.iterations = total_iters;

    TruncatedL2Matrix xi = detail::from_dense(G, n, cfg.radius, ws.col(), cols);
    xi.method = "neumann";
    // unrepresented mass: everything clipped plus a geometric estimate of
    // the un-run remainder of the series
    double rem = 0;
    for (double p : preclip_hist) {
        double rho = std::min(last_ratio, 0.999);
        rem += p * rho / (1.0 - rho);
    }
    xi.tail_mass = clip_l2_sum + rem;
    rep.tail_mass = xi.tail_mass;

    detail::finish_or_throw(f, xi, rep, eps, cfg.decay_gate, terminated);
    return {std::move(xi), std::move(rep)};
}

/// CGNR (conjugate gradient on the normal equations) for the square
/// ball-compressed system P_R lambda(f) P_R zeta = delta_e ⊗ e_j. The
/// normal equations are used because lambda(f) need not be self-adjoint.
/// Early termination at the residual tolerance doubles as regularization:
/// when the compression has a near-null exploding mode (f = 1e-2g), the
/// iteration stops at the decaying small-norm solution instead.
inline SolveResult cg_inverse(const GroupRingMatrix<std::int64_t>& f, const SolverConfig& cfg) {
    const GroupDescriptor& G = f.group();
    if (f.rows() != f.cols()) throw config_error("cg_inverse requires a square matrix");
    int n = f.rows();
    double eps = cfg.resolved_eps(G);
    std::int64_t deg = f.degree();
    if (cfg.radius < deg) throw config_error("solver radius smaller than deg(f)");

    auto fd = f.map_values<double>([](std::int64_t v) { return double(v); });
    auto fstar = fd.star();
    detail::LambdaWorkspace A(G, fd, cfg.radius, cfg.ball_cap);
    detail::LambdaWorkspace At(G, fstar, cfg.radius, cfg.ball_cap);
    std::size_t cn = A.col_size();

    SolverReport rep;
    rep.method = "cg-normal";
    rep.radius = cfg.radius;
    rep.eps = eps;

    auto apply_clip = [&](const detail::LambdaWorkspace& W, const std::vector<double>& z,
                          std::vector<double>& out, std::vector<double>& scratch) {
        W.apply(z, scratch);
        std::size_t rn = W.row_size();
        out.assign(std::size_t(n) * cn, 0.0);
        for (int k = 0; k < n; ++k)
            for (std::size_t i = 0; i < cn; ++i)
                out[std::size_t(k) * cn + i] = scratch[std::size_t(k) * rn + i];
    };

    std::vector<std::vector<double>> cols(n);
    int total_iters = 0;

    for (int j = 0; j < n; ++j) {
        std::vector<double> rhs(std::size_t(n) * cn, 0.0);
        rhs[std::size_t(j) * cn + 0] = 1.0;  // identity has rank 0

        std::vector<double> z(std::size_t(n) * cn, 0.0);
        std::vector<double> r = rhs, s, p, q, scratch;
        apply_clip(At, r, s, scratch);
        p = s;
        double gamma = detail::dot(s, s);
        double rn2 = detail::norm2(r);
        int it = 0;
        int stall = 0;
        double best = rn2;
        while (rn2 > eps && it < cfg.max_iters) {
            apply_clip(A, p, q, scratch);
            double qq = detail::dot(q, q);
            if (qq == 0.0) break;
            double alpha = gamma / qq;
            for (std::size_t i = 0; i < z.size(); ++i) z[i] += alpha * p[i];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= alpha * q[i];
            apply_clip(At, r, s, scratch);
            double g2 = detail::dot(s, s);
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = s[i] + (g2 / gamma) * p[i];
            gamma = g2;
            rn2 = detail::norm2(r);
            rep.residual_history.push_back(rn2);
            ++it;
            // fixed-point detection: residual no longer improving
            if (rn2 < best * (1.0 - 1e-3)) { best = rn2; stall = 0; }
            else if (++stall > 100) break;
        }
        total_iters += it;
        if (rn2 > eps) {
            rep.iterations = total_iters;
            rep.message = "cg-normal: residual " + std::to_string(rn2) +
                          " stayed above tolerance " + std::to_string(eps) +
                          (it >= cfg.max_iters ? " (max iterations)" : " (stagnation)");
            throw solver_error(rep.message, rep);
        }
        cols[j] = std::move(z);
    }
    rep.iterations = total_iters;

    TruncatedL2Matrix xi = detail::from_dense(G, n, cfg.radius, A.col(), cols);
    xi.method = "cg-normal";
    detail::finish_or_throw(f, xi, rep, eps, cfg.decay_gate, false);
    // first-order estimate of unrepresented mass: the collar mismatch
    xi.tail_mass = xi.residual_left_full + eps;
    rep.tail_mass = xi.tail_mass;
    return {std::move(xi), std::move(rep)};
}

}  // namespace algact
