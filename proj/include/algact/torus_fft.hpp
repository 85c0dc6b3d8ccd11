#pragma once

#include <complex>
#include <numbers>

#include "algact/solver.hpp"

namespace algact {

namespace detail {

inline void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * std::numbers::pi / double(len);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// In-place FFT along every axis of a d-dimensional M^d array.
inline void fft_nd(std::vector<std::complex<double>>& a, int d, std::size_t M) {
    std::vector<std::complex<double>> line(M);
    std::size_t total = a.size();
    for (int axis = 0; axis < d; ++axis) {
        std::size_t stride = 1;
        for (int i = 0; i < axis; ++i) stride *= M;
        std::size_t block = stride * M;
        for (std::size_t base = 0; base < total; base += block)
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t k = 0; k < M; ++k) line[k] = a[base + off + k * stride];
                fft_radix2(line);
                for (std::size_t k = 0; k < M; ++k) a[base + off + k * stride] = line[k];
            }
    }
}

// Gauss-Jordan inverse of a small complex matrix; returns the smallest
// pivot magnitude met along the way (a cheap conditioning signal).
inline double invert_small(std::vector<std::complex<double>>& m, int n) {
    std::vector<std::complex<double>> inv(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) inv[std::size_t(i) * n + i] = 1.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(m[std::size_t(r) * n + c]) > std::abs(m[std::size_t(piv) * n + c])) piv = r;
        for (int j = 0; j < n; ++j) {
            std::swap(m[std::size_t(c) * n + j], m[std::size_t(piv) * n + j]);
            std::swap(inv[std::size_t(c) * n + j], inv[std::size_t(piv) * n + j]);
        }
        auto p = m[std::size_t(c) * n + c];
        min_pivot = std::min(min_pivot, std::abs(p));
        if (p == std::complex<double>(0.0)) return 0.0;
        for (int j = 0; j < n; ++j) {
            m[std::size_t(c) * n + j] /= p;
            inv[std::size_t(c) * n + j] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            auto factor = m[std::size_t(r) * n + c];
            if (factor == std::complex<double>(0.0)) continue;
            for (int j = 0; j < n; ++j) {
                m[std::size_t(r) * n + j] -= factor * m[std::size_t(c) * n + j];
                inv[std::size_t(r) * n + j] -= factor * inv[std::size_t(c) * n + j];
            }
        }
    }
    m = std::move(inv);
    return min_pivot;
}

struct TorusGridRun {
    // coefficient grids per matrix entry, after inversion + inverse DFT
    std::vector<std::vector<std::complex<double>>> entry;
    double min_symbol = 0;
};

inline TorusGridRun torus_grid_run(const GroupRingMatrix<std::int64_t>& f, std::size_t M,
                                   double singular_threshold, SolverReport& rep) {
    const GroupDescriptor& G = f.group();
    int d = G.rank, n = f.rows();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= M;

    TorusGridRun run;
    run.entry.assign(std::size_t(n) * n, std::vector<std::complex<double>>(total));
    run.min_symbol = std::numeric_limits<double>::infinity();

    std::vector<std::complex<double>> sym(std::size_t(n) * n);
    std::vector<std::int64_t> jvec(d);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int i = 0; i < d; ++i) { jvec[i] = static_cast<std::int64_t>(rem % M); rem /= M; }
        // symbol F(theta) = sum_h fhat(h) e^{2 pi i <h, theta>}, theta = j/M
        for (auto& v : sym) v = 0.0;
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (const auto& [h, c] : f.at(l, k).coeffs()) {
                    double phase = 0;
                    for (int i = 0; i < d; ++i)
                        phase += double(h.w[i]) * double(jvec[i]) / double(M);
                    double ang = 2.0 * std::numbers::pi * phase;
                    sym[std::size_t(l) * n + k] +=
                        double(c) * std::complex<double>(std::cos(ang), std::sin(ang));
                }
        double piv = invert_small(sym, n);
        if (piv < run.min_symbol) run.min_symbol = piv;
        if (piv < singular_threshold) {
            rep.min_symbol = piv;
            std::string th = "(";
            for (int i = 0; i < d; ++i)
                th += (i ? "," : "") + std::to_string(double(jvec[i]) / double(M));
            th += ")";
            rep.message = "symbol is singular near theta = " + th +
                          " (pivot " + std::to_string(piv) + "); lambda(f) has no l2 inverse visible on this grid";
            throw solver_error(rep.message, rep);
        }
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                run.entry[std::size_t(l) * n + k][idx] = sym[std::size_t(l) * n + k];
    }
    // xi(g) = (1/M^d) sum_j Xi(theta_j) e^{-2 pi i <g, theta_j>}: a forward FFT
    for (auto& grid : run.entry) {
        fft_nd(grid, d, M);
        for (auto& v : grid) v /= double(total);
    }
    return run;
}

inline std::complex<double> grid_value(const std::vector<std::complex<double>>& grid, int d,
                                       std::size_t M, const GroupElement& g) {
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < d; ++i) {
        std::int64_t c = g.w[i] % std::int64_t(M);
        if (c < 0) c += std::int64_t(M);
        idx += static_cast<std::size_t>(c) * stride;
        stride *= M;
    }
    return grid[idx];
}

}  // namespace detail

/// Pointwise symbol inversion on a uniform torus grid for G = Z^d, with the
/// coefficients recovered by inverse DFT. Valid because lambda(f) is
/// invertible on l2 iff the symbol is invertible a.e. with square-integrable
/// inverse. Aliasing is estimated by doubling the grid and differencing.
inline SolveResult torus_fft_inverse(const GroupRingMatrix<std::int64_t>& f,
                                     const SolverConfig& cfg,
                                     double singular_threshold = 1e-8) {
    const GroupDescriptor& G = f.group();
    if (G.kind != GroupKind::Lattice)
        throw config_error("torus-grid solver requires a lattice group");
    if (f.rows() != f.cols()) throw config_error("torus_fft_inverse requires a square matrix");
    int n = f.rows(), d = G.rank;
    double eps = cfg.resolved_eps(G);

    std::size_t M = static_cast<std::size_t>(cfg.grid);
    if (M < 4 || (M & (M - 1)) != 0)
        throw config_error("grid resolution must be a power of 2 and >= 4");
    if (static_cast<std::int64_t>(M / 2) <= cfg.radius + f.degree())
        throw config_error("grid too small for the requested radius");

    SolverReport rep;
    rep.method = "torus-grid";
    rep.radius = cfg.radius;
    rep.eps = eps;
    rep.grid = static_cast<int>(M);

    auto coarse = detail::torus_grid_run(f, M, singular_threshold, rep);
    auto fine = detail::torus_grid_run(f, 2 * M, singular_threshold, rep);
    rep.min_symbol = std::min(coarse.min_symbol, fine.min_symbol);

    auto ball = enumerate_ball(G, cfg.radius, cfg.ball_cap);
    double aliasing = 0, imag_residue = 0;

    TruncatedL2Matrix xi(G, n, cfg.radius);
    xi.method = "torus-grid";
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            const auto& gc = coarse.entry[std::size_t(l) * n + k];
            const auto& gf = fine.entry[std::size_t(l) * n + k];
            for (const auto& g : ball) {
                auto vc = detail::grid_value(gc, d, M, g);
                auto vf = detail::grid_value(gf, d, 2 * M, g);
                aliasing = std::max(aliasing, std::abs(vf - vc));
                imag_residue = std::max(imag_residue, std::abs(vf.imag()));
                // Prop 2.2(iv): the inverse of integer f is real; the
                // imaginary residue is recorded, then discarded.
                if (vf.real() != 0.0) xi.at(l, k).set(g, vf.real());
            }
            // mass the ball does not capture, measured exactly on the fine grid
        }
    double out_mass_sq = 0;
    {
        std::size_t total = 1;
        for (int i = 0; i < d; ++i) total *= 2 * M;
        std::vector<bool> in_ball(total, false);
        for (const auto& g : ball) {
            std::size_t idx = 0, stride = 1;
            for (int i = 0; i < d; ++i) {
                std::int64_t c = g.w[i] % std::int64_t(2 * M);
                if (c < 0) c += std::int64_t(2 * M);
                idx += static_cast<std::size_t>(c) * stride;
                stride *= 2 * M;
            }
            in_ball[idx] = true;
        }
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k) {
                const auto& gf = fine.entry[std::size_t(l) * n + k];
                for (std::size_t idx = 0; idx < total; ++idx)
                    if (!in_ball[idx]) out_mass_sq += std::norm(gf[idx]);
            }
    }

    rep.aliasing_error = aliasing;
    rep.imag_residue = imag_residue;
    xi.tail_mass = std::sqrt(out_mass_sq) + aliasing * std::sqrt(double(ball.size()) * n * n);
    rep.tail_mass = xi.tail_mass;
    rep.iterations = 1;

    detail::finish_or_throw(f, xi, rep, eps, cfg.decay_gate, false);
    return {std::move(xi), std::move(rep)};
}

/// Heuristic operator-norm estimate for lambda(f) via power iteration on
/// the ball-compressed normal operator. Finite truncations only lower-bound
/// the true norm; this is a diagnostic, not a certificate.
inline double operator_norm_estimate(const GroupRingMatrix<std::int64_t>& f, std::int64_t R,
                                     int iters = 60, std::size_t cap = kDefaultBallCap) {
    auto fd = f.map_values<double>([](std::int64_t v) { return double(v); });
    detail::LambdaWorkspace A(f.group(), fd, R, cap);
    detail::LambdaWorkspace At(f.group(), fd.star(), R, cap);
    int n = f.cols();
    std::size_t cn = A.col_size();
    std::vector<double> v(std::size_t(n) * cn), w, scratch;
    // deterministic pseudo-random start
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    for (auto& x : v) {
        s ^= s << 13; s ^= s >> 7; s ^= s << 17;
        x = double(s % 1000) / 1000.0 - 0.5;
    }
    double lam = 0;
    for (int i = 0; i < iters; ++i) {
        double nv = detail::norm2(v);
        if (nv == 0) return 0;
        for (auto& x : v) x /= nv;
        // w = A^T A v clipped to the ball
        A.apply(v, scratch);
        std::size_t rn = A.row_size();
        w.assign(v.size(), 0.0);
        for (int k = 0; k < n; ++k)
            for (std::size_t j = 0; j < cn; ++j)
                w[std::size_t(k) * cn + j] = scratch[std::size_t(k) * rn + j];
        At.apply(w, scratch);
        rn = At.row_size();
        for (int k = 0; k < n; ++k)
            for (std::size_t j = 0; j < cn; ++j)
                v[std::size_t(k) * cn + j] = scratch[std::size_t(k) * rn + j];
        lam = detail::norm2(v);
    }
    return std::sqrt(lam);
}

/// Dispatch on the configured method.
inline SolveResult solve_inverse(const GroupRingMatrix<std::int64_t>& f, const SolverConfig& cfg) {
    switch (cfg.method) {
        case SolverMethod::Neumann: return neumann_inverse(f, cfg);
        case SolverMethod::CgNormal: return cg_inverse(f, cfg);
        case SolverMethod::TorusGrid: return torus_fft_inverse(f, cfg);
    }
    throw config_error("bad solver method");
}

}  // namespace algact
