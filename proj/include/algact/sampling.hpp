#pragma once

#include <functional>

#include "algact/measures.hpp"

namespace algact {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// counter-based key: (seed, stream, coordinate) -> 64 uniform bits
inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t coord,
                                  std::uint64_t nonce) {
    std::uint64_t h = mix64(seed ^ 0x510e527fade682d1ull);
    h = mix64(h ^ stream * 0x9e3779b97f4a7c15ull);
    h = mix64(h ^ coord * 0xc2b2ae3d27d4eb4full);
    if (nonce) h = mix64(h ^ nonce);
    return h;
}

}  // namespace detail

/// Uniform draw from {-m,...,m}, keyed on (seed, stream, coordinate).
/// Counter-based and unbiased (rejection re-mixes with a nonce), so results
/// are bit-identical however samples are scheduled.
inline int alphabet_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t coord, int m) {
    std::uint64_t range = std::uint64_t(2 * m + 1);
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % range);
    std::uint64_t nonce = 0;
    std::uint64_t v = detail::counter_bits(seed, stream, coord, nonce);
    while (v >= limit) v = detail::counter_bits(seed, stream, coord, ++nonce);
    return int(v % range) - m;
}

/// The i.i.d. Bernoulli field x: component k, element g -> uniform value in
/// {-m,...,m}. The coordinate key is the element's rank in the canonical
/// ball order, so the field is a well-defined function on all of G.
struct BernoulliField {
    const GroupDescriptor* G;
    int m;
    std::uint64_t seed;
    std::uint64_t sample_index;

    int operator()(int component, const GroupElement& g) const {
        std::uint64_t stream = sample_index * 64ull + std::uint64_t(component);
        return alphabet_draw(seed, stream, std::uint64_t(rank_of(*G, g)), m);
    }
};

/// One point of the factor map rho(x) = q(r(xi*) x) restricted to a window.
/// Each window value (l,g) = sum_k sum_{u in supp(xi*_{kl})} x(k)(g u^{-1})
/// xi*(u), iterated in canonical order of u, so shifting the field and
/// shifting the window produce bit-identical values.
template <class Field>
TorusConfiguration sample_window_with_field(const TruncatedL2Matrix& xi_star,
                                            const std::vector<std::pair<int, GroupElement>>& window,
                                            const Field& x) {
    const GroupDescriptor& G = xi_star.G;
    TorusConfiguration out(G, xi_star.n);
    for (const auto& [l, g] : window) {
        double acc = 0.0;
        for (int k = 0; k < xi_star.n; ++k)
            for (const auto& [u, c] : xi_star.at(k, l).coeffs())
                acc += double(x(k, mul(G, g, inverse(G, u)))) * c;
        out.set(l, g, acc);
    }
    return out;
}

/// Draws one sample of mu_{m,xi} on the window through the Bernoulli factor
/// map. source_radius must cover window radius + xi radius so every window
/// value is a function of source-ball coordinates only.
inline TorusConfiguration bernoulli_factor_sample(const MuSpec& spec,
                                                  const std::vector<std::pair<int, GroupElement>>& window,
                                                  std::uint64_t seed, std::uint64_t sample_index,
                                                  std::int64_t source_radius) {
    const GroupDescriptor& G = spec.xi.G;
    for (const auto& [l, g] : window)
        if (word_length(G, g) + spec.xi.radius > source_radius)
            throw config_error("source radius too small for window (need window radius + xi radius)");
    TruncatedL2Matrix xs = spec.xi.star();
    BernoulliField x{&G, spec.m, seed, sample_index};
    return sample_window_with_field(xs, window, x);
}

namespace detail {

// Flattened stencil for repeated sampling: per window point, terms
// (component, source rank, coefficient) in the same order the map-based
// path iterates, so both paths sum identically.
struct SampleStencil {
    struct Term {
        int component;
        std::uint64_t coord;
        double coeff;
    };
    std::vector<std::pair<int, GroupElement>> window;
    std::vector<std::vector<Term>> terms;  // per window point

    SampleStencil(const TruncatedL2Matrix& xi,
                  const std::vector<std::pair<int, GroupElement>>& win)
        : window(win) {
        const GroupDescriptor& G = xi.G;
        TruncatedL2Matrix xs = xi.star();
        terms.resize(window.size());
        for (std::size_t i = 0; i < window.size(); ++i) {
            auto [l, g] = window[i];
            for (int k = 0; k < xs.n; ++k)
                for (const auto& [u, c] : xs.at(k, l).coeffs()) {
                    GroupElement src = mul(G, g, inverse(G, u));
                    terms[i].push_back({k, std::uint64_t(rank_of(G, src)), c});
                }
        }
    }
};

}  // namespace detail

/// Monte Carlo estimate of hat(mu)_{m,xi}(alpha): averages
/// exp(2 pi i <theta_s, alpha>_T) over N factor-map samples. Deterministic
/// given (seed, N); the averaging order is fixed (chunked in sample order).
inline FourierReport monte_carlo_fourier(const MuSpec& spec, const FinSuppVector<std::int64_t>& alpha,
                                         std::int64_t N, std::uint64_t seed) {
    if (N < 1) throw config_error("sample count must be >= 1");
    check_same_group(spec.xi.G, alpha.G);

    std::vector<std::pair<int, GroupElement>> window;
    for (int l = 0; l < alpha.size(); ++l)
        for (const auto& [g, c] : alpha[l].coeffs()) window.emplace_back(l, g);

    detail::SampleStencil stencil(spec.xi, window);
    std::vector<double> acoef(window.size());
    for (std::size_t i = 0; i < window.size(); ++i)
        acoef[i] = double(alpha[window[i].first].at(window[i].second));

    // Kahan-compensated chunked sums: values cluster near |z| = 1, and a
    // plain sum of ~10^5 of them rounds sub-ulp deviations away, collapsing
    // the variance estimate to zero.
    const std::int64_t chunk = 4096;
    std::complex<double> total(0.0, 0.0), total_c(0.0, 0.0);
    std::complex<double> partial(0.0, 0.0), partial_c(0.0, 0.0);
    auto kadd = [](std::complex<double>& sum, std::complex<double>& comp,
                   const std::complex<double>& z) {
        std::complex<double> y = z - comp;
        std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for (std::int64_t s = 0; s < N; ++s) {
        double pairing = 0.0;
        for (std::size_t i = 0; i < window.size(); ++i) {
            double acc = 0.0;
            std::uint64_t stream_base = std::uint64_t(s) * 64ull;
            for (const auto& t : stencil.terms[i])
                acc += double(alphabet_draw(seed, stream_base + std::uint64_t(t.component),
                                            t.coord, spec.m)) *
                       t.coeff;
            pairing += acoef[i] * mod_one(acc);
        }
        double ang = 2.0 * std::numbers::pi * mod_one(pairing);
        kadd(partial, partial_c, std::complex<double>(std::cos(ang), std::sin(ang)));
        if ((s + 1) % chunk == 0) {
            kadd(total, total_c, partial);
            kadd(total, total_c, partial_c);
            partial = partial_c = 0.0;
        }
    }
    kadd(total, total_c, partial);
    kadd(total, total_c, partial_c);

    FourierReport rep = mu_fourier_exact(spec, alpha);
    rep.mc_estimate = total / double(N);
    // |z_s| = 1 exactly, so the empirical variance is N(1 - |mean|^2)/(N-1)
    double var = N > 1 ? double(N) * (1.0 - std::norm(rep.mc_estimate)) / double(N - 1) : 0.0;
    if (var < 0) var = 0;
    rep.mc_stderr = std::sqrt(var / double(N));
    rep.samples = N;
    rep.seed = seed;
    return rep;
}

}  // namespace algact
