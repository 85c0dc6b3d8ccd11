#pragma once

#include <cmath>
#include <numbers>

namespace algact {

/// F_m(t) = average of e^{2 pi i t j} over j in {-m,...,m}
///        = sin((2m+1) pi t) / ((2m+1) sin(pi t)) away from integers, 1 at
/// integers. The ratio is 0/0 at integers, so near them (within 1e-4) the
/// explicit cosine sum is used instead. Both branches work on the exact
/// offset dt = t - nearest(t) (the subtraction is exact in IEEE and F_m has
/// period 1), which keeps them accurate to ~1e-15 instead of losing digits
/// to pi*t argument rounding. Output lies in [-1, 1].
inline double dirichlet_kernel(int m, double t) {
    if (m < 0) return 1.0;
    double dt = t - std::nearbyint(t);
    double v;
    if (std::fabs(dt) <= 1e-4) {
        double s = 1.0;
        for (int j = 1; j <= m; ++j) s += 2.0 * std::cos(2.0 * std::numbers::pi * dt * j);
        v = s / double(2 * m + 1);
    } else {
        // numerator argument reduced mod 2 in the t-domain, exactly
        double num_t = double(2 * m + 1) * dt;
        num_t -= 2.0 * std::nearbyint(num_t / 2.0);
        v = std::sin(std::numbers::pi * num_t) /
            (double(2 * m + 1) * std::sin(std::numbers::pi * dt));
    }
    if (v > 1.0) v = 1.0;
    if (v < -1.0) v = -1.0;
    return v;
}

/// Explicit constant in the Claim-1 style quadratic estimate
/// |1 - F_m(x)| <= C_m x^2, from 1 - cos(u) <= u^2/2 applied to the cosine
/// sum: C_m = ((2m+1) pi)^2 / 6.
inline double dirichlet_quadratic_constant(int m) {
    double w = double(2 * m + 1) * std::numbers::pi;
    return w * w / 6.0;
}

}  // namespace algact
