#include <doctest.h>

#include "algact/expr.hpp"
#include "algact/group_ring.hpp"
#include "algact/l2.hpp"
#include "algact/membership.hpp"
#include "algact/torus.hpp"

using namespace algact;

namespace {

GroupDescriptor Z() { return GroupDescriptor::parse("Z"); }
GroupDescriptor Z2() { return GroupDescriptor::parse("Z^2"); }
GroupDescriptor F2() { return GroupDescriptor::parse("F2"); }

// Independent convolution oracle: gather form (c)(g) = sum over supp(a) of
// a(h) b(h^-1 g), evaluated per target point. The implementation scatters
// over pairs; agreement of the two routes is the check.
template <class T>
FinSupp<T> convolve_oracle(const FinSupp<T>& a, const FinSupp<T>& b) {
    FinSupp<T> out(a.group());
    const auto& G = a.group();
    std::vector<GroupElement> targets;
    for (const auto& [h, va] : a.coeffs())
        for (const auto& [y, vb] : b.coeffs()) targets.push_back(mul(G, h, y));
    for (const auto& g : targets) {
        T acc{};
        for (const auto& [h, va] : a.coeffs())
            acc = scalar_traits<T>::add(acc, scalar_traits<T>::mul(va, b.at(mul(G, inverse(G, h), g))));
        out.set(g, acc);
    }
    return out;
}

struct Rng {
    std::uint64_t s;
    std::uint64_t next() { s ^= s << 13; s ^= s >> 7; s ^= s << 17; return s; }
    std::int64_t intin(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(next() % std::uint64_t(hi - lo + 1));
    }
};

template <class T>
FinSupp<T> random_fn(Rng& rng, const GroupDescriptor& G, const std::vector<GroupElement>& ball,
                     int terms, int max_num, int max_den) {
    FinSupp<T> out(G);
    for (int t = 0; t < terms; ++t) {
        const auto& g = ball[std::size_t(rng.next() % ball.size())];
        if constexpr (std::is_same_v<T, Rational>)
            out.add_to(g, Rational(rng.intin(-max_num, max_num), rng.intin(1, max_den)));
        else
            out.add_to(g, T(rng.intin(-max_num, max_num)));
    }
    return out;
}

}  // namespace

TEST_CASE("lambda_apply examples") {
    auto G = Z();
    // f = e⊗id leaves xi alone
    auto f = GroupRingMatrix<std::int64_t>::identity_matrix(G, 2);
    FinSuppVector<std::int64_t> xi(G, 2);
    xi[0] = parse_ring_expr(G, "2e-g");
    xi[1] = parse_ring_expr(G, "g^-3+5g");
    CHECK(lambda_apply(f, xi) == xi);

    // f = 2e-g applied to delta_0
    GroupRingMatrix<std::int64_t> f1(G, 1, 1);
    f1.at(0, 0) = parse_ring_expr(G, "2e-g");
    FinSuppVector<std::int64_t> d(G, 1);
    d[0] = delta<std::int64_t>(G, identity(G));
    auto out = lambda_apply(f1, d);
    CHECK(out[0] == parse_ring_expr(G, "2e-g"));
}

TEST_CASE("lambda_apply matrix case against brute-force oracle") {
    auto G = Z();
    // f = [[e, g],[0, e]] acting on delta_0 ⊗ id
    auto f = parse_ring_matrix(G, "[[e, g],[0, e]]");
    REQUIRE(f.rows() == 2);
    auto id = GroupRingMatrix<std::int64_t>::identity_matrix(G, 2);
    auto prod = lambda_apply(f, id);
    CHECK(prod.at(0, 0) == parse_ring_expr(G, "e"));
    CHECK(prod.at(0, 1) == parse_ring_expr(G, "g"));
    CHECK(prod.at(1, 0).is_zero());
    CHECK(prod.at(1, 1) == parse_ring_expr(G, "e"));

    Rng rng{42};
    for (auto Gx : {Z(), Z2(), F2()}) {
        auto ball = enumerate_ball(Gx, 3);
        for (int t = 0; t < 50; ++t) {
            auto a = random_fn<std::int64_t>(rng, Gx, ball, 4, 9, 1);
            auto b = random_fn<std::int64_t>(rng, Gx, ball, 4, 9, 1);
            CHECK(convolve(a, b) == convolve_oracle(a, b));
        }
    }
}

TEST_CASE("r_apply examples") {
    auto G = Z();
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "2e-g");
    FinSuppVector<std::int64_t> e(G, 1);
    e[0] = delta<std::int64_t>(G, identity(G));
    CHECK(r_apply(f, e)[0] == parse_ring_expr(G, "2e-g"));

    FinSuppVector<std::int64_t> eg(G, 1);
    eg[0] = parse_ring_expr(G, "e+g");
    // (2-t)(1+t) = 2 + t - t^2
    CHECK(r_apply(f, eg)[0] == parse_ring_expr(G, "2e+g-g^2"));

    CHECK(r_apply(GroupRingMatrix<std::int64_t>::identity_matrix(G, 1), eg) == eg);
}

TEST_CASE("star is an involution and antihomomorphism") {
    Rng rng{7};
    for (auto G : {Z(), F2()}) {
        auto ball = enumerate_ball(G, 2);
        for (int t = 0; t < 30; ++t) {
            GroupRingMatrix<std::int64_t> a(G, 2, 2), b(G, 2, 2);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    a.at(i, j) = random_fn<std::int64_t>(rng, G, ball, 3, 5, 1);
                    b.at(i, j) = random_fn<std::int64_t>(rng, G, ball, 3, 5, 1);
                }
            CHECK(a.star().star() == a);
            CHECK((a * b).star() == b.star() * a.star());
        }
    }
    // (g)* = g^-1, (2e-g)* = 2e-g^-1
    auto G = Z();
    CHECK(parse_ring_expr(G, "g").star() == parse_ring_expr(G, "g^-1"));
    CHECK(parse_ring_expr(G, "2e-g").star() == parse_ring_expr(G, "2e-g^-1"));
    GroupRingMatrix<std::int64_t> m(G, 2, 2);
    m.at(0, 1) = parse_ring_expr(G, "g");
    auto ms = m.star();
    CHECK(ms.at(1, 0) == parse_ring_expr(G, "g^-1"));
    CHECK(ms.at(0, 1).is_zero());
}

TEST_CASE("hat of a product equals lambda_apply of hat") {
    auto G = Z();
    CHECK(hat(parse_ring_expr(G, "2e-g")).at(identity(G)) == 2);
    CHECK(hat(parse_ring_expr(G, "2e-g")).at(parse_element(G, "1")) == -1);
    Rng rng{99};
    for (auto Gx : {Z2(), F2()}) {
        auto ball = enumerate_ball(Gx, 2);
        for (int t = 0; t < 30; ++t) {
            auto a = random_fn<std::int64_t>(rng, Gx, ball, 4, 9, 1);
            auto b = random_fn<std::int64_t>(rng, Gx, ball, 4, 9, 1);
            // hat(alpha beta) = alpha . hat(beta): product route vs oracle route
            CHECK(hat(convolve(a, b)) == convolve_oracle(a, hat(b)));
        }
    }
}

TEST_CASE("Prop 2.1(iv) adjoint pairing, exact over rationals") {
    Rng rng{2024};
    for (auto G : {Z2(), F2()}) {
        auto ball = enumerate_ball(G, 3);
        for (int t = 0; t < 60; ++t) {
            int n = 1 + int(rng.next() % 2);
            GroupRingMatrix<Rational> xi(G, n, n);
            FinSuppVector<Rational> alpha(G, n), beta(G, n);
            for (int i = 0; i < n; ++i) {
                alpha[i] = random_fn<Rational>(rng, G, ball, 3, 4, 4);
                beta[i] = random_fn<Rational>(rng, G, ball, 3, 4, 4);
                for (int j = 0; j < n; ++j)
                    xi.at(i, j) = random_fn<Rational>(rng, G, ball, 3, 4, 4);
            }
            auto xs = xi.star();
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
            CHECK(lhs == rhs);

            // the same identity in floating point stays within 1e-10
            double lhs_f = 0, rhs_f = 0;
            for (int l = 0; l < n; ++l) {
                FinSupp<double> rxa(G), rxsb(G);
                for (int k = 0; k < n; ++k) {
                    rxa += convolve(to_real(alpha[k]), to_real(xi.at(k, l)));
                    rxsb += convolve(to_real(beta[k]), to_real(xs.at(k, l)));
                }
                for (const auto& [g, v] : rxa.coeffs()) lhs_f += v * beta[l].at(g).to_double();
                for (const auto& [g, v] : rxsb.coeffs()) rhs_f += v * alpha[l].at(g).to_double();
            }
            CHECK(std::fabs(lhs_f - rhs_f) <= 1e-10);
        }
    }
}

TEST_CASE("duality pairing") {
    auto G = Z();
    TorusConfiguration theta(G, 1);
    auto ball = enumerate_ball(G, 2);
    for (const auto& g : ball) theta.set(0, g, 0.5);

    FinSuppVector<std::int64_t> zero(G, 1);
    CHECK(duality_pairing(theta, zero) == 0.0);

    FinSuppVector<std::int64_t> a(G, 1);
    a[0] = parse_ring_expr(G, "e+g");
    CHECK(duality_pairing(theta, a) == doctest::Approx(0.0));  // 1/2 + 1/2 = 0 mod 1

    TorusConfiguration quarter(G, 1);
    quarter.set(0, identity(G), 0.25);
    FinSuppVector<std::int64_t> e(G, 1);
    e[0] = delta<std::int64_t>(G, identity(G));
    CHECK(duality_pairing(quarter, e) == doctest::Approx(0.25));

    // support escaping the window is an error
    FinSuppVector<std::int64_t> far(G, 1);
    far[0] = delta<std::int64_t>(G, parse_element(G, "7"));
    CHECK_THROWS_AS(duality_pairing(theta, far), config_error);
}

TEST_CASE("q_map conventions") {
    auto G = Z();
    FinSuppVector<double> z(G, 1);
    z[0].set(identity(G), 1.75);
    z[0].set(parse_element(G, "1"), -0.25);
    z[0].set(parse_element(G, "2"), 3.0);  // integer -> 0
    auto window = ball_window(G, 1, 2);
    auto theta = q_map(z, window);
    CHECK(theta.at(0, identity(G)) == doctest::Approx(0.75));
    CHECK(theta.at(0, parse_element(G, "1")) == doctest::Approx(0.75));
    CHECK(theta.at(0, parse_element(G, "2")) == 0.0);
    CHECK(theta.at(0, parse_element(G, "-2")) == 0.0);

    // q is invariant under adding integer vectors
    FinSuppVector<double> zi(G, 1);
    zi[0].set(identity(G), 2.75);
    zi[0].set(parse_element(G, "1"), 0.75);
    zi[0].set(parse_element(G, "2"), -5.0);
    auto theta2 = q_map(zi, window);
    for (const auto& [key, v] : theta.values())
        CHECK(theta2.at(key.first, key.second) == doctest::Approx(v));
}

TEST_CASE("torus distance convention") {
    CHECK(torus_dist(0.1, 0.9) == doctest::Approx(0.2));
    CHECK(torus_dist(0.0, 0.5) == doctest::Approx(0.5));
    CHECK(torus_dist(0.25, 0.25) == 0.0);
}

TEST_CASE("image membership on exact data") {
    auto G = Z();
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "2e-g");

    // xi = geometric inverse, exact inside radius 30
    TruncatedL2Matrix xi(G, 1, 30);
    double c = 0.5;
    for (int k = 0; k <= 30; ++k) {
        GroupElement g = identity(G);
        g.w[0] = k;
        xi.at(0, 0).set(g, c);
        c *= 0.5;
    }

    // alpha = r(f) delta_e is in the image with witness delta_e
    FinSuppVector<std::int64_t> e(G, 1);
    e[0] = delta<std::int64_t>(G, identity(G));
    auto alpha = r_apply(f, e);
    auto res = image_membership(f, xi, alpha);
    CHECK(res.verdict == Membership::Yes);
    CHECK(res.witness == e);

    // alpha = e is not: r(xi) e has coefficient 1/2 at identity
    auto res2 = image_membership(f, xi, e);
    CHECK(res2.verdict == Membership::No);
    CHECK(res2.max_deviation == doctest::Approx(0.5));

    // a yes answer is backed by an exact integer verification
    FinSuppVector<std::int64_t> two_e_minus_g(G, 1);
    two_e_minus_g[0] = parse_ring_expr(G, "2e-g");
    auto res3 = image_membership(f, xi, two_e_minus_g);
    CHECK(res3.verdict == Membership::Yes);
    CHECK(res3.witness == e);
}

TEST_CASE("r_xi composition law r(f) r(xi) = r(xi lambda(f))") {
    auto G = Z();
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "2e-g");
    TruncatedL2Matrix xi(G, 1, 6);
    Rng rng{5};
    auto ball = enumerate_ball(G, 6);
    xi.at(0, 0) = random_fn<std::int64_t>(rng, G, ball, 6, 8, 1).map_values<double>(
        [](std::int64_t v) { return double(v) / 8.0; });

    FinSuppVector<std::int64_t> beta(G, 1);
    beta[0] = parse_ring_expr(G, "e-3g+g^2");

    // r(xi)(r(f) beta) computed directly
    auto lhs = r_xi_apply(xi, r_apply(f, beta));

    // r(xi lambda(f)) beta: first multiply xi by f on the right
    auto fd = f.map_values<double>([](std::int64_t v) { return double(v); });
    auto xif = xi_times(xi.as_matrix(), fd);
    TruncatedL2Matrix xif_t(G, 1, 7);
    xif_t.at(0, 0) = xif.at(0, 0);
    auto rhs = r_xi_apply(xif_t, beta);

    for (const auto& [g, v] : lhs[0].coeffs()) CHECK(v == doctest::Approx(rhs[0].at(g)));
    CHECK(lhs[0].support_size() == rhs[0].support_size());
}

TEST_CASE("geometric series telescoping: r(xi)(2e-g) is delta within tail") {
    auto G = Z();
    TruncatedL2Matrix xi(G, 1, 20);
    double c = 0.5;
    for (int k = 0; k <= 20; ++k) {
        GroupElement g = identity(G);
        g.w[0] = k;
        xi.at(0, 0).set(g, c);
        c *= 0.5;
    }
    FinSuppVector<std::int64_t> alpha(G, 1);
    alpha[0] = parse_ring_expr(G, "2e-g");
    auto v = r_xi_apply(xi, alpha);
    CHECK(v[0].at(identity(G)) == doctest::Approx(1.0));
    double offmass = 0;
    for (const auto& [g, x] : v[0].coeffs())
        if (!(g == identity(G))) offmass += std::fabs(x);
    CHECK(offmass <= std::pow(2.0, -20));
}

TEST_CASE("expression parser") {
    auto G = F2();
    auto f = parse_ring_expr(G, "3e+(e-a-a^2)b");
    CHECK(f.at(identity(G)) == 3);
    CHECK(f.at(parse_element(G, "b")) == 1);
    CHECK(f.at(parse_element(G, "ab")) == -1);
    CHECK(f.at(parse_element(G, "a^2b")) == -1);
    CHECK(f.support_size() == 4);

    auto g = parse_ring_expr(Z(), "2e - g");
    CHECK(g.at(identity(Z())) == 2);
    CHECK(g.at(parse_element(Z(), "1")) == -1);

    CHECK(parse_ring_expr(Z(), "(e-g)^2") == parse_ring_expr(Z(), "e-2g+g^2"));
    CHECK(parse_ring_expr(Z(), "0") == FinSupp<std::int64_t>(Z()));
    CHECK_THROWS_AS(parse_ring_expr(Z(), "2e-q"), config_error);
}
