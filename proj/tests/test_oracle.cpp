#include <doctest.h>

#include "algact/expr.hpp"
#include "algact/measures.hpp"
#include "algact/oracle.hpp"
#include "algact/serialize.hpp"

using namespace algact;

namespace {

FiniteModel model_2e_minus_g(const std::string& grp) {
    auto G = GroupDescriptor::parse(grp);
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "2e-g");
    return FiniteModel(G, f);
}

FinSuppVector<std::int64_t> alpha_of(const GroupDescriptor& G, const std::string& expr) {
    FinSuppVector<std::int64_t> a(G, 1);
    a[0] = parse_ring_expr(G, expr);
    return a;
}

}  // namespace

TEST_CASE("rational arithmetic") {
    CHECK(Rational(4, 8) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK((Rational(1) / Rational(7)).str() == "1/7");
    CHECK(Rational(-5, 4).mod_one() == Rational(3, 4));
    CHECK(Rational(7, 4).mod_one() == Rational(3, 4));
    CHECK(Rational(-1, 2).round_nearest() == -1);
    CHECK(Rational(5, 3).round_nearest() == 2);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(checked_mul(std::int64_t(1) << 62, 4), std::overflow_error);
}

TEST_CASE("exact inverse on Z/3: (2e-g)^-1 = (4e+2g+g^2)/7") {
    auto model = model_2e_minus_g("Z/3");
    auto xi = exact_inverse_finite(model);
    auto G = model.G;
    CHECK(xi.at(0, 0).at(parse_element(G, "0")) == Rational(4, 7));
    CHECK(xi.at(0, 0).at(parse_element(G, "1")) == Rational(2, 7));
    CHECK(xi.at(0, 0).at(parse_element(G, "2")) == Rational(1, 7));
    // rationals serialize as "p/q" strings
    auto j = to_json(G, xi.at(0, 0));
    CHECK(j.dump().find("\"4/7\"") != std::string::npos);
}

TEST_CASE("exact inverse on Z/2: (2e-g)^-1 = (2e+g)/3") {
    auto model = model_2e_minus_g("Z/2");
    auto xi = exact_inverse_finite(model);
    auto G = model.G;
    CHECK(xi.at(0, 0).at(parse_element(G, "0")) == Rational(2, 3));
    CHECK(xi.at(0, 0).at(parse_element(G, "1")) == Rational(1, 3));
}

TEST_CASE("identity inverts to delta exactly") {
    auto G = GroupDescriptor::parse("Z/4");
    auto f = GroupRingMatrix<std::int64_t>::identity_matrix(G, 2);
    FiniteModel model(G, f);
    auto xi = exact_inverse_finite(model);
    CHECK(xi.at(0, 0).at(identity(G)) == Rational(1));
    CHECK(xi.at(0, 1).is_zero());
}

TEST_CASE("singular operator is refused") {
    auto G = GroupDescriptor::parse("Z/3");
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "e-g");  // coefficient-sum map kills it
    FiniteModel model(G, f);
    CHECK_THROWS_AS(exact_inverse_finite(model), std::domain_error);
}

TEST_CASE("brute force mu-hat equals the product formula") {
    // trivial group, xi = (1/2) delta_e, m = 1, alpha = e: the -1/3 case
    auto Gt = GroupDescriptor::parse("Z/1");
    GroupRingMatrix<std::int64_t> ft(Gt, 1, 1);
    ft.at(0, 0) = delta<std::int64_t>(Gt, identity(Gt), 2);  // f = 2e, xi = e/2
    FiniteModel mt(Gt, ft);
    auto xit = exact_inverse_finite(mt);
    CHECK(xit.at(0, 0).at(identity(Gt)) == Rational(1, 2));
    auto bf = brute_force_mu_fourier(mt, xit, 1, alpha_of(Gt, "e"));
    CHECK(bf.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(std::fabs(bf.imag()) <= 1e-14);
    CHECK(finite_product_formula(mt, xit, 1, alpha_of(Gt, "e")) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(dirichlet_kernel(1, 0.5) == doctest::Approx(-1.0 / 3.0));

    // m = 0: single configuration, rho(0) = 0, every alpha integrates to 1
    auto bf0 = brute_force_mu_fourier(mt, xit, 0, alpha_of(Gt, "e"));
    CHECK(bf0.real() == doctest::Approx(1.0));

    // Z/2 with f = 2e-g: 9-configuration average vs F_1(2/3) F_1(1/3)
    auto m2 = model_2e_minus_g("Z/2");
    auto xi2 = exact_inverse_finite(m2);
    for (int m : {1, 2, 3}) {
        for (const char* a : {"e", "g", "2e-g", "e+g"}) {
            auto alpha = alpha_of(m2.G, a);
            auto bfv = brute_force_mu_fourier(m2, xi2, m, alpha);
            double pf = finite_product_formula(m2, xi2, m, alpha);
            CHECK(std::fabs(bfv.real() - pf) <= 1e-12);
            CHECK(std::fabs(bfv.imag()) <= 1e-12);
        }
    }
    auto bf2 = brute_force_mu_fourier(m2, xi2, 1, alpha_of(m2.G, "e"));
    double expect = dirichlet_kernel(1, 2.0 / 3.0) * dirichlet_kernel(1, 1.0 / 3.0);
    CHECK(bf2.real() == doctest::Approx(expect).epsilon(1e-12));

    // Z/3 as well
    auto m3 = model_2e_minus_g("Z/3");
    auto xi3 = exact_inverse_finite(m3);
    for (int m : {1, 2}) {
        auto alpha = alpha_of(m3.G, "e+2g");
        auto bfv = brute_force_mu_fourier(m3, xi3, m, alpha);
        CHECK(std::fabs(bfv.real() - finite_product_formula(m3, xi3, m, alpha)) <= 1e-12);
    }
}

TEST_CASE("measures-module product on the exact xi matches brute force") {
    auto m2 = model_2e_minus_g("Z/2");
    auto xi2 = exact_inverse_finite(m2);
    auto xit = to_truncated(m2.G, xi2);
    for (int m : {1, 2}) {
        for (const char* a : {"e", "g", "2e-g"}) {
            auto alpha = alpha_of(m2.G, a);
            auto rep = mu_fourier_exact(MuSpec(m, xit), alpha);
            auto bfv = brute_force_mu_fourier(m2, xi2, m, alpha);
            CHECK(std::fabs(rep.exact_value - bfv.real()) <= 1e-12);
            CHECK(rep.tail_bound == 0.0);  // exact xi has no tail
        }
    }
}

TEST_CASE("state space cap is enforced") {
    auto G = GroupDescriptor::parse("Z/8");
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "2e-g");
    FiniteModel model(G, f);
    auto xi = exact_inverse_finite(model);
    CHECK_THROWS_AS(brute_force_mu_fourier(model, xi, 12, alpha_of(G, "e")), config_error);
}

TEST_CASE("identity suite passes and the corrupted adjoint fails") {
    auto G = GroupDescriptor::parse("Z/3");
    GroupRingMatrix<std::int64_t> f(G, 1, 1);
    f.at(0, 0) = parse_ring_expr(G, "2e-g");
    FiniteModel model(G, f);

    auto ok = brute_force_identities(model, 100, 31337);
    CHECK(ok.pass);

    auto bad = brute_force_identities(model, 100, 31337, /*corrupt_star=*/true);
    CHECK_FALSE(bad.pass);
    CHECK(bad.witness.find("adjoint") != std::string::npos);

    // n = 2 matrices; the group must have elements of order > 2 or the
    // corrupted adjoint coincides with the true one
    auto G2 = GroupDescriptor::parse("Z/3 x Z/2");
    auto f2 = GroupRingMatrix<std::int64_t>::identity_matrix(G2, 2);
    FiniteModel model2(G2, f2, 64);
    CHECK(brute_force_identities(model2, 40, 99).pass);
    CHECK_FALSE(brute_force_identities(model2, 40, 99, true).pass);
}

TEST_CASE("snf membership agrees with the integrality criterion") {
    auto m3 = model_2e_minus_g("Z/3");
    auto xi3 = exact_inverse_finite(m3);
    auto xit = to_truncated(m3.G, xi3);

    auto ball = m3.elements;
    std::uint64_t s = 7;
    auto rnd = [&]() { s ^= s << 13; s ^= s >> 7; s ^= s << 17; return s; };
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
        FinSuppVector<std::int64_t> alpha(m3.G, 1);
        for (int j = 0; j < 2; ++j)
            alpha[0].add_to(ball[rnd() % ball.size()], std::int64_t(rnd() % 9) - 4);
        auto exact = snf_membership(m3, alpha);
        auto approx = image_membership(m3.f, xit, alpha);
        // with the exact xi there is no inconclusive zone
        REQUIRE(approx.verdict != Membership::Inconclusive);
        CHECK((approx.verdict == Membership::Yes) == exact.member);
        if (exact.member) {
            CHECK(r_apply(m3.f, exact.witness) == alpha);
            CHECK(r_apply(m3.f, approx.witness) == alpha);
        }
        ++checked;
    }
    CHECK(checked == 200);

    // explicit instances: on Z/3, (2-g) has index-7 image: e is not in it
    CHECK_FALSE(snf_membership(m3, alpha_of(m3.G, "e")).member);
    CHECK(snf_membership(m3, alpha_of(m3.G, "2e-g")).member);
    CHECK(snf_membership(m3, alpha_of(m3.G, "7e")).member);  // 7e = (2-g)(4e+2g+g^2)
}
