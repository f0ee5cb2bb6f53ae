#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wlab/diffpoly.hpp"

using namespace wlab;
using namespace wlab::diffpoly;

namespace {

DiffPoly U(int k, int pow = 1) { return DiffPoly::var(k, pow); }

// random polynomial with degree <= 4, order <= 4, small integer coefficients
DiffPoly random_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nterms(1, 5);
    std::uniform_int_distribution<int> order(0, 4);
    std::uniform_int_distribution<int> nfact(1, 4);
    DiffPoly p;
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        MonoKey key;
        const int f = nfact(rng);
        for (int j = 0; j < f; ++j) key[order(rng)] += 1;
        const int c = coeff(rng);
        if (c != 0) p.add_term(key, Rat(c));
    }
    return p;
}

} // namespace

TEST_CASE("total derivative basics") {
    CHECK(U(0, 2).total_derivative() == (U(0) * U(1)).scaled(Rat(2)));
    const DiffPoly p2 = U(2) + U(0, 2).scaled(Rat(3));
    const DiffPoly want = U(3) + (U(0) * U(1)).scaled(Rat(6));
    CHECK(p2.total_derivative() == want);
    CHECK(DiffPoly::constant(Rat::of(1, 2)).total_derivative().is_zero());
}

TEST_CASE("formal integration") {
    const DiffPoly six_uu1 = (U(0) * U(1)).scaled(Rat(6));
    CHECK(formal_integrate(six_uu1) == U(0, 2).scaled(Rat(3)));

    const DiffPoly kdv_rhs = U(3) + (U(0) * U(1)).scaled(Rat(6));
    CHECK(formal_integrate(kdv_rhs) == U(2) + U(0, 2).scaled(Rat(3)));

    CHECK(formal_integrate(U(1) * U(2)) == U(1, 2).scaled(Rat::of(1, 2)));
    CHECK_THROWS_AS(formal_integrate(U(0) * U(2)), NotExact);
    CHECK_THROWS_AS(formal_integrate(DiffPoly::constant(Rat(1))), NotExact);
}

TEST_CASE("integrate is a left inverse of the derivative") {
    std::mt19937 rng(99u);
    for (int trial = 0; trial < 30; ++trial) {
        DiffPoly p = random_poly(rng);
        // strip the constant part, which the derivative forgets
        DiffPoly nonconst;
        for (const auto& [key, c] : p.terms())
            if (!key.empty()) nonconst.add_term(key, c);
        const DiffPoly q = formal_integrate(nonconst.total_derivative());
        CHECK(q == nonconst);
    }
}

TEST_CASE("hierarchy operators match their closed forms") {
    CHECK(kdv_P(0) == DiffPoly::constant(Rat::of(1, 2)));
    CHECK(kdv_P(1) == U(0));
    CHECK(kdv_P(2) == U(2) + U(0, 2).scaled(Rat(3)));
    const DiffPoly p3 = U(4) + (U(0) * U(2)).scaled(Rat(10)) + U(1, 2).scaled(Rat(5)) +
                        U(0, 3).scaled(Rat(10));
    CHECK(kdv_P(3) == p3);
}

TEST_CASE("recurrence identity for all cached orders") {
    for (int n = 0; n <= 5; ++n) {
        const DiffPoly lhs = kdv_P(n + 1, 6).total_derivative();
        const DiffPoly pn = kdv_P(n, 6);
        const DiffPoly rhs =
            pn.total_derivative().total_derivative().total_derivative() +
            (U(0) * pn.total_derivative()).scaled(Rat(4)) + (U(1) * pn).scaled(Rat(2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("flow right-hand sides") {
    CHECK(flow_rhs(0) == -U(1));
    CHECK(flow_rhs(1) == -(U(3) + (U(0) * U(1)).scaled(Rat(6))));
    const DiffPoly f2 = -(U(5) + (U(0) * U(3)).scaled(Rat(10)) +
                          (U(1) * U(2)).scaled(Rat(20)) +
                          (U(0, 2) * U(1)).scaled(Rat(30)));
    CHECK(flow_rhs(2) == f2);
}

TEST_CASE("hierarchy flows commute") {
    for (int j = 0; j <= 3; ++j)
        for (int k = j + 1; k <= 3; ++k) {
            CHECK(mixed_flow_commutator(j, k).is_zero());
        }
    CHECK_THROWS_AS(mixed_flow_commutator(1, 1), Error);
}

TEST_CASE("evaluation on jets") {
    // u(z) = -2/z^2 on a few points off the origin
    std::vector<std::vector<cplx>> jets;
    std::vector<cplx> pts;
    for (int j = 0; j < 8; ++j) {
        const double th = 0.3 + j * 0.7;
        pts.push_back(cplx(std::cos(th), std::sin(th)) * (1.0 + 0.2 * j));
    }
    for (cplx z : pts) {
        // u = -2 z^-2, u' = 4 z^-3, u'' = -12 z^-4
        jets.push_back({-2.0 / (z * z), 4.0 / (z * z * z), -12.0 / (z * z * z * z)});
    }
    const auto vals_u = evaluate(U(0), jets);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(vals_u[i] + 2.0 / (pts[i] * pts[i])) < 1e-12);

    // hand expansion: u'' + 3u^2 = -12/z^4 + 12/z^4 = 0
    const auto vals_p2 = evaluate(kdv_P(2), jets);
    for (auto v : vals_p2) CHECK(std::abs(v) < 1e-12);

    const auto vals_p0 = evaluate(kdv_P(0), jets);
    for (auto v : vals_p0) CHECK(std::abs(v - 0.5) < 1e-15);

    CHECK_THROWS_AS(evaluate(kdv_P(2), {{cplx(1.0)}}), InsufficientJetOrder);
}

TEST_CASE("evaluate is compatible with the total derivative") {
    // p = u^2, dp = 2 u u'; check evaluate(dp) equals d/dz evaluate(p) for
    // u = exp(2z) where everything is explicit
    std::vector<std::vector<cplx>> jets;
    std::vector<cplx> pts;
    for (int j = 0; j < 6; ++j) pts.push_back(cplx(0.1 * j, 0.2));
    for (cplx z : pts) {
        const cplx u = std::exp(2.0 * z);
        jets.push_back({u, 2.0 * u, 4.0 * u, 8.0 * u});
    }
    const auto dp = evaluate(U(0, 2).total_derivative(), jets);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx u = std::exp(2.0 * pts[i]);
        CHECK(std::abs(dp[i] - 4.0 * u * u) < 1e-9 * std::abs(u * u));
    }
}

TEST_CASE("serialization golden strings") {
    CHECK(kdv_P(1).to_string() == "u");
    CHECK(kdv_P(2).to_string() == "u'' + 3*u^2");
    CHECK(kdv_P(3).to_string() == "u^(4) + 10*u*u'' + 5*u'^2 + 10*u^3");
    CHECK(flow_rhs(0).to_string() == "-u'");
    CHECK(flow_rhs(1).to_string() == "-u''' - 6*u*u'");
    CHECK(flow_rhs(2).to_string() == "-u^(5) - 10*u*u''' - 20*u'*u'' - 30*u^2*u'");
    CHECK(kdv_P(0).to_string() == "1/2");
    CHECK(DiffPoly().to_string() == "0");
}
