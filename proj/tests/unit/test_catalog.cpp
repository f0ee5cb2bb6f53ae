#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "wlab/catalog.hpp"
#include "wlab/weierstrass.hpp"

using namespace wlab;
using namespace wlab::catalog;
using complexkit::circle;
using complexkit::cplx;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};

// complex corridor integrals of the Weierstrass forms over one beta period
std::array<cplx, 3> beta_periods(const RiemannChart& chart,
                                 const RiemannExampleParams& p) {
    const double T3 = 2.0 * (p.x_end_inf - p.x_end_zero);
    auto state = chart.curve_point(cplx(p.x_end_zero, 0.25));
    std::array<cplx, 3> acc{0.0, 0.0, 0.0};
    const int nseg = 4096;
    const cplx h(T3 / nseg, 0.0);
    auto form = [](cplx z) {
        return std::array<cplx, 3>{0.5 * (1.0 / z - z), 0.5 * I * (1.0 / z + z), cplx(1.0)};
    };
    for (int k = 0; k < nseg; ++k) {
        const auto f0 = form(state.first);
        const auto mid = chart.advance_state(state, 0.5 * h, 2);
        const auto f1 = form(mid.first);
        const auto nxt = chart.advance_state(mid, 0.5 * h, 2);
        const auto f2 = form(nxt.first);
        for (int c = 0; c < 3; ++c) acc[static_cast<std::size_t>(c)] +=
            (f0[static_cast<std::size_t>(c)] + 4.0 * f1[static_cast<std::size_t>(c)] +
             f2[static_cast<std::size_t>(c)]) / 6.0 * h;
        state = nxt;
    }
    return acc;
}
} // namespace

TEST_CASE("classical charts carry the expected data") {
    const auto plane = make_plane();
    CHECK(std::abs(plane.g(cplx(0.3, 0.7)) - 1.0) < 1e-15);
    CHECK(std::abs(plane.phi(cplx(0.3, 0.7)) - 1.0) < 1e-15);

    const auto cat = make_catenoid();
    CHECK(std::abs(cat.g(cplx(0.5, 0.2)) - cplx(0.5, 0.2)) < 1e-15);
    CHECK(std::abs(cat.phi(cplx(2.0, 0.0)) - 0.5) < 1e-15);

    const auto hel = make_helicoid();
    CHECK(std::abs(hel.g(cplx(1.0, 0.0)) - std::exp(1.0)) < 1e-12);
    CHECK(std::abs(hel.phi(cplx(0.0, 0.0)) - I) < 1e-15);

    // divisor structure of the catenoid data at the puncture: g has a simple
    // zero, phi a simple pole
    CHECK(complexkit::count_zeros_poles(cat.g, circle(0.0, 0.5)) == 1);
    CHECK(complexkit::count_zeros_poles(cat.phi, circle(0.0, 0.5)) == -1);
}

TEST_CASE("helicoid height differential is exact") {
    const auto hel = make_helicoid();
    for (double r : {0.5, 1.5}) {
        const auto rep = weier::period_report(hel, {circle(cplx(0.2, -0.1), r, 256)});
        CHECK(std::abs(rep.cycles[0].re_dh) < 1e-12);
    }
}

TEST_CASE("riemann examples close periods for the canonical lambdas") {
    for (double lam : {0.5, 1.0, 2.0}) {
        auto [data, p] = make_riemann(lam);
        CHECK(p.closure_residual < 1e-8);
        CHECK(p.A_real_branch);
        CHECK(std::abs(p.A.imag()) < 1e-15);          // A^2 real via the real branch
        CHECK(std::abs(p.A) > 1e-3);
        const auto rep = riemann_period_report(p);
        CHECK(rep.residual < 1e-8);
        for (const auto& r : rep.end_residues) CHECK(std::abs(r) < 1e-10);
        // vertical flux normalized to one, horizontal flux nonzero
        CHECK(std::abs(p.flux_alpha.z - 1.0) < 1e-9);
        CHECK(std::hypot(p.flux_alpha.x, p.flux_alpha.y) > 1e-3);
        CHECK(std::abs(p.flux_alpha.y) < 1e-9);
        // degree identity on the quotient torus
        const auto jm = riemann_jorge_meeks(p);
        CHECK(jm.applicable);
        CHECK(jm.deg == 2);
        CHECK(jm.lhs_minus_rhs == 0);
        // quotient total curvature
        const double tc = riemann_total_curvature(p);
        CHECK(std::abs(tc + 8.0 * pi) < 0.02 * 8.0 * pi);
        // translation is consistent with the end spacing
        CHECK(std::abs(p.period_T.z - 2.0 * (p.x_end_inf - p.x_end_zero)) < 1e-8);
    }
}

TEST_CASE("construction is deterministic") {
    auto [d1, p1] = make_riemann(1.3);
    auto [d2, p2] = make_riemann(1.3);
    CHECK(p1.A == p2.A);
    CHECK(p1.period_T.x == p2.period_T.x);
    CHECK(p1.period_T.z == p2.period_T.z);
    CHECK(p1.x_end_zero == p2.x_end_zero);
    CHECK(p1.x_end_inf == p2.x_end_inf);
}

TEST_CASE("lambda outside the supported range is rejected") {
    CHECK_THROWS_AS(make_riemann(0.01), Error);
    CHECK_THROWS_AS(make_riemann(40.0), Error);
}

TEST_CASE("curve tracing stays on the curve and closes") {
    auto [data, p] = make_riemann(0.8);
    RiemannChart chart(p);
    for (const cplx xi : {cplx(0.05, 0.25), cplx(-0.2, 0.6), cplx(0.3, 0.9)}) {
        const auto [z, w] = chart.curve_point(xi);
        const cplx P = z * (z - p.lambda) * (p.lambda * z + 1.0);
        CHECK(std::abs(w * w - P) < 1e-9 * (1.0 + std::abs(P)));
    }
    const auto line = chart.trace_line(chart.main_line_x0(), 128);
    CHECK(line.size() == 128);
    // the ends sit where the construction says they do
    const auto at_zero = chart.curve_point(cplx(p.x_end_zero, 0.5));
    CHECK(std::abs(at_zero.first) < 1e-8);
    const auto near_inf = chart.curve_point(cplx(p.x_end_inf - 1e-3, 0.0));
    CHECK(std::abs(near_inf.first) > 1e3);
}

TEST_CASE("closed-form jets match Richardson differences along the line") {
    auto [data, p] = make_riemann(1.0);
    RiemannChart chart(p);
    const int n = 256;
    const auto line = chart.trace_line(chart.main_line_x0(), n);
    for (int j : {40, 128, 200}) {
        const auto jet = chart.g_jet_from_zw(line[static_cast<std::size_t>(j)].first,
                                             line[static_cast<std::size_t>(j)].second, 2);
        const cplx h = I / static_cast<double>(n);
        const cplx d1 = (line[static_cast<std::size_t>(j + 1)].first -
                         line[static_cast<std::size_t>(j - 1)].first) / (2.0 * h);
        const cplx d2 = (line[static_cast<std::size_t>(j + 2)].first -
                         line[static_cast<std::size_t>(j - 2)].first) / (4.0 * h);
        const cplx rich = (4.0 * d1 - d2) / 3.0;
        CHECK(std::abs(jet[1] - rich) < 1e-5 * (1.0 + std::abs(jet[1])));
    }
    // potential jets against the closed form
    const auto [z, w] = line[77];
    const auto uj = chart.u_jet_from_zw(z, w, 1);
    const cplx u_direct = p.lambda / (2.0 * p.A * p.A * z) -
                          (1.0 - p.lambda * p.lambda) / (4.0 * p.A * p.A);
    CHECK(std::abs(uj[0] - u_direct) < 1e-12 * (1.0 + std::abs(u_direct)));
}

TEST_CASE("dumbbell cycle doubles the primitive translation") {
    // independent quadrature oracle: the ellipse around [-1/lambda, 0]
    // crosses both cuts once and is homologous to twice the corridor cycle
    auto [data, p] = make_riemann(0.5);
    const double lam = p.lambda;
    const cplx A = p.A;
    const double padb = 0.4 * std::min({lam, 1.0 / lam, 1.0});
    std::vector<cplx> dumbbell;
    const int n = 1024;
    for (int j = 0; j <= n; ++j) {
        const double th = 2.0 * pi * j / n + pi / 2.0;
        dumbbell.push_back(cplx(-0.5 / lam, 0.0) +
                           cplx((0.5 / lam + padb) * std::cos(th), padb * std::sin(th)));
    }
    dumbbell.back() = dumbbell.front();
    const cplx w_seed = riemann_w(lam, dumbbell.front());
    auto track = [&](int axis) {
        auto [val, w_end] = curve_path_integral(
            lam, dumbbell, w_seed, [axis, A](cplx z, cplx w) {
                const cplx dh = A / w;
                if (axis == 0) return 0.5 * (1.0 / z - z) * dh;
                if (axis == 1) return 0.5 * I * (1.0 / z + z) * dh;
                return dh;
            });
        CHECK(std::abs(w_end - w_seed) < 1e-6 * (1.0 + std::abs(w_seed)));
        return val;
    };
    const Vec3 T2{track(0).real(), track(1).real(), track(2).real()};
    const double sign = T2.z * p.period_T.z > 0.0 ? 1.0 : -1.0;
    CHECK(std::abs(sign * T2.x - 2.0 * p.period_T.x) < 1e-6);
    CHECK(std::abs(sign * T2.y - 2.0 * p.period_T.y) < 1e-6);
    CHECK(std::abs(sign * T2.z - 2.0 * p.period_T.z) < 1e-6);
}

TEST_CASE("conjugate pairing: the conjugate of M_lambda is M_{1/lambda}") {
    auto [d05, p05] = make_riemann(0.5);
    auto [d20, p20] = make_riemann(2.0);
    auto [d10, p10] = make_riemann(1.0);

    // the conjugate surface (g, i dh) closes along the corridor cycle: the
    // imaginary parts of the beta periods vanish
    for (const auto* p : {&p05, &p10, &p20}) {
        RiemannChart chart(*p);
        const auto bp = beta_periods(chart, *p);
        CHECK(std::abs(bp[0].imag()) < 1e-8);
        CHECK(std::abs(bp[1].imag()) < 1e-8);
        CHECK(std::abs(bp[2].imag()) < 1e-8);
        // and the real parts reproduce the stored translation
        CHECK(std::abs(bp[0].real() - p->period_T.x) < 1e-8);
        CHECK(std::abs(bp[2].real() - p->period_T.z) < 1e-8);
    }

    // scale-free pairing: normalizing the conjugate's vertical flux maps its
    // translation onto the partner's flux, so
    // T_x(M_lambda) = -h(M_{1/lambda}) T_z(M_lambda)
    CHECK(std::abs(p20.period_T.x + p05.flux_alpha.x * p20.period_T.z) < 1e-4);
    CHECK(std::abs(p05.period_T.x + p20.flux_alpha.x * p05.period_T.z) < 1e-4);
    // lambda = 1 is self-conjugate
    CHECK(std::abs(p10.period_T.x + p10.flux_alpha.x * p10.period_T.z) < 1e-4);
}

TEST_CASE("flux normalization") {
    const auto cat = make_catenoid();
    const auto section = circle(0.0, 1.0, 512);
    const auto norm = normalize_flux(cat, section);
    CHECK(std::abs(norm.scale - 1.0 / (2.0 * pi)) < 1e-10);
    const auto f = weier::flux(norm.data, section);
    CHECK(std::abs(f.f.z - 1.0) < 1e-9);
    CHECK(std::abs(f.f.x) < 1e-9);
    CHECK(std::abs(f.f.y) < 1e-9);

    // already normalized data: identity transform
    const auto again = normalize_flux(norm.data, section);
    CHECK(std::abs(again.scale - 1.0) < 1e-9);
    CHECK(std::abs(again.rotation) < 1e-9);

    // riemann: rotate the horizontal flux onto the positive x axis
    auto [data, p] = make_riemann(1.0);
    const auto rn = normalize_flux(data, p.alpha_cycle);
    const auto rf = weier::flux(rn.data, p.alpha_cycle);
    CHECK(rf.f.x >= 0.0);
    CHECK(std::abs(rf.f.y) < 1e-8);
    CHECK(std::abs(rf.f.z - 1.0) < 1e-9);

    const auto plane = make_plane();
    CHECK_THROWS_AS(normalize_flux(plane, section), ZeroVerticalFlux);
}

TEST_CASE("normalize_flux scales the immersion like a homothety") {
    const auto cat = make_catenoid();
    const auto section = circle(0.0, 1.0, 512);
    const auto norm = normalize_flux(cat, section);
    // waist conformal factor shrinks by the same factor as the flux
    const auto m = weier::metric_curvature(norm.data, cplx(1.0, 0.0));
    CHECK(std::abs(m.lambda - 1.0 / (2.0 * pi)) < 1e-12);
}

TEST_CASE("surface lookup by CLI name") {
    CHECK(by_name("plane").name == "plane");
    CHECK(by_name("catenoid").name == "catenoid");
    CHECK(by_name("helicoid").name == "helicoid");
    CHECK(by_name("riemann:lambda=2").name.rfind("riemann", 0) == 0);
    CHECK(by_name("riemann:λ=2").name.rfind("riemann", 0) == 0);
    CHECK_THROWS_AS(by_name("torus"), Error);
}

TEST_CASE("riemann band mesh is immersed and sane") {
    auto [data, p] = make_riemann(1.0);
    RiemannChart chart(p);
    const auto mesh = riemann_band_mesh(chart, 33, 17);
    CHECK(mesh.vertex_count() == 33u * 17u);
    for (const auto& v : mesh.vertices) {
        CHECK(v.lambda > 0.0);
        CHECK(v.gauss_k <= 0.0);
        CHECK(std::abs(v.normal.norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("perturbed cylinder chart jets are consistent") {
    const auto pert = perturbed_cylinder_chart(0.1);
    const cplx z(0.21, 0.37);
    const auto jet = pert.g_jet(z, 3);
    CHECK(std::abs(jet[0] - pert.g(z)) < 1e-12 * std::abs(jet[0]));
    // Richardson first derivative
    const double h = 1e-4;
    const cplx d1 = (pert.g(z + h) - pert.g(z - h)) / (2.0 * h);
    const cplx d2 = (pert.g(z + 2.0 * h) - pert.g(z - 2.0 * h)) / (4.0 * h);
    const cplx rich = (4.0 * d1 - d2) / 3.0;
    CHECK(std::abs(jet[1] - rich) < 1e-8 * (1.0 + std::abs(jet[1])));
}
