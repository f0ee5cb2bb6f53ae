#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "wlab/catalog.hpp"
#include "wlab/mesh_io.hpp"
#include "wlab/weierstrass.hpp"

using namespace wlab;
using namespace wlab::weier;
using std::numbers::pi;
using complexkit::circle;
using complexkit::cplx;
using complexkit::segment_path;

namespace {
const cplx I{0.0, 1.0};
} // namespace

TEST_CASE("plane immersion is an isometric vertical plane") {
    const auto data = catalog::make_plane();
    // closed-form antiderivative oracle: for g = 1 the integrand is
    // (0, i, 1) dz, so X = (0, -Im z, Re z)
    for (const cplx target : {cplx(0.7, 0.3), cplx(-0.5, 1.1), cplx(0.0, -0.8)}) {
        const Vec3 x = immerse(data, target, segment_path({cplx(0.0), target}));
        CHECK(std::abs(x.x - 0.0) < 1e-10);
        CHECK(std::abs(x.y + target.imag()) < 1e-10);
        CHECK(std::abs(x.z - target.real()) < 1e-10);
    }
    const Vec3 at_base = immerse(data, 0.0, segment_path({cplx(0.0), cplx(1e-13, 0.0)}));
    CHECK(at_base.norm() < 1e-10);
}

TEST_CASE("catenoid waist circle") {
    const auto data = catalog::make_catenoid();
    // oracle: exact antiderivatives give x1 + i x2 = -(z + 1/z)/2 conjugated
    // appropriately, so the unit circle maps to the radius-one waist at
    // height zero
    for (double th : {0.3, 1.2, 2.8, 4.0, 5.9}) {
        const cplx target = std::polar(1.0, th);
        std::vector<cplx> pts;
        const int m = 64;
        for (int k = 0; k <= m; ++k) pts.push_back(std::polar(1.0, th * k / m));
        const Vec3 x = immerse(data, target, segment_path(pts));
        const Vec3 base{-1.0, 0.0, 0.0}; // X(1) in the closed form
        const Vec3 abs_pos = x + base;
        CHECK(std::abs(abs_pos.x + std::cos(th)) < 1e-9);
        CHECK(std::abs(abs_pos.y + std::sin(th)) < 1e-9);
        CHECK(std::abs(abs_pos.z) < 1e-9);
        CHECK(std::abs(std::hypot(abs_pos.x, abs_pos.y) - 1.0) < 1e-9);
    }
}

TEST_CASE("path independence for homotopic immersion paths") {
    const auto data = catalog::make_catenoid();
    const cplx target(2.0, 0.5);
    const Vec3 a = immerse(data, target, segment_path({cplx(1.0), cplx(1.5, 1.0), target}));
    const Vec3 b = immerse(data, target, segment_path({cplx(1.0), cplx(2.5, -1.0), target}));
    CHECK((a - b).norm() < 1e-9);
}

TEST_CASE("metric and curvature on the catalog") {
    const auto cat = catalog::make_catenoid();
    for (double th : {0.0, 0.9, 2.2}) {
        const auto m = metric_curvature(cat, std::polar(1.0, th));
        CHECK(std::abs(m.lambda - 1.0) < 1e-12);
        CHECK(std::abs(m.gauss_k + 1.0) < 1e-12);
    }
    // oracle: unit catenoid K = -sech^4(t) at height t; |z| = e^t
    for (double t : {0.4, 1.0}) {
        const auto m = metric_curvature(cat, std::exp(cplx(t, 0.0)));
        const double sech = 1.0 / std::cosh(t);
        CHECK(std::abs(m.gauss_k + sech * sech * sech * sech) < 1e-10);
    }
    const auto pl = catalog::make_plane();
    CHECK(metric_curvature(pl, cplx(0.3, 0.2)).gauss_k == 0.0);
    const auto hel = catalog::make_helicoid();
    const auto mh = metric_curvature(hel, cplx(0.0, 0.0));
    CHECK(std::abs(mh.lambda - 1.0) < 1e-12);
    CHECK(std::abs(mh.gauss_k + 1.0) < 1e-12);
    CHECK_THROWS_AS(metric_curvature(cat, cplx(0.0, 0.0)), Error);
}

TEST_CASE("normals are stereographic and unit") {
    const auto cat = catalog::make_catenoid();
    const auto m = metric_curvature(cat, cplx(1.0, 0.0));
    CHECK(std::abs(m.normal.norm() - 1.0) < 1e-12);
    CHECK(std::abs(m.normal.x - 1.0) < 1e-12); // g = 1 maps to (1,0,0)
}

TEST_CASE("catenoid flux and homotopy invariance") {
    const auto data = catalog::make_catenoid();
    const auto f1 = flux(data, circle(0.0, 1.0, 512));
    CHECK(std::abs(f1.f.x) < 1e-10);
    CHECK(std::abs(f1.f.y) < 1e-10);
    CHECK(std::abs(f1.f.z - 2.0 * pi) < 1e-10);
    const auto f2 = flux(data, circle(0.0, 2.0, 512));
    CHECK(std::abs(f1.f.x - f2.f.x) < 1e-8);
    CHECK(std::abs(f1.f.y - f2.f.y) < 1e-8);
    CHECK(std::abs(f1.f.z - f2.f.z) < 1e-8);

    const auto plane = catalog::make_plane();
    CHECK(flux(plane, circle(cplx(0.3, 0.2), 0.7, 256)).f.norm() < 1e-10);
}

TEST_CASE("catenoid and helicoid period reports close") {
    const auto data = catalog::make_catenoid();
    const auto rep = period_report(data, {circle(0.0, 1.0, 512)});
    CHECK(rep.residual < 1e-10);
    const auto hel = catalog::make_helicoid();
    const auto rep2 = period_report(hel, {circle(0.0, 1.3, 512)});
    CHECK(rep2.residual < 1e-10);
}

TEST_CASE("lopez-ros keeps the catenoid period-closed and fixes vertical flux") {
    const auto data = catalog::make_catenoid();
    const auto moved = lopez_ros(data, 2.0);
    const auto rep = period_report(moved, {circle(0.0, 1.0, 512)});
    CHECK(rep.residual < 1e-8);
    const auto f0 = flux(data, circle(0.0, 1.0, 512));
    const auto f1 = flux(moved, circle(0.0, 1.0, 512));
    // third flux component is Im of the phi integral, independent of g
    CHECK(f0.f.z == f1.f.z);
    CHECK(lopez_ros(data, 1.0).g(cplx(0.7, 0.1)) == data.g(cplx(0.7, 0.1)));
    CHECK_THROWS_AS(lopez_ros(data, 0.0), Error);
}

TEST_CASE("associate family: conjugation and curvature invariance") {
    const auto data = catalog::make_catenoid();
    const auto same = associate(data, 0.0);
    CHECK(std::abs(same.phi(cplx(0.5, 0.5)) - data.phi(cplx(0.5, 0.5))) < 1e-15);

    // catenoid on the universal cover rotates to helicoid data
    const auto cyl = catalog::catenoid_cylinder_chart(1.0);
    const auto conj = associate(cyl, pi / 2.0);
    CHECK(std::abs(conj.phi(cplx(0.2, 0.4)) - I) < 1e-14);
    CHECK(std::abs(conj.g(cplx(0.2, 0.4)) - std::exp(cplx(0.2, 0.4))) < 1e-14);

    // theta = pi preserves lambda and K pointwise
    const auto flipped = associate(data, pi);
    for (const cplx z : {cplx(1.2, 0.1), cplx(0.4, -0.7)}) {
        const auto a = metric_curvature(data, z);
        const auto b = metric_curvature(flipped, z);
        CHECK(std::abs(a.lambda - b.lambda) < 1e-12);
        CHECK(std::abs(a.gauss_k - b.gauss_k) < 1e-12);
    }
}

TEST_CASE("total curvature of the catenoid tends to -4 pi monotonically") {
    const auto data = catalog::make_catenoid();
    double prev = 0.0;
    for (double span : {2.0, 3.5, 5.0}) {
        GridSpec spec{-span, span, -pi, pi, 257, 65, true};
        const double tc = total_curvature_region(data, spec);
        CHECK(tc < prev + 1e-12); // decreasing toward -4 pi
        prev = tc;
        CHECK(tc > -4.0 * pi - 1e-6);
    }
    GridSpec wide{-5.0, 5.0, -pi, pi, 513, 129, true};
    const double tc = total_curvature_region(data, wide);
    CHECK(std::abs(tc + 4.0 * pi) < 0.01 * 4.0 * pi);

    const auto plane = catalog::make_plane();
    GridSpec spec{-1.0, 1.0, -1.0, 1.0, 33, 33, false};
    CHECK(std::abs(total_curvature_region(plane, spec)) < 1e-14);
}

TEST_CASE("mesh-based total curvature agrees with the region quadrature") {
    const auto data = catalog::make_catenoid();
    GridSpec spec{-2.0, 2.0, -pi, pi, 129, 65, true};
    const auto mesh = build_mesh(data, spec);
    const double a = total_curvature(data, mesh);
    const double b = total_curvature_region(data, spec);
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("catenoid end fit recovers unit log growth and offset log 2") {
    const auto data = catalog::make_catenoid();
    GridSpec spec{std::log(25.0), std::log(100.0), -pi, pi, 49, 97, true};
    const auto mesh = build_mesh(data, spec);
    // absolute heights: the mesh is relative to its first vertex, whose
    // closed-form position follows from the antiderivative oracle
    // X(rho e^{i th}) = (-(rho+1/rho)cos(th)/2, -(rho+1/rho)sin(th)/2, log rho)
    auto closed_form = [](double rho, double th) {
        return Vec3{-0.5 * (rho + 1.0 / rho) * std::cos(th),
                    -0.5 * (rho + 1.0 / rho) * std::sin(th), std::log(rho)};
    };
    const Vec3 first = closed_form(25.0, -pi);
    std::vector<Vec3> pts;
    for (const auto& v : mesh.vertices) pts.push_back(v.position + first);
    const auto fit = end_fit(pts);
    CHECK(std::abs(fit.a - 1.0) < 1e-3);
    CHECK(std::abs(fit.b - std::log(2.0)) < 1e-2);
    CHECK(fit.rms < 1e-3);

    // plane: zero growth, zero dipole
    const auto plane = catalog::make_plane();
    GridSpec pspec{-4.0, 4.0, -4.0, 4.0, 65, 65, false};
    const auto pmesh = build_mesh(plane, pspec);
    // the catalog plane is vertical (normal (1,0,0)); permute coordinates so
    // the samples form a graph with identically zero height
    std::vector<Vec3> ppts;
    for (const auto& v : pmesh.vertices) {
        const Vec3 p{v.position.y, v.position.z, v.position.x};
        if (std::hypot(p.x, p.y) > 1.0) ppts.push_back(p);
    }
    const auto pfit = end_fit(ppts);
    CHECK(std::abs(pfit.a) < 1e-10);
    CHECK(std::abs(pfit.c1) < 1e-9);
    CHECK(std::abs(pfit.c2) < 1e-9);
}

TEST_CASE("end fit rejects non-graphical samples") {
    std::vector<Vec3> pts;
    for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * pi * k / 64.0;
        pts.push_back({2.0 * std::cos(th), 2.0 * std::sin(th), 0.0});
        pts.push_back({2.0 * std::cos(th), 2.0 * std::sin(th), 5.0});
    }
    CHECK_THROWS_AS(end_fit(pts), NotAGraph);
}

TEST_CASE("ball area profile: plane is exactly pi, catenoid stays above") {
    const auto plane = catalog::make_plane();
    GridSpec pspec{-6.0, 6.0, -6.0, 6.0, 301, 301, false};
    const auto pmesh = build_mesh(plane, pspec);
    // mesh positions are relative to the first vertex z = -6 - 6i, whose
    // absolute position is (0, 6, -6); recentre the ball accordingly
    const Vec3 pcenter{0.0, -6.0, 6.0};
    const auto prof = ball_area_profile(pmesh, pcenter, {0.5, 1.0, 2.0, 4.0});
    for (const auto& [r, ratio] : prof) CHECK(std::abs(ratio - pi) < 0.02);

    const auto cat = catalog::make_catenoid();
    GridSpec cspec{-2.4, 2.4, -pi, pi, 97, 193, true};
    const auto cmesh = build_mesh(cat, cspec);
    // waist center in mesh coordinates: minus the closed-form position of
    // the first grid vertex z = exp(-2.4 - i pi)
    const double rho0 = std::exp(-2.4);
    const Vec3 first{0.5 * (rho0 + 1.0 / rho0), 0.0, -2.4};
    const Vec3 center = first * -1.0;
    std::vector<double> radii;
    for (double r = 1.2; r <= 4.01; r += 0.4) radii.push_back(r);
    const auto cprof = ball_area_profile(cmesh, center, radii);
    for (std::size_t i = 0; i + 1 < cprof.size(); ++i)
        CHECK(cprof[i + 1].second >= cprof[i].second - 1e-6);
    for (const auto& [r, ratio] : cprof) CHECK(ratio >= pi - 0.01);
}

TEST_CASE("superharmonic slab checks saturate but do not violate") {
    // catenoid in the log chart: closed forms give |Delta ln r| equal to
    // |grad x3|^2 / r^2 exactly, so the margin is pure discretization error
    const auto cyl = catalog::catenoid_cylinder_chart(1.0);
    GridSpec slab{0.9, 1.01, -pi, pi, 33, 513, false};
    // absolute position of the first grid vertex (0.9, -pi):
    // X(w) = (-cosh u cos v, -cosh u sin v, u)
    const Vec3 cat_shift{std::cosh(0.9), 0.0, 0.9};
    const auto rep = superharmonic_check(cyl, slab, 1.5, cat_shift);
    CHECK(rep.max_laplacian_f < 1e-6);
    CHECK(rep.max_laplacian_f < 0.0); // strictly superharmonic
    CHECK(rep.max_log_bound_violation < 1e-6);

    const auto hel = catalog::make_helicoid();
    GridSpec hslab{1.0, 2.1, -1.0, 0.0, 65, 65, false};
    // X(z) = (sinh u sin v, -sinh u cos v, -v); first vertex (1, -1)
    const Vec3 hel_shift{std::sinh(1.0) * std::sin(-1.0),
                         -std::sinh(1.0) * std::cos(-1.0), 1.0};
    const auto hrep = superharmonic_check(hel, hslab, 1.2, hel_shift);
    CHECK(hrep.max_laplacian_f < 1e-6);
    CHECK(hrep.max_log_bound_violation < 1e-6);

    // vertical plane: ln r - x3^2 superharmonic with equality in the bound
    const auto plane = catalog::make_plane();
    GridSpec pslab{0.0, 1.0, 1.5, 4.0, 65, 129, false};
    // X(z) = (0, -Im z, Re z); first vertex (0, 1.5)
    const Vec3 plane_shift{0.0, -1.5, 0.0};
    const auto prep = superharmonic_check(plane, pslab, 1.4, plane_shift);
    CHECK(prep.max_laplacian_f < 1e-6);
    CHECK(prep.max_log_bound_violation < 1e-6);
}

TEST_CASE("degree identity for the catalog") {
    const auto cat = catalog::make_catenoid();
    const auto jm = jorge_meeks_check(cat, 0, 2);
    CHECK(jm.applicable);
    CHECK(jm.deg == 1);
    CHECK(jm.lhs_minus_rhs == 0);

    const auto plane = catalog::make_plane();
    const auto jp = jorge_meeks_check(plane, 0, 1);
    CHECK_FALSE(jp.applicable); // constant Gauss map: formula not applicable
}

TEST_CASE("mesh export produces parseable headers") {
    const auto data = catalog::make_catenoid();
    GridSpec spec{-0.5, 0.5, -0.5, 0.5, 9, 9, true};
    const auto mesh = build_mesh(data, spec);
    io::write_obj(mesh, "test_mesh.obj");
    io::write_ply(mesh, "test_mesh.ply");
    std::ifstream obj("test_mesh.obj");
    std::string first;
    std::getline(obj, first);
    CHECK(first.rfind("v ", 0) == 0);
    std::ifstream ply("test_mesh.ply", std::ios::binary);
    std::string magic(3, '\0');
    ply.read(magic.data(), 3);
    CHECK(magic == "ply");
}
