#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wlab/complexkit.hpp"

using namespace wlab;
using namespace wlab::complexkit;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};

AnalyticFn rational(std::vector<cplx> poles, std::vector<cplx> res) {
    std::vector<Singularity> sing;
    for (auto p : poles) sing.push_back({p, 1});
    return AnalyticFn(
        [poles, res](cplx z) {
            cplx v = 0.0;
            for (std::size_t i = 0; i < poles.size(); ++i) v += res[i] / (z - poles[i]);
            return v;
        },
        sing);
}
} // namespace

TEST_CASE("cauchy integral of 1/z over the unit circle") {
    AnalyticFn f([](cplx z) { return 1.0 / z; }, {{cplx(0, 0), 1}});
    const cplx v = contour_integrate(f, circle(0.0, 1.0), 1e-12);
    CHECK(std::abs(v - 2.0 * pi * I) < 1e-10);
}

TEST_CASE("holomorphic integrand closes to zero") {
    AnalyticFn f([](cplx z) { return z; });
    CHECK(std::abs(contour_integrate(f, circle(0.0, 1.0), 1e-12)) < 1e-11);
}

TEST_CASE("catenoid period integrands over |z|=1") {
    // catenoid data g = z, phi = 1/z: dh/g has density 1/z^2, g*dh has density 1.
    // oracle: both densities have exact antiderivatives (-1/z and z), so the
    // closed-path integrals vanish and the first closure condition holds.
    AnalyticFn dh_over_g([](cplx z) { return 1.0 / (z * z); }, {{cplx(0, 0), 2}});
    AnalyticFn g_dh([](cplx) { return cplx(1.0); });
    const cplx a = contour_integrate(dh_over_g, circle(0.0, 1.0), 1e-12);
    const cplx b = contour_integrate(g_dh, circle(0.0, 1.0), 1e-12);
    CHECK(std::abs(a) < 1e-10);
    CHECK(std::abs(b) < 1e-10);
    CHECK(std::abs(std::conj(b) - a) < 1e-10); // conj(int g dh) = int dh/g
}

TEST_CASE("linearity and orientation flip on random rational integrands") {
    std::mt19937 rng(20260808u);
    std::uniform_real_distribution<double> U(-0.6, 0.6);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<cplx> poles, res;
        cplx exact = 0.0;
        for (int j = 0; j < 3; ++j) {
            const cplx p(U(rng), U(rng));
            const cplx r(U(rng), U(rng));
            poles.push_back(p);
            res.push_back(r);
            if (std::abs(p) < 1.0) exact += r;
        }
        // keep poles away from the contour
        bool ok = true;
        for (auto p : poles)
            if (std::abs(std::abs(p) - 1.0) < 5e-2) ok = false;
        if (!ok) continue;
        AnalyticFn f = rational(poles, res);
        const Contour c = circle(0.0, 1.0, 512);
        const cplx v = contour_integrate(f, c, 1e-11, 1e-3);
        CHECK(std::abs(v - 2.0 * pi * I * exact) < 1e-9);
        const cplx vr = contour_integrate(f, c.reversed(), 1e-11, 1e-3);
        CHECK(std::abs(v + vr) < 1e-10);
        // linearity: integral of 2f equals twice integral of f
        AnalyticFn f2([f](cplx z) { return 2.0 * f(z); }, f.singularities());
        const cplx v2 = contour_integrate(f2, c, 1e-11, 1e-3);
        CHECK(std::abs(v2 - 2.0 * v) < 1e-9);
    }
}

TEST_CASE("pole guard rejects contours through singularities") {
    AnalyticFn f([](cplx z) { return 1.0 / (z - 1.0); }, {{cplx(1, 0), 1}});
    CHECK_THROWS_AS(contour_integrate(f, circle(0.0, 1.0), 1e-10), SingularityOnPath);
}

TEST_CASE("residues") {
    AnalyticFn f([](cplx z) { return 1.0 / (z - 1.0); }, {{cplx(1, 0), 1}});
    CHECK(std::abs(residue_at(f, 1.0, 0.5) - 1.0) < 1e-11);

    AnalyticFn g([](cplx z) { return 1.0 / (z * z); }, {{cplx(0, 0), 2}});
    CHECK(std::abs(residue_at(g, 0.0, 0.5)) < 1e-11);

    AnalyticFn h([](cplx z) { return 1.0 / (z * (z - 0.1)); },
                 {{cplx(0, 0), 1}, {cplx(0.1, 0), 1}});
    CHECK_THROWS_AS(residue_at(h, 0.0, 0.5), MultipleSingularities);
}

TEST_CASE("laurent jets") {
    AnalyticFn f([](cplx z) { return 1.0 / (z * z); }, {{cplx(0, 0), 2}});
    const LaurentJet jet = laurent_jet(f, 0.0, 3, 0.7);
    CHECK(std::abs(jet.c(-2) - 1.0) < 1e-10);
    for (int k = -3; k <= 3; ++k) {
        if (k == -2) continue;
        CHECK(std::abs(jet.c(k)) < 1e-9);
    }

    AnalyticFn e([](cplx z) { return std::exp(z); });
    const LaurentJet je = laurent_jet(e, 0.0, 6, 1.0);
    double fact = 1.0;
    for (int k = 0; k <= 6; ++k) {
        if (k > 0) fact *= k;
        CHECK(std::abs(je.c(k) - 1.0 / fact) < 1e-10);
    }
}

TEST_CASE("residue agrees with laurent c_{-1} on random poles") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const cplx p(U(rng), U(rng));
        const cplx r(U(rng) + 1.5, U(rng));
        AnalyticFn f([p, r](cplx z) { return r / (z - p) + std::exp(0.3 * z); },
                     {{p, 1}});
        const cplx res = residue_at(f, p, 0.4);
        const LaurentJet jet = laurent_jet(f, p, 2, 0.4);
        CHECK(std::abs(res - jet.c(-1)) < 1e-8);
        CHECK(std::abs(res - r) < 1e-9);
    }
}

TEST_CASE("argument principle counts") {
    AnalyticFn sq([](cplx z) { return z * z; });
    CHECK(count_zeros_poles(sq, circle(0.01, 0.5)) == 2);

    AnalyticFn invcube([](cplx z) { return 1.0 / (z * z * z); }, {{cplx(0, 0), 3}});
    CHECK(count_zeros_poles(invcube, circle(0.0123, 0.5)) == -3);

    AnalyticFn mixed([](cplx z) { return (z - 0.2) * (z - 0.2) * (z + 0.3) / (z - 0.1); },
                     {{cplx(0.1, 0), 1}});
    CHECK(count_zeros_poles(mixed, circle(0.0, 0.6)) == 2);

    AnalyticFn lin([](cplx z) { return z - 1.0; });
    CHECK_THROWS_AS(count_zeros_poles(lin, circle(0.0, 1.0)), ZeroOnPath);

    // integer stability of the raw winding estimate
    const double w = winding_number_raw(sq, circle(0.01, 0.5));
    CHECK(std::abs(w - 2.0) < 0.1);
}

TEST_CASE("spectral derivative on band-limited modes") {
    const int N = 64;
    SampledLine line;
    line.origin = 0.0;
    line.direction = 1.0; // real direction, z = s
    line.values.resize(N);
    for (int j = 0; j < N; ++j)
        line.values[j] = std::exp(2.0 * pi * I * (double(j) / N));
    const SampledLine d = spectral_derivative(line, 1);
    double err = 0.0;
    for (int j = 0; j < N; ++j)
        err = std::max(err, std::abs(d.values[j] - 2.0 * pi * I * line.values[j]));
    CHECK(err < 1e-10);

    SampledLine flat = line;
    for (auto& v : flat.values) v = 3.25;
    const SampledLine d0 = spectral_derivative(flat, 2);
    for (auto& v : d0.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("third derivative of exp(4*pi*i*z)") {
    const int N = 64;
    SampledLine line;
    line.direction = 1.0;
    line.values.resize(N);
    for (int j = 0; j < N; ++j)
        line.values[j] = std::exp(4.0 * pi * I * (double(j) / N));
    const SampledLine d3 = spectral_derivative(line, 3);
    const cplx fac = std::pow(4.0 * pi * I, 3);
    double err = 0.0;
    for (int j = 0; j < N; ++j)
        err = std::max(err, std::abs(d3.values[j] - fac * line.values[j]) / std::abs(fac));
    CHECK(err < 1e-8);
}

TEST_CASE("derivative composes: order 2 equals order 1 twice") {
    const int N = 128;
    SampledLine line;
    line.direction = I; // vertical cylinder line
    line.values.resize(N);
    for (int j = 0; j < N; ++j) {
        const cplx z = I * (double(j) / N);
        line.values[j] = std::exp(2.0 * pi * z) + 0.5 * std::exp(-2.0 * pi * z);
    }
    const SampledLine d2 = spectral_derivative(line, 2);
    const SampledLine d11 = spectral_derivative(spectral_derivative(line, 1), 1);
    double err = 0.0;
    for (int j = 0; j < N; ++j) err = std::max(err, std::abs(d2.values[j] - d11.values[j]));
    CHECK(err < 1e-9);
}

TEST_CASE("aliasing detection") {
    const int N = 64;
    SampledLine line;
    line.direction = 1.0;
    line.values.resize(N);
    std::mt19937 rng(3u);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (auto& v : line.values) v = cplx(U(rng), U(rng));
    CHECK_THROWS_AS(spectral_derivative(line, 1), AliasingDetected);
}

TEST_CASE("continuation off a cylinder line") {
    // f periodic on C/<i>, analytic in a strip around Re z = 0
    auto f = [](cplx z) { return 1.0 / (2.0 - std::exp(2.0 * pi * z)); };
    const int N = 256;
    SampledLine line;
    line.origin = 0.0;
    line.direction = I;
    line.values.resize(N);
    for (int j = 0; j < N; ++j) line.values[j] = f(I * (double(j) / N));
    const cplx z(0.05, 0.3);
    CHECK(std::abs(continue_off_line(line, z) - f(z)) < 5e-8);
    const cplx z2(-0.08, 0.77);
    CHECK(std::abs(continue_off_line(line, z2) - f(z2)) < 1e-9);
}
