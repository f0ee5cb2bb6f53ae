#include "wlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wlab/parallel.hpp"
#include "wlab/series.hpp"

namespace wlab::catalog {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

using complexkit::AnalyticFn;
using complexkit::Singularity;

cplx curve_poly(double lambda, cplx z) {
    return z * (z - lambda) * (lambda * z + 1.0);
}
cplx curve_poly_d1(double lambda, cplx z) {
    return 3.0 * lambda * z * z + 2.0 * (1.0 - lambda * lambda) * z - lambda;
}

} // namespace

WeierstrassData make_plane() {
    WeierstrassData d;
    d.g = AnalyticFn([](cplx) { return cplx(1.0); });
    d.phi = AnalyticFn([](cplx) { return cplx(1.0); });
    d.chart = weier::Chart::Plane;
    d.gjet = [](cplx, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1, 0.0);
        jet[0] = 1.0;
        return jet;
    };
    d.finite_total_curvature = true;
    d.name = "plane";
    return d;
}

WeierstrassData make_catenoid() {
    WeierstrassData d;
    d.g = AnalyticFn([](cplx z) { return z; });
    d.phi = AnalyticFn([](cplx z) { return 1.0 / z; }, {{cplx(0.0), 1}});
    d.chart = weier::Chart::PuncturedPlane;
    d.base_point = cplx(1.0, 0.0);
    d.guard = {{cplx(0.0), 1}};
    d.ends = {{cplx(0.0), weier::EndKind::Catenoidal, +1}};
    d.gjet = [](cplx z, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1, 0.0);
        jet[0] = z;
        if (order >= 1) jet[1] = 1.0;
        return jet;
    };
    d.finite_total_curvature = true;
    d.name = "catenoid";
    return d;
}

WeierstrassData make_helicoid() {
    WeierstrassData d;
    d.g = AnalyticFn([](cplx z) { return std::exp(z); });
    d.phi = AnalyticFn([](cplx) { return kI; });
    d.chart = weier::Chart::Plane;
    d.gjet = [](cplx z, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1);
        const cplx e = std::exp(z);
        for (int k = 0; k <= order; ++k) jet[static_cast<std::size_t>(k)] = e;
        return jet;
    };
    d.name = "helicoid";
    return d;
}

namespace {

WeierstrassData exponential_chart(cplx rate, const std::string& name) {
    WeierstrassData d;
    d.g = AnalyticFn([rate](cplx z) { return std::exp(rate * z); });
    d.phi = AnalyticFn([](cplx) { return cplx(1.0); });
    d.chart = weier::Chart::Cylinder;
    d.gjet = [rate](cplx z, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1);
        cplx v = std::exp(rate * z);
        for (int k = 0; k <= order; ++k) {
            jet[static_cast<std::size_t>(k)] = v;
            v *= rate;
        }
        return jet;
    };
    d.name = name;
    return d;
}

} // namespace

WeierstrassData catenoid_cylinder_chart(double c) {
    return exponential_chart(cplx(c, 0.0), "catenoid-cylinder");
}

WeierstrassData helicoid_cylinder_chart() {
    return exponential_chart(cplx(0.0, -1.0), "helicoid-cylinder");
}

WeierstrassData perturbed_cylinder_chart(double eps) {
    WeierstrassData d;
    const cplx b = 2.0 * kPi * kI; // argument rate of the sin term
    auto logg = [eps, b](cplx z) { return 2.0 * kPi * z + eps * std::sin(b * z); };
    d.g = AnalyticFn([logg](cplx z) { return std::exp(logg(z)); });
    d.phi = AnalyticFn([](cplx) { return cplx(1.0); });
    d.chart = weier::Chart::Cylinder;
    d.gjet = [eps, b](cplx z, int order) {
        const std::size_t J = static_cast<std::size_t>(order);
        // series of 2 pi (z + d) + eps sin(b z + b d) in d
        Series arg(J + 1, 0.0);
        const cplx a = b * z;
        const cplx quad[4] = {std::sin(a), std::cos(a), -std::sin(a), -std::cos(a)};
        double fact = 1.0;
        cplx bpow = 1.0;
        for (std::size_t k = 0; k <= J; ++k) {
            if (k > 0) {
                fact *= static_cast<double>(k);
                bpow *= b;
            }
            arg[k] = eps * bpow * quad[k % 4] / fact;
        }
        arg[0] += 2.0 * kPi * z;
        if (J >= 1) arg[1] += 2.0 * kPi;
        return coeffs_to_jet(sexp(arg, J), order);
    };
    d.name = "perturbed-cylinder";
    return d;
}

// ---------------------------------------------------------------------------
// Riemann examples
// ---------------------------------------------------------------------------

cplx riemann_w(double lambda, cplx z) {
    return std::sqrt(z) * std::sqrt(z - lambda) * std::sqrt(lambda * z + 1.0);
}

std::pair<cplx, cplx> curve_path_integral(
    double lambda, const std::vector<cplx>& polyline, cplx w_seed,
    const std::function<cplx(cplx, cplx)>& density) {
    if (polyline.size() < 2) throw BadInput("curve path needs at least two points");
    const cplx branch[3] = {cplx(0.0), cplx(lambda, 0.0), cplx(-1.0 / lambda, 0.0)};

    // Kronrod 15 abscissae on [0,1]
    static const double kX[15] = {
        0.5 - 0.5 * 0.9914553711208126, 0.5 - 0.5 * 0.9491079123427585,
        0.5 - 0.5 * 0.8648644233597691, 0.5 - 0.5 * 0.7415311855993944,
        0.5 - 0.5 * 0.5860872354676911, 0.5 - 0.5 * 0.4058451513773972,
        0.5 - 0.5 * 0.2077849550078985, 0.5,
        0.5 + 0.5 * 0.2077849550078985, 0.5 + 0.5 * 0.4058451513773972,
        0.5 + 0.5 * 0.5860872354676911, 0.5 + 0.5 * 0.7415311855993944,
        0.5 + 0.5 * 0.8648644233597691, 0.5 + 0.5 * 0.9491079123427585,
        0.5 + 0.5 * 0.9914553711208126};
    static const double kW[15] = {
        0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
        0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
        0.20443294007529889, 0.20948214108472782, 0.20443294007529889,
        0.19035057806478540, 0.16900472663926790, 0.14065325971552592,
        0.10479001032225018, 0.06309209262997855, 0.02293532201052922};

    cplx w = w_seed;
    cplx acc = 0.0;
    for (std::size_t seg = 0; seg + 1 < polyline.size(); ++seg) {
        const cplx a = polyline[seg], bb = polyline[seg + 1];
        double dmin = 1e300;
        for (const auto& bp : branch)
            dmin = std::min({dmin, std::abs(a - bp), std::abs(bb - bp)});
        const double hmax = std::max(1e-5, std::min(0.15 * dmin, 0.05 * (1.0 + std::abs(a))));
        const int m = std::max(1, static_cast<int>(std::ceil(std::abs(bb - a) / hmax)));
        for (int s = 0; s < m; ++s) {
            const cplx p = a + (bb - a) * (static_cast<double>(s) / m);
            const cplx q = a + (bb - a) * (static_cast<double>(s + 1) / m);
            const cplx wp = w;
            const cplx wq_raw = riemann_w(lambda, q);
            const cplx wq = (std::abs(wq_raw - wp) <= std::abs(-wq_raw - wp)) ? wq_raw : -wq_raw;
            cplx sum = 0.0;
            for (int n = 0; n < 15; ++n) {
                const double t = kX[n];
                const cplx z = p + (q - p) * t;
                const cplx wref = wp + (wq - wp) * t;
                const cplx wr = riemann_w(lambda, z);
                const cplx wn = (std::abs(wr - wref) <= std::abs(-wr - wref)) ? wr : -wr;
                sum += kW[n] * density(z, wn);
            }
            acc += sum * 0.5 * (q - p) * 2.0; // kW sums to 2 on [-1,1]; halve for [0,1]
            w = wq;
        }
    }
    return {acc, w};
}

namespace {

std::vector<cplx> ellipse_polyline(cplx center, double ax, double ay, int n) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const double th = 2.0 * kPi * j / n;
        pts.push_back(center + cplx(ax * std::cos(th), ay * std::sin(th)));
    }
    pts.back() = pts.front();
    return pts;
}

Contour contour_from_points(std::vector<cplx> pts) {
    Contour c;
    c.samples = std::move(pts);
    c.closed = true;
    return c;
}

// bisection + Newton polish for a scalar root of fn over [lo, hi]
double solve_root(const std::function<double(double)>& fn, double lo, double hi) {
    double flo = fn(lo), fhi = fn(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw PeriodSolveFailed("no sign change in root bracket");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double h = 1e-7 * (1.0 + std::abs(x));
        const double d = (fn(x + h) - fn(x - h)) / (2.0 * h);
        if (d == 0.0) break;
        const double step = fn(x) / d;
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

struct AlphaPeriods {
    cplx p0, p1, p2; // dz/w, dz/(z w), z dz/w over the alpha cycle
};

AlphaPeriods alpha_periods(double lambda, const Contour& alpha) {
    AlphaPeriods out;
    auto wfun = [lambda](cplx z) { return riemann_w(lambda, z); };
    std::vector<Singularity> guard = {{cplx(0.0), 1},
                                      {cplx(lambda, 0.0), 1},
                                      {cplx(-1.0 / lambda, 0.0), 1}};
    AnalyticFn f0([wfun](cplx z) { return 1.0 / wfun(z); }, guard);
    AnalyticFn f1([wfun](cplx z) { return 1.0 / (z * wfun(z)); }, guard);
    AnalyticFn f2([wfun](cplx z) { return z / wfun(z); }, guard);
    out.p0 = complexkit::contour_integrate(f0, alpha, 1e-12, 0.0);
    out.p1 = complexkit::contour_integrate(f1, alpha, 1e-12, 0.0);
    out.p2 = complexkit::contour_integrate(f2, alpha, 1e-12, 0.0);
    return out;
}

// analytic local factor at the z=0 end: s0(zeta)^2 = (zeta^2-lambda)(lambda zeta^2+1)
cplx s0_factor(double lambda, cplx zeta) {
    return kI * std::sqrt((lambda - zeta * zeta) * (lambda * zeta * zeta + 1.0));
}
// analytic local factor at the z=inf end: s_inf^2 = (1-lambda eta^2)(lambda+eta^2)
cplx sinf_factor(double lambda, cplx eta) {
    return std::sqrt((1.0 - lambda * eta * eta) * (lambda + eta * eta));
}

} // namespace

namespace {

std::array<cplx, 3> cylinder_form(cplx z) {
    // dh = dxi, g = z
    return {0.5 * (1.0 / z - z), 0.5 * kI * (1.0 / z + z), cplx(1.0)};
}

// advance the curve state along dxi while accumulating the position
// integral Re int Phi dxi (Simpson over RK substeps)
void walk_with_position(const RiemannChart& chart, std::pair<cplx, cplx>& state,
                        Vec3& pos, cplx dxi, int substeps) {
    const cplx h = dxi / static_cast<double>(substeps);
    for (int s = 0; s < substeps; ++s) {
        const auto f0 = cylinder_form(state.first);
        const auto mid = chart.advance_state(state, 0.5 * h, 1);
        const auto f1 = cylinder_form(mid.first);
        const auto next = chart.advance_state(mid, 0.5 * h, 1);
        const auto f2 = cylinder_form(next.first);
        for (int c = 0; c < 3; ++c) {
            const cplx incr = (f0[static_cast<std::size_t>(c)] +
                               4.0 * f1[static_cast<std::size_t>(c)] +
                               f2[static_cast<std::size_t>(c)]) /
                              6.0 * h;
            if (c == 0) pos.x += incr.real();
            if (c == 1) pos.y += incr.real();
            if (c == 2) pos.z += incr.real();
        }
        state = next;
    }
}

} // namespace

std::pair<WeierstrassData, RiemannExampleParams> make_riemann(double lambda) {
    if (!(lambda >= 0.05 && lambda <= 20.0))
        throw BadInput("lambda outside the supported range [0.05, 20]");

    RiemannExampleParams params;
    params.lambda = lambda;
    params.finite_branch_points = {cplx(0.0), cplx(lambda, 0.0), cplx(-1.0 / lambda, 0.0)};

    const double pad = 0.4 * std::min({1.0 / lambda, lambda, 1.0});
    Contour alpha = contour_from_points(
        ellipse_polyline(cplx(lambda / 2.0, 0.0), lambda / 2.0 + pad, pad, 1024));

    AlphaPeriods per = alpha_periods(lambda, alpha);

    // A branch solve. Real branch: Im(a p0) = 1 has a root iff Im p0 != 0;
    // imaginary branch: Im(i a p0) = -a Re p0 = 1 needs Re p0 < 0. The
    // conjugation residual picks the branch that closes periods.
    struct Candidate {
        cplx A;
        bool real_branch;
        double residual;
    };
    std::vector<Candidate> candidates;
    auto closure_residual = [&per](cplx A) {
        return std::abs(std::conj(A * per.p2) - A * per.p1) + std::abs((A * per.p0).real());
    };
    const double s0m = std::abs(per.p0);
    if (std::abs(per.p0.imag()) > 1e-14 * s0m) {
        const double target = per.p0.imag() > 0.0 ? 1.0 : -1.0;
        const double a = solve_root(
            [&](double t) { return (t * per.p0).imag() - target; }, 1e-9, 1e9);
        candidates.push_back({cplx(a, 0.0), true, closure_residual(cplx(a, 0.0))});
    }
    if (std::abs(per.p0.real()) > 1e-14 * s0m) {
        const double target = per.p0.real() < 0.0 ? 1.0 : -1.0;
        const double a = solve_root(
            [&](double t) { return (cplx(0.0, t) * per.p0).imag() - target; }, 1e-9, 1e9);
        candidates.push_back({cplx(0.0, a), false, closure_residual(cplx(0.0, a))});
    }
    if (candidates.empty())
        throw PeriodSolveFailed("no A branch admits a unit vertical period");
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) { return x.residual < y.residual; });
    const Candidate best = candidates.front();
    if (best.residual > 1e-8)
        throw PeriodSolveFailed("period closure residual above tolerance");
    params.A = best.A;
    params.A_real_branch = best.real_branch;
    params.closure_residual = best.residual;

    const cplx A = params.A;

    // sheet + data in the z chart
    WeierstrassData data;
    data.g = AnalyticFn([](cplx z) { return z; });
    data.phi = AnalyticFn([lambda, A](cplx z) { return A / riemann_w(lambda, z); },
                          {{cplx(0.0), 1},
                           {cplx(lambda, 0.0), 1},
                           {cplx(-1.0 / lambda, 0.0), 1}});
    data.chart = weier::Chart::EllipticDoubleCover;
    data.guard = {{cplx(0.0), 1}, {cplx(lambda, 0.0), 1}, {cplx(-1.0 / lambda, 0.0), 1}};
    data.gjet = [](cplx z, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1, 0.0);
        jet[0] = z;
        if (order >= 1) jet[1] = 1.0;
        return jet;
    };
    data.finite_total_curvature = true;
    {
        std::ostringstream name;
        name << "riemann:lambda=" << lambda;
        data.name = name.str();
    }

    // orient alpha so the vertical flux is +1
    weier::FluxVector fa = weier::flux(data, alpha, "alpha");
    if (fa.f.z < 0.0) {
        alpha.orientation = -alpha.orientation;
        fa = weier::flux(data, alpha, "alpha");
    }
    params.alpha_cycle = alpha;
    params.flux_alpha = fa.f;

    // end residues in the local charts
    {
        const double r0 = 0.3 * std::min(std::sqrt(lambda), 1.0 / std::sqrt(lambda));
        AnalyticFn dh_over_g_zero(
            [lambda, A](cplx zeta) { return 2.0 * A / (zeta * zeta * s0_factor(lambda, zeta)); },
            {{cplx(0.0), 2}});
        params.end_residues[0] = complexkit::laurent_jet(dh_over_g_zero, 0.0, 2, r0).c(-1);
        AnalyticFn g_dh_inf(
            [lambda, A](cplx eta) { return -2.0 * A / (eta * eta * sinf_factor(lambda, eta)); },
            {{cplx(0.0), 2}});
        params.end_residues[1] = complexkit::laurent_jet(g_dh_inf, 0.0, 2, r0).c(-1);
    }

    // end heights on the cylinder: x_inf from the substitution v = z^{-1/2},
    // x_zero from z = lambda + s^2; both integrands are regular
    const double zb = lambda + 0.5 * (1.0 + lambda);
    {
        const double vb = 1.0 / std::sqrt(zb);
        AnalyticFn f([lambda](cplx v) {
            return 2.0 / std::sqrt((1.0 - lambda * v * v) * (lambda + v * v));
        });
        complexkit::Contour seg = complexkit::segment_path({cplx(0.0), cplx(vb, 0.0)});
        params.x_end_inf = (A * complexkit::contour_integrate(f, seg, 1e-12, 0.0)).real();
        // x(z_b) = 0, end at +A*integral
    }
    {
        const double sb = std::sqrt(zb - lambda);
        AnalyticFn f([lambda](cplx s) {
            const cplx x = lambda + s * s;
            return 2.0 / std::sqrt(x * (lambda * x + 1.0));
        });
        complexkit::Contour seg = complexkit::segment_path({cplx(0.0), cplx(sb, 0.0)});
        params.x_end_zero = -(A * complexkit::contour_integrate(f, seg, 1e-12, 0.0)).real();
    }

    // primitive beta cycle: one vertical period along the end-free corridor
    // Im xi = 1/4; its z-image closes on the curve, and the accumulated
    // position integral is the R^3 translation
    {
        const double T3 = 2.0 * (params.x_end_inf - params.x_end_zero);
        RiemannChart chart(params);
        const cplx xi0(params.x_end_zero, 0.25);
        auto state = chart.curve_point(xi0);
        const auto start = state;
        Vec3 pos{0.0, 0.0, 0.0};
        const int nseg = 512;
        std::vector<cplx> beta;
        beta.reserve(nseg + 1);
        const int sub = std::max(2, static_cast<int>(std::ceil((T3 / nseg) / 1e-3)));
        for (int k = 0; k < nseg; ++k) {
            beta.push_back(state.first);
            walk_with_position(chart, state, pos, cplx(T3 / nseg, 0.0), sub);
        }
        if (std::abs(state.first - start.first) > 1e-6 * (1.0 + std::abs(start.first)) ||
            std::abs(state.second - start.second) > 1e-6 * (1.0 + std::abs(start.second)))
            throw PeriodSolveFailed("corridor cycle failed to close on the curve");
        beta.push_back(beta.front());
        params.period_T = pos;
        params.beta_cycle = contour_from_points(beta);
    }

    return {data, params};
}

weier::PeriodReport riemann_period_report(const RiemannExampleParams& params) {
    weier::PeriodReport rep;
    const double lambda = params.lambda;
    const cplx A = params.A;
    auto wfun = [lambda](cplx z) { return riemann_w(lambda, z); };
    AnalyticFn dh_over_g([wfun, A](cplx z) { return A / (z * wfun(z)); });
    AnalyticFn g_dh([wfun, A](cplx z) { return A * z / wfun(z); });
    AnalyticFn dh([wfun, A](cplx z) { return A / wfun(z); });

    weier::CyclePeriods p;
    p.dh_over_g = complexkit::contour_integrate(dh_over_g, params.alpha_cycle, 1e-12, 0.0);
    p.g_dh = complexkit::contour_integrate(g_dh, params.alpha_cycle, 1e-12, 0.0);
    p.re_dh = complexkit::contour_integrate(dh, params.alpha_cycle, 1e-12, 0.0).real();
    p.closure_residual = std::abs(std::conj(p.g_dh) - p.dh_over_g) + std::abs(p.re_dh);
    rep.cycles.push_back(p);
    rep.residual = p.closure_residual;
    for (const auto& r : params.end_residues) {
        rep.end_residues.push_back(r);
        rep.residual = std::max(rep.residual, std::abs(r));
    }
    return rep;
}

WeierstrassData riemann_end_chart_zero(const RiemannExampleParams& params) {
    const double lambda = params.lambda;
    const cplx A = params.A;
    WeierstrassData d;
    d.g = AnalyticFn([](cplx zeta) { return zeta * zeta; });
    d.phi = AnalyticFn([lambda, A](cplx zeta) { return 2.0 * A / s0_factor(lambda, zeta); });
    d.chart = weier::Chart::Plane;
    d.base_point = cplx(0.2 * std::min(std::sqrt(lambda), 1.0), 0.0);
    d.guard = {{cplx(0.0), 1}};
    d.ends = {{cplx(0.0), weier::EndKind::Planar, +2}};
    d.gjet = [](cplx zeta, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1, 0.0);
        jet[0] = zeta * zeta;
        if (order >= 1) jet[1] = 2.0 * zeta;
        if (order >= 2) jet[2] = 2.0;
        return jet;
    };
    d.finite_total_curvature = true;
    d.name = "riemann-end-zero";
    return d;
}

WeierstrassData riemann_end_chart_inf(const RiemannExampleParams& params) {
    const double lambda = params.lambda;
    const cplx A = params.A;
    WeierstrassData d;
    d.g = AnalyticFn([](cplx eta) { return 1.0 / (eta * eta); }, {{cplx(0.0), 2}});
    d.phi = AnalyticFn([lambda, A](cplx eta) { return -2.0 * A / sinf_factor(lambda, eta); });
    d.chart = weier::Chart::Plane;
    d.base_point = cplx(0.2 * std::min(1.0 / std::sqrt(lambda), 1.0), 0.0);
    d.guard = {{cplx(0.0), 1}};
    d.ends = {{cplx(0.0), weier::EndKind::Planar, -2}};
    d.gjet = [](cplx eta, int order) {
        // jets of eta^-2
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1);
        cplx v = 1.0 / (eta * eta);
        double f = 1.0;
        for (int k = 0; k <= order; ++k) {
            jet[static_cast<std::size_t>(k)] = f * v;
            v /= eta;
            f *= -(k + 2);
        }
        return jet;
    };
    d.finite_total_curvature = true;
    d.name = "riemann-end-inf";
    return d;
}

weier::JorgeMeeksReport riemann_jorge_meeks(const RiemannExampleParams& params) {
    // degree of g on the quotient: argument-principle orders at the two ends
    const WeierstrassData zero_chart = riemann_end_chart_zero(params);
    const WeierstrassData inf_chart = riemann_end_chart_inf(params);
    const double r = 0.2 * std::min(std::sqrt(params.lambda), 1.0 / std::sqrt(params.lambda));
    const int order_zero =
        complexkit::count_zeros_poles(zero_chart.g, complexkit::circle(cplx(0.0), r));
    const int order_inf =
        complexkit::count_zeros_poles(inf_chart.g, complexkit::circle(cplx(0.0), r));
    weier::JorgeMeeksReport rep;
    rep.applicable = true;
    rep.deg = std::max(order_zero, 0) + std::max(order_inf, 0);
    rep.lhs_minus_rhs = rep.deg - (1 + 2 - 1); // quotient torus, two ends
    return rep;
}

double riemann_total_curvature(const RiemannExampleParams& params, int grid) {
    // the Gauss map is z on each sheet and the spherical pull-back density
    // does not involve the height density, so the quotient integral is twice
    // one sheet of the z chart over a large log-polar annulus
    const double lambda = params.lambda;
    const cplx A = params.A;
    WeierstrassData sheet;
    sheet.g = AnalyticFn([](cplx z) { return z; });
    sheet.phi = AnalyticFn([lambda, A](cplx z) { return A / riemann_w(lambda, z); });
    sheet.gjet = [](cplx z, int order) {
        std::vector<cplx> jet(static_cast<std::size_t>(order) + 1, 0.0);
        jet[0] = z;
        if (order >= 1) jet[1] = 1.0;
        return jet;
    };
    weier::GridSpec spec{-6.0, 6.0, -kPi, kPi, grid, grid, true};
    return 2.0 * weier::total_curvature_region(sheet, spec);
}

// ---------------------------------------------------------------------------
// Cylinder chart
// ---------------------------------------------------------------------------

RiemannChart::RiemannChart(const RiemannExampleParams& params) : params_(params) {}

std::pair<cplx, cplx> RiemannChart::advance_state(std::pair<cplx, cplx> state,
                                                  cplx dxi, int steps) const {
    const double lambda = params_.lambda;
    const cplx A = params_.A;
    const cplx h = dxi / static_cast<double>(steps);
    cplx z = state.first, w = state.second;
    // flow in the z chart; near z = infinity switch to (zeta, omega) =
    // (1/z, w/z^2), where the flow is again polynomial and the end is a
    // regular point:
    //   dzeta/dxi  = -omega / A
    //   domega/dxi = (-lambda - 2(1-lambda^2) zeta + 3 lambda zeta^2) / (2A)
    auto rhs_z = [&](cplx zz, cplx ww) {
        return std::make_pair(ww / A, curve_poly_d1(lambda, zz) / (2.0 * A));
    };
    auto rhs_inv = [&](cplx zeta, cplx omega) {
        return std::make_pair(-omega / A,
                              (-lambda - 2.0 * (1.0 - lambda * lambda) * zeta +
                               3.0 * lambda * zeta * zeta) /
                                  (2.0 * A));
    };
    for (int s = 0; s < steps; ++s) {
        if (std::abs(z) <= 1.5) {
            const auto k1 = rhs_z(z, w);
            const auto k2 = rhs_z(z + 0.5 * h * k1.first, w + 0.5 * h * k1.second);
            const auto k3 = rhs_z(z + 0.5 * h * k2.first, w + 0.5 * h * k2.second);
            const auto k4 = rhs_z(z + h * k3.first, w + h * k3.second);
            z += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
            w += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
            if (std::abs(w) > 1e-8) w = 0.5 * (w + curve_poly(lambda, z) / w);
        } else {
            cplx zeta = 1.0 / z;
            cplx omega = w * zeta * zeta;
            const auto k1 = rhs_inv(zeta, omega);
            const auto k2 = rhs_inv(zeta + 0.5 * h * k1.first, omega + 0.5 * h * k1.second);
            const auto k3 = rhs_inv(zeta + 0.5 * h * k2.first, omega + 0.5 * h * k2.second);
            const auto k4 = rhs_inv(zeta + h * k3.first, omega + h * k3.second);
            zeta += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
            omega += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
            // omega^2 = zeta (lambda + (1-lambda^2) zeta - lambda zeta^2)
            const cplx q = zeta * (lambda + (1.0 - lambda * lambda) * zeta -
                                   lambda * zeta * zeta);
            if (std::abs(omega) > 1e-8) omega = 0.5 * (omega + q / omega);
            z = 1.0 / zeta;
            w = omega * z * z;
        }
    }
    return {z, w};
}

std::pair<cplx, cplx> RiemannChart::curve_point(cplx xi) const {
    const double zb = params_.lambda + 0.5 * (1.0 + params_.lambda);
    std::pair<cplx, cplx> state{cplx(zb, 0.0), riemann_w(params_.lambda, cplx(zb, 0.0))};
    // route through the end-free corridor Im xi = 1/4
    const cplx mid1 = cplx(0.0, 0.25);
    const cplx mid2 = cplx(xi.real(), 0.25);
    const cplx legs[3] = {mid1, mid2, xi};
    cplx at = 0.0;
    for (const cplx& target : legs) {
        const cplx d = target - at;
        if (std::abs(d) < 1e-15) continue;
        const int steps = std::max(8, static_cast<int>(std::ceil(std::abs(d) / 2.5e-4)));
        state = advance_state(state, d, steps);
        at = target;
    }
    return state;
}

std::vector<std::pair<cplx, cplx>> RiemannChart::trace_line(double x0, int N) const {
    std::vector<std::pair<cplx, cplx>> out(static_cast<std::size_t>(N));
    auto state = curve_point(cplx(x0, 0.0));
    const cplx step = kI * (1.0 / N);
    const int sub = std::max(2, static_cast<int>(std::ceil((1.0 / N) / 2.5e-4)));
    for (int j = 0; j < N; ++j) {
        out[static_cast<std::size_t>(j)] = state;
        state = advance_state(state, step, sub);
    }
    if (std::abs(state.first - out[0].first) > 1e-7 * (1.0 + std::abs(out[0].first)))
        throw Error("riemann line trace failed to close around the cylinder");
    return out;
}

std::vector<cplx> RiemannChart::g_jet_from_zw(cplx z, cplx w, int order) const {
    const double lambda = params_.lambda;
    const cplx A = params_.A;
    const std::size_t J = static_cast<std::size_t>(order);
    Series a(J + 1, 0.0), b(J + 1, 0.0);
    a[0] = z;
    b[0] = w;
    for (std::size_t n = 0; n + 1 <= J; ++n) {
        a[n + 1] = b[n] / (A * static_cast<double>(n + 1));
        // c_n = [P'(a)]_n = 3 lambda (a*a)_n + 2(1-lambda^2) a_n - lambda [n=0]
        cplx conv = 0.0;
        for (std::size_t i = 0; i <= n; ++i) conv += a[i] * a[n - i];
        cplx cn = 3.0 * lambda * conv + 2.0 * (1.0 - lambda * lambda) * a[n];
        if (n == 0) cn -= lambda;
        b[n + 1] = cn / (2.0 * A * static_cast<double>(n + 1));
    }
    return coeffs_to_jet(a, order);
}

std::vector<cplx> RiemannChart::u_jet_from_zw(cplx z, cplx w, int order) const {
    const double lambda = params_.lambda;
    const cplx A = params_.A;
    // u(xi) = lambda / (2 A^2 z(xi)) - (1 - lambda^2) / (4 A^2)
    const std::size_t J = static_cast<std::size_t>(order);
    std::vector<cplx> gj = g_jet_from_zw(z, w, order);
    Series a(J + 1, 0.0);
    double fact = 1.0;
    for (std::size_t k = 0; k <= J; ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        a[k] = gj[k] / fact;
    }
    Series inv = srecip(a, J);
    Series u = sscale(inv, lambda / (2.0 * A * A), J);
    u[0] -= (1.0 - lambda * lambda) / (4.0 * A * A);
    return coeffs_to_jet(u, order);
}

std::vector<cplx> RiemannChart::g_jet(cplx xi, int order) const {
    const auto [z, w] = curve_point(xi);
    return g_jet_from_zw(z, w, order);
}

WeierstrassData RiemannChart::cylinder_data() const {
    WeierstrassData d;
    RiemannChart chart = *this;
    d.g = AnalyticFn([chart](cplx xi) { return chart.curve_point(xi).first; });
    d.phi = AnalyticFn([](cplx) { return cplx(1.0); });
    d.chart = weier::Chart::Cylinder;
    d.gjet = [chart](cplx xi, int order) { return chart.g_jet(xi, order); };
    d.ends = {{cplx(params_.x_end_zero, 0.5), weier::EndKind::Planar, +2},
              {cplx(params_.x_end_inf, 0.0), weier::EndKind::Planar, -2}};
    d.guard = {{cplx(params_.x_end_zero, 0.5), 1}, {cplx(params_.x_end_inf, 0.0), 1}};
    d.finite_total_curvature = true;
    d.name = "riemann-cylinder";
    return d;
}

double RiemannChart::main_line_x0() const {
    return 0.5 * (params_.x_end_zero + params_.x_end_inf);
}

NormalizedFlux normalize_flux(const WeierstrassData& data, const Contour& section) {
    const weier::FluxVector fv = weier::flux(data, section);
    if (std::abs(fv.f.z) < 1e-9) throw ZeroVerticalFlux("vertical flux vanishes on section");
    NormalizedFlux out;
    out.scale = 1.0 / fv.f.z;
    const double h = std::hypot(fv.f.x, fv.f.y);
    double alpha = (h > 1e-12) ? std::atan2(fv.f.y, fv.f.x) : 0.0;

    auto apply = [&](double rot) {
        WeierstrassData d = data;
        const AnalyticFn g = data.g;
        const AnalyticFn phi = data.phi;
        const cplx gr = std::exp(-kI * rot);
        const double s = out.scale;
        d.g = AnalyticFn([g, gr](cplx z) { return gr * g(z); }, g.singularities());
        d.phi = AnalyticFn([phi, s](cplx z) { return s * phi(z); }, phi.singularities());
        if (data.gjet) {
            auto base = data.gjet;
            d.gjet = [base, gr](cplx z, int k) {
                auto jet = base(z, k);
                for (auto& v : jet) v *= gr;
                return jet;
            };
        }
        return d;
    };
    WeierstrassData cand = apply(alpha);
    const weier::FluxVector check = weier::flux(cand, section);
    if (check.f.x < -1e-10 || std::abs(check.f.y) > 1e-8 * (1.0 + h)) {
        alpha = -alpha;
        cand = apply(alpha);
    }
    out.data = cand;
    out.rotation = alpha;
    return out;
}

weier::SurfaceMesh riemann_band_mesh(const RiemannChart& chart, int nu, int nv) {
    const double T = chart.vertical_period();
    const double x0 = chart.main_line_x0();
    const double u0 = x0 - 0.5 * T, u1 = x0 + 0.5 * T;
    const double v0 = 0.06, v1 = 0.44; // band between the two end rows
    weier::SurfaceMesh mesh;
    mesh.nu = nu;
    mesh.nv = nv;
    mesh.vertices.resize(static_cast<std::size_t>(nu) * nv);
    const double du = (u1 - u0) / (nu - 1);
    const double dv = (v1 - v0) / (nv - 1);
    mesh.cell_weight.assign(mesh.vertices.size(), du * dv);
    const cplx A = chart.params().A;

    auto fill_vertex = [&](int i, int j, const std::pair<cplx, cplx>& state,
                           const Vec3& pos) {
        weier::MeshVertex& v = mesh.at(i, j);
        v.z = cplx(u0 + du * i, v0 + dv * j);
        v.position = pos;
        const cplx g = state.first;
        const cplx gp = state.second / A;
        const double ag = std::abs(g);
        v.lambda = 0.5 * (ag + 1.0 / ag);
        const double dens = 2.0 * std::abs(gp) / ((1.0 + ag * ag) * v.lambda);
        v.gauss_k = -dens * dens;
        const double den = 1.0 + ag * ag;
        v.normal = {2.0 * g.real() / den, 2.0 * g.imag() / den, (ag * ag - 1.0) / den};
    };

    // column 0 sequentially, rows in parallel
    std::vector<std::pair<cplx, cplx>> col_state(static_cast<std::size_t>(nv));
    std::vector<Vec3> col_pos(static_cast<std::size_t>(nv));
    col_state[0] = chart.curve_point(cplx(u0, v0));
    col_pos[0] = {0.0, 0.0, 0.0};
    const int subv = std::max(4, static_cast<int>(std::ceil(dv / 2e-3)));
    for (int j = 1; j < nv; ++j) {
        auto state = col_state[static_cast<std::size_t>(j - 1)];
        Vec3 pos = col_pos[static_cast<std::size_t>(j - 1)];
        walk_with_position(chart, state, pos, kI * dv, subv);
        col_state[static_cast<std::size_t>(j)] = state;
        col_pos[static_cast<std::size_t>(j)] = pos;
    }
    const int subu = std::max(4, static_cast<int>(std::ceil(du / 2e-3)));
    parallel_for(static_cast<std::size_t>(nv), [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        auto state = col_state[jj];
        Vec3 pos = col_pos[jj];
        fill_vertex(0, j, state, pos);
        for (int i = 1; i < nu; ++i) {
            walk_with_position(chart, state, pos, cplx(du, 0.0), subu);
            fill_vertex(i, j, state, pos);
        }
    });
    mesh.validate();
    return mesh;
}

WeierstrassData by_name(const std::string& spec) {
    if (spec == "plane") return make_plane();
    if (spec == "catenoid") return make_catenoid();
    if (spec == "helicoid") return make_helicoid();
    const std::string utf_key = "riemann:λ=";
    const std::string ascii_key = "riemann:lambda=";
    std::string rest;
    if (spec.rfind(utf_key, 0) == 0) rest = spec.substr(utf_key.size());
    else if (spec.rfind(ascii_key, 0) == 0) rest = spec.substr(ascii_key.size());
    else throw BadInput("unknown surface spec: " + spec);
    const double lambda = std::stod(rest);
    return make_riemann(lambda).first;
}

} // namespace wlab::catalog
