#ifndef WLAB_CATALOG_HPP
#define WLAB_CATALOG_HPP

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wlab/weierstrass.hpp"

namespace wlab::catalog {

using complexkit::Contour;
using complexkit::cplx;
using weier::WeierstrassData;

// ---------------------------------------------------------------------------
// Classical charts
// ---------------------------------------------------------------------------

WeierstrassData make_plane();     // g = 1, dh = dz on C
WeierstrassData make_catenoid();  // g = z, dh = dz/z on C - {0}
WeierstrassData make_helicoid();  // g = e^z, dh = i dz on C

// dh = dz charts used by the Shiffman/KdV layers.
WeierstrassData catenoid_cylinder_chart(double c);        // g = e^{c z}
WeierstrassData helicoid_cylinder_chart();                // g = e^{-i z}
// Non-circular test datum g = exp(2 pi z + eps sin(2 pi i z)); periodic along
// vertical lines, Shiffman function of order eps.
WeierstrassData perturbed_cylinder_chart(double eps);

// ---------------------------------------------------------------------------
// Riemann minimal examples on w^2 = z (z - lambda)(lambda z + 1)
// ---------------------------------------------------------------------------

struct RiemannExampleParams {
    double lambda = 1.0;
    cplx A{0.0, 0.0};          // height density dh = A dz / w
    bool A_real_branch = true; // false would mean A in i R+
    std::array<cplx, 3> finite_branch_points; // 0, lambda, -1/lambda
    Contour alpha_cycle; // around the cut [0, lambda]; compact horizontal section
    Contour beta_cycle;  // around [-1/lambda, 0]; crosses both cuts
    Vec3 period_T;       // R^3 translation along beta
    Vec3 flux_alpha;     // flux along the compact section, vertical part +1
    double x_end_zero = 0.0; // cylinder height of the z=0 end (Im = 1/2)
    double x_end_inf = 0.0;  // cylinder height of the z=infinity end (Im = 0)
    double closure_residual = 0.0;
    std::array<cplx, 2> end_residues{}; // dh/g at z=0 end, g dh at z=inf end
};

// Principal-branch w with cuts exactly on [0, lambda] and (-inf, -1/lambda].
cplx riemann_w(double lambda, cplx z);

// Integrate f(z, w) dz along a polyline on the curve, continuing w from
// w_seed across the cuts. Returns the integral and the final w (closure
// check for cycles).
std::pair<cplx, cplx> curve_path_integral(
    double lambda, const std::vector<cplx>& polyline, cplx w_seed,
    const std::function<cplx(cplx, cplx)>& density);

std::pair<WeierstrassData, RiemannExampleParams> make_riemann(double lambda);

// Multi-chart assembly of the closure diagnostics (alpha cycle + both end
// residues); the curve chart alone cannot see the punctures.
weier::PeriodReport riemann_period_report(const RiemannExampleParams& params);

// End charts: zeta^2 = z around the z=0 end, eta^2 = 1/z around z=infinity.
WeierstrassData riemann_end_chart_zero(const RiemannExampleParams& params);
WeierstrassData riemann_end_chart_inf(const RiemannExampleParams& params);

weier::JorgeMeeksReport riemann_jorge_meeks(const RiemannExampleParams& params);

// Quotient total curvature: K dA integrated over both sheets of the z-chart.
double riemann_total_curvature(const RiemannExampleParams& params, int grid = 257);

// Cylinder chart xi = int dh with dh = dxi: g(xi) = z(xi) traced along the
// curve by the flow dz/dxi = w/A, dw/dxi = P'(z)/(2A).
class RiemannChart {
public:
    explicit RiemannChart(const RiemannExampleParams& params);

    const RiemannExampleParams& params() const { return params_; }

    // curve point at cylinder coordinate xi (path routed through the
    // end-free corridor Im xi = 1/4)
    std::pair<cplx, cplx> curve_point(cplx xi) const;

    // N samples of (z, w) along the vertical line Re xi = x0, y = j/N
    std::vector<std::pair<cplx, cplx>> trace_line(double x0, int N) const;

    // jets of g(xi) = z(xi) and of the KdV potential u(xi) from (z, w)
    std::vector<cplx> g_jet_from_zw(cplx z, cplx w, int order) const;
    std::vector<cplx> u_jet_from_zw(cplx z, cplx w, int order) const;
    std::vector<cplx> g_jet(cplx xi, int order) const;

    // dh = dz cylinder data; g evaluation traces the curve, so prefer
    // trace_line for bulk sampling
    WeierstrassData cylinder_data() const;

    double main_line_x0() const; // mid-gap between the two end heights
    double vertical_period() const { return 2.0 * (params_.x_end_inf - params_.x_end_zero); }

    // RK4 step of the curve flow, exposed for path-walking helpers
    std::pair<cplx, cplx> advance_state(std::pair<cplx, cplx> state, cplx dxi,
                                        int steps) const;

private:
    RiemannExampleParams params_;
};

struct NormalizedFlux {
    WeierstrassData data;
    double scale = 1.0;
    double rotation = 0.0;
};

// Homothety + rotation about the x3 axis so the flux along the section
// becomes (h, 0, 1), h >= 0.
NormalizedFlux normalize_flux(const WeierstrassData& data, const Contour& section);

// Mesh of one fundamental band of the Riemann example in the cylinder chart
// (rows traced by the curve flow), for export and diagnostics.
weier::SurfaceMesh riemann_band_mesh(const RiemannChart& chart, int nu, int nv);

WeierstrassData by_name(const std::string& spec); // "plane", "catenoid", ...

} // namespace wlab::catalog

#endif
