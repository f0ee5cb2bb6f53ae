#ifndef WLAB_WEIERSTRASS_HPP
#define WLAB_WEIERSTRASS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wlab/complexkit.hpp"
#include "wlab/vec3.hpp"

namespace wlab::weier {

using complexkit::AnalyticFn;
using complexkit::Contour;
using complexkit::Singularity;
using complexkit::cplx;

enum class Chart { Plane, PuncturedPlane, Cylinder, EllipticDoubleCover };
enum class EndKind { Planar, Catenoidal, Helicoidal };

struct EndPoint {
    cplx location;
    EndKind kind = EndKind::Planar;
    int g_order = 0; // order of g at the end: +k zero, -k pole
};

// Analytic pair (g, phi) with dh = phi dz in the chart coordinate. Optional
// closed-form jet evaluators; without them derivatives of g fall back to
// Cauchy circle integrals of radius jet_radius.
struct WeierstrassData {
    AnalyticFn g;
    AnalyticFn phi;
    Chart chart = Chart::Plane;
    cplx base_point{0.0, 0.0};
    std::vector<EndPoint> ends;

    // points integration paths must stay clear of (ends, zeros/poles of g,
    // zeros of phi)
    std::vector<Singularity> guard;

    std::function<std::vector<cplx>(cplx, int)> gjet;
    double jet_radius = 0.25;
    bool finite_total_curvature = false;
    std::string name;

    std::vector<cplx> g_jet(cplx z, int order) const;
    double guard_distance(cplx z) const;
};

struct MeshVertex {
    cplx z;
    Vec3 position;
    Vec3 normal;
    double lambda = 0.0;
    double gauss_k = 0.0;
};

struct SurfaceMesh {
    int nu = 0, nv = 0; // grid dimensions (vertices)
    std::vector<MeshVertex> vertices; // row-major, index = j*nu + i
    // chart cell area element per vertex: |dz/d(param)|^2 * du * dv
    std::vector<double> cell_weight;

    const MeshVertex& at(int i, int j) const { return vertices[static_cast<std::size_t>(j) * nu + i]; }
    MeshVertex& at(int i, int j) { return vertices[static_cast<std::size_t>(j) * nu + i]; }
    std::size_t vertex_count() const { return vertices.size(); }
    void validate() const;
    double area() const;
};

struct GridSpec {
    double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
    int nu = 65, nv = 65;
    bool log_polar = false; // z = exp(u + i v); otherwise z = u + i v
};

struct FluxVector {
    Vec3 f;
    std::string homology_tag;
};

struct CyclePeriods {
    cplx dh_over_g;  // contour integral of phi/g dz
    cplx g_dh;       // contour integral of g phi dz
    double re_dh;    // Re contour integral of phi dz
    double closure_residual; // |conj(g_dh) - dh_over_g| + |re_dh|
};

struct PeriodReport {
    std::vector<CyclePeriods> cycles;
    std::vector<cplx> end_residues; // phi/g at zeros, g phi at poles
    double residual = 0.0;
};

struct EndFit {
    double a = 0.0, b = 0.0, c1 = 0.0, c2 = 0.0;
    double rms = 0.0;
};

struct SuperharmonicReport {
    double max_laplacian_f = 0.0;       // max of Delta(ln r - x3^2), expected <= 0
    double max_log_bound_violation = 0.0; // max of |Delta ln r| - |grad x3|^2 / r^2
};

struct JorgeMeeksReport {
    bool applicable = false;
    int deg = 0;
    int lhs_minus_rhs = 0;
};

// Weierstrass representation integrand (1/2(1/g - g), i/2(1/g + g), 1) phi.
// Components as analytic densities; used by immerse/flux/periods.
AnalyticFn rep_component(const WeierstrassData& data, int axis);

// X(target) - X(base) along the polyline path (must start at data.base_point
// and end at target).
Vec3 immerse(const WeierstrassData& data, cplx target, const Contour& path);

// Straight-segment immersion used by meshing; za -> zb must avoid guards.
Vec3 immerse_step(const WeierstrassData& data, cplx za, cplx zb);

struct MetricSample {
    double lambda;
    double gauss_k;
    Vec3 normal;
};

MetricSample metric_curvature(const WeierstrassData& data, cplx z);

SurfaceMesh build_mesh(const WeierstrassData& data, const GridSpec& spec);

// integral of K dA over the mesh region (independent of phi).
double total_curvature(const WeierstrassData& data, const SurfaceMesh& mesh);

// same integral straight from a chart rectangle, no immersion needed
double total_curvature_region(const WeierstrassData& data, const GridSpec& spec);

FluxVector flux(const WeierstrassData& data, const Contour& c,
                const std::string& tag = "");

PeriodReport period_report(const WeierstrassData& data,
                           const std::vector<Contour>& cycles);

WeierstrassData lopez_ros(const WeierstrassData& data, double lambda);
WeierstrassData associate(const WeierstrassData& data, double theta);

// Least-squares fit x3 = a log r + b + (c1 x1 + c2 x2)/r^2 over annulus
// samples; throws NotAGraph on multi-valued vertical projections.
EndFit end_fit(const std::vector<Vec3>& samples);

std::vector<std::pair<double, double>> ball_area_profile(
    const SurfaceMesh& mesh, const Vec3& center, const std::vector<double>& radii);

// Evaluates the conformal Laplacian of ln r - x3^2 and the bound
// |Delta ln r| <= |grad x3|^2 / r^2 over a chart rectangle, restricted to
// sample points with 0 <= x3 <= 1 and r >= r_min.
SuperharmonicReport superharmonic_check(const WeierstrassData& data,
                                        const GridSpec& spec, double r_min,
                                        const Vec3& origin_shift = {0, 0, 0});

JorgeMeeksReport jorge_meeks_check(const WeierstrassData& data, int genus, int ends);

} // namespace wlab::weier

#endif
