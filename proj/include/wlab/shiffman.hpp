#ifndef WLAB_SHIFFMAN_HPP
#define WLAB_SHIFFMAN_HPP

#include <functional>
#include <string>
#include <vector>

#include "wlab/complexkit.hpp"
#include "wlab/weierstrass.hpp"

namespace wlab::shiffman {

using complexkit::AnalyticFn;
using complexkit::Contour;
using complexkit::SampledLine;
using complexkit::cplx;
using weier::WeierstrassData;

// All operations here assume the dh = dz gauge: data.phi must be the
// constant 1. Constructors below throw BadInput otherwise.

struct JacobiField {
    SampledLine line; // geometry + field values
    enum class Kind { Real, Complexified } kind = Kind::Real;

    void validate() const;
};

// field sampled over a direct-chart rectangle
struct GridField {
    weier::GridSpec spec;
    std::vector<cplx> values; // row-major nu*nv

    cplx z_at(int i, int j) const {
        const double du = (spec.u1 - spec.u0) / (spec.nu - 1);
        const double dv = (spec.v1 - spec.v0) / (spec.nv - 1);
        return {spec.u0 + du * i, spec.v0 + dv * j};
    }
};

// h functions entering the correspondence h -> (gdot(h), f(h)); jets are
// rational expressions of g and its derivatives.
struct HFunction {
    enum class Provenance { User, ShiffmanH, OneOverG, LinearCombo } provenance =
        Provenance::User;
    // returns (h, h', ..., h^(order)) at z
    std::function<std::vector<cplx>(cplx, int)> jet;
};

HFunction h_one_over_g(const WeierstrassData& data);
HFunction h_over_g2(const WeierstrassData& data, cplx c1, cplx c2); // c1 + c2/g^2
HFunction h_shiffman(const WeierstrassData& data); // (i/2) g'^2 / g^3

SampledLine vertical_line(double x0, int n); // geometry only, cylinder line

void require_dz_gauge(const WeierstrassData& data);

// curvature of the level curve x3 = c as a function of y
std::vector<double> planar_curvature(const WeierstrassData& data, double c,
                                     const std::vector<double>& ys);

// Shiffman function S on the sampled line (real Jacobi field)
JacobiField shiffman_function(const WeierstrassData& data, const SampledLine& geometry);

// max |v_zzbar + 2|g'|^2/(1+|g|^2)^2 v| over interior grid points
double jacobi_residual(const WeierstrassData& data, const GridField& v);

// infinitesimal deformation gdot(h) = (g^3 h' / (2 g'))'
AnalyticFn gdot(const HFunction& h, const WeierstrassData& data);

// complexified Jacobi field f(h) = g^2 h'/g' + 2 g h/(1+|g|^2)
JacobiField f_of_h(const HFunction& h, const WeierstrassData& data,
                   const SampledLine& geometry);

// Montiel-Ros map X_v = v N + (1/|N_z|^2)(v_z N_zbar + v_zbar N_z)
std::vector<Vec3> montiel_ros(const WeierstrassData& data, const GridField& v);

// support function recovery <X_v, N> (same stencils), for the inverse check
std::vector<double> montiel_ros_support(const WeierstrassData& data, const GridField& v);

struct TangentCheck {
    bool pass = false;
    std::vector<std::pair<cplx, int>> end_orders; // location, measured order
};

// divisor condition for membership in the tangent space at g: order >= 1 at
// zeros p_j of g and >= -3 at poles q_j
TangentCheck tangent_check(const AnalyticFn& candidate, const WeierstrassData& data);

struct KernelFlux {
    cplx over_g2; // contour integral of gdot / g^2 dz
    cplx plain;   // contour integral of gdot dz
};

KernelFlux kernel_flux_check(const AnalyticFn& gdot_fn, const WeierstrassData& data,
                             const Contour& gamma);

// CSV dump (y, Re v, Im v, residual)
std::string jacobi_field_csv(const JacobiField& field,
                             const std::vector<double>& residuals);

} // namespace wlab::shiffman

#endif
