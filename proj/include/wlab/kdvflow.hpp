#ifndef WLAB_KDVFLOW_HPP
#define WLAB_KDVFLOW_HPP

#include <functional>
#include <string>
#include <vector>

#include "wlab/complexkit.hpp"
#include "wlab/diffpoly.hpp"
#include "wlab/weierstrass.hpp"

namespace wlab::kdvflow {

using complexkit::AnalyticFn;
using complexkit::SampledLine;
using complexkit::cplx;
using weier::WeierstrassData;

// ---------------------------------------------------------------------------
// pointwise changes of variables
// ---------------------------------------------------------------------------

// KdV potential u = -3 (g'/g)^2 / 4 + g''/(2g) sampled along the line.
SampledLine u_from_g(const WeierstrassData& data, const SampledLine& geometry);

// max |u - (x'/2 - x^2/4)| with x = g'/g; x' taken spectrally along the
// line so the check crosses two derivative routes.
double miura_consistency(const WeierstrassData& data, const SampledLine& geometry);

struct SchrodingerReport {
    double residual = 0.0;     // max |y'' + u y|
    cplx floquet_ratio{1.0};   // y(s+1)/y(s) along the line
    bool antiperiodic = false; // ratio == -1 branch engaged
};

// y = g^{-1/2} by continuity along the line; y'' spectral with the measured
// Floquet twist, u from jets. Reports the anti-periodic branch when g winds
// an odd number of times.
SchrodingerReport schrodinger_check(const WeierstrassData& data,
                                    const SampledLine& geometry);

// ---------------------------------------------------------------------------
// spectral time stepping
// ---------------------------------------------------------------------------

// du/dt = -mu (u''' + 6 u u') via ETDRK4; mu = 1 is the real KdV harness,
// mu = -i/2 drives the canonical Shiffman gauge.
SampledLine kdv_evolve(const SampledLine& u0, double T, double dt, cplx mu,
                       double blowup_factor = 1e3);

inline SampledLine kdv_real_evolve(const SampledLine& u0, double T, double dt) {
    return kdv_evolve(u0, T, dt, cplx(1.0, 0.0));
}

// hierarchy flow n = 0 (du/dt = -mu u'): exact per-mode integration
SampledLine flow0_evolve(const SampledLine& u0, double T, cplx mu = cplx(1.0, 0.0));

cplx line_mean(const SampledLine& line);

// derivative along the line for data with a multiplicative Floquet twist
// y(s+1) = ratio * y(s)
std::vector<cplx> floquet_derivative(const std::vector<cplx>& values, cplx direction,
                                     cplx ratio, int order);

// ---------------------------------------------------------------------------
// Shiffman flow (coupled u / y system with a direct-g cross check)
// ---------------------------------------------------------------------------

struct ShiffmanFlowOptions {
    double T = 0.05;
    double dt = 2.5e-5;
    cplx gauge{0.0, 0.5};        // dg/dt = gauge * (g''' - 3g'g''/g + 1.5 g'^3/g^2)
    int n = 256;                 // samples per line
    double aux_offset = 0.22;    // tracker bracket half width
    double local_err_tol = 1e-8; // step acceptance on the probe line
    int log_every = 50;
};

struct FlowSetup {
    // g samples on the vertical line Re z = x0 (n equally spaced in y)
    std::function<std::vector<cplx>(double, int)> g_on_line;
    double main_x0 = 0.0;
    cplx pole_seed_u{0.0, 0.5}; // double zero of g = pole of u
    cplx zero_seed_y{0.0, 0.0}; // double pole of g = zero of y
    cplx conserved_dz_over_g{0.0};
    cplx conserved_g_dz{0.0};
};

struct PoleSample {
    double t = 0.0;
    cplx z0{0.0};
    cplx c_m2{0.0};
    cplx c_m1{0.0};
};

struct ShiffmanFlowResult {
    SampledLine u_final, g_direct_final, y_final;
    std::vector<PoleSample> pole_track; // pole of u (zero of g)
    std::vector<PoleSample> zero_track; // zero of y (pole of g); c_* unused
    double max_route_discrepancy = 0.0;
    double max_conserved_drift = 0.0;
    double max_pole_spacing_drift = 0.0;
    double max_c_m2_deviation = 0.0; // sup_t |c_m2(t) + 2|
    std::string step_log_csv;
};

ShiffmanFlowResult shiffman_evolve(const FlowSetup& setup,
                                   const ShiffmanFlowOptions& opt);

// ---------------------------------------------------------------------------
// pole propagation for analytic u families
// ---------------------------------------------------------------------------

struct PoleTrack {
    std::vector<PoleSample> samples;
};

PoleTrack pole_propagation(const std::function<AnalyticFn(double)>& family,
                           const std::vector<double>& times, cplx seed,
                           double radius, double jump_tol = 0.25);

// ---------------------------------------------------------------------------
// algebro-geometric dependence test
// ---------------------------------------------------------------------------

struct RankReport {
    int rank = 0;
    bool deficient = false;
    int first_dependent = -1; // smallest n with flow_n in the span of lower flows
    std::vector<cplx> coefficients;
    double dependency_residual = 0.0; // relative to the leading singular value
    std::vector<double> singular_values;
};

// jets per sample: (u, u', ..., u^(K)), K >= 2 n_max + 1
RankReport algebro_geometric_rank(const std::vector<std::vector<cplx>>& jets,
                                  int n_max, double threshold = 1e-8);

// spectral jets from a periodic line sample
std::vector<std::vector<cplx>> spectral_jets(const SampledLine& u, int order);

// binary dump of a line: uint64 N, then 2N little-endian float64 re/im pairs
std::string line_blob(const SampledLine& line);

} // namespace wlab::kdvflow

#endif
