#ifndef WLAB_COMPLEXKIT_HPP
#define WLAB_COMPLEXKIT_HPP

#include <complex>
#include <functional>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab::complexkit {

using cplx = std::complex<double>;

// Default guard radius: quadrature refuses to run if a declared singularity
// sits closer than this to the path.
inline constexpr double kPoleGuard = 1e-3;

struct Singularity {
    cplx location;
    int order = 1; // pole order as declared by the caller
};

// A pure complex->complex evaluator plus the singularities the caller knows
// about. Evaluation must be deterministic; the quadrature code calls it from
// several threads at once.
class AnalyticFn {
public:
    using Eval = std::function<cplx(cplx)>;

    AnalyticFn() = default;
    explicit AnalyticFn(Eval f, std::vector<Singularity> sing = {})
        : eval_(std::move(f)), singularities_(std::move(sing)) {}

    cplx operator()(cplx z) const { return eval_(z); }
    const std::vector<Singularity>& singularities() const { return singularities_; }
    bool valid() const { return static_cast<bool>(eval_); }

    double nearest_singularity(cplx z) const;

private:
    Eval eval_;
    std::vector<Singularity> singularities_;
};

// Ordered polyline path. Closed contours must repeat the first point at the
// end (within machine tolerance); integrals over a closed polyline agree with
// the smooth curve it approximates as long as no singularity sits between
// the two, so circles are represented by their inscribed polygons.
struct Contour {
    std::vector<cplx> samples;
    bool closed = false;
    int orientation = +1;

    void validate() const;
    Contour reversed() const;
    double length() const;
};

Contour circle(cplx center, double radius, int n = 256);
Contour segment_path(const std::vector<cplx>& waypoints);

struct LaurentJet {
    cplx center;
    int m = 0;                   // coefficients c_{-m}..c_{+m}
    double radius = 0.0;
    std::vector<cplx> coeff;     // size 2m+1, index k+m

    cplx c(int k) const { return coeff[static_cast<std::size_t>(k + m)]; }
    // Tail decay proxy used as a numerical analyticity check.
    double tail_ratio() const;
};

// Adaptive Gauss-Kronrod integral of f over c with estimated error <= tol.
cplx contour_integrate(const AnalyticFn& f, const Contour& c, double tol = 1e-10,
                       double pole_guard = kPoleGuard);

// single straight segment, adaptive bisection; no singularity guard
cplx integrate_segment(const AnalyticFn& f, cplx a, cplx b, double tol = 1e-11);

// (1/2*pi*i) * integral of f over the circle |z - z0| = r.
cplx residue_at(const AnalyticFn& f, cplx z0, double r);

// Laurent coefficients c_{-m}..c_{+m} about z0 via trapezoid contour sums.
LaurentJet laurent_jet(const AnalyticFn& f, cplx z0, int m, double r,
                       int min_nodes = 256);

// Argument-principle count of zeros minus poles of f inside the closed
// contour c. Throws ZeroOnPath when |f| collapses on the path and
// NoConvergence when the winding estimate refuses to settle on an integer.
int count_zeros_poles(const AnalyticFn& f, const Contour& c);
double winding_number_raw(const AnalyticFn& f, const Contour& c);

// ---------------------------------------------------------------------------
// Periodic sampled lines and the spectral derivative.
// ---------------------------------------------------------------------------

// Grid of complex samples along z(s) = origin + direction * s, s in [0,1),
// with the sampled function 1-periodic in s. On the cylinder C/<i> the
// canonical choice is direction = i (a vertical line, periodic by deck
// transformation).
struct SampledLine {
    cplx origin{0.0, 0.0};
    cplx direction{0.0, 1.0};
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
    cplx point(std::size_t j) const {
        return origin + direction * (static_cast<double>(j) / static_cast<double>(values.size()));
    }
    void require_pow2() const;
};

// In-place radix-2 FFT (inverse = true applies 1/N normalization).
void fft(std::vector<cplx>& a, bool inverse);

std::vector<cplx> fft_forward(const std::vector<cplx>& a);
std::vector<cplx> fft_inverse(const std::vector<cplx>& a);

// Fraction of spectral energy in the top third of the band.
double spectral_tail_energy(const std::vector<cplx>& values);

// d^order/dz^order along the line via the discrete Fourier transform.
// Throws AliasingDetected when the top-third spectral energy exceeds
// 1e-10 of the total.
SampledLine spectral_derivative(const SampledLine& line, int order,
                                double alias_tol = 1e-10);

// Analytic continuation of the sampled function off the line,
// f(z) = sum_k c_k exp(2*pi*i*k*s(z)), valid inside the strip bounded by the
// nearest singularity. Modes below `filter` (relative) are dropped.
cplx continue_off_line(const SampledLine& line, cplx z, double filter = 1e-15);

} // namespace wlab::complexkit

#endif
