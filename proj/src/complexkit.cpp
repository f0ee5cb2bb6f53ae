#include "wlab/complexkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "wlab/parallel.hpp"

namespace wlab::complexkit {

namespace {

constexpr double kPi = std::numbers::pi;

// QUADPACK dqk15 nodes and weights.
constexpr std::array<double, 8> kXgk = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472782};
constexpr std::array<double, 4> kWg = {
    0.12948496616886969, 0.27970539148927666, 0.38183005050511894,
    0.41795918367346938};

struct GkResult {
    cplx value;
    double error;
};

GkResult gk15(const AnalyticFn& f, cplx a, cplx b) {
    const cplx center = 0.5 * (a + b);
    const cplx half = 0.5 * (b - a);
    cplx resg = 0.0, resk = 0.0;
    // center point
    const cplx fc = f(center);
    resg += kWg[3] * fc;
    resk += kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const cplx f1 = f(center - half * kXgk[j]);
        const cplx f2 = f(center + half * kXgk[j]);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double hl = std::abs(half);
    GkResult r;
    r.value = resk * half;
    r.error = std::abs(resk - resg) * hl;
    return r;
}

double point_segment_distance(cplx p, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) / ab).real();
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

} // namespace

double AnalyticFn::nearest_singularity(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : singularities_) best = std::min(best, std::abs(z - s.location));
    return best;
}

void Contour::validate() const {
    if (samples.size() < 8) throw BadInput("contour needs at least 8 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i] == samples[i - 1])
            throw BadInput("consecutive contour samples coincide");
    }
    if (closed) {
        const double scale = 1.0 + std::abs(samples.front());
        if (std::abs(samples.front() - samples.back()) > 1e-12 * scale)
            throw BadInput("closed contour does not return to its start");
    }
    if (orientation != 1 && orientation != -1) throw BadInput("orientation must be +-1");
}

// Same geometric path, declared to be traversed the other way.
Contour Contour::reversed() const {
    Contour r = *this;
    r.orientation = -orientation;
    return r;
}

double Contour::length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) len += std::abs(samples[i] - samples[i - 1]);
    return len;
}

Contour circle(cplx center, double radius, int n) {
    Contour c;
    c.closed = true;
    c.samples.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        c.samples.push_back(center + radius * cplx(std::cos(th), std::sin(th)));
    }
    c.samples.back() = c.samples.front();
    return c;
}

Contour segment_path(const std::vector<cplx>& waypoints) {
    Contour c;
    if (waypoints.size() < 2) throw BadInput("segment_path needs two waypoints");
    // resample each leg so the contour carries enough points for validate()
    for (std::size_t i = 0; i + 1 < waypoints.size(); ++i) {
        const int sub = 8;
        for (int j = 0; j < sub; ++j) {
            const double t = static_cast<double>(j) / sub;
            c.samples.push_back(waypoints[i] + t * (waypoints[i + 1] - waypoints[i]));
        }
    }
    c.samples.push_back(waypoints.back());
    c.closed = std::abs(waypoints.front() - waypoints.back()) <
               1e-12 * (1.0 + std::abs(waypoints.front()));
    return c;
}

double LaurentJet::tail_ratio() const {
    // compare |c_k| r^k over the upper half of the positive range
    double head = 0.0, tail = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double mag = std::abs(c(k)) * std::pow(radius, k);
        if (k <= m / 2) head += mag; else tail += mag;
    }
    return head > 0.0 ? tail / head : 0.0;
}

cplx integrate_segment(const AnalyticFn& f, cplx a, cplx b, double tol) {
    struct Item { cplx a, b; int depth; };
    std::vector<Item> stack{{a, b, 0}};
    cplx acc = 0.0;
    int budget = 4000;
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const GkResult r = gk15(f, it.a, it.b);
        if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
            throw SingularityOnPath("non-finite integrand value on segment");
        if (r.error <= tol * 0.25 || it.depth >= 40) {
            acc += r.value;
            continue;
        }
        if (--budget <= 0) throw NoConvergence("segment refinement budget exhausted");
        const cplx mid = 0.5 * (it.a + it.b);
        stack.push_back({it.a, mid, it.depth + 1});
        stack.push_back({mid, it.b, it.depth + 1});
    }
    return acc;
}

cplx contour_integrate(const AnalyticFn& f, const Contour& c, double tol,
                       double pole_guard) {
    c.validate();
    if (!f.valid()) throw BadInput("empty evaluator");

    const std::size_t nseg = c.samples.size() - 1;
    for (const auto& s : f.singularities()) {
        for (std::size_t i = 0; i < nseg; ++i) {
            if (point_segment_distance(s.location, c.samples[i], c.samples[i + 1]) < pole_guard)
                throw SingularityOnPath("declared singularity within pole_guard of path");
        }
    }

    const double seg_tol = tol / static_cast<double>(nseg);
    std::vector<cplx> partial(nseg, cplx(0.0));
    std::vector<double> errors(nseg, 0.0);
    std::vector<int> failed(nseg, 0);

    parallel_for(nseg, [&](std::size_t i) {
        // local adaptive bisection stack for one polyline segment
        struct Item { cplx a, b; int depth; };
        std::vector<Item> stack{{c.samples[i], c.samples[i + 1], 0}};
        cplx acc = 0.0;
        double err = 0.0;
        int budget = 4000;
        while (!stack.empty()) {
            const Item it = stack.back();
            stack.pop_back();
            const GkResult r = gk15(f, it.a, it.b);
            if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
                failed[i] = 2;
                return;
            }
            if (r.error <= seg_tol * 0.5 || it.depth >= 40) {
                acc += r.value;
                err += r.error;
                continue;
            }
            if (--budget <= 0) {
                failed[i] = 1;
                return;
            }
            const cplx mid = 0.5 * (it.a + it.b);
            stack.push_back({it.a, mid, it.depth + 1});
            stack.push_back({mid, it.b, it.depth + 1});
        }
        partial[i] = acc;
        errors[i] = err;
    });

    cplx total = 0.0;
    double err_total = 0.0;
    for (std::size_t i = 0; i < nseg; ++i) {
        if (failed[i] == 1) throw NoConvergence("quadrature refinement budget exhausted");
        if (failed[i] == 2) throw SingularityOnPath("non-finite integrand value on path");
        total += partial[i];
        err_total += errors[i];
    }
    if (err_total > tol * 10.0 + 1e-14)
        throw NoConvergence("accumulated quadrature error above tolerance");
    return static_cast<double>(c.orientation) * total;
}

cplx residue_at(const AnalyticFn& f, cplx z0, double r) {
    if (r <= 0.0) throw BadInput("residue radius must be positive");
    int inside = 0;
    for (const auto& s : f.singularities()) {
        if (std::abs(s.location - z0) < r * (1.0 - 1e-9)) ++inside;
    }
    if (inside > 1)
        throw MultipleSingularities("more than one declared singularity inside residue circle");
    const cplx integral = contour_integrate(f, circle(z0, r), 1e-12, 0.0);
    return integral / cplx(0.0, 2.0 * kPi);
}

LaurentJet laurent_jet(const AnalyticFn& f, cplx z0, int m, double r, int min_nodes) {
    if (m < 0 || r <= 0.0) throw BadInput("laurent_jet needs m >= 0 and r > 0");
    int n = min_nodes;
    while (n < 8 * (2 * m + 1)) n *= 2;
    std::vector<cplx> samples(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        const cplx z = z0 + r * cplx(std::cos(th), std::sin(th));
        const cplx v = f(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NoConvergence("non-finite sample on laurent circle");
        samples[static_cast<std::size_t>(j)] = v;
    }
    std::vector<cplx> hat = fft_forward(samples);
    LaurentJet jet;
    jet.center = z0;
    jet.m = m;
    jet.radius = r;
    jet.coeff.resize(static_cast<std::size_t>(2 * m + 1));
    for (int k = -m; k <= m; ++k) {
        const int idx = (k % n + n) % n;
        jet.coeff[static_cast<std::size_t>(k + m)] =
            hat[static_cast<std::size_t>(idx)] / (static_cast<double>(n) * std::pow(r, k));
    }
    return jet;
}

double winding_number_raw(const AnalyticFn& f, const Contour& c) {
    c.validate();
    if (!c.closed) throw BadInput("winding number needs a closed contour");

    double total = 0.0;
    // refine each chord until the argument increment is resolved
    std::function<double(cplx, cplx, cplx, cplx, int)> walk =
        [&](cplx za, cplx zb, cplx fa, cplx fb, int depth) -> double {
        const double ma = std::abs(fa), mb = std::abs(fb);
        if (ma < 1e-14 || mb < 1e-14) throw ZeroOnPath("|f| vanishes on contour");
        const double dphi = std::arg(fb / fa);
        if (std::abs(dphi) < kPi / 3.0 && depth > 0) return dphi;
        if (depth >= 30) throw NoConvergence("winding refinement depth exhausted");
        const cplx zm = 0.5 * (za + zb);
        const cplx fm = f(zm);
        return walk(za, zm, fa, fm, depth + 1) + walk(zm, zb, fm, fb, depth + 1);
    };

    std::vector<cplx> vals(c.samples.size());
    for (std::size_t i = 0; i < c.samples.size(); ++i) vals[i] = f(c.samples[i]);
    for (std::size_t i = 0; i + 1 < c.samples.size(); ++i)
        total += walk(c.samples[i], c.samples[i + 1], vals[i], vals[i + 1], 0);
    return static_cast<double>(c.orientation) * total / (2.0 * kPi);
}

int count_zeros_poles(const AnalyticFn& f, const Contour& c) {
    const double w = winding_number_raw(f, c);
    const double nearest = std::round(w);
    if (std::abs(w - nearest) > 0.1)
        throw NoConvergence("winding estimate is not integer-stable");
    return static_cast<int>(nearest);
}

void SampledLine::require_pow2() const {
    const std::size_t n = values.size();
    if (n < 2 || (n & (n - 1)) != 0) throw BadInput("sample count must be a power of two");
}

void fft(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw BadInput("fft size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

std::vector<cplx> fft_forward(const std::vector<cplx>& a) {
    std::vector<cplx> r = a;
    fft(r, false);
    return r;
}

std::vector<cplx> fft_inverse(const std::vector<cplx>& a) {
    std::vector<cplx> r = a;
    fft(r, true);
    return r;
}

double spectral_tail_energy(const std::vector<cplx>& values) {
    std::vector<cplx> hat = fft_forward(values);
    const std::size_t n = hat.size();
    double total = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int k = (i <= n / 2) ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
        const double e = std::norm(hat[i]);
        total += e;
        if (std::abs(k) >= static_cast<int>(n) / 3) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

SampledLine spectral_derivative(const SampledLine& line, int order, double alias_tol) {
    line.require_pow2();
    if (order < 1 || order > 4) throw BadInput("derivative order must be 1..4");
    if (spectral_tail_energy(line.values) > alias_tol)
        throw AliasingDetected("top-third spectral energy above threshold");

    std::vector<cplx> hat = fft_forward(line.values);
    const std::size_t n = hat.size();
    const cplx dzds = line.direction;
    for (std::size_t i = 0; i < n; ++i) {
        int k = (i <= n / 2) ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
        if (i == n / 2 && order % 2 == 1) {
            hat[i] = 0.0; // unmatched Nyquist mode
            continue;
        }
        const cplx fac = cplx(0.0, 2.0 * kPi * k) / dzds;
        cplx mult = 1.0;
        for (int p = 0; p < order; ++p) mult *= fac;
        hat[i] *= mult;
    }
    SampledLine out = line;
    out.values = fft_inverse(hat);
    return out;
}

// Continuation accuracy is limited by the strip: expect roughly
// eps^(1 - delta/d) where delta is the offset and d the distance to the
// nearest singularity.
cplx continue_off_line(const SampledLine& line, cplx z, double filter) {
    line.require_pow2();
    std::vector<cplx> hat = fft_forward(line.values);
    const std::size_t n = hat.size();
    double maxmag = 0.0;
    for (const auto& h : hat) maxmag = std::max(maxmag, std::abs(h));
    const double cut = maxmag * filter;
    const cplx s = (z - line.origin) / line.direction; // complex parameter
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int k = (i <= n / 2) ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
        const cplx h = hat[i] / static_cast<double>(n);
        if (std::abs(h) * static_cast<double>(n) < cut) continue;
        acc += h * std::exp(cplx(0.0, 2.0 * kPi * k) * s);
    }
    return acc;
}

} // namespace wlab::complexkit
