#ifndef WLAB_SERIES_HPP
#define WLAB_SERIES_HPP

#include <complex>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

// Dense truncated Taylor series about 0, coefficient vector c[0..J].
using Series = std::vector<std::complex<double>>;

inline Series smul(const Series& a, const Series& b, std::size_t J) {
    Series r(J + 1, 0.0);
    for (std::size_t i = 0; i <= J && i < a.size(); ++i) {
        if (a[i] == std::complex<double>(0.0)) continue;
        for (std::size_t j = 0; i + j <= J && j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

inline Series sadd(const Series& a, const Series& b, std::size_t J) {
    Series r(J + 1, 0.0);
    for (std::size_t i = 0; i <= J; ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return r;
}

inline Series sscale(const Series& a, std::complex<double> c, std::size_t J) {
    Series r(J + 1, 0.0);
    for (std::size_t i = 0; i <= J && i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

// 1/a for a[0] != 0
inline Series srecip(const Series& a, std::size_t J) {
    if (a.empty() || a[0] == std::complex<double>(0.0))
        throw BadInput("series reciprocal needs a nonzero constant term");
    Series r(J + 1, 0.0);
    r[0] = 1.0 / a[0];
    for (std::size_t n = 1; n <= J; ++n) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k) s += a[k] * r[n - k];
        r[n] = -s / a[0];
    }
    return r;
}

// exp(a) for a[0] == 0, via r' = a' r
inline Series sexp(const Series& a, std::size_t J) {
    Series r(J + 1, 0.0);
    r[0] = 1.0;
    for (std::size_t n = 1; n <= J; ++n) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 1; k <= n && k < a.size(); ++k)
            s += static_cast<double>(k) * a[k] * r[n - k];
        r[n] = s / static_cast<double>(n);
    }
    if (!a.empty() && a[0] != std::complex<double>(0.0)) {
        const std::complex<double> e0 = std::exp(a[0]);
        for (auto& c : r) c *= e0;
    }
    return r;
}

// Taylor coefficients -> derivative jet (multiply by k!)
inline Series coeffs_to_jet(const Series& a, int order) {
    Series jet(static_cast<std::size_t>(order) + 1, 0.0);
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        if (static_cast<std::size_t>(k) < a.size()) jet[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(k)] * fact;
    }
    return jet;
}

} // namespace wlab

#endif
