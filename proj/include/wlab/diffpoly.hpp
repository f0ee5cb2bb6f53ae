#ifndef WLAB_DIFFPOLY_HPP
#define WLAB_DIFFPOLY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "wlab/bigint.hpp"
#include "wlab/errors.hpp"

namespace wlab::diffpoly {

using cplx = std::complex<double>;

// Monomial key: derivative order -> power, powers >= 1. The exact rational
// coefficient lives in the owning polynomial. weight(u^(k)) = k + 2, so the
// KdV recurrence is weight homogeneous.
using MonoKey = std::map<int, int>;

int mono_weight(const MonoKey& key);
int mono_max_order(const MonoKey& key);
int mono_degree(const MonoKey& key);

class DiffPoly {
public:
    DiffPoly() = default;
    static DiffPoly constant(Rat c);
    static DiffPoly monomial(Rat c, const MonoKey& key);
    // the variable u^(k)
    static DiffPoly var(int k, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<MonoKey, Rat>& terms() const { return terms_; }
    int max_order() const;

    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly operator-() const;
    DiffPoly scaled(const Rat& c) const;

    bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    // d/dz via Leibniz: every u^(k) factor steps to u^(k+1).
    DiffPoly total_derivative() const;
    // formal partial derivative with respect to u^(k)
    DiffPoly partial_wrt(int k) const;

    // Serialized form used by the CLI and golden tests, e.g. "u'' + 3*u^2".
    std::string to_string() const;

    void add_term(const MonoKey& key, const Rat& c);

private:
    std::map<MonoKey, Rat> terms_;
};

DiffPoly total_derivative(const DiffPoly& p);

// Exact inverse of total_derivative; throws NotExact when p is not a total
// derivative. Integration constant is fixed to zero.
DiffPoly formal_integrate(const DiffPoly& p);

// KdV hierarchy operator P_n, generated by
//   dz P_{n+1} = (dzzz + 4 u dz + 2 u') P_n,   P_0 = 1/2.
DiffPoly kdv_P(int n, int max_n = 6);

// Right-hand side of the n-th hierarchy flow: -dz P_{n+1}(u).
DiffPoly flow_rhs(int n, int max_n = 6);

// Formal commutator dt_j(flow_rhs(k)) - dt_k(flow_rhs(j)), with time
// derivatives of u substituted by the flows themselves. Zero for a
// commuting hierarchy.
DiffPoly mixed_flow_commutator(int j, int k);

// Derivative of p along the flow du/dt = rhs.
DiffPoly flow_derivative(const DiffPoly& p, const DiffPoly& rhs);

// Pointwise evaluation on jets (u, u', ..., u^(K)) per sample.
std::vector<cplx> evaluate(const DiffPoly& p,
                           const std::vector<std::vector<cplx>>& jets);

} // namespace wlab::diffpoly

#endif
