#include "wlab/shiffman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wlab/mesh_io.hpp"
#include "wlab/parallel.hpp"

namespace wlab::shiffman {

void JacobiField::validate() const {
    for (const auto& v : line.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error("non-finite Jacobi field sample");
        if (kind == Kind::Real && std::abs(v.imag()) > 1e-12)
            throw Error("real Jacobi field with imaginary part");
    }
}

void require_dz_gauge(const WeierstrassData& data) {
    // spot-check that phi == 1; the Shiffman formulas are stated in this gauge
    for (const cplx probe : {cplx(0.07, 0.13), cplx(-0.21, 0.41)}) {
        if (std::abs(data.phi(probe) - 1.0) > 1e-12)
            throw BadInput("Shiffman operations need the dh = dz chart; re-chart first");
    }
}

SampledLine vertical_line(double x0, int n) {
    SampledLine line;
    line.origin = cplx(x0, 0.0);
    line.direction = cplx(0.0, 1.0);
    line.values.assign(static_cast<std::size_t>(n), cplx(0.0));
    return line;
}

std::vector<double> planar_curvature(const WeierstrassData& data, double c,
                                     const std::vector<double>& ys) {
    require_dz_gauge(data);
    std::vector<double> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const cplx z(c, ys[i]);
        if (data.guard_distance(z) < 1e-6)
            throw SingularityOnLevel("level line passes through a singular point");
        const auto jet = data.g_jet(z, 1);
        const cplx g = jet[0];
        const double ag = std::abs(g);
        if (ag < 1e-12 || ag > 1e12)
            throw SingularityOnLevel("Gauss map degenerate on level line");
        out[i] = ag / (1.0 + ag * ag) * (jet[1] / g).real();
    }
    return out;
}

namespace {

double shiffman_value(const WeierstrassData& data, cplx z) {
    const auto jet = data.g_jet(z, 2);
    const cplx g = jet[0];
    const cplx L = jet[1] / g;
    const double ag2 = std::norm(g);
    const cplx val = 1.5 * L * L - jet[2] / g - (L * L) / (1.0 + ag2);
    return val.imag();
}

} // namespace

JacobiField shiffman_function(const WeierstrassData& data, const SampledLine& geometry) {
    require_dz_gauge(data);
    JacobiField out;
    out.kind = JacobiField::Kind::Real;
    out.line = geometry;
    const std::size_t n = geometry.values.size();
    if (n == 0) throw BadInput("empty line geometry");
    out.line.values.resize(n);
    std::vector<int> bad(n, 0);
    parallel_for(n, [&](std::size_t j) {
        const cplx z = geometry.point(j);
        if (data.guard_distance(z) < 1e-6) {
            bad[j] = 1;
            return;
        }
        out.line.values[j] = shiffman_value(data, z);
    });
    for (int b : bad)
        if (b) throw SingularityOnLine("line passes through a singular point");
    out.validate();
    return out;
}

namespace {

// 4th order first and second central differences along a stride
cplx d1_stencil(const cplx* v, std::ptrdiff_t s, double h) {
    return (v[-2 * s] - 8.0 * v[-s] + 8.0 * v[s] - v[2 * s]) / (12.0 * h);
}
cplx d2_stencil(const cplx* v, std::ptrdiff_t s, double h) {
    return (-v[-2 * s] + 16.0 * v[-s] - 30.0 * v[0] + 16.0 * v[s] - v[2 * s]) /
           (12.0 * h * h);
}

} // namespace

double jacobi_residual(const WeierstrassData& data, const GridField& v) {
    require_dz_gauge(data);
    const int nu = v.spec.nu, nv = v.spec.nv;
    if (static_cast<std::size_t>(nu) * nv != v.values.size())
        throw BadInput("grid field size mismatch");
    if (nu < 5 || nv < 5) throw BadInput("grid too small for 4th order stencils");
    const double du = (v.spec.u1 - v.spec.u0) / (nu - 1);
    const double dv = (v.spec.v1 - v.spec.v0) / (nv - 1);
    double worst = 0.0;
    for (int j = 2; j < nv - 2; ++j) {
        for (int i = 2; i < nu - 2; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * nu + i;
            const cplx lap = d2_stencil(&v.values[idx], 1, du) +
                             d2_stencil(&v.values[idx], nu, dv);
            const cplx vzzbar = 0.25 * lap;
            const auto jet = data.g_jet(v.z_at(i, j), 1);
            const double ag2 = std::norm(jet[0]);
            const double q = 2.0 * std::norm(jet[1]) / ((1.0 + ag2) * (1.0 + ag2));
            worst = std::max(worst, std::abs(vzzbar + q * v.values[idx]));
        }
    }
    return worst;
}

HFunction h_one_over_g(const WeierstrassData& data) {
    HFunction h;
    h.provenance = HFunction::Provenance::OneOverG;
    h.jet = [data](cplx z, int order) {
        const auto g = data.g_jet(z, order);
        std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
        const cplx g0 = g[0];
        out[0] = 1.0 / g0;
        if (order >= 1) out[1] = -g[1] / (g0 * g0);
        if (order >= 2) out[2] = -g[2] / (g0 * g0) + 2.0 * g[1] * g[1] / (g0 * g0 * g0);
        if (order >= 3) throw BadInput("h jet order not implemented");
        return out;
    };
    return h;
}

HFunction h_over_g2(const WeierstrassData& data, cplx c1, cplx c2) {
    HFunction h;
    h.provenance = HFunction::Provenance::LinearCombo;
    h.jet = [data, c1, c2](cplx z, int order) {
        const auto g = data.g_jet(z, order);
        std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
        const cplx g0 = g[0];
        const cplx ig2 = 1.0 / (g0 * g0);
        out[0] = c1 + c2 * ig2;
        if (order >= 1) out[1] = -2.0 * c2 * g[1] * ig2 / g0;
        if (order >= 2)
            out[2] = -2.0 * c2 * (g[2] * ig2 / g0 - 3.0 * g[1] * g[1] * ig2 / (g0 * g0));
        if (order >= 3) throw BadInput("h jet order not implemented");
        return out;
    };
    return h;
}

HFunction h_shiffman(const WeierstrassData& data) {
    HFunction h;
    h.provenance = HFunction::Provenance::ShiffmanH;
    h.jet = [data](cplx z, int order) {
        const auto g = data.g_jet(z, order + 1);
        std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
        const cplx g0 = g[0];
        const cplx half_i(0.0, 0.5);
        const cplx g3 = g0 * g0 * g0;
        out[0] = half_i * g[1] * g[1] / g3;
        if (order >= 1)
            out[1] = half_i * (2.0 * g[1] * g[2] / g3 - 3.0 * g[1] * g[1] * g[1] / (g3 * g0));
        if (order >= 2)
            out[2] = half_i * (2.0 * g[2] * g[2] / g3 + 2.0 * g[1] * g[3] / g3 -
                               15.0 * g[1] * g[1] * g[2] / (g3 * g0) +
                               12.0 * g[1] * g[1] * g[1] * g[1] / (g3 * g0 * g0));
        if (order >= 3) throw BadInput("h jet order not implemented");
        return out;
    };
    return h;
}

AnalyticFn gdot(const HFunction& h, const WeierstrassData& data) {
    auto hjet = h.jet;
    auto gj = [data](cplx z, int k) { return data.g_jet(z, k); };
    return AnalyticFn(
        [hjet, gj](cplx z) {
            const auto g = gj(z, 2);
            const auto hv = hjet(z, 2);
            // (g^3 h' / (2 g'))' expanded by the product rule
            const cplx g0 = g[0], g1 = g[1], g2 = g[2];
            return (3.0 * g0 * g0 * g1 * hv[1] + g0 * g0 * g0 * hv[2]) / (2.0 * g1) -
                   g0 * g0 * g0 * hv[1] * g2 / (2.0 * g1 * g1);
        },
        data.guard);
}

JacobiField f_of_h(const HFunction& h, const WeierstrassData& data,
                   const SampledLine& geometry) {
    require_dz_gauge(data);
    JacobiField out;
    out.kind = JacobiField::Kind::Complexified;
    out.line = geometry;
    const std::size_t n = geometry.values.size();
    out.line.values.resize(n);
    std::vector<int> bad(n, 0);
    parallel_for(n, [&](std::size_t j) {
        const cplx z = geometry.point(j);
        if (data.guard_distance(z) < 1e-6) {
            bad[j] = 1;
            return;
        }
        const auto g = data.g_jet(z, 1);
        const auto hv = h.jet(z, 1);
        out.line.values[j] =
            g[0] * g[0] * hv[1] / g[1] + 2.0 * g[0] * hv[0] / (1.0 + std::norm(g[0]));
    });
    for (int b : bad)
        if (b) throw SingularityOnLine("line passes through a singular point");
    out.validate();
    return out;
}

namespace {

struct NormalGrid {
    int nu, nv;
    double du, dv;
    std::vector<Vec3> normal;
};

NormalGrid normal_grid(const WeierstrassData& data, const weier::GridSpec& spec) {
    NormalGrid grid;
    grid.nu = spec.nu;
    grid.nv = spec.nv;
    grid.du = (spec.u1 - spec.u0) / (spec.nu - 1);
    grid.dv = (spec.v1 - spec.v0) / (spec.nv - 1);
    grid.normal.resize(static_cast<std::size_t>(spec.nu) * spec.nv);
    for (int j = 0; j < spec.nv; ++j) {
        for (int i = 0; i < spec.nu; ++i) {
            const cplx z(spec.u0 + grid.du * i, spec.v0 + grid.dv * j);
            const auto jet = data.g_jet(z, 1);
            if (std::abs(jet[1]) < 1e-10)
                throw BranchPointOnGrid("grid touches a branch point of the Gauss map");
            const cplx g = jet[0];
            const double den = 1.0 + std::norm(g);
            grid.normal[static_cast<std::size_t>(j) * spec.nu + i] = {
                2.0 * g.real() / den, 2.0 * g.imag() / den, (std::norm(g) - 1.0) / den};
        }
    }
    return grid;
}

struct Cplx3 {
    cplx x, y, z;
};

} // namespace

std::vector<Vec3> montiel_ros(const WeierstrassData& data, const GridField& v) {
    const NormalGrid grid = normal_grid(data, v.spec);
    const int nu = grid.nu, nv = grid.nv;
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(nu - 4) * (nv - 4));

    // componentwise complex copies of N for stencil work
    std::vector<cplx> Nx(grid.normal.size()), Ny(grid.normal.size()), Nz(grid.normal.size());
    for (std::size_t k = 0; k < grid.normal.size(); ++k) {
        Nx[k] = grid.normal[k].x;
        Ny[k] = grid.normal[k].y;
        Nz[k] = grid.normal[k].z;
    }
    auto dz_of = [&](const std::vector<cplx>& f, std::size_t idx) {
        const cplx fx = d1_stencil(&f[idx], 1, grid.du);
        const cplx fy = d1_stencil(&f[idx], nu, grid.dv);
        return 0.5 * (fx - cplx(0.0, 1.0) * fy);
    };
    auto dzbar_of = [&](const std::vector<cplx>& f, std::size_t idx) {
        const cplx fx = d1_stencil(&f[idx], 1, grid.du);
        const cplx fy = d1_stencil(&f[idx], nu, grid.dv);
        return 0.5 * (fx + cplx(0.0, 1.0) * fy);
    };

    for (int j = 2; j < nv - 2; ++j) {
        for (int i = 2; i < nu - 2; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * nu + i;
            const Cplx3 N_z{dz_of(Nx, idx), dz_of(Ny, idx), dz_of(Nz, idx)};
            const Cplx3 N_zb{dzbar_of(Nx, idx), dzbar_of(Ny, idx), dzbar_of(Nz, idx)};
            const double nz2 = std::norm(N_z.x) + std::norm(N_z.y) + std::norm(N_z.z);
            const cplx vz = dz_of(v.values, idx);
            const cplx vzb = dzbar_of(v.values, idx);
            const double vv = v.values[idx].real();
            const Vec3& N = grid.normal[idx];
            Vec3 X{vv * N.x, vv * N.y, vv * N.z};
            X.x += ((vz * N_zb.x + vzb * N_z.x) / nz2).real();
            X.y += ((vz * N_zb.y + vzb * N_z.y) / nz2).real();
            X.z += ((vz * N_zb.z + vzb * N_z.z) / nz2).real();
            out.push_back(X);
        }
    }
    return out;
}

std::vector<double> montiel_ros_support(const WeierstrassData& data, const GridField& v) {
    const NormalGrid grid = normal_grid(data, v.spec);
    const std::vector<Vec3> X = montiel_ros(data, v);
    std::vector<double> support;
    support.reserve(X.size());
    std::size_t k = 0;
    for (int j = 2; j < grid.nv - 2; ++j) {
        for (int i = 2; i < grid.nu - 2; ++i) {
            const Vec3& N = grid.normal[static_cast<std::size_t>(j) * grid.nu + i];
            support.push_back(X[k].dot(N));
            ++k;
        }
    }
    return support;
}

TangentCheck tangent_check(const AnalyticFn& candidate, const WeierstrassData& data) {
    TangentCheck out;
    if (data.ends.empty()) throw BadInput("tangent check needs declared ends");
    out.pass = true;
    for (const auto& end : data.ends) {
        double r = 0.3;
        for (const auto& s : data.guard) {
            const double d = std::abs(s.location - end.location);
            if (d > 1e-12) r = std::min(r, 0.4 * d);
        }
        for (const auto& other : data.ends) {
            const double d = std::abs(other.location - end.location);
            if (d > 1e-12) r = std::min(r, 0.4 * d);
        }
        const int order = complexkit::count_zeros_poles(
            candidate, complexkit::circle(end.location, r));
        out.end_orders.emplace_back(end.location, order);
        const int required = end.g_order >= 0 ? 1 : -3;
        if (order < required) out.pass = false;
    }
    return out;
}

KernelFlux kernel_flux_check(const AnalyticFn& gdot_fn, const WeierstrassData& data,
                             const Contour& gamma) {
    KernelFlux out;
    const AnalyticFn g = data.g;
    AnalyticFn over_g2(
        [gdot_fn, g](cplx z) {
            const cplx gv = g(z);
            return gdot_fn(z) / (gv * gv);
        },
        data.guard);
    out.over_g2 = complexkit::contour_integrate(over_g2, gamma, 1e-10);
    out.plain = complexkit::contour_integrate(gdot_fn, gamma, 1e-10);
    return out;
}

std::string jacobi_field_csv(const JacobiField& field,
                             const std::vector<double>& residuals) {
    std::string out = io::csv_row({"y", "re_v", "im_v", "residual"});
    const std::size_t n = field.line.values.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double y = static_cast<double>(j) / static_cast<double>(n);
        const cplx v = field.line.values[j];
        const double res = j < residuals.size() ? residuals[j] : 0.0;
        out += io::csv_row({io::format_double(y), io::format_double(v.real()),
                            io::format_double(v.imag()), io::format_double(res)});
    }
    return out;
}

} // namespace wlab::shiffman
