#include "wlab/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "wlab/parallel.hpp"

namespace wlab::weier {

namespace {
const cplx kI{0.0, 1.0};
} // namespace

std::vector<cplx> WeierstrassData::g_jet(cplx z, int order) const {
    if (gjet) return gjet(z, order);
    // Cauchy fallback: jets from a small circle around z
    std::vector<cplx> out(static_cast<std::size_t>(order) + 1);
    out[0] = g(z);
    if (order == 0) return out;
    double r = jet_radius;
    const double d = guard_distance(z);
    if (d < r * 2.0) r = 0.5 * d;
    const auto jet = complexkit::laurent_jet(g, z, order, r);
    double fact = 1.0;
    for (int k = 1; k <= order; ++k) {
        fact *= k;
        out[static_cast<std::size_t>(k)] = jet.c(k) * fact;
    }
    return out;
}

double WeierstrassData::guard_distance(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : guard) best = std::min(best, std::abs(z - s.location));
    return best;
}

void SurfaceMesh::validate() const {
    for (const auto& v : vertices) {
        if (!(v.lambda > 0.0)) throw Error("mesh vertex with non-positive conformal factor");
        if (std::abs(v.normal.norm() - 1.0) > 1e-10) throw Error("mesh normal not unit");
        if (!std::isfinite(v.position.x) || !std::isfinite(v.position.y) ||
            !std::isfinite(v.position.z))
            throw Error("non-finite mesh position");
    }
}

double SurfaceMesh::area() const {
    double total = 0.0;
    for (int j = 0; j + 1 < nv; ++j) {
        for (int i = 0; i + 1 < nu; ++i) {
            const Vec3& a = at(i, j).position;
            const Vec3& b = at(i + 1, j).position;
            const Vec3& c = at(i + 1, j + 1).position;
            const Vec3& d = at(i, j + 1).position;
            total += 0.5 * ((b - a).cross(c - a)).norm();
            total += 0.5 * ((c - a).cross(d - a)).norm();
        }
    }
    return total;
}

AnalyticFn rep_component(const WeierstrassData& data, int axis) {
    const AnalyticFn g = data.g;
    const AnalyticFn phi = data.phi;
    std::vector<Singularity> sing = data.guard;
    switch (axis) {
        case 0:
            return AnalyticFn(
                [g, phi](cplx z) {
                    const cplx gv = g(z);
                    return 0.5 * (1.0 / gv - gv) * phi(z);
                },
                sing);
        case 1:
            return AnalyticFn(
                [g, phi](cplx z) {
                    const cplx gv = g(z);
                    return 0.5 * kI * (1.0 / gv + gv) * phi(z);
                },
                sing);
        case 2:
            return AnalyticFn([phi](cplx z) { return phi(z); }, sing);
        default:
            throw BadInput("axis must be 0, 1 or 2");
    }
}

namespace {

struct RepForms {
    AnalyticFn f0, f1, f2;
};

RepForms make_rep_forms(const WeierstrassData& data) {
    return {rep_component(data, 0), rep_component(data, 1), rep_component(data, 2)};
}

Vec3 rep_step(const RepForms& forms, cplx a, cplx b, double tol = 1e-11) {
    return {complexkit::integrate_segment(forms.f0, a, b, tol).real(),
            complexkit::integrate_segment(forms.f1, a, b, tol).real(),
            complexkit::integrate_segment(forms.f2, a, b, tol).real()};
}

} // namespace

Vec3 immerse(const WeierstrassData& data, cplx target, const Contour& path) {
    if (path.samples.size() < 2) throw BadInput("immersion path needs samples");
    const double scale0 = 1.0 + std::abs(data.base_point);
    if (std::abs(path.samples.front() - data.base_point) > 1e-9 * scale0)
        throw BadInput("path must start at the base point");
    if (std::abs(path.samples.back() - target) > 1e-9 * (1.0 + std::abs(target)))
        throw BadInput("path must end at the target");
    for (const auto& s : data.guard) {
        for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
            const cplx a = path.samples[i], b = path.samples[i + 1];
            const cplx ab = b - a;
            double t = std::norm(ab) > 0.0 ? ((s.location - a) / ab).real() : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            if (std::abs(s.location - (a + t * ab)) < 1e-6)
                throw SingularityOnPath("immersion path touches a singular point");
        }
    }
    const RepForms forms = make_rep_forms(data);
    Vec3 acc{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < path.samples.size(); ++i)
        acc += rep_step(forms, path.samples[i], path.samples[i + 1], 1e-12);
    return acc;
}

Vec3 immerse_step(const WeierstrassData& data, cplx za, cplx zb) {
    return rep_step(make_rep_forms(data), za, zb, 1e-12);
}

MetricSample metric_curvature(const WeierstrassData& data, cplx z) {
    const auto jet = data.g_jet(z, 1);
    const cplx gv = jet[0];
    const cplx gp = jet[1];
    const cplx ph = data.phi(z);
    const double ag = std::abs(gv);
    if (ag < 1e-13 || ag > 1e13 || std::abs(ph) < 1e-300)
        throw SingularPoint("metric undefined at zeros/poles of g or zeros of phi");
    const double lambda = 0.5 * (ag + 1.0 / ag) * std::abs(ph);
    const double density = 2.0 * std::abs(gp) / ((1.0 + ag * ag) * lambda);
    const double K = -density * density;
    const double denom = 1.0 + ag * ag;
    const Vec3 normal{2.0 * gv.real() / denom, 2.0 * gv.imag() / denom,
                      (ag * ag - 1.0) / denom};
    return {lambda, K, normal};
}

SurfaceMesh build_mesh(const WeierstrassData& data, const GridSpec& spec) {
    SurfaceMesh mesh;
    mesh.nu = spec.nu;
    mesh.nv = spec.nv;
    mesh.vertices.resize(static_cast<std::size_t>(spec.nu) * spec.nv);
    mesh.cell_weight.resize(mesh.vertices.size());
    const double du = (spec.u1 - spec.u0) / (spec.nu - 1);
    const double dv = (spec.v1 - spec.v0) / (spec.nv - 1);

    auto param_to_z = [&](int i, int j) {
        const cplx w(spec.u0 + du * i, spec.v0 + dv * j);
        return spec.log_polar ? std::exp(w) : w;
    };

    // positions: integrate up the first column, then across rows (rows are
    // independent, so they parallelize)
    const RepForms forms = make_rep_forms(data);
    std::vector<Vec3> col0(static_cast<std::size_t>(spec.nv));
    col0[0] = {0.0, 0.0, 0.0};
    for (int j = 1; j < spec.nv; ++j)
        col0[static_cast<std::size_t>(j)] =
            col0[static_cast<std::size_t>(j - 1)] +
            rep_step(forms, param_to_z(0, j - 1), param_to_z(0, j));

    parallel_for(static_cast<std::size_t>(spec.nv), [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        Vec3 pos = col0[jj];
        for (int i = 0; i < spec.nu; ++i) {
            if (i > 0) pos += rep_step(forms, param_to_z(i - 1, j), param_to_z(i, j));
            MeshVertex& v = mesh.at(i, j);
            v.z = param_to_z(i, j);
            v.position = pos;
            const MetricSample m = metric_curvature(data, v.z);
            v.normal = m.normal;
            v.lambda = m.lambda;
            v.gauss_k = m.gauss_k;
            const double jac = spec.log_polar ? std::norm(v.z) : 1.0;
            mesh.cell_weight[static_cast<std::size_t>(j) * spec.nu + i] = jac * du * dv;
        }
    });
    mesh.validate();
    return mesh;
}

double total_curvature(const WeierstrassData& data, const SurfaceMesh& mesh) {
    // K dA = -4 |g'|^2 / (1+|g|^2)^2 |dz|^2; cell-averaged over the grid
    std::vector<double> density(mesh.vertex_count());
    parallel_for(mesh.vertex_count(), [&](std::size_t idx) {
        const MeshVertex& v = mesh.vertices[idx];
        const auto jet = data.g_jet(v.z, 1);
        const double ag2 = std::norm(jet[0]);
        const double num = std::abs(jet[1]);
        const double d = num / (1.0 + ag2);
        density[idx] = -4.0 * d * d * mesh.cell_weight[idx];
    });
    // trapezoid weights: interior vertices count once, edges half, corners quarter
    double total = 0.0;
    for (int j = 0; j < mesh.nv; ++j) {
        for (int i = 0; i < mesh.nu; ++i) {
            double w = 1.0;
            if (i == 0 || i == mesh.nu - 1) w *= 0.5;
            if (j == 0 || j == mesh.nv - 1) w *= 0.5;
            total += w * density[static_cast<std::size_t>(j) * mesh.nu + i];
        }
    }
    return total;
}

double total_curvature_region(const WeierstrassData& data, const GridSpec& spec) {
    const double du = (spec.u1 - spec.u0) / (spec.nu - 1);
    const double dv = (spec.v1 - spec.v0) / (spec.nv - 1);
    std::vector<double> row_sums(static_cast<std::size_t>(spec.nv), 0.0);
    parallel_for(static_cast<std::size_t>(spec.nv), [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        double acc = 0.0;
        for (int i = 0; i < spec.nu; ++i) {
            const cplx w(spec.u0 + du * i, spec.v0 + dv * j);
            const cplx z = spec.log_polar ? std::exp(w) : w;
            const auto jet = data.g_jet(z, 1);
            const double ag2 = std::norm(jet[0]);
            const double dens = std::abs(jet[1]) / (1.0 + ag2);
            const double jac = spec.log_polar ? std::norm(z) : 1.0;
            double wgt = (i == 0 || i == spec.nu - 1) ? 0.5 : 1.0;
            acc += wgt * (-4.0 * dens * dens) * jac;
        }
        row_sums[jj] = acc;
    });
    double total = 0.0;
    for (int j = 0; j < spec.nv; ++j) {
        const double wgt = (j == 0 || j == spec.nv - 1) ? 0.5 : 1.0;
        total += wgt * row_sums[static_cast<std::size_t>(j)];
    }
    return total * du * dv;
}

FluxVector flux(const WeierstrassData& data, const Contour& c, const std::string& tag) {
    c.validate();
    if (!c.closed) throw BadInput("flux needs a closed contour");
    FluxVector out;
    out.homology_tag = tag;
    const cplx f0 = complexkit::contour_integrate(rep_component(data, 0), c, 1e-11);
    const cplx f1 = complexkit::contour_integrate(rep_component(data, 1), c, 1e-11);
    const cplx f2 = complexkit::contour_integrate(rep_component(data, 2), c, 1e-11);
    out.f = {f0.imag(), f1.imag(), f2.imag()};
    return out;
}

PeriodReport period_report(const WeierstrassData& data,
                           const std::vector<Contour>& cycles) {
    PeriodReport report;
    const AnalyticFn g = data.g;
    const AnalyticFn phi = data.phi;
    AnalyticFn dh_over_g([g, phi](cplx z) { return phi(z) / g(z); }, data.guard);
    AnalyticFn g_dh([g, phi](cplx z) { return g(z) * phi(z); }, data.guard);
    AnalyticFn dh([phi](cplx z) { return phi(z); }, data.guard);

    for (const auto& c : cycles) {
        CyclePeriods p;
        p.dh_over_g = complexkit::contour_integrate(dh_over_g, c, 1e-11);
        p.g_dh = complexkit::contour_integrate(g_dh, c, 1e-11);
        p.re_dh = complexkit::contour_integrate(dh, c, 1e-11).real();
        p.closure_residual = std::abs(std::conj(p.g_dh) - p.dh_over_g) + std::abs(p.re_dh);
        report.residual = std::max(report.residual, p.closure_residual);
        report.cycles.push_back(p);
    }
    for (const auto& end : data.ends) {
        // residue of dh/g at zeros of g, of g dh at poles
        double r = 0.45;
        for (const auto& s : data.guard) {
            const double d = std::abs(s.location - end.location);
            if (d > 1e-12) r = std::min(r, 0.5 * d);
        }
        cplx res;
        if (end.g_order >= 0)
            res = complexkit::residue_at(AnalyticFn([g, phi](cplx z) { return phi(z) / g(z); }),
                                         end.location, r);
        else
            res = complexkit::residue_at(AnalyticFn([g, phi](cplx z) { return g(z) * phi(z); }),
                                         end.location, r);
        report.end_residues.push_back(res);
        report.residual = std::max(report.residual, std::abs(res));
    }
    return report;
}

WeierstrassData lopez_ros(const WeierstrassData& data, double lambda) {
    if (!(lambda > 0.0)) throw BadInput("lopez_ros needs lambda > 0");
    WeierstrassData out = data;
    const AnalyticFn g = data.g;
    out.g = AnalyticFn([g, lambda](cplx z) { return lambda * g(z); }, g.singularities());
    if (data.gjet) {
        auto base = data.gjet;
        out.gjet = [base, lambda](cplx z, int k) {
            auto jet = base(z, k);
            for (auto& v : jet) v *= lambda;
            return jet;
        };
    }
    return out;
}

WeierstrassData associate(const WeierstrassData& data, double theta) {
    WeierstrassData out = data;
    const AnalyticFn phi = data.phi;
    const cplx rot = std::exp(kI * theta);
    out.phi = AnalyticFn([phi, rot](cplx z) { return rot * phi(z); }, phi.singularities());
    return out;
}

EndFit end_fit(const std::vector<Vec3>& samples) {
    if (samples.size() < 16) throw BadInput("end fit needs more samples");
    // multiplicity check on the vertical projection
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const auto& p : samples) {
        const double r = std::hypot(p.x, p.y);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (!(rmin > 0.0)) throw BadInput("end fit samples touch the axis");
    std::map<std::pair<long, long>, double> cells;
    const double cell = std::max(1e-9, (rmax - rmin) / 64.0);
    for (const auto& p : samples) {
        const auto key = std::make_pair(static_cast<long>(std::floor(p.x / cell)),
                                        static_cast<long>(std::floor(p.y / cell)));
        auto it = cells.find(key);
        if (it == cells.end()) {
            cells.emplace(key, p.z);
        } else if (std::abs(it->second - p.z) > 0.2 * (1.0 + std::abs(it->second))) {
            throw NotAGraph("vertical projection hits the same cell at distant heights");
        }
    }

    // least squares for x3 = a log r + b + (c1 x1 + c2 x2)/r^2
    double ata[4][4] = {};
    double atb[4] = {};
    for (const auto& p : samples) {
        const double r2 = p.x * p.x + p.y * p.y;
        const double row[4] = {0.5 * std::log(r2), 1.0, p.x / r2, p.y / r2};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * p.z;
        }
    }
    double m[4][5];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m[i][j] = ata[i][j];
        m[i][4] = atb[i];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        for (int j = 0; j < 5; ++j) std::swap(m[piv][j], m[col][j]);
        if (std::abs(m[col][col]) < 1e-14) throw Error("degenerate end fit system");
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int j = col; j < 5; ++j) m[r][j] -= f * m[col][j];
        }
    }
    EndFit fit;
    fit.a = m[0][4] / m[0][0];
    fit.b = m[1][4] / m[1][1];
    fit.c1 = m[2][4] / m[2][2];
    fit.c2 = m[3][4] / m[3][3];
    double ss = 0.0;
    for (const auto& p : samples) {
        const double r2 = p.x * p.x + p.y * p.y;
        const double pred = fit.a * 0.5 * std::log(r2) + fit.b + (fit.c1 * p.x + fit.c2 * p.y) / r2;
        ss += (p.z - pred) * (p.z - pred);
    }
    fit.rms = std::sqrt(ss / static_cast<double>(samples.size()));
    return fit;
}

namespace {

struct P2 {
    double x, y;
};

// signed area contribution of one polygon edge against the disk |p| <= r:
// chords contribute origin triangles, outside parts circular sectors
double edge_disk_area(P2 a, P2 b, double r) {
    auto cross = [](P2 p, P2 q) { return p.x * q.y - p.y * q.x; };
    auto dot = [](P2 p, P2 q) { return p.x * q.x + p.y * q.y; };
    auto norm2 = [](P2 p) { return p.x * p.x + p.y * p.y; };
    const P2 d{b.x - a.x, b.y - a.y};
    const double dd = norm2(d);
    std::vector<double> cuts{0.0, 1.0};
    if (dd > 0.0) {
        // |a + t d|^2 = r^2
        const double pb = dot(a, d) / dd;
        const double pc = (norm2(a) - r * r) / dd;
        const double disc = pb * pb - pc;
        if (disc > 0.0) {
            const double s = std::sqrt(disc);
            for (double t : {-pb - s, -pb + s})
                if (t > 0.0 && t < 1.0) cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double t0 = cuts[k], t1 = cuts[k + 1];
        if (t1 - t0 < 1e-15) continue;
        const double tm = 0.5 * (t0 + t1);
        const P2 p{a.x + t0 * d.x, a.y + t0 * d.y};
        const P2 q{a.x + t1 * d.x, a.y + t1 * d.y};
        const P2 m{a.x + tm * d.x, a.y + tm * d.y};
        if (norm2(m) <= r * r) {
            area += 0.5 * cross(p, q);
        } else {
            area += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
        }
    }
    return area;
}

// exact area of a flat triangle inside the ball of radius R about center
double triangle_ball_area(const Vec3& A, const Vec3& B, const Vec3& C,
                          const Vec3& center, double R) {
    const Vec3 ab = B - A, ac = C - A;
    Vec3 n = ab.cross(ac);
    const double nn = n.norm();
    if (nn < 1e-300) return 0.0;
    n = n * (1.0 / nn);
    const double dist = (A - center).dot(n);
    if (std::abs(dist) >= R) return 0.0;
    const double rho = std::sqrt(R * R - dist * dist);
    const Vec3 proj = center + n * dist; // disk center in the plane
    Vec3 e1 = ab * (1.0 / ab.norm());
    const Vec3 e2 = n.cross(e1);
    auto flat = [&](const Vec3& X) {
        const Vec3 v = X - proj;
        return P2{v.dot(e1), v.dot(e2)};
    };
    const P2 a = flat(A), b = flat(B), c = flat(C);
    const double signed_area =
        edge_disk_area(a, b, rho) + edge_disk_area(b, c, rho) + edge_disk_area(c, a, rho);
    return std::abs(signed_area);
}

} // namespace

std::vector<std::pair<double, double>> ball_area_profile(
    const SurfaceMesh& mesh, const Vec3& center, const std::vector<double>& radii) {
    struct Tri { Vec3 a, b, c; };
    std::vector<Tri> tris;
    tris.reserve(static_cast<std::size_t>(mesh.nu) * mesh.nv * 2);
    for (int j = 0; j + 1 < mesh.nv; ++j) {
        for (int i = 0; i + 1 < mesh.nu; ++i) {
            const Vec3& a = mesh.at(i, j).position;
            const Vec3& b = mesh.at(i + 1, j).position;
            const Vec3& c = mesh.at(i + 1, j + 1).position;
            const Vec3& d = mesh.at(i, j + 1).position;
            tris.push_back({a, b, c});
            tris.push_back({a, c, d});
        }
    }
    std::vector<std::pair<double, double>> out;
    for (double R : radii) {
        std::vector<double> partial(tris.size());
        parallel_for(tris.size(), [&](std::size_t k) {
            const auto& t = tris[k];
            const double da = (t.a - center).norm();
            const double db = (t.b - center).norm();
            const double dc = (t.c - center).norm();
            if (da <= R && db <= R && dc <= R) {
                partial[k] = 0.5 * ((t.b - t.a).cross(t.c - t.a)).norm();
            } else if (da < R || db < R || dc < R ||
                       std::min({da, db, dc}) < R + (t.b - t.a).norm() + (t.c - t.a).norm()) {
                partial[k] = triangle_ball_area(t.a, t.b, t.c, center, R);
            } else {
                partial[k] = 0.0;
            }
        });
        double area = 0.0;
        for (double p : partial) area += p;
        out.emplace_back(R, area / (R * R));
    }
    return out;
}

SuperharmonicReport superharmonic_check(const WeierstrassData& data,
                                        const GridSpec& spec, double r_min,
                                        const Vec3& origin_shift) {
    if (spec.log_polar) throw BadInput("superharmonic_check expects a direct chart");
    SurfaceMesh mesh = build_mesh(data, spec);
    const double du = (spec.u1 - spec.u0) / (spec.nu - 1);
    const double dv = (spec.v1 - spec.v0) / (spec.nv - 1);

    const std::size_t n = mesh.vertex_count();
    std::vector<double> lnr(n), f(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        const Vec3 p = mesh.vertices[idx].position + origin_shift;
        const double r = std::hypot(p.x, p.y);
        lnr[idx] = std::log(r);
        f[idx] = lnr[idx] - p.z * p.z;
    }

    SuperharmonicReport rep;
    rep.max_laplacian_f = -std::numeric_limits<double>::infinity();
    rep.max_log_bound_violation = -std::numeric_limits<double>::infinity();
    bool any = false;

    // 4th order 5-point second differences in each direction
    auto d2 = [](const double* v, std::ptrdiff_t stride, double h) {
        return (-v[-2 * stride] + 16.0 * v[-stride] - 30.0 * v[0] + 16.0 * v[stride] -
                v[2 * stride]) /
               (12.0 * h * h);
    };

    for (int j = 2; j < spec.nv - 2; ++j) {
        for (int i = 2; i < spec.nu - 2; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * spec.nu + i;
            const Vec3 p = mesh.vertices[idx].position + origin_shift;
            const double r = std::hypot(p.x, p.y);
            if (r < r_min) continue;
            if (p.z < 0.0 || p.z > 1.0) continue;
            const double lam2 = mesh.vertices[idx].lambda * mesh.vertices[idx].lambda;
            const double lap_lnr =
                (d2(&lnr[idx], 1, du) + d2(&lnr[idx], spec.nu, dv)) / lam2;
            const double lap_f = (d2(&f[idx], 1, du) + d2(&f[idx], spec.nu, dv)) / lam2;
            const double grad_x3 = std::norm(data.phi(mesh.vertices[idx].z)) / lam2;
            rep.max_laplacian_f = std::max(rep.max_laplacian_f, lap_f);
            rep.max_log_bound_violation =
                std::max(rep.max_log_bound_violation, std::abs(lap_lnr) - grad_x3 / (r * r));
            any = true;
        }
    }
    if (!any) throw BadInput("superharmonic region is empty");
    return rep;
}

JorgeMeeksReport jorge_meeks_check(const WeierstrassData& data, int genus, int ends) {
    JorgeMeeksReport rep;
    if (!data.finite_total_curvature) return rep; // not applicable
    // degree of g over the compactified chart: positive part of the divisor,
    // each end's order measured by the argument principle on a small circle
    int deg = 0;
    bool any_order = false;
    for (const auto& end : data.ends) {
        double r = 0.35;
        for (const auto& s : data.guard) {
            const double d = std::abs(s.location - end.location);
            if (d > 1e-12) r = std::min(r, 0.4 * d);
        }
        const double w =
            complexkit::winding_number_raw(data.g, complexkit::circle(end.location, r));
        const double nearest = std::round(w);
        if (std::abs(w - nearest) > 0.1)
            throw NonIntegerDegree("end order estimate is not integer-stable");
        const int order = static_cast<int>(nearest);
        any_order = any_order || order != 0;
        if (order > 0) deg += order;
    }
    if (!any_order) return rep; // constant Gauss map: formula does not apply
    rep.applicable = true;
    rep.deg = deg;
    rep.lhs_minus_rhs = deg - (genus + ends - 1);
    return rep;
}

} // namespace wlab::weier
