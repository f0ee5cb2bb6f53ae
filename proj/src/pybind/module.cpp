#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "wlab/catalog.hpp"
#include "wlab/diffpoly.hpp"
#include "wlab/kdvflow.hpp"
#include "wlab/mesh_io.hpp"
#include "wlab/shiffman.hpp"
#include "wlab/weierstrass.hpp"

namespace py = pybind11;

using namespace wlab;
using complexkit::cplx;

namespace {

struct Surface {
    weier::WeierstrassData data;
    bool is_riemann = false;
    catalog::RiemannExampleParams params;

    explicit Surface(const std::string& name) {
        if (name.rfind("riemann", 0) == 0) {
            const auto eq = name.find('=');
            if (eq == std::string::npos)
                throw BadInput("riemann spec needs lambda=<value>");
            auto [d, p] = catalog::make_riemann(std::stod(name.substr(eq + 1)));
            data = std::move(d);
            params = std::move(p);
            is_riemann = true;
        } else {
            data = catalog::by_name(name);
        }
    }

    complexkit::Contour section() const {
        if (is_riemann) return params.alpha_cycle;
        return complexkit::circle(cplx(0.0), 1.0, 512);
    }

    std::tuple<double, double, double> flux() const {
        if (is_riemann)
            return {params.flux_alpha.x, params.flux_alpha.y, params.flux_alpha.z};
        const auto f = weier::flux(data, section());
        return {f.f.x, f.f.y, f.f.z};
    }

    double period_residual() const {
        if (is_riemann) return catalog::riemann_period_report(params).residual;
        return weier::period_report(data, {section()}).residual;
    }

    double total_curvature() const {
        if (is_riemann) return catalog::riemann_total_curvature(params);
        weier::GridSpec spec{-5.0, 5.0, -std::numbers::pi, std::numbers::pi, 513, 129, true};
        if (data.chart == weier::Chart::Plane) {
            spec = weier::GridSpec{-4.0, 4.0, -4.0, 4.0, 129, 129, false};
        }
        return weier::total_curvature_region(data, spec);
    }

    std::tuple<double, double, std::tuple<double, double, double>> metric_at(
        double re, double im) const {
        const auto m = weier::metric_curvature(data, cplx(re, im));
        return {m.lambda, m.gauss_k, {m.normal.x, m.normal.y, m.normal.z}};
    }

    double shiffman_sup(int n) const {
        weier::WeierstrassData chart_data;
        double x0 = 0.1;
        if (is_riemann) {
            catalog::RiemannChart chart(params);
            chart_data = chart.cylinder_data();
            x0 = chart.main_line_x0();
        } else if (data.name == "catenoid") {
            chart_data = catalog::catenoid_cylinder_chart(2.0 * std::numbers::pi);
        } else if (data.name == "helicoid") {
            chart_data = catalog::helicoid_cylinder_chart();
        } else {
            throw BadInput("no dz-gauge chart for " + data.name);
        }
        complexkit::SampledLine line;
        line.origin = cplx(x0, 0.0);
        line.direction = cplx(0.0, 1.0);
        line.values.assign(static_cast<std::size_t>(n), cplx(0.0));
        const auto s = shiffman::shiffman_function(chart_data, line);
        double sup = 0.0;
        for (const auto& v : s.line.values) sup = std::max(sup, std::abs(v));
        return sup;
    }

    std::tuple<double, double, double> translation() const {
        if (!is_riemann) throw BadInput("translation vector requires a riemann surface");
        return {params.period_T.x, params.period_T.y, params.period_T.z};
    }

    void write_obj(const std::string& path, int nu, int nv) const {
        io::write_obj(make_mesh(nu, nv), path);
    }
    void write_ply(const std::string& path, int nu, int nv) const {
        io::write_ply(make_mesh(nu, nv), path);
    }

    weier::SurfaceMesh make_mesh(int nu, int nv) const {
        if (is_riemann) {
            catalog::RiemannChart chart(params);
            return catalog::riemann_band_mesh(chart, nu, nv);
        }
        if (data.name == "catenoid") {
            weier::GridSpec spec{-2.0, 2.0, -std::numbers::pi, std::numbers::pi, nu, nv, true};
            return weier::build_mesh(data, spec);
        }
        weier::GridSpec spec{-1.5, 1.5, -1.5, 1.5, nu, nv, false};
        return weier::build_mesh(data, spec);
    }
};

py::dict soliton_harness(double T, double dt) {
    const double c = 16.0, L = 20.0, x0 = 0.35 * L;
    const int N = 512;
    complexkit::SampledLine u0;
    u0.direction = L;
    u0.values.resize(N);
    auto soliton = [&](double x, double t) {
        double d = std::fmod(x - x0 - c * t, L);
        if (d > L / 2) d -= L;
        if (d < -L / 2) d += L;
        const double s = 1.0 / std::cosh(0.5 * std::sqrt(c) * d);
        return 0.5 * c * s * s;
    };
    for (int j = 0; j < N; ++j) u0.values[static_cast<std::size_t>(j)] = soliton(L * j / N, 0.0);
    const auto u = kdvflow::kdv_real_evolve(u0, T, dt);
    double shape = 0.0;
    for (int j = 0; j < N; ++j)
        shape = std::max(shape, std::abs(u.values[static_cast<std::size_t>(j)] - soliton(L * j / N, T)));
    py::dict out;
    out["shape_error"] = shape;
    out["mass_drift"] = std::abs(kdvflow::line_mean(u) - kdvflow::line_mean(u0)) * L;
    return out;
}

py::dict shiffman_flow(double lambda, double T, double dt, int n) {
    auto [data, p] = catalog::make_riemann(lambda);
    catalog::RiemannChart chart(p);
    kdvflow::FlowSetup setup;
    auto cc = chart;
    setup.g_on_line = [cc](double x0, int nn) {
        const auto zw = cc.trace_line(x0, nn);
        std::vector<cplx> g(zw.size());
        for (std::size_t j = 0; j < zw.size(); ++j) g[j] = zw[j].first;
        return g;
    };
    setup.main_x0 = chart.main_line_x0();
    setup.pole_seed_u = cplx(p.x_end_zero, 0.5);
    setup.zero_seed_y = cplx(p.x_end_inf, 0.0);
    kdvflow::ShiffmanFlowOptions opt;
    opt.T = T;
    opt.dt = dt;
    opt.n = n;
    const auto res = kdvflow::shiffman_evolve(setup, opt);
    py::dict out;
    out["route_discrepancy"] = res.max_route_discrepancy;
    out["conserved_drift"] = res.max_conserved_drift;
    out["pole_spacing_drift"] = res.max_pole_spacing_drift;
    out["pole_coefficient_deviation"] = res.max_c_m2_deviation;
    return out;
}

py::dict riemann_rank(double lambda, int n_max) {
    auto [data, p] = catalog::make_riemann(lambda);
    catalog::RiemannChart chart(p);
    const auto zw = chart.trace_line(chart.main_line_x0(), 64);
    std::vector<std::vector<cplx>> jets;
    for (const auto& [z, w] : zw) jets.push_back(chart.u_jet_from_zw(z, w, 2 * n_max + 3));
    const auto rep = kdvflow::algebro_geometric_rank(jets, n_max);
    py::dict out;
    out["rank"] = rep.rank;
    out["deficient"] = rep.deficient;
    out["first_dependent"] = rep.first_dependent;
    out["dependency_residual"] = rep.dependency_residual;
    return out;
}

} // namespace

PYBIND11_MODULE(_wlab, m) {
    m.doc() = "Weierstrass representation and KdV hierarchy toolkit";

    m.def("hierarchy_operator",
          [](int n) { return diffpoly::kdv_P(n).to_string(); },
          py::arg("n"), "serialized KdV hierarchy operator P_n(u)");
    m.def("flow_rhs",
          [](int n) { return diffpoly::flow_rhs(n).to_string(); },
          py::arg("n"), "serialized right-hand side of the n-th hierarchy flow");

    py::class_<Surface>(m, "Surface")
        .def(py::init<const std::string&>(), py::arg("name"),
             "catalog surface: plane, catenoid, helicoid or riemann:lambda=<v>")
        .def("flux", &Surface::flux)
        .def("period_residual", &Surface::period_residual)
        .def("total_curvature", &Surface::total_curvature)
        .def("metric_at", &Surface::metric_at, py::arg("re"), py::arg("im"))
        .def("shiffman_sup", &Surface::shiffman_sup, py::arg("n") = 256)
        .def("translation", &Surface::translation)
        .def("write_obj", &Surface::write_obj, py::arg("path"), py::arg("nu") = 65,
             py::arg("nv") = 65)
        .def("write_ply", &Surface::write_ply, py::arg("path"), py::arg("nu") = 65,
             py::arg("nv") = 65);

    m.def("soliton_harness", &soliton_harness, py::arg("T") = 0.05, py::arg("dt") = 1e-4);
    m.def("shiffman_flow", &shiffman_flow, py::arg("lambda_") = 1.0, py::arg("T") = 0.01,
          py::arg("dt") = 2.5e-5, py::arg("n") = 256);
    m.def("riemann_rank", &riemann_rank, py::arg("lambda_") = 1.0, py::arg("n_max") = 3);
}
