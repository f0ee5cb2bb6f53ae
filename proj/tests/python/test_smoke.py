"""Smoke tests for the _wlab extension; run under ctest with the build dir."""

import math
import os
import sys
import tempfile

sys.path.insert(0, sys.argv[1] if len(sys.argv) > 1 else ".")

import _wlab  # noqa: E402


def approx(a, b, tol):
    return abs(a - b) < tol


def main():
    assert _wlab.hierarchy_operator(2) == "u'' + 3*u^2"
    assert _wlab.hierarchy_operator(3) == "u^(4) + 10*u*u'' + 5*u'^2 + 10*u^3"
    assert _wlab.flow_rhs(1) == "-u''' - 6*u*u'"

    cat = _wlab.Surface("catenoid")
    fx, fy, fz = cat.flux()
    assert approx(fx, 0.0, 1e-9) and approx(fy, 0.0, 1e-9)
    assert approx(fz, 2.0 * math.pi, 1e-8)
    assert cat.period_residual() < 1e-8
    lam, K, normal = cat.metric_at(1.0, 0.0)
    assert approx(lam, 1.0, 1e-10) and approx(K, -1.0, 1e-10)
    assert cat.shiffman_sup() < 1e-7

    rie = _wlab.Surface("riemann:lambda=1")
    assert rie.period_residual() < 1e-8
    assert approx(rie.total_curvature(), -8.0 * math.pi, 0.02 * 8.0 * math.pi)
    tx, ty, tz = rie.translation()
    assert tz > 0.0
    assert rie.shiffman_sup() < 1e-7

    rank = _wlab.riemann_rank(1.0)
    assert rank["deficient"]

    sol = _wlab.soliton_harness(T=0.01, dt=1e-4)
    assert sol["shape_error"] < 1e-4
    assert sol["mass_drift"] < 1e-6

    flow = _wlab.shiffman_flow(lambda_=1.0, T=0.005, dt=2.5e-5, n=256)
    assert flow["route_discrepancy"] < 1e-5
    assert flow["conserved_drift"] < 1e-5

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "catenoid.obj")
        cat.write_obj(path, nu=17, nv=17)
        with open(path) as fh:
            first = fh.readline()
        assert first.startswith("v ")

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
