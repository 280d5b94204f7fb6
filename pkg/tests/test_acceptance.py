"""Acceptance suite: end-to-end numerical criteria with stated tolerances.

Each test prints a single PASS/FAIL line with the measured quantity so a
full run doubles as a report.  Tolerances are the contract; the unit suites
cover the underlying pieces in isolation.
"""

import time

import numpy as np
import pytest

from csphere.cli import main
from csphere.experiments import (
    check_cutoff_constant,
    cutoff_derivative_bounds,
    run_bernstein,
    run_cesaro_table,
    run_km_norm,
    run_pointwise_bound_check,
)
from csphere.kernels import (
    Angles,
    build_rho,
    kernel_degree,
    kernel_direct,
    kernel_full,
    kernel_harm,
    kernel_km_abel,
)
from csphere.specfun import gegenbauer_at_one, gegenbauer_norm
from csphere.sphere import convolve_by_quadrature, convolve_zonal, ZonalKernel
from csphere.structure import dim_degree, dim_harm, dim_poly


def _report(name: str, ok: bool, detail: str):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_acceptance_1_bivariate_identity():
    t0 = time.monotonic()
    thetas = np.linspace(0, np.pi / 2, 17)
    phis = np.linspace(0, 2 * np.pi, 23, endpoint=False)
    max_res = 0.0
    max_imag = 0.0
    for q in (2, 3, 4):
        for l in range(21):
            target = np.array(
                [[kernel_degree(l, q, np.cos(th) * np.cos(ph)) for ph in phis] for th in thetas]
            )
            total = np.zeros_like(target, dtype=complex)
            for m in range(l + 1):
                for i, th in enumerate(thetas):
                    row = kernel_harm(m, l - m, q, Angles(theta=float(th), phi=0.0))
                    total[i] += row * np.exp(1j * (2 * m - l) * phis)
            max_res = max(max_res, np.max(np.abs(total - target)) / dim_degree(l, q))
            max_imag = max(max_imag, float(np.max(np.abs(total.imag))))
    elapsed = time.monotonic() - t0
    ok = max_res <= 1e-9 and max_imag <= 1e-10 and elapsed < 30
    _report(
        "bivariate identity",
        ok,
        f"max residual {max_res:.2e} (tol 1e-9), max imag {max_imag:.2e} "
        f"(tol 1e-10), {elapsed:.1f}s (< 30s)",
    )


def test_acceptance_2_dimension_identities():
    worst = 0.0
    exact = True
    for q in range(2, 7):
        for l in range(41):
            if dim_degree(l, q) != sum(dim_harm(m, l - m, q) for m in range(l + 1)):
                exact = False
        for n in range(41):
            if dim_poly(n, q) != sum(dim_degree(l, q) for l in range(n + 1)):
                exact = False
        # closed form for d_l through the Gegenbauer value at 1 and its L2 mass
        from math import factorial

        front = (
            2.0 ** (3 - 2 * q)
            * np.pi
            * factorial(2 * q - 3)
            / (factorial(q - 1) * factorial(q - 2))
        )
        for l in range(1, 41):
            closed = front * gegenbauer_at_one(q - 1, l) ** 2 / gegenbauer_norm(q - 1, l)
            worst = max(worst, abs(dim_degree(l, q) - closed) / dim_degree(l, q))
    ok = exact and worst <= 1e-12
    _report(
        "dimension identities",
        ok,
        f"branching/telescoping exact: {exact}, closed-form residual {worst:.2e} (tol 1e-12)",
    )


def test_acceptance_3_full_kernel_closed_form():
    rng = np.random.default_rng(0)
    t = rng.uniform(-1, 1, 100)
    worst = 0.0
    for q in (2, 3, 4):
        for n in range(26):
            lhs = sum(np.asarray(kernel_degree(l, q, t)) for l in range(n + 1))
            rhs = np.asarray(kernel_full(n, q, t))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) / dim_poly(n, q))
    ok = worst <= 1e-9
    _report(
        "full-space kernel closed form",
        ok,
        f"max residual {worst:.2e} relative to t_n (tol 1e-9)",
    )


def test_acceptance_4_projector_convolution():
    worst_proj = 0.0
    for q in (2, 3):
        s = np.linspace(-0.9, 0.9, 7)
        for l in range(11):
            for k in range(11):
                fl = lambda t, l=l: kernel_degree(l, q, t)
                fk = lambda t, k=k: kernel_degree(k, q, t)
                got = convolve_by_quadrature(fl, fk, s, q)
                want = np.asarray(kernel_degree(l, q, s)) if l == k else 0.0
                worst_proj = max(
                    worst_proj,
                    float(np.max(np.abs(got - want))) / max(1, dim_degree(l, q)),
                )
    worst_pair = 0.0
    rng = np.random.default_rng(1)
    for q in (2, 3):
        for _ in range(3):
            f = ZonalKernel(q, rng.standard_normal(6))
            g = ZonalKernel(q, rng.standard_normal(6))
            conv = convolve_zonal(f, g)
            s = rng.uniform(-0.95, 0.95, 9)
            direct = convolve_by_quadrature(f.eval, g.eval, s, q)
            scale = max(1.0, float(np.max(np.abs(np.asarray(conv.eval(s))))))
            worst_pair = max(
                worst_pair, float(np.max(np.abs(direct - np.asarray(conv.eval(s))))) / scale
            )
    ok = worst_proj <= 1e-7 and worst_pair <= 1e-8
    _report(
        "projector convolution",
        ok,
        f"projector residual {worst_proj:.2e} (tol 1e-7), "
        f"random-pair residual {worst_pair:.2e} (tol 1e-8)",
    )


@pytest.mark.parametrize("delta", [0.0, 1.0, 2.0])
def test_acceptance_5_cesaro_rates(delta):
    t0 = time.monotonic()
    rep = run_cesaro_table(q=2, delta_list=(delta,), n_list=(8, 16, 32, 64, 128))
    elapsed = time.monotonic() - t0
    fit = rep.results["fits"][str(delta)]
    converged = all(r["converged"] for r in rep.results["rows"])
    worst_doubling = max(r["doubling_rel_change"] for r in rep.results["rows"])
    if delta == 0.0:
        slope = fit["fit"]["fitted_slope"]
        rate_ok = abs(slope - 1.0) <= 0.25
        detail = f"slope {slope:+.3f} (want 1.0 +/- 0.25)"
    elif delta == 1.0:
        ratio = fit["log2_scaled_max_min_ratio"]
        rate_ok = ratio <= 5.0
        detail = f"(log n)^2-scaled max/min {ratio:.2f} (<= 5)"
    else:
        ratio = fit["max_min_ratio"]
        rate_ok = ratio <= 3.0
        detail = f"max/min {ratio:.2f} (<= 3)"
    ok = rate_ok and converged and elapsed < 300
    _report(
        f"cesaro rates delta={delta}",
        ok,
        f"{detail}, doubling change {worst_doubling:.1e} (< 1e-6), "
        f"{elapsed:.0f}s (< 300s)",
    )


@pytest.mark.parametrize("delta", [0.0, 1.0, 2.0])
def test_acceptance_6_pointwise_bound(delta):
    rep = run_pointwise_bound_check(q=2, delta=delta, n_list=(32, 64))
    ratio = rep.results["c_max_min_ratio"]
    ok = ratio < 2.0
    _report(
        f"pointwise bound delta={delta}",
        ok,
        f"fitted-constant max/min between n=32,64 is {ratio:.3f} (< 2)",
    )


def test_acceptance_7_cutoff_construction():
    # Abel assembly vs direct sum
    rng = np.random.default_rng(2)
    t = rng.uniform(-1, 1, 50)
    abel_worst = 0.0
    for gamma in (1.0, 2.0):
        for n in (8, 16):
            q = 2
            seq = build_rho(n, 2 * n + q + 1, q, gamma)
            direct = kernel_direct(seq, q)
            abel = kernel_km_abel(seq, q)
            pole = max(abs(direct.pole_value()), 1.0)
            abel_worst = max(
                abel_worst,
                float(np.max(np.abs(np.asarray(direct.eval(t)) - np.asarray(abel.eval(t)))))
                / pole,
            )
    # scaled derivative bounds of the cutoff, fixed at n=16, re-verified
    base = cutoff_derivative_bounds(16, 2)
    deriv_ok = all(
        b <= 1.1 * c for n in (32, 64) for b, c in zip(cutoff_derivative_bounds(n, 2), base)
    )
    # normalization constant vs adaptive quadrature
    const_worst = max(check_cutoff_constant(n, q) for n in (8, 16, 32) for q in (2, 3))
    # L1 growth exponent of K_m
    slopes = {}
    for gamma in (1.0, 2.0):
        km = run_km_norm(q=2, gamma=gamma, n_list=(8, 16, 32, 64))
        slopes[gamma] = km.results["fit"]["fitted_slope"]
    slope_ok = all(abs(slopes[g] - g) <= 0.3 for g in (1.0, 2.0))
    ok = abel_worst <= 1e-10 and deriv_ok and const_worst <= 1e-10 and slope_ok
    _report(
        "cutoff multiplier construction",
        ok,
        f"abel residual {abel_worst:.1e} (tol 1e-10), derivative bounds stable: {deriv_ok}, "
        f"constant residual {const_worst:.1e} (tol 1e-10), "
        f"slopes {slopes[1.0]:+.2f}/{slopes[2.0]:+.2f} (want 1/2 +/- 0.3)",
    )


def test_acceptance_8_empirical_bernstein():
    t0 = time.monotonic()
    ok = True
    details = []
    for gamma in (1.0, 2.0):
        rep = run_bernstein(
            q=2, gamma=gamma, r_list=(2, np.inf), n_list=(4, 8, 16, 32), trials=50, seed=0
        )
        ok = ok and rep.passed
        details.append(
            f"gamma={gamma}: eigen residual {rep.results['eigen_max_residual']:.1e}, "
            f"trend ok: {rep.results['trend_ok']}"
        )
    rep0 = run_bernstein(q=2, gamma=0.0, r_list=(2, np.inf), n_list=(4, 8), trials=50, seed=0)
    ok = ok and rep0.passed
    worst0 = max(r["max_ratio"] for r in rep0.results["rows"])
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 600
    _report(
        "empirical multiplier inequality",
        ok,
        "; ".join(details) + f"; gamma=0 worst ratio {worst0:.12f} (<= 1+1e-10); "
        f"{elapsed:.0f}s (< 600s)",
    )


def test_acceptance_9_reproducibility(tmp_path):
    args = ["bernstein", "--q", "2", "--gamma", "1", "--r", "2,inf", "--n", "4,8",
            "--trials", "20", "--nodes", "1024", "--seed", "7"]
    d1, d2 = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--out-dir", str(d1)]) == 0
    assert main(args + ["--out-dir", str(d2)]) == 0
    byte_ok = all(
        (d1 / f).read_bytes() == (d2 / f).read_bytes()
        for f in ("bernstein.csv", "km_norm.csv", "bernstein_report.json", "km_norm_report.json")
    )
    serial = run_bernstein(q=2, gamma=1.0, r_list=(2,), n_list=(4, 8), trials=20, seed=7)
    threaded = run_bernstein(
        q=2, gamma=1.0, r_list=(2,), n_list=(4, 8), trials=20, seed=7, workers=2
    )
    worker_gap = max(
        abs(a["max_ratio"] - b["max_ratio"])
        for a, b in zip(serial.results["rows"], threaded.results["rows"])
    )
    ok = byte_ok and worker_gap <= 1e-10
    _report(
        "reproducibility",
        ok,
        f"byte-identical outputs: {byte_ok}, worker-count gap {worker_gap:.1e} (tol 1e-10)",
    )
