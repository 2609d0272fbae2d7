"""Acceptance gate: the eight headline criteria, one pass/fail line each.

Criterion 7 (oracle certification) runs first; everything downstream trusts
the order-20 double-double oracle only after it has been certified against
the independent quadrature oracle.
"""

import math

import numpy as np
import pytest

from faddeeva import bench, core
from faddeeva.bounds import abs_bound, constants, rel_bound
from faddeeva.ddouble import DD, DDComplex
from faddeeva.oracle import ORACLE_N, w_oracle, w_quadrature, w_ref
from faddeeva.reference import ZaghloulParams, default_weideman_model, weideman_eval, zaghloul_eval

from conftest import ACCEPTANCE_RESULTS

CHUNK = 65536


def record(ok: bool, label: str, detail: str):
    ACCEPTANCE_RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    assert ok, f"{label}: {detail}"


# ---------------------------------------------------------------------------
# Shared heavy data
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def polar_grid():
    return bench.gen_polar_grid(bench.GridSpec())


@pytest.fixture(scope="session")
def polar_oracle(polar_grid):
    """Order-20 double-double oracle over the full 1,602,801-point grid."""
    z = polar_grid
    re_hi = np.empty(z.size)
    re_lo = np.empty(z.size)
    im_hi = np.empty(z.size)
    im_lo = np.empty(z.size)
    for i in range(0, z.size, CHUNK):
        r = w_oracle(z[i : i + CHUNK])
        sl = slice(i, i + z[i : i + CHUNK].size)
        re_hi[sl], re_lo[sl] = r.re.hi, r.re.lo
        im_hi[sl], im_lo[sl] = r.im.hi, r.im.lo
    return DDComplex(DD(re_hi, re_lo), DD(im_hi, im_lo))


def max_errors(z, oracle, evaluate, sel=None):
    """(max_abs, max_rel) of `evaluate` against the stored oracle, chunked."""
    max_abs = 0.0
    max_rel = 0.0
    idx = np.arange(z.size) if sel is None else np.flatnonzero(sel)
    for i in range(0, idx.size, CHUNK):
        j = idx[i : i + CHUNK]
        w = np.asarray(evaluate(z[j]))
        dr = DD(np.ascontiguousarray(w.real)) - DD(oracle.re.hi[j], oracle.re.lo[j])
        di = DD(np.ascontiguousarray(w.imag)) - DD(oracle.im.hi[j], oracle.im.lo[j])
        aerr = np.hypot(dr.hi + dr.lo, di.hi + di.lo)
        wabs = np.hypot(oracle.re.hi[j], oracle.im.hi[j])
        max_abs = max(max_abs, float(np.max(aerr)))
        max_rel = max(max_rel, float(np.max(aerr / wabs)))
    return max_abs, max_rel


@pytest.fixture(scope="session")
def binary64_sweep(polar_grid, polar_oracle):
    """Max abs/rel error of w_N for N = 0..11 over the full polar grid."""
    out = {}
    for n in range(0, 12):
        p = core.EvalParams.for_order(n)
        out[n] = max_errors(polar_grid, polar_oracle, lambda c, p=p: core.w_quadrant1(c, p))
    return out


# ---------------------------------------------------------------------------
# Criterion 7 first: certify the oracle
# ---------------------------------------------------------------------------

class TestCriterion7OracleCertification:
    def test_oracle_certification(self):
        rng = np.random.default_rng(2024)
        x = rng.uniform(-8.0, 8.0, 100)
        y = 10.0 ** rng.uniform(-1.0, 1.0, 100)  # Im in [0.1, 10]
        worst = 0.0
        for zj in x + 1j * y:
            q = w_quadrature(zj)
            r = w_oracle(zj)
            dr = r.re - q.re
            di = r.im - q.im
            d = math.hypot(dr.hi + dr.lo, di.hi + di.lo)
            worst = max(worst, d / math.hypot(q.re.hi, q.im.hi))
        ok_quad = worst <= 1e-25

        rng = np.random.default_rng(7)
        r = 10.0 ** rng.uniform(-5, 3, 2000)
        th = rng.uniform(0.0, np.pi / 2, 2000)
        z = r * np.exp(1j * th)
        a = w_ref(z, ORACLE_N - 1)
        b = w_ref(z, ORACLE_N)
        dr = a.re - b.re
        di = a.im - b.im
        d19 = float(np.max(np.hypot(dr.hi + dr.lo, di.hi + di.lo)))
        ok_19 = d19 <= 8e-27

        record(
            ok_quad and ok_19,
            "criterion 7 (oracle certification)",
            f"quadrature rel diff {worst:.2e} <= 1e-25; N=19 vs N=20 {d19:.2e} <= 8e-27",
        )


class TestCriterion1DefaultOrderAccuracy:
    def test_n11_full_grid(self, binary64_sweep):
        a, r = binary64_sweep[11]
        record(
            a < 2e-15 and r < 2e-15,
            "criterion 1 (N=11 accuracy, full polar grid)",
            f"max abs {a:.3e} < 2e-15; max rel {r:.3e} < 2e-15",
        )


class TestCriterion2BoundSuite:
    def test_binary64_orders(self, binary64_sweep):
        floor = 4e-15
        worst = ""
        ok = True
        for n, (a, r) in binary64_sweep.items():
            if not (a <= abs_bound(n) + floor and r <= rel_bound(n) + floor):
                ok = False
                worst += f" n={n}"
        record(
            ok,
            "criterion 2a (theorem bounds, N=0..11 binary64)",
            "all orders within C1*e^{-pi N} / C2*sqrt(N+1)*e^{-pi N} + 4e-15"
            + (f"; violations:{worst}" if worst else ""),
        )

    def test_xprec_orders(self, polar_grid, polar_oracle):
        floor = 1e-26
        sel = slice(None, None, 16)  # deterministic 1-in-16 subsample
        z = polar_grid[sel]
        sub = DDComplex(
            DD(polar_oracle.re.hi[sel], polar_oracle.re.lo[sel]),
            DD(polar_oracle.im.hi[sel], polar_oracle.im.lo[sel]),
        )
        ok = True
        detail = []
        for n in range(12, 20):
            wn = w_ref(z, n)
            dr = wn.re - sub.re
            di = wn.im - sub.im
            aerr = np.hypot(dr.hi + dr.lo, di.hi + di.lo)
            rerr = aerr / np.hypot(sub.re.hi, sub.im.hi)
            a, r = float(np.max(aerr)), float(np.max(rerr))
            if not (a <= abs_bound(n) + floor and r <= rel_bound(n) + floor):
                ok = False
                detail.append(f"n={n}: abs {a:.2e} vs {abs_bound(n):.2e}")
        record(
            ok,
            "criterion 2b (theorem bounds, N=12..19 double-double)",
            "all orders within bounds + 1e-26" + ("; " + "; ".join(detail) if detail else ""),
        )


class TestCriterion3Slope:
    def test_figure1_slope(self, binary64_sweep):
        ns = []
        logs = []
        for n, (a, _r) in sorted(binary64_sweep.items()):
            if a > 1e-13:  # pre-floor segment
                ns.append(n)
                logs.append(math.log10(a))
        slope = np.polyfit(ns, logs, 1)[0]
        target = -math.pi / math.log(10)
        ok = abs(slope - target) <= 0.05 * abs(target)
        record(
            ok,
            "criterion 3 (exponential decay slope)",
            f"fit slope {slope:.4f} vs -pi/ln10 = {target:.4f} (+-5%), orders {ns[0]}..{ns[-1]}",
        )


class TestCriterion4Constants:
    def test_constants_and_n20_bounds(self):
        c = constants()
        targets = [
            (c.c_a, 4.934),
            (c.c_r, 60.77),
            (c.c_star, 1.0234),
            (c.big_c1, 0.6692),
            (c.big_c2, 3.971),
        ]
        ok = all(abs(v - t) <= 5e-4 * abs(t) for v, t in targets)
        ok = ok and 3.3e-28 <= abs_bound(20) <= 3.5e-28
        ok = ok and 9.2e-27 <= rel_bound(20) <= 9.4e-27
        record(
            ok,
            "criterion 4 (bound constants)",
            f"c_a={c.c_a:.4f}, c_r={c.c_r:.2f}, c*={c.c_star:.4f}, "
            f"C1={c.big_c1:.4f}, C2={c.big_c2:.3f}; "
            f"abs_bound(20)={abs_bound(20):.3e}, rel_bound(20)={rel_bound(20):.3e}",
        )


class TestCriterion5AccuracyTable:
    def test_table_rows(self, polar_grid, polar_oracle):
        p11 = core.EvalParams.for_order(11)
        trap_abs, trap_rel = max_errors(
            polar_grid, polar_oracle, lambda c: core.w_quadrant1(c, p11)
        )
        model = default_weideman_model(40)
        weid_abs, weid_rel = max_errors(
            polar_grid, polar_oracle, lambda c: weideman_eval(c, model)
        )
        zp = ZaghloulParams(a=0.5, terms=38)
        zag_abs, zag_rel = max_errors(polar_grid, polar_oracle, lambda c: zaghloul_eval(c, zp))

        ok = trap_abs <= 2.4e-15 and weid_rel <= 3e-15 and zag_rel <= 5e-13
        record(
            ok,
            "criterion 5 (accuracy table rows)",
            f"trap(11) abs {trap_abs:.3e} <= 2.4e-15; "
            f"weideman(40) rel {weid_rel:.3e} <= 3e-15; "
            f"zaghloul(1/2,38) rel {zag_rel:.3e} <= 5e-13",
        )

    def test_timing_rows_reported(self, capsys):
        # informational only, never gated
        spec = bench.GridSpec(p_step=0.096, theta_count=51)  # ~6.4k points
        lines = []
        for m in ("trap(11)", "weideman(40)", "cf(9)", "zaghloul(0.5,38)"):
            rec = bench.timing_run(m, spec, reps=5)
            lines.append(f"{rec.method}: {rec.mean_seconds*1e3:.2f} ms (+-{rec.sd_seconds*1e3:.2f})")
        ACCEPTANCE_RESULTS.append("INFO  criterion 5 timings (not gated): " + "; ".join(lines))


class TestCriterion6Identities:
    def test_identity_suite(self, polar_grid, polar_oracle):
        p11 = core.EvalParams.for_order(11)
        c1 = abs_bound(11)
        msgs = []

        ok_origin = core.w_plane(0j, p11) == 1.0 + 0j
        msgs.append(f"w(0)=1 {'exact' if ok_origin else 'VIOLATED'}")

        x = np.arange(0.0, 30.0 + 1e-9, 0.01)
        wreal = np.asarray(core.w_quadrant1(x + 0j, p11))
        gauss_err = float(np.max(np.abs(wreal.real - np.exp(-x * x))))
        ok_gauss = gauss_err <= c1
        msgs.append(f"Re w(x) vs e^-x^2 {gauss_err:.1e}")

        rng = np.random.default_rng(31)
        zs = rng.uniform(0, 20, 5000) + 1j * rng.uniform(0, 20, 5000)
        ok_conj = np.array_equal(
            np.asarray(core.w_plane(-np.conj(zs), p11)), np.conj(core.w_plane(zs, p11))
        )
        msgs.append("conjugate symmetry " + ("bit-exact" if ok_conj else "VIOLATED"))

        # branch-boundary continuity at 1000 points where two rules coexist
        tol = 2 * c1 + 8e-15
        h = p11.h
        k = rng.integers(1, 40, 500)
        u = rng.uniform(0.25, 0.75, 500)
        xb = (k + u) * h  # phase inside the trapezoidal window
        yb = rng.uniform(0.0, 1.0, 500) * np.minimum(xb, np.pi / h) * 0.99
        zb = xb + 1j * yb
        d1 = np.abs(core.w_mod_trap(zb, p11) - core.w_mod_mid(zb, p11))
        # and along the diagonal y = x (midpoint vs plain-sum handoff)
        t = np.linspace(np.pi / h + 0.1, 30.0, 500)
        zd = t * (1 + 1j)
        d2 = np.abs(np.asarray(core.w_mid_sum(zd, p11)) - np.asarray(core.w_mod_mid(zd, p11)))
        cont = float(max(np.max(d1), np.max(d2)))
        ok_cont = cont <= tol
        msgs.append(f"branch continuity {cont:.1e} <= {tol:.1e}")

        w11 = np.empty(polar_grid.size, dtype=np.complex128)
        for i in range(0, polar_grid.size, CHUNK):
            w11[i : i + CHUNK] = core.w_quadrant1(polar_grid[i : i + CHUNK], p11)
        lb = 1.0 / (1.0 + math.sqrt(math.pi) * np.abs(polar_grid)) - c1
        ok_lb = bool(np.all(np.abs(w11) >= lb))
        msgs.append("lower bound " + ("holds" if ok_lb else "VIOLATED"))

        ok = ok_origin and ok_gauss and ok_conj and ok_cont and ok_lb
        record(ok, "criterion 6 (identity/property suite)", "; ".join(msgs))


class TestCriterion8Determinism:
    def test_deterministic_and_parallel(self, tmp_path):
        spec = bench.GridSpec(p_step=0.024, theta_count=201)  # 1-in-16 style reduction
        r1 = bench.error_sweep([5, 11], spec)
        r2 = bench.error_sweep([5, 11], spec)
        r4 = bench.error_sweep([5, 11], spec, workers=4)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        bench.emit(r1, "csv", p1)
        bench.emit(r2, "csv", p2)
        ok_bytes = p1.read_bytes() == p2.read_bytes()
        ok_par = r1 == r4
        record(
            ok_bytes and ok_par,
            "criterion 8 (determinism)",
            f"repeated CSV byte-identical: {ok_bytes}; parallel == serial: {ok_par}",
        )
