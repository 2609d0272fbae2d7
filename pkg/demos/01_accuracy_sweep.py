"""Exponential convergence of the quadrature evaluator.

Sweeps the order N over a reduced polar test grid, comparing each w_N
against the double-double oracle, and prints the measured maximum errors
next to the theoretical envelopes C1*e^{-pi N} and C2*sqrt(N+1)*e^{-pi N}.
The log10 error drops by pi/ln10 ~ 1.364 per unit N until it hits the
binary64 floor around N = 10-11.

Run:  python demos/01_accuracy_sweep.py
"""

import numpy as np

from faddeeva.bench import GridSpec, error_sweep

# ~25k points: same shape as the full 1.6M-point grid, 1/64 the density
grid = GridSpec(p_min=-6.0, p_max=6.0, p_step=0.048, theta_count=101)

records = error_sweep(range(0, 12), grid)

print(f"{'N':>3} {'max abs err':>12} {'abs bound':>12} {'max rel err':>12} {'rel bound':>12}")
for r in records:
    print(
        f"{r.n:>3} {r.max_abs_err:>12.3e} {r.bound_abs:>12.3e}"
        f" {r.max_rel_err:>12.3e} {r.bound_rel:>12.3e}"
    )

pre_floor = [r for r in records if r.max_abs_err > 1e-13]
ns = np.array([r.n for r in pre_floor])
logs = np.log10([r.max_abs_err for r in pre_floor])
slope = np.polyfit(ns, logs, 1)[0]
print(f"\nfitted decay slope: {slope:.4f} per unit N (theory: {-np.pi/np.log(10):.4f})")
