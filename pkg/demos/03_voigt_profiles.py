"""Voigt line shapes and the other derived special functions.

The Voigt profile -- the convolution of a Gaussian and a Lorentzian that
models spectral line broadening -- is Re w(x+iy)/(sigma*sqrt(2*pi)) up to
scaling.  This demo tabulates K(x, y) = Re w(x+iy) across the
Gaussian-dominated (small y) to Lorentzian-dominated (large y) regimes,
and spot-checks the erfc/erfcx/Dawson wrappers against well-known values.

Run:  python demos/03_voigt_profiles.py
"""

import numpy as np

from faddeeva import dawson, erfc, erfcx, voigt, w

x = np.linspace(-4.0, 4.0, 9)
print("Voigt K(x, y) = Re w(x+iy):")
print("     x:" + "".join(f"{xi:>9.1f}" for xi in x))
for y in (0.05, 0.5, 2.0):
    k, _l = voigt(x, np.full_like(x, y))
    print(f"y={y:<4}" + " ".join(f"{v:9.5f}" for v in k))

print("\nlimiting behaviour:")
print(f"  y=0.05, x=0: {voigt(0.0, 0.05)[0]:.6f}  vs Gaussian-core value ~ 1 - y*2/sqrt(pi)")
kk, _ = voigt(4.0, 0.05)
print(f"  y=0.05, x=4: {kk:.6e}  vs Lorentzian tail y/(sqrt(pi) x^2) = {0.05/(np.sqrt(np.pi)*16):.6e}")

print("\nderived-function spot checks:")
print(f"  w(1+1j)    = {w(1+1j):.15f}")
print(f"  erfc(1)    = {erfc(1.0).real:.15f}   (reference 0.157299207050285)")
print(f"  erfcx(10)  = {erfcx(10.0).real:.15f}   (reference 0.056140992743823)")
print(f"  dawson(1)  = {dawson(1.0):.15f}   (reference 0.538079506912768)")
