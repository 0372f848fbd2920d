"""Checking the in-house Bessel function against scipy.

Run:  python demos/bessel_check.py

The mode shape needs J of order 1/4. It is computed with a power series for
small arguments and an asymptotic expansion for large ones. Between x = 8 and
the crossover at 20 the series terms cancel heavily, so that stretch is
summed in extended precision. This prints the worst disagreement with
scipy.special.jv in each regime.
"""

import numpy as np
from scipy.special import jv

from hcmgrip.numerics import BESSEL_CROSSOVER, bessel_j_quarter

regimes = [("series", 1e-3, 8.0), ("series, extended precision", 8.0, BESSEL_CROSSOVER),
           ("asymptotic", BESSEL_CROSSOVER, 50.0)]
for name, lo, hi in regimes:
    x = np.linspace(lo, hi, 4001)
    ours = np.array([bessel_j_quarter(float(v)) for v in x])
    ref = jv(0.25, x)
    # relative to the local amplitude so the zeros of J do not dominate
    envelope = np.maximum(np.abs(ref), 1e-3 * np.sqrt(2 / (np.pi * x)))
    print(f"{name:<27} [{lo:g}, {hi:g}]: max rel. deviation {np.max(np.abs(ours - ref) / envelope):.1e}")
