"""Scalar numerics: Gamma, the order-1/4 Bessel function, adaptive quadrature,
bracketed root finding and bounded scalar minimization.

All routines are pure, deterministic and operate on plain Python floats.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Callable

from scipy import optimize as _sciopt

__all__ = [
    "ConvergenceError",
    "Tolerance",
    "QUAD_TOLERANCE",
    "gamma_fn",
    "bessel_j_quarter",
    "integrate",
    "find_root",
    "minimize_scalar",
]


class ConvergenceError(ArithmeticError):
    """An iterative routine ran out of iterations before meeting its tolerance."""


@dataclass(frozen=True)
class Tolerance:
    absolute: float = 1e-14
    relative: float = 1e-10
    max_iterations: int = 2000

    def __post_init__(self):
        if not (self.absolute > 0 or self.relative > 0):
            raise ValueError("at least one of absolute/relative tolerance must be positive")
        if self.absolute < 0 or self.relative < 0:
            raise ValueError("tolerances must be non-negative")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


QUAD_TOLERANCE = Tolerance(absolute=1e-14, relative=1e-10, max_iterations=2000)
QUAD_MAX_DEPTH = 60


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments."""
    if not x > 0:
        raise ValueError(f"gamma_fn is defined here for x > 0 only, got {x!r}")
    return math.gamma(x)


# ---------------------------------------------------------------------------
# Bessel J_{1/4}
# ---------------------------------------------------------------------------

_NU = 0.25
_GAMMA_5_4 = math.gamma(1.25)

# Below this the plain double series loses < ~1e-13 to cancellation.
_SERIES_DOUBLE_MAX = 8.0
# Switch from the (extended precision) power series to the Hankel expansion.
BESSEL_CROSSOVER = 20.0


def _series_sum_double(y: float) -> float:
    # sum_k (-y)^k / (k! (5/4)_k), y = x^2/4
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= -y / (k * (k + _NU))
        total += term
        if abs(term) < 1e-17 * abs(total) and k > y:
            return total


def _series_sum_decimal(x: float) -> float:
    digits = 34 + int(x / 2.302585092994046) + 1
    with localcontext() as ctx:
        ctx.prec = digits
        y = (Decimal(x) / 2) ** 2
        nu = Decimal(1) / 4
        eps = Decimal(10) ** (-digits)
        term = Decimal(1)
        total = Decimal(1)
        k = 0
        while True:
            k += 1
            term = term * (-y) / (k * (k + nu))
            total += term
            if k > y and abs(term) < eps:
                return float(total)


def _hankel(x: float) -> float:
    mu = 4.0 * _NU * _NU
    p = 0.0
    q = 0.0
    a = 1.0
    k = 0
    prev = math.inf
    while True:
        mag = abs(a)
        if mag > prev or mag < 1e-18:
            break
        if k % 4 == 0:
            p += a
        elif k % 4 == 1:
            q += a
        elif k % 4 == 2:
            p -= a
        else:
            q -= a
        prev = mag
        k += 1
        a *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
    chi = x - (0.5 * _NU + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def bessel_j_quarter(x: float) -> float:
    """Bessel function of the first kind of order 1/4 for x >= 0.

    Power series below ``BESSEL_CROSSOVER`` (summed in extended precision
    past ``x = 8`` to contain cancellation), Hankel asymptotic expansion above.
    """
    if x < 0 or math.isnan(x):
        raise ValueError(f"bessel_j_quarter requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if x < BESSEL_CROSSOVER:
        if x <= _SERIES_DOUBLE_MAX:
            s = _series_sum_double(0.25 * x * x)
        else:
            s = _series_sum_decimal(x)
        return s * (0.5 * x) ** _NU / _GAMMA_5_4
    return _hankel(x)


# ---------------------------------------------------------------------------
# Quadrature: globally adaptive Gauss-Kronrod 7/15
# ---------------------------------------------------------------------------

_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    fc = f(c)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for j in range(7):
        dx = hw * _XGK[j]
        s = f(c - dx) + f(c + dx)
        kron += _WGK[j] * s
        if j % 2 == 1:
            gauss += _WG[j // 2] * s
    kron *= hw
    gauss *= hw
    if not math.isfinite(kron):
        raise ValueError(f"integrand is not finite on [{a!r}, {b!r}]")
    return kron, abs(kron - gauss)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = QUAD_TOLERANCE,
) -> float:
    """Adaptive estimate of the integral of ``f`` over ``[a, b]``.

    Intervals are bisected worst-first until the summed Kronrod-Gauss error
    estimate is below ``max(tol.absolute, tol.relative * |result|)``.
    Raises ConvergenceError when ``tol.max_iterations`` bisections or the
    maximum bisection depth are exhausted.
    """
    if b < a:
        raise ValueError(f"integrate requires a <= b, got [{a!r}, {b!r}]")
    if a == b:
        return 0.0

    value, err = _gk15(f, a, b)
    # heap of (-err, seq, a, b, value, depth); seq keeps ordering deterministic
    heap = [(-err, 0, a, b, value, 0)]
    total, total_err = value, err
    seq = 1
    for _ in range(tol.max_iterations):
        if total_err <= max(tol.absolute, tol.relative * abs(total)):
            return math.fsum(item[4] for item in heap)
        neg_err, _, lo, hi, val, depth = heapq.heappop(heap)
        if depth >= QUAD_MAX_DEPTH:
            raise ConvergenceError(
                f"integrate: bisection depth {QUAD_MAX_DEPTH} reached on "
                f"[{lo!r}, {hi!r}] with error estimate {-neg_err:.3g}"
            )
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, seq, lo, mid, v1, depth + 1))
        heapq.heappush(heap, (-e2, seq + 1, mid, hi, v2, depth + 1))
        seq += 2
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
    total = math.fsum(item[4] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    if total_err <= max(tol.absolute, tol.relative * abs(total)):
        return total
    raise ConvergenceError(
        f"integrate: {tol.max_iterations} subdivisions exhausted, "
        f"error estimate {total_err:.3g} for result {total:.6g}"
    )


# ---------------------------------------------------------------------------
# Root finding and minimization
# ---------------------------------------------------------------------------

ROOT_TOLERANCE = Tolerance(absolute=1e-15, relative=4.5e-16, max_iterations=200)


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = ROOT_TOLERANCE,
) -> float:
    """Root of ``f`` inside the bracket ``[lo, hi]`` (Brent's method)."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError(
            f"find_root: no sign change on [{lo!r}, {hi!r}] (f = {flo:.6g}, {fhi:.6g})"
        )
    rtol = max(tol.relative, 4.0 * 2.220446049250313e-16)
    try:
        return _sciopt.brentq(
            f, lo, hi, xtol=max(tol.absolute, 1e-300), rtol=rtol, maxiter=tol.max_iterations
        )
    except RuntimeError as exc:
        raise ConvergenceError(f"find_root: {exc}") from exc


MIN_TOLERANCE = Tolerance(absolute=1e-12, relative=1e-10, max_iterations=500)

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = MIN_TOLERANCE,
) -> tuple[float, float]:
    """Golden-section search for a minimizer of ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x))``. For non-unimodal ``f`` the result is a local
    minimizer that is never worse than either endpoint. ``f`` may return
    ``inf`` to mark excluded points.
    """
    if not lo < hi:
        raise ValueError(f"minimize_scalar requires lo < hi, got [{lo!r}, {hi!r}]")
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(tol.max_iterations):
        scale = max(abs(a), abs(b))
        if b - a <= max(tol.absolute, tol.relative * scale):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    else:
        raise ConvergenceError(
            f"minimize_scalar: {tol.max_iterations} iterations exhausted, bracket "
            f"[{a!r}, {b!r}]"
        )
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    for x in (lo, hi):
        fx = f(x)
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f
