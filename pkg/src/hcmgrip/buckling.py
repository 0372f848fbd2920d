"""Lateral-torsional buckling of the half ribbon and the resulting finger span.

Sign convention: the printed deflection integral is negative for a positive
amplitude; the span uses its magnitude so that prestressing opens the
fingers outward.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

from .model import (
    AmplitudeClosure,
    AssemblyConfig,
    Calibrated,
    Material,
    RibbonGeometry,
    SectionMode,
    SectionProperties,
    Shortening,
    section_properties,
)
from .numerics import QUAD_TOLERANCE, Tolerance, bessel_j_quarter, find_root, integrate

__all__ = [
    "LTB_COEFFICIENT",
    "AmplitudeClosure",
    "Shortening",
    "Calibrated",
    "BuckledState",
    "ShapeIntegrals",
    "critical_load",
    "mode_shape",
    "deflection_profile",
    "DeflectionProfile",
    "shape_integrals",
    "end_shortening",
    "solve_amplitude",
    "tilt_reduction",
    "span",
]

LTB_COEFFICIENT = 5.5618


@dataclass(frozen=True)
class BuckledState:
    critical_load_Pcr: float
    amplitude_A1: float
    tip_deflection_u_l: float
    span_W: float
    span_untilted: float
    prestress_D: float
    closure: AmplitudeClosure
    mode: SectionMode


def critical_load(section: SectionProperties, geometry: RibbonGeometry) -> float:
    """P_cr = 5.5618 sqrt(E I C) / l**2."""
    l = geometry.half_length_l
    return LTB_COEFFICIENT * math.sqrt(section.bending_rigidity * section.torsional_rigidity_C) / l**2


def _argument_scale(Pcr: float, section: SectionProperties) -> float:
    # 0.5 * sqrt(Pcr^2 / (E I C)); multiplies (l - z)^2 in the Bessel argument
    return 0.5 * Pcr / math.sqrt(section.bending_rigidity * section.torsional_rigidity_C)


def mode_shape(z: float, A1: float, Pcr: float, section: SectionProperties, l: float) -> float:
    """Lateral rotation angle phi(z) of the buckled half ribbon, 0 <= z <= l."""
    if not 0.0 <= z <= l:
        raise ValueError(f"mode_shape: z = {z!r} outside [0, {l!r}]")
    s = l - z
    if s == 0.0:
        return 0.0
    return math.sqrt(s) * A1 * bessel_j_quarter(_argument_scale(Pcr, section) * s * s)


class DeflectionProfile:
    """u(a) = -(P_cr / EI) * int_0^a int_0^s phi(z) (l - z) dz ds, by nested quadrature."""

    def __init__(self, A1: float, Pcr: float, section: SectionProperties, l: float,
                 tol: Tolerance = QUAD_TOLERANCE):
        self.A1 = A1
        self.Pcr = Pcr
        self.section = section
        self.l = l
        self.tol = tol
        self._k = _argument_scale(Pcr, section)
        self._prefactor = -Pcr / section.bending_rigidity

    def _integrand(self, z: float) -> float:
        s = self.l - z
        if s <= 0.0:
            return 0.0
        return math.sqrt(s) * bessel_j_quarter(self._k * s * s) * s

    def _inner(self, a: float) -> float:
        return integrate(self._integrand, 0.0, a, self.tol)

    def slope(self, a: float) -> float:
        """du/dz at z = a."""
        self._check(a)
        if self.A1 == 0.0:
            return 0.0
        return self._prefactor * self.A1 * self._inner(a)

    def __call__(self, a: float) -> float:
        self._check(a)
        if self.A1 == 0.0 or a == 0.0:
            return 0.0
        return self._prefactor * self.A1 * integrate(self._inner, 0.0, a, self.tol)

    def _check(self, a: float) -> None:
        if not 0.0 <= a <= self.l:
            raise ValueError(f"deflection profile evaluated at {a!r} outside [0, {self.l!r}]")


def deflection_profile(A1: float, Pcr: float, section: SectionProperties, l: float,
                       tol: Tolerance = QUAD_TOLERANCE) -> DeflectionProfile:
    return DeflectionProfile(A1, Pcr, section, l, tol)


@dataclass(frozen=True)
class ShapeIntegrals:
    """Dimensionless integrals of the unit mode shape on [0, 1].

    With zeta = z / l and g(sigma) = int_0^sigma sqrt(1-zeta) J(k (1-zeta)^2) (1-zeta) dzeta:
    ``tip`` = int_0^1 g and ``slope_sq`` = int_0^1 g^2.
    """

    tip: float
    slope_sq: float


@functools.lru_cache(maxsize=64)
def _shape_integrals_cached(k: float) -> ShapeIntegrals:
    tol = QUAD_TOLERANCE

    def f(zeta: float) -> float:
        s = 1.0 - zeta
        if s <= 0.0:
            return 0.0
        return math.sqrt(s) * bessel_j_quarter(k * s * s) * s

    def g(sigma: float) -> float:
        return integrate(f, 0.0, sigma, tol)

    tip = integrate(g, 0.0, 1.0, tol)
    slope_sq = integrate(lambda sigma: g(sigma) ** 2, 0.0, 1.0, tol)
    return ShapeIntegrals(tip=tip, slope_sq=slope_sq)


def shape_integrals(Pcr: float, section: SectionProperties, l: float) -> ShapeIntegrals:
    # Argument scale in zeta units; 2.7809 whenever Pcr comes from critical_load.
    k = _argument_scale(Pcr, section) * l * l
    return _shape_integrals_cached(float(f"{k:.12g}"))


def _tip_deflection(A1: float, Pcr: float, section: SectionProperties, l: float) -> float:
    if A1 == 0.0:
        return 0.0
    si = shape_integrals(Pcr, section, l)
    return -(Pcr / section.bending_rigidity) * A1 * l**3.5 * si.tip


def end_shortening(A1: float, Pcr: float, section: SectionProperties, l: float) -> float:
    """Axial shortening 0.5 * int_0^l u'(z)^2 dz produced by the lateral deflection."""
    if A1 == 0.0:
        return 0.0
    si = shape_integrals(Pcr, section, l)
    return 0.5 * (Pcr / section.bending_rigidity) ** 2 * A1 * A1 * l**6 * si.slope_sq


def tilt_reduction(half_length_l: float, tilt_angle: float) -> float:
    """Span lost to an inward tilt: rigid rotation of both fingers about their mounts."""
    return 2.0 * half_length_l * math.sin(tilt_angle)


def solve_amplitude(
    D: float,
    closure: AmplitudeClosure,
    Pcr: float,
    section: SectionProperties,
    geometry: RibbonGeometry,
    install_gap_Lf: float | None = None,
) -> float:
    """Mode amplitude A1 >= 0 for prestressing distance ``D``.

    ``install_gap_Lf`` is needed by the calibrated closure only.
    """
    if D < 0:
        raise ValueError(f"prestress D must be >= 0, got {D!r}")
    if D == 0.0:
        return 0.0
    l = geometry.half_length_l

    if isinstance(closure, Shortening):
        target = 0.5 * D

        def residual(A1: float) -> float:
            return end_shortening(A1, Pcr, section, l) - target

        hi = 1.0
        for _ in range(400):
            if residual(hi) >= 0.0:
                break
            hi *= 4.0
        else:
            raise ValueError(f"solve_amplitude: no amplitude bracket found for D = {D!r}")
        return find_root(residual, 0.0, hi)

    if isinstance(closure, Calibrated):
        if install_gap_Lf is None:
            raise ValueError("calibrated closure requires the installation gap")
        u_unit = abs(_tip_deflection(1.0, Pcr, section, l))
        opening = closure.W_ref + tilt_reduction(l, closure.tilt_ref) - install_gap_Lf
        if not opening > 0:
            raise ValueError(
                f"calibration datum W_ref = {closure.W_ref * 1e3:.6g} mm at tilt "
                f"{math.degrees(closure.tilt_ref):.6g} deg is not wider than the "
                f"installation gap {install_gap_Lf * 1e3:.6g} mm"
            )
        A_ref = opening / (2.0 * u_unit)
        if D == closure.D_ref:
            return A_ref
        return A_ref * math.sqrt(D / closure.D_ref)

    raise TypeError(f"unknown amplitude closure {closure!r}")


def span(
    config: AssemblyConfig,
    material: Material,
    geometry: RibbonGeometry,
    mode: SectionMode = SectionMode.THIN_STRIP,
) -> BuckledState:
    """Buckled state and finger span W for one assembly."""
    section = section_properties(material, geometry, mode)
    Pcr = critical_load(section, geometry)
    l = geometry.half_length_l
    D = config.prestress_D
    A1 = solve_amplitude(D, config.closure, Pcr, section, geometry, config.install_gap_Lf)
    u_l = _tip_deflection(A1, Pcr, section, l)
    W_untilted = config.install_gap_Lf + 2.0 * abs(u_l)
    W = max(W_untilted - tilt_reduction(l, config.tilt_angle), 0.0)
    return BuckledState(
        critical_load_Pcr=Pcr,
        amplitude_A1=A1,
        tip_deflection_u_l=u_l,
        span_W=W,
        span_untilted=W_untilted,
        prestress_D=D,
        closure=config.closure,
        mode=mode,
    )
