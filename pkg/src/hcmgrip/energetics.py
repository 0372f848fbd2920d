"""Snap-through timescale and bistable energy barrier."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Material, RibbonGeometry

__all__ = ["SnapMetrics", "snap_time", "energy_barrier", "snap_metrics"]


@dataclass(frozen=True)
class SnapMetrics:
    snap_time: float
    energy_barrier: float


def snap_time(material: Material, geometry: RibbonGeometry) -> float:
    """Order-of-magnitude closing time t* = (2l)^2 / (t sqrt(E / rho))."""
    wave_speed = math.sqrt(material.youngs_modulus / material.density)
    return (2.0 * geometry.half_length_l) ** 2 / (geometry.thickness_t * wave_speed)


def energy_barrier(Pcr: float, D: float) -> float:
    """Energy released per snap, 6 * P_cr * D."""
    if D < 0:
        raise ValueError(f"prestress D must be >= 0, got {D!r}")
    return 6.0 * Pcr * D


def snap_metrics(material: Material, geometry: RibbonGeometry, Pcr: float, D: float) -> SnapMetrics:
    return SnapMetrics(snap_time=snap_time(material, geometry), energy_barrier=energy_barrier(Pcr, D))
