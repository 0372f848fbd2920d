"""Domain types for the ribbon material, geometry, section and assembly.

Everything here is stored in SI base units (m, kg, s, N, Pa, rad).
Conversion from mm/MPa/deg happens at the config boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

# Max thickness/width ratio for the narrow-strip assumption.
MAX_SLENDERNESS = 0.5

# The printed torsional rigidity G*h**3/3 is one length short of N*m**2.
# It is evaluated the way the published constants are quoted, in N-mm units,
# which amounts to multiplying by a 1 mm reference length.
AS_PRINTED_REFERENCE_LENGTH = 1e-3


class SectionMode(enum.Enum):
    """Which formulas to use for the ribbon's section constants.

    ``AS_PRINTED`` uses I = h**3 t / 12 and C = G h**3 / 3 literally.
    ``THIN_STRIP`` uses the narrow rectangle results I = h t**3 / 12 and
    C = G h t**3 / 3.
    """

    AS_PRINTED = "as_printed"
    THIN_STRIP = "thin_strip"


@dataclass(frozen=True)
class Material:
    youngs_modulus: float
    poisson_ratio: float
    density: float

    def __post_init__(self):
        if not self.youngs_modulus > 0:
            raise ValueError(f"youngs_modulus must be > 0, got {self.youngs_modulus!r}")
        if not 0 <= self.poisson_ratio < 0.5:
            raise ValueError(
                f"poisson_ratio must satisfy 0 <= nu < 0.5, got {self.poisson_ratio!r}"
            )
        if not self.density > 0:
            raise ValueError(f"density must be > 0, got {self.density!r}")

    @classmethod
    def petg(cls, density: float = 1270.0) -> "Material":
        """PETG ribbon stock: E = 1730 MPa, nu = 0.38, rho = 1270 kg/m^3."""
        return cls(youngs_modulus=1730e6, poisson_ratio=0.38, density=density)

    @property
    def shear_modulus(self) -> float:
        return shear_modulus(self)


@dataclass(frozen=True)
class RibbonGeometry:
    width_h: float
    thickness_t: float
    half_length_l: float
    check_slenderness: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.thickness_t > 0:
            raise ValueError(f"thickness_t must be > 0, got {self.thickness_t!r}")
        if not self.half_length_l > 0:
            raise ValueError(f"half_length_l must be > 0, got {self.half_length_l!r}")
        if self.check_slenderness:
            _check_slenderness(self)
        elif self.width_h < self.thickness_t:
            raise ValueError("width_h must be >= thickness_t")

    @classmethod
    def reference_design(cls) -> "RibbonGeometry":
        """The 15 mm x 0.762 mm ribbon with a 93.7 mm effective half-length."""
        return cls(width_h=15e-3, thickness_t=0.762e-3, half_length_l=93.7e-3)

    def scaled(self, s: float) -> "RibbonGeometry":
        return RibbonGeometry(
            self.width_h * s,
            self.thickness_t * s,
            self.half_length_l * s,
            check_slenderness=self.check_slenderness,
        )


def _check_slenderness(geometry: RibbonGeometry) -> None:
    h, t = geometry.width_h, geometry.thickness_t
    if not h > t:
        raise ValueError(f"width_h ({h!r} m) must exceed thickness_t ({t!r} m)")
    if not t / h < MAX_SLENDERNESS:
        raise ValueError(
            f"thickness/width = {t / h:.4g} violates the narrow-strip assumption "
            f"(must be < {MAX_SLENDERNESS})"
        )


@dataclass(frozen=True)
class SectionProperties:
    """Section constants of the ribbon.

    ``bending_rigidity`` is E * moment_I, carried along so that the critical
    load and the mode shape can be evaluated from the section alone.
    """

    moment_I: float
    torsional_rigidity_C: float
    mode: SectionMode
    bending_rigidity: float

    def __post_init__(self):
        if not (self.moment_I > 0 and self.torsional_rigidity_C > 0 and self.bending_rigidity > 0):
            raise ValueError("section constants must be positive")


@dataclass(frozen=True)
class Shortening:
    """Fix the amplitude so lateral deflection consumes D/2 of axial length per half ribbon."""

    name = "shortening"


@dataclass(frozen=True)
class Calibrated:
    """Anchor the amplitude to one measured (D, W, tilt) datum, then scale as sqrt(D)."""

    D_ref: float = 20e-3
    W_ref: float = 86e-3
    tilt_ref: float = math.radians(10.0)

    name = "calibrated"

    def __post_init__(self):
        if not self.D_ref > 0:
            raise ValueError(f"calibration D_ref must be > 0, got {self.D_ref!r}")
        if not self.W_ref > 0:
            raise ValueError(f"calibration W_ref must be > 0, got {self.W_ref!r}")
        if not 0 <= self.tilt_ref < math.pi / 2:
            raise ValueError("calibration tilt_ref must lie in [0, pi/2)")


AmplitudeClosure = Union[Shortening, Calibrated]


@dataclass(frozen=True)
class AssemblyConfig:
    install_gap_Lf: float
    prestress_D: float
    tilt_angle: float = 0.0
    closure: AmplitudeClosure = field(default_factory=Shortening)

    def __post_init__(self):
        if not self.install_gap_Lf > 0:
            raise ValueError(f"install_gap_Lf must be > 0, got {self.install_gap_Lf!r}")
        if not self.prestress_D >= 0:
            raise ValueError(f"prestress_D must be >= 0, got {self.prestress_D!r}")
        if not 0 <= self.tilt_angle < math.pi / 2:
            raise ValueError(f"tilt_angle must lie in [0, pi/2), got {self.tilt_angle!r}")


def shear_modulus(material: Material) -> float:
    """Isotropic shear modulus G = E / (2 (1 + nu))."""
    return material.youngs_modulus / (2.0 * (1.0 + material.poisson_ratio))


def section_properties(
    material: Material,
    geometry: RibbonGeometry,
    mode: SectionMode = SectionMode.THIN_STRIP,
) -> SectionProperties:
    if geometry.check_slenderness:
        _check_slenderness(geometry)
    G = shear_modulus(material)
    h, t = geometry.width_h, geometry.thickness_t
    if mode is SectionMode.THIN_STRIP:
        I = h * t**3 / 12.0
        C = G * h * t**3 / 3.0
    elif mode is SectionMode.AS_PRINTED:
        I = h**3 * t / 12.0
        C = G * h**3 * AS_PRINTED_REFERENCE_LENGTH / 3.0
    else:
        raise ValueError(f"unknown section mode {mode!r}")
    return SectionProperties(
        moment_I=I,
        torsional_rigidity_C=C,
        mode=mode,
        bending_rigidity=material.youngs_modulus * I,
    )
