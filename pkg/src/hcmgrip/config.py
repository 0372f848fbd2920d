"""Run configuration: an INI-style file with named sections.

Values are written in engineering units (mm, MPa, deg, g, ms) and converted
to SI when model objects are built. Numeric entries in [geometry] and
[assembly] may be ranges written ``lo:hi:steps`` (used by ``optimize``).
See ``docs/config.md`` for the grammar.
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Union

from .design import Constraints, DesignSpace, ParamRange
from .grasp import ObjectKind, ObjectSpec
from .model import (
    AssemblyConfig,
    Calibrated,
    Material,
    RibbonGeometry,
    SectionMode,
    Shortening,
)

MM = 1e-3
MPA = 1e6


class ConfigError(ValueError):
    """Invalid or unreadable run configuration."""


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    steps: int

    def __str__(self):
        return f"{self.lo!r}:{self.hi!r}:{self.steps}"


Number = Union[float, Range]


@dataclass(frozen=True)
class MaterialSection:
    youngs_modulus_mpa: float = 1730.0
    poisson_ratio: float = 0.38
    density_kg_m3: float = 1270.0


@dataclass(frozen=True)
class GeometrySection:
    width_h_mm: Number = 15.0
    thickness_t_mm: Number = 0.762
    half_length_l_mm: Number = 93.7


@dataclass(frozen=True)
class AssemblySection:
    install_gap_mm: float = 48.0
    prestress_D_mm: Number = 20.0
    tilt_deg: float = 0.0
    section_mode: str = "thin_strip"
    closure: str = "shortening"
    calibration_D_mm: float = 20.0
    calibration_W_mm: float = 86.0
    calibration_tilt_deg: float = 10.0


@dataclass(frozen=True)
class ObjectSection:
    kind: str = "rigid3d"
    label: str = ""
    mass_g: float = 0.0
    mu_finger_object: float = 0.5
    mu_object_ground: float = 0.0
    bending_rigidity_per_width_uNm: float = 0.0
    engaged_width_mm: float = 0.0


@dataclass(frozen=True)
class ForcesSection:
    pinch_N: Optional[float] = None
    peak_N: Optional[float] = None
    normal_N: Optional[float] = None


@dataclass(frozen=True)
class ConstraintsSection:
    min_span_mm: Optional[float] = None
    max_snap_time_ms: Optional[float] = None
    max_Pcr_N: Optional[float] = None
    max_energy_barrier_J: Optional[float] = None
    min_fatigue_cycles: Optional[float] = None


@dataclass(frozen=True)
class ReferenceSection:
    span_mm: float = 86.0
    measured_snap_ms: float = 45.8
    measured_snap_std_ms: float = 6.7
    theory_snap_ms: float = 53.0
    baseline_span_mm: float = 32.0
    baseline_close_ms: float = 500.0


@dataclass(frozen=True)
class OutputSection:
    format: str = "text"
    path: str = ""
    precision: Optional[int] = None


@dataclass(frozen=True)
class RunConfig:
    material: MaterialSection = field(default_factory=MaterialSection)
    geometry: GeometrySection = field(default_factory=GeometrySection)
    assembly: AssemblySection = field(default_factory=AssemblySection)
    object: Optional[ObjectSection] = None
    forces: ForcesSection = field(default_factory=ForcesSection)
    constraints: ConstraintsSection = field(default_factory=ConstraintsSection)
    reference: ReferenceSection = field(default_factory=ReferenceSection)
    output: OutputSection = field(default_factory=OutputSection)

    # -- model builders -----------------------------------------------------

    def build_material(self) -> Material:
        m = self.material
        return Material(m.youngs_modulus_mpa * MPA, m.poisson_ratio, m.density_kg_m3)

    def build_geometry(self) -> RibbonGeometry:
        g = self.geometry
        return RibbonGeometry(
            width_h=_point(g.width_h_mm, "geometry.width_h_mm") * MM,
            thickness_t=_point(g.thickness_t_mm, "geometry.thickness_t_mm") * MM,
            half_length_l=_point(g.half_length_l_mm, "geometry.half_length_l_mm") * MM,
        )

    def build_mode(self) -> SectionMode:
        return SectionMode(self.assembly.section_mode)

    def build_closure(self):
        a = self.assembly
        if a.closure == "shortening":
            return Shortening()
        return Calibrated(
            D_ref=a.calibration_D_mm * MM,
            W_ref=a.calibration_W_mm * MM,
            tilt_ref=math.radians(a.calibration_tilt_deg),
        )

    def build_assembly(self) -> AssemblyConfig:
        a = self.assembly
        return AssemblyConfig(
            install_gap_Lf=a.install_gap_mm * MM,
            prestress_D=_point(a.prestress_D_mm, "assembly.prestress_D_mm") * MM,
            tilt_angle=math.radians(a.tilt_deg),
            closure=self.build_closure(),
        )

    def build_space(self) -> DesignSpace:
        g, a = self.geometry, self.assembly
        return DesignSpace(
            material=self.build_material(),
            prestress_D=_param_range(a.prestress_D_mm),
            thickness_t=_param_range(g.thickness_t_mm),
            width_h=_param_range(g.width_h_mm),
            half_length_l=_param_range(g.half_length_l_mm),
            install_gap_Lf=a.install_gap_mm * MM,
            tilt_angle=math.radians(a.tilt_deg),
            mode=self.build_mode(),
            closure=self.build_closure(),
        )

    def build_object(self) -> Optional[ObjectSpec]:
        o = self.object
        if o is None:
            return None
        return object_from_section(o)

    def build_constraints(self) -> Constraints:
        c = self.constraints
        return Constraints(
            min_span=None if c.min_span_mm is None else c.min_span_mm * MM,
            max_snap_time=None if c.max_snap_time_ms is None else c.max_snap_time_ms * 1e-3,
            max_Pcr=c.max_Pcr_N,
            max_energy_barrier=c.max_energy_barrier_J,
            min_fatigue_cycles=c.min_fatigue_cycles,
        )


def object_from_section(o: ObjectSection) -> ObjectSpec:
    return ObjectSpec(
        kind=ObjectKind(o.kind),
        mass=o.mass_g * 1e-3,
        mu_finger_object=o.mu_finger_object,
        mu_object_ground=o.mu_object_ground,
        fabric_bending_rigidity=o.bending_rigidity_per_width_uNm * 1e-6,
        engaged_width=o.engaged_width_mm * MM,
        label=o.label,
    )


def _point(value: Number, name: str) -> float:
    if isinstance(value, Range):
        raise ConfigError(f"{name} is a range ({value}); this command needs a single value")
    return value


def _param_range(value: Number) -> ParamRange:
    if isinstance(value, Range):
        return ParamRange(value.lo * MM, value.hi * MM, value.steps)
    return ParamRange.point(value * MM)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_SECTIONS = {
    "material": MaterialSection,
    "geometry": GeometrySection,
    "assembly": AssemblySection,
    "object": ObjectSection,
    "forces": ForcesSection,
    "constraints": ConstraintsSection,
    "reference": ReferenceSection,
    "output": OutputSection,
}
_RANGED = {
    ("geometry", "width_h_mm"),
    ("geometry", "thickness_t_mm"),
    ("geometry", "half_length_l_mm"),
    ("assembly", "prestress_D_mm"),
}
_CHOICES = {
    ("assembly", "section_mode"): tuple(m.value for m in SectionMode),
    ("assembly", "closure"): ("shortening", "calibrated"),
    ("object", "kind"): tuple(k.value for k in ObjectKind),
    ("output", "format"): ("text", "csv", "json"),
}


class _Locator:
    """Maps (section, key) to the line it was read from, for diagnostics."""

    def __init__(self, text: str, source: str):
        self.source = source
        self.lines = {}
        section = None
        for i, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            m = re.match(r"\[([^\]]+)\]", line)
            if m:
                section = m.group(1).strip().lower()
                self.lines[(section, None)] = i
                continue
            m = re.match(r"([^=:#;\s][^=:]*?)\s*[=:]", line)
            if m and section is not None:
                self.lines.setdefault((section, m.group(1).strip().lower()), i)

    def where(self, section: str, key: Optional[str] = None) -> str:
        lkey = key.lower() if key else None
        line = self.lines.get((section, lkey)) or self.lines.get((section, None))
        loc = f"{self.source}:{line}" if line else self.source
        return f"{loc}: [{section}]" + (f" {key}" if key else "")


def _convert(section: str, key: str, raw: str, ftype, where: str):
    raw = raw.strip()
    typename = str(ftype)
    optional = "Optional" in typename or "None" in typename
    if optional and raw == "":
        return None
    choices = _CHOICES.get((section, key))
    if choices is not None:
        value = raw.lower()
        if value not in choices:
            raise ConfigError(f"{where}: {raw!r} is not one of {', '.join(choices)}")
        return value
    if "str" in typename:
        return raw
    if "int" in typename and "float" not in typename:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{where}: expected an integer, got {raw!r}") from None
    if (section, key) in _RANGED and ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{where}: range must be lo:hi:steps, got {raw!r}")
        try:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ConfigError(f"{where}: range must be lo:hi:steps, got {raw!r}") from None
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo or steps < 1:
            raise ConfigError(f"{where}: invalid range {raw!r}")
        return Range(lo, hi, steps)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{where}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{where}: value must be finite, got {raw!r}")
    return value


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"), empty_lines_in_values=False
    )
    parser.optionxform = str.lower
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    loc = _Locator(text, source)

    sections = {}
    for name in parser.sections():
        lname = name.lower()
        if lname not in _SECTIONS:
            raise ConfigError(
                f"{loc.where(lname)}: unknown section; expected one of {', '.join(_SECTIONS)}"
            )
        cls = _SECTIONS[lname]
        known = {f.name.lower(): f for f in fields(cls)}
        values = {}
        for key, raw in parser.items(name):
            f = known.get(key)
            if f is None:
                raise ConfigError(
                    f"{loc.where(lname, key)}: unknown key; expected one of "
                    f"{', '.join(sorted(known))}"
                )
            values[f.name] = _convert(lname, f.name, raw, f.type, loc.where(lname, f.name))
        sections[lname] = cls(**values)

    cfg = RunConfig(**sections)
    validate(cfg, loc)
    return cfg


def load_config(path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {str(p)!r}: {exc.strerror}") from None
    return parse_config_text(text, source=str(p))


def _corners(value: Number) -> list:
    if isinstance(value, Range):
        return [value.lo, value.hi]
    return [value]


def validate(cfg: RunConfig, loc: Optional[_Locator] = None) -> None:
    """Surface model invariants as ConfigErrors naming the offending field."""
    loc = loc or _Locator("", "<config>")

    def fail(section, key, exc):
        raise ConfigError(f"{loc.where(section, key)}: {exc}") from None

    try:
        cfg.build_material()
    except ValueError as exc:
        stems = {"youngs_modulus": "youngs_modulus_mpa", "poisson_ratio": "poisson_ratio",
                 "density": "density_kg_m3"}
        fail("material", next((v for k, v in stems.items() if k in str(exc)), None), exc)

    g = cfg.geometry
    for h in _corners(g.width_h_mm):
        for t in _corners(g.thickness_t_mm):
            for l in _corners(g.half_length_l_mm):
                try:
                    RibbonGeometry(h * MM, t * MM, l * MM)
                except ValueError as exc:
                    key = "thickness_t_mm"
                    if "half_length" in str(exc):
                        key = "half_length_l_mm"
                    fail("geometry", key, exc)

    a = cfg.assembly
    for D in _corners(a.prestress_D_mm):
        try:
            AssemblyConfig(a.install_gap_mm * MM, D * MM, math.radians(a.tilt_deg))
        except ValueError as exc:
            key = {"install_gap": "install_gap_mm", "prestress": "prestress_D_mm",
                   "tilt": "tilt_deg"}
            name = next((v for k, v in key.items() if k in str(exc)), None)
            fail("assembly", name, exc)
    try:
        cfg.build_closure()
    except ValueError as exc:
        fail("assembly", "closure", exc)

    if cfg.object is not None:
        try:
            cfg.build_object()
        except ValueError as exc:
            fail("object", None, exc)
    try:
        cfg.build_constraints()
    except ValueError as exc:
        fail("constraints", None, exc)
    if cfg.output.precision is not None and not 1 <= cfg.output.precision <= 17:
        fail("output", "precision", "precision must be between 1 and 17")


# ---------------------------------------------------------------------------
# Dumping
# ---------------------------------------------------------------------------

def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(cfg: RunConfig) -> str:
    """Canonical text form; ``parse_config_text(dump_config(c)) == c``."""
    out = []
    for name in _SECTIONS:
        section = getattr(cfg, name)
        if section is None:
            continue
        out.append(f"[{name}]")
        for f in fields(section):
            out.append(f"{f.name} = {_format_value(getattr(section, f.name))}".rstrip())
        out.append("")
    return "\n".join(out)


def with_object(cfg: RunConfig, obj: ObjectSection) -> RunConfig:
    return replace(cfg, object=obj)
