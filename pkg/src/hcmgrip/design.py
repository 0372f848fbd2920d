"""Design-space sweeps, constrained grid-then-refine search and a fatigue advisory."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

from .buckling import BuckledState, span
from .energetics import SnapMetrics, snap_metrics
from .model import (
    AmplitudeClosure,
    AssemblyConfig,
    Material,
    RibbonGeometry,
    SectionMode,
    Shortening,
)
from .numerics import ConvergenceError, Tolerance, minimize_scalar

__all__ = [
    "PARAMETERS",
    "ParamRange",
    "DesignSpace",
    "DesignPoint",
    "Constraints",
    "Objective",
    "SweepRow",
    "SweepTable",
    "OptimizationResult",
    "FatigueAdvisory",
    "evaluate",
    "grid",
    "sweep",
    "optimize",
    "objective_value",
    "fatigue_advisory",
]

# Design axes in enumeration order.
PARAMETERS = ("D", "t", "h", "l")


@dataclass(frozen=True)
class ParamRange:
    lo: float
    hi: float
    steps: int = 1

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty range [{self.lo!r}, {self.hi!r}]")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.lo == self.hi and self.steps != 1:
            object.__setattr__(self, "steps", 1)

    @classmethod
    def point(cls, value: float) -> "ParamRange":
        return cls(value, value, 1)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def values(self, steps: Optional[int] = None) -> list[float]:
        n = self.steps if steps is None else steps
        if self.is_point:
            return [self.lo]
        if n == 1:
            return [self.lo]
        return [self.hi if i == n - 1 else self.lo + (self.hi - self.lo) * i / (n - 1)
                for i in range(n)]


@dataclass(frozen=True)
class DesignSpace:
    material: Material
    prestress_D: ParamRange
    thickness_t: ParamRange
    width_h: ParamRange
    half_length_l: ParamRange
    install_gap_Lf: float = 48.0e-3
    tilt_angle: float = 0.0
    mode: SectionMode = SectionMode.THIN_STRIP
    closure: AmplitudeClosure = field(default_factory=Shortening)

    def range_of(self, name: str) -> ParamRange:
        return {
            "D": self.prestress_D,
            "t": self.thickness_t,
            "h": self.width_h,
            "l": self.half_length_l,
        }[_check_name(name)]

    def with_range(self, name: str, rng: ParamRange) -> "DesignSpace":
        attr = {"D": "prestress_D", "t": "thickness_t", "h": "width_h", "l": "half_length_l"}
        return replace(self, **{attr[_check_name(name)]: rng})

    @property
    def ranged(self) -> tuple:
        return tuple(p for p in PARAMETERS if not self.range_of(p).is_point)


def _check_name(name: str) -> str:
    if name not in PARAMETERS:
        raise ValueError(f"unknown design parameter {name!r}; expected one of {PARAMETERS}")
    return name


@dataclass(frozen=True)
class FatigueAdvisory:
    """Coarse cycle-life estimate; not a physics output."""

    thickness_t: float
    cycles: float
    extrapolated: bool
    envelope: tuple = (460.0, 20000.0)
    prestress_scope: float = 20e-3
    tag: str = "ADVISORY"


# Published band: 460 to 20000 cycles for t = 0.381 to 1.524 mm at D = 20 mm.
# Thinner ribbons are assumed to last longer (bending strain grows with t).
_FATIGUE_T = (0.381e-3, 1.524e-3)
_FATIGUE_CYCLES = (20000.0, 460.0)


def fatigue_advisory(thickness_t: float) -> FatigueAdvisory:
    """Log-log interpolation of cycle life between the published thickness endpoints."""
    if not thickness_t > 0:
        raise ValueError(f"thickness_t must be > 0, got {thickness_t!r}")
    (t0, t1), (n0, n1) = _FATIGUE_T, _FATIGUE_CYCLES
    frac = math.log(thickness_t / t0) / math.log(t1 / t0)
    if thickness_t == t0:
        cycles = n0
    elif thickness_t == t1:
        cycles = n1
    else:
        cycles = math.exp(math.log(n0) + frac * (math.log(n1) - math.log(n0)))
    return FatigueAdvisory(
        thickness_t=thickness_t,
        cycles=cycles,
        extrapolated=not (t0 <= thickness_t <= t1),
    )


@dataclass(frozen=True)
class DesignPoint:
    D: float
    t: float
    h: float
    l: float
    state: BuckledState
    metrics: SnapMetrics
    fatigue: FatigueAdvisory

    def params(self) -> dict:
        return {"D": self.D, "t": self.t, "h": self.h, "l": self.l}


def evaluate(space: DesignSpace, D: float, t: float, h: float, l: float) -> DesignPoint:
    geometry = RibbonGeometry(width_h=h, thickness_t=t, half_length_l=l)
    config = AssemblyConfig(
        install_gap_Lf=space.install_gap_Lf,
        prestress_D=D,
        tilt_angle=space.tilt_angle,
        closure=space.closure,
    )
    state = span(config, space.material, geometry, space.mode)
    metrics = snap_metrics(space.material, geometry, state.critical_load_Pcr, D)
    return DesignPoint(D=D, t=t, h=h, l=l, state=state, metrics=metrics,
                       fatigue=fatigue_advisory(t))


def grid(space: DesignSpace) -> Iterator[tuple]:
    """All grid parameter tuples (D, t, h, l) in deterministic order."""
    axes = [space.range_of(p).values() for p in PARAMETERS]
    return itertools.product(*axes)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    value: float
    point: Optional[DesignPoint]
    status: str


@dataclass(frozen=True)
class SweepTable:
    vary: str
    rows: tuple

    def __len__(self):
        return len(self.rows)


_PHYSICS_ERRORS = (ValueError, ArithmeticError)


def sweep(space: DesignSpace, vary: str, steps: Optional[int] = None) -> SweepTable:
    """Evaluate the design at uniform steps of one parameter.

    All other parameters must be single points. A failure at one step is
    recorded in that row's status and does not stop the sweep.
    """
    _check_name(vary)
    others = [p for p in space.ranged if p != vary]
    if others:
        raise ValueError(f"sweep varies only {vary!r} but {others} are ranged too")
    rng = space.range_of(vary)
    if rng.is_point:
        raise ValueError(f"parameter {vary!r} is not ranged")
    fixed = {p: space.range_of(p).lo for p in PARAMETERS}
    rows = []
    for value in rng.values(steps):
        params = dict(fixed, **{vary: value})
        try:
            point = evaluate(space, **params)
        except _PHYSICS_ERRORS as exc:
            rows.append(SweepRow(value=value, point=None, status=f"error: {exc}"))
        else:
            rows.append(SweepRow(value=value, point=point, status="ok"))
    return SweepTable(vary=vary, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Optimization
# ---------------------------------------------------------------------------

class Objective(enum.Enum):
    MAX_SPAN = "max_span"
    MIN_SNAP_TIME = "min_snap_time"
    MIN_ENERGY_BARRIER = "min_energy_barrier"


def objective_value(point: DesignPoint, objective: Objective) -> float:
    """Score to minimize."""
    if objective is Objective.MAX_SPAN:
        return -point.state.span_W
    if objective is Objective.MIN_SNAP_TIME:
        return point.metrics.snap_time
    if objective is Objective.MIN_ENERGY_BARRIER:
        return point.metrics.energy_barrier
    raise ValueError(f"unknown objective {objective!r}")


CONSTRAINT_SLACK = 1e-9


@dataclass(frozen=True)
class Constraints:
    min_span: Optional[float] = None
    max_snap_time: Optional[float] = None
    max_Pcr: Optional[float] = None
    max_energy_barrier: Optional[float] = None
    min_fatigue_cycles: Optional[float] = None

    def __post_init__(self):
        for name in self._names():
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise ValueError(f"constraint {name} must be positive, got {value!r}")

    @staticmethod
    def _names() -> tuple:
        return ("min_span", "max_snap_time", "max_Pcr", "max_energy_barrier", "min_fatigue_cycles")

    def measured(self, point: DesignPoint) -> dict:
        return {
            "min_span": point.state.span_W,
            "max_snap_time": point.metrics.snap_time,
            "max_Pcr": point.state.critical_load_Pcr,
            "max_energy_barrier": point.metrics.energy_barrier,
            "min_fatigue_cycles": point.fatigue.cycles,
        }

    def violations(self, point: DesignPoint) -> list:
        out = []
        values = self.measured(point)
        for name in self._names():
            bound = getattr(self, name)
            if bound is None:
                continue
            v = values[name]
            if name.startswith("min_"):
                ok = v >= bound * (1.0 - CONSTRAINT_SLACK)
            else:
                ok = v <= bound * (1.0 + CONSTRAINT_SLACK)
            if not ok:
                out.append(name)
        return out

    def active(self) -> dict:
        return {n: getattr(self, n) for n in self._names() if getattr(self, n) is not None}


@dataclass(frozen=True)
class OptimizationResult:
    feasible: bool
    point: Optional[DesignPoint]
    grid_winner: Optional[DesignPoint]
    objective: Objective
    score: Optional[float]
    evaluated: int
    binding: tuple = ()
    violation_counts: dict = field(default_factory=dict)


@dataclass
class _Scorer:
    space: DesignSpace
    constraints: Constraints
    objective: Objective
    calls: int = 0

    def point(self, params: dict) -> Optional[DesignPoint]:
        self.calls += 1
        try:
            return evaluate(self.space, **params)
        except _PHYSICS_ERRORS:
            return None

    def score(self, params: dict) -> float:
        p = self.point(params)
        if p is None or self.constraints.violations(p):
            return math.inf
        return objective_value(p, self.objective)


def _improves(new: float, old: float) -> bool:
    return new < old - 1e-12 * max(abs(old), 1e-300)


def optimize(
    space: DesignSpace,
    constraints: Constraints = Constraints(),
    objective: Objective = Objective.MAX_SPAN,
    refine: bool = True,
    max_passes: int = 20,
) -> OptimizationResult:
    """Grid enumeration, feasibility filter, then coordinate-wise golden-section refinement.

    Ties on the grid go to the first point in enumeration order. Refinement
    only moves when the objective strictly improves, so the result is never
    worse than any grid point.
    """
    scorer = _Scorer(space, constraints, objective)
    best = None
    best_score = math.inf
    counts = {name: 0 for name in constraints.active()}
    n_points = 0
    n_failed = 0
    for D, t, h, l in grid(space):
        n_points += 1
        point = scorer.point({"D": D, "t": t, "h": h, "l": l})
        if point is None:
            n_failed += 1
            continue
        bad = constraints.violations(point)
        for name in bad:
            counts[name] += 1
        if bad:
            continue
        s = objective_value(point, objective)
        if s < best_score:
            best, best_score = point, s

    if best is None:
        evaluated = n_points - n_failed
        binding = tuple(n for n, c in counts.items() if evaluated and c == evaluated)
        if not binding:
            binding = tuple(n for n, c in counts.items() if c > 0)
        return OptimizationResult(
            feasible=False, point=None, grid_winner=None, objective=objective, score=None,
            evaluated=scorer.calls, binding=binding, violation_counts=counts,
        )

    current = best
    current_score = best_score
    if refine:
        for _ in range(max_passes):
            moved = False
            for name in space.ranged:
                rng = space.range_of(name)
                params = current.params()

                def along(x, name=name, params=params):
                    return scorer.score(dict(params, **{name: x}))

                tol = Tolerance(absolute=(rng.hi - rng.lo) * 1e-9, relative=0.0,
                                max_iterations=200)
                try:
                    x, s = minimize_scalar(along, rng.lo, rng.hi, tol)
                except ConvergenceError:
                    continue
                if _improves(s, current_score):
                    candidate = scorer.point(dict(params, **{name: x}))
                    if candidate is not None and not constraints.violations(candidate):
                        current, current_score = candidate, objective_value(candidate, objective)
                        moved = True
            if not moved:
                break

    return OptimizationResult(
        feasible=True, point=current, grid_winner=best, objective=objective,
        score=current_score, evaluated=scorer.calls, violation_counts=counts,
    )
