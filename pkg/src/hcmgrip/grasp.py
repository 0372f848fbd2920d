"""Grasp feasibility for rigid objects and limp sheets.

A rigid object only has to be liftable. A limp sheet additionally has to be
manipulable (grasp friction beats the friction under the sheet) and
wrinkleable (the fingers can buckle the sheet into a graspable cusp).
All inequalities are strict: a zero margin is infeasible.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

__all__ = [
    "GRAVITY",
    "EFFECTIVE_LENGTH_FACTOR",
    "ObjectKind",
    "ObjectSpec",
    "GripperForces",
    "CriterionResult",
    "GraspReport",
    "euler_fabric_load",
    "euler_fabric_load_literal",
    "bottom_friction",
    "check_liftable",
    "check_manipulable",
    "check_wrinkleable",
    "grasp_feasibility",
]

GRAVITY = 9.80665
EFFECTIVE_LENGTH_FACTOR = 0.65


class ObjectKind(enum.Enum):
    RIGID_3D = "rigid3d"
    SHEET_2D = "sheet2d"


@dataclass(frozen=True)
class ObjectSpec:
    """Object to be grasped.

    ``fabric_bending_rigidity`` is per unit width (N*m^2/m), as fabric data
    is usually quoted; multiplied by ``engaged_width`` it gives the sheet EI.
    """

    kind: ObjectKind
    mass: float
    mu_finger_object: float
    mu_object_ground: float = 0.0
    fabric_bending_rigidity: float = 0.0
    engaged_width: float = 0.0
    label: str = ""

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError(f"mass must be >= 0, got {self.mass!r}")
        if self.mu_finger_object < 0 or self.mu_object_ground < 0:
            raise ValueError("friction coefficients must be >= 0")
        if self.kind is ObjectKind.SHEET_2D:
            if not self.fabric_bending_rigidity > 0:
                raise ValueError("a sheet needs fabric_bending_rigidity > 0")
            if not self.engaged_width > 0:
                raise ValueError("a sheet needs engaged_width > 0")

    @property
    def weight(self) -> float:
        return self.mass * GRAVITY

    @property
    def fabric_EI(self) -> float:
        return self.fabric_bending_rigidity * self.engaged_width


@dataclass(frozen=True)
class GripperForces:
    pinch_force_F: float
    peak_force_Fmax: float
    normal_force_N: float

    def __post_init__(self):
        if not self.peak_force_Fmax >= self.pinch_force_F >= 0:
            raise ValueError(
                f"need peak_force_Fmax >= pinch_force_F >= 0, got "
                f"{self.peak_force_Fmax!r}, {self.pinch_force_F!r}"
            )
        if self.normal_force_N < 0:
            raise ValueError(f"normal_force_N must be >= 0, got {self.normal_force_N!r}")


@dataclass(frozen=True)
class CriterionResult:
    """Verdict of one criterion. ``applied=False`` means not applicable to the object."""

    name: str
    applied: bool
    verdict: Optional[bool] = None
    margin: Optional[float] = None
    inputs: dict = field(default_factory=dict)

    @classmethod
    def not_applicable(cls, name: str) -> "CriterionResult":
        return cls(name=name, applied=False)


@dataclass(frozen=True)
class GraspReport:
    label: str
    kind: ObjectKind
    liftable: CriterionResult
    manipulable: CriterionResult
    wrinkleable: CriterionResult
    overall: bool
    criteria_applied: tuple
    failing: tuple
    ambiguity_note: Optional[str] = None

    @property
    def criteria(self) -> tuple:
        return (self.liftable, self.manipulable, self.wrinkleable)


def euler_fabric_load(EI: float, span_W: float) -> float:
    """Euler load pi^2 EI / (0.65 W)^2 of the sheet spanning the finger gap."""
    if EI < 0:
        raise ValueError(f"EI must be >= 0, got {EI!r}")
    if not span_W > 0:
        raise ValueError(f"span_W must be > 0, got {span_W!r}")
    return math.pi**2 * EI / (EFFECTIVE_LENGTH_FACTOR * span_W) ** 2


def euler_fabric_load_literal(EI: float, span_W: float) -> float:
    """Alternative reading pi^2 EI / (0.65 W^2), i.e. 0.65 times the adopted load."""
    return math.pi**2 * EI / (EFFECTIVE_LENGTH_FACTOR * span_W**2)


def bottom_friction(obj: ObjectSpec) -> float:
    return obj.weight * obj.mu_object_ground


def check_liftable(forces: GripperForces, obj: ObjectSpec) -> CriterionResult:
    friction = 2.0 * forces.pinch_force_F * obj.mu_finger_object
    margin = friction - obj.weight
    return CriterionResult(
        name="liftable",
        applied=True,
        verdict=margin > 0,
        margin=margin,
        inputs={"grasp_friction_N": friction, "weight_N": obj.weight},
    )


def check_manipulable(forces: GripperForces, obj: ObjectSpec) -> CriterionResult:
    if obj.kind is not ObjectKind.SHEET_2D:
        return CriterionResult.not_applicable("manipulable")
    friction = forces.normal_force_N * obj.mu_finger_object
    bottom = bottom_friction(obj)
    margin = friction - bottom
    return CriterionResult(
        name="manipulable",
        applied=True,
        verdict=margin > 0,
        margin=margin,
        inputs={"grasp_friction_N": friction, "bottom_friction_N": bottom},
    )


def _wrinkle_slacks(forces: GripperForces, obj: ObjectSpec, P_E: float) -> tuple[float, float]:
    friction = forces.normal_force_N * obj.mu_finger_object
    return friction - P_E, forces.peak_force_Fmax - (P_E + bottom_friction(obj))


def check_wrinkleable(forces: GripperForces, obj: ObjectSpec, span_W: float) -> CriterionResult:
    if obj.kind is not ObjectKind.SHEET_2D:
        return CriterionResult.not_applicable("wrinkleable")
    P_E = euler_fabric_load(obj.fabric_EI, span_W)
    friction_slack, pinch_slack = _wrinkle_slacks(forces, obj, P_E)
    margin = min(friction_slack, pinch_slack)
    return CriterionResult(
        name="wrinkleable",
        applied=True,
        verdict=friction_slack > 0 and pinch_slack > 0,
        margin=margin,
        inputs={
            "euler_load_N": P_E,
            "grasp_friction_N": forces.normal_force_N * obj.mu_finger_object,
            "peak_force_N": forces.peak_force_Fmax,
            "bottom_friction_N": bottom_friction(obj),
            "span_W_m": span_W,
        },
    )


def _ambiguity_note(forces: GripperForces, obj: ObjectSpec, span_W: float) -> Optional[str]:
    # Flag when scaling the Euler load by a factor in [1/2, 2] would flip the verdict.
    P_E = euler_fabric_load(obj.fabric_EI, span_W)
    if P_E <= 0:
        return None
    friction = forces.normal_force_N * obj.mu_finger_object
    pinch = forces.peak_force_Fmax - bottom_friction(obj)
    flip_factor = min(friction, pinch) / P_E
    if not 0.5 <= flip_factor <= 2.0:
        return None
    literal = euler_fabric_load_literal(obj.fabric_EI, span_W)
    lit_verdict = friction > literal and pinch > literal
    return (
        f"wrinkleable verdict is within 2x of the Euler-load flip point "
        f"(flip at {flip_factor:.3g} x P_E). Adopted reading pi^2 EI/(0.65 W)^2 = "
        f"{P_E:.6g} N; literal reading pi^2 EI/(0.65 W^2) = {literal:.6g} N gives "
        f"verdict {lit_verdict}."
    )


def grasp_feasibility(state, forces: GripperForces, obj: ObjectSpec) -> GraspReport:
    """Compose the criteria that apply to ``obj``; ``state`` supplies the span.

    ``state`` is a BuckledState or anything with a ``span_W`` attribute.
    """
    span_W = state.span_W
    lift = check_liftable(forces, obj)
    manip = check_manipulable(forces, obj)
    wrinkle = (
        check_wrinkleable(forces, obj, span_W)
        if obj.kind is ObjectKind.SHEET_2D
        else CriterionResult.not_applicable("wrinkleable")
    )
    applied = tuple(c for c in (lift, manip, wrinkle) if c.applied)
    failing = tuple(c.name for c in applied if not c.verdict)
    note = _ambiguity_note(forces, obj, span_W) if obj.kind is ObjectKind.SHEET_2D else None
    return GraspReport(
        label=obj.label,
        kind=obj.kind,
        liftable=lift,
        manipulable=manip,
        wrinkleable=wrinkle,
        overall=not failing,
        criteria_applied=tuple(c.name for c in applied),
        failing=failing,
        ambiguity_note=note,
    )
