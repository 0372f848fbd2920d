"""Design and analysis of prestressed bistable ("hair-clip") gripper fingers."""

from .buckling import (
    BuckledState,
    critical_load,
    deflection_profile,
    mode_shape,
    solve_amplitude,
    span,
)
from .design import (
    Constraints,
    DesignSpace,
    Objective,
    ParamRange,
    fatigue_advisory,
    optimize,
    sweep,
)
from .energetics import SnapMetrics, energy_barrier, snap_time
from .grasp import GripperForces, ObjectKind, ObjectSpec, grasp_feasibility
from .model import (
    AssemblyConfig,
    Calibrated,
    Material,
    RibbonGeometry,
    SectionMode,
    SectionProperties,
    Shortening,
    section_properties,
    shear_modulus,
)

__version__ = "0.1.0"
