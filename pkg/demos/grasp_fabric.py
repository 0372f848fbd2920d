"""Can the gripper pick up a single cotton sheet? And a stiffer leather one?

Run:  python demos/grasp_fabric.py

A limp sheet must pass three checks. The grasp has to lift it. It has to
drag it against the table. It also has to buckle it into a fold the
fingertips can pinch. The last check depends on the span: a wider opening
buckles the sheet with less force, since the Euler load falls as 1/W^2.

This walks the pinch force through the measured fabric band (0.5 to 1.3 N)
and shows which check limits each case. The sheet properties come from the
bundled reference table. They are illustrative values, not measurements.

Cotton is limp enough to pass at every span. Leather is twenty times
stiffer, so at small prestress the weakest pinch cannot buckle it, and
opening the fingers wider is what rescues the grasp.
"""

import math

from hcmgrip import (
    AssemblyConfig,
    Calibrated,
    GripperForces,
    Material,
    RibbonGeometry,
    grasp_feasibility,
    span,
)
from hcmgrip.config import object_from_section
from hcmgrip.reference import load_reference_objects

material, geometry = Material.petg(), RibbonGeometry.reference_design()
states = {D_mm: span(AssemblyConfig(48e-3, D_mm * 1e-3, math.radians(10), Calibrated()),
                     material, geometry)
          for D_mm in (5, 20, 40)}

for key in ("cotton_single_sheet", "leather_sample"):
    ref = load_reference_objects()[key]
    sheet = object_from_section(ref.section)
    print(f"\n== {ref.label}: mass {sheet.mass * 1e3:g} g, EI {sheet.fabric_EI * 1e6:g} N*mm^2")
    print(f"   {ref.force_citation()}")
    for D_mm, state in states.items():
        print(f"D = {D_mm} mm, span {state.span_W * 1e3:.1f} mm")
        for F in (0.5, 0.9, 1.3):
            # the normal force is taken equal to the pinch force here
            report = grasp_feasibility(state, GripperForces(F, F, F), sheet)
            margins = ", ".join(f"{c.name} {c.margin:+.3f} N" for c in report.criteria if c.applied)
            verdict = "ok" if report.overall else "fails " + "/".join(report.failing)
            print(f"  F = {F:.1f} N: {verdict:<18} {margins}")
            if report.ambiguity_note:
                print(f"    note: {report.ambiguity_note}")
