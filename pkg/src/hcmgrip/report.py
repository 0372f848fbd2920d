"""Report assembly and rendering for the command-line front end.

JSON output is SI; text and CSV reports show both SI and mm/ms/N*mm.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass
from typing import Optional

from .buckling import span
from .config import RunConfig
from .design import SweepTable, fatigue_advisory
from .energetics import energy_barrier, snap_time
from .grasp import CriterionResult, GraspReport
from .model import section_properties, shear_modulus

DEFAULT_PRECISION = 9
PRECISION_ENV = "HCMGRIP_PRECISION"

SWEEP_COLUMNS = (
    "param", "Pcr_N", "A1", "u_l_mm", "W_untilted_mm", "W_tilted_mm",
    "t_star_ms", "U_barr_J", "status",
)


def resolve_precision(cfg: Optional[RunConfig] = None) -> int:
    if cfg is not None and cfg.output.precision is not None:
        return cfg.output.precision
    env = os.environ.get(PRECISION_ENV, "").strip()
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{PRECISION_ENV} must be an integer, got {env!r}") from None
        if not 1 <= value <= 17:
            raise ValueError(f"{PRECISION_ENV} must be between 1 and 17, got {value}")
        return value
    return DEFAULT_PRECISION


def fmt(value: float, precision: int) -> str:
    if value == 0:
        return "0"
    return f"{value:.{precision}g}"


@dataclass(frozen=True)
class Row:
    key: str
    si: float
    si_unit: str
    shown: float
    shown_unit: str
    note: str = ""


def analyze(cfg: RunConfig) -> dict:
    material = cfg.build_material()
    geometry = cfg.build_geometry()
    assembly = cfg.build_assembly()
    mode = cfg.build_mode()
    section = section_properties(material, geometry, mode)
    state = span(assembly, material, geometry, mode)
    t_star = snap_time(material, geometry)
    U = energy_barrier(state.critical_load_Pcr, assembly.prestress_D)
    fatigue = fatigue_advisory(geometry.thickness_t)

    results = [
        Row("shear_modulus", shear_modulus(material), "Pa", shear_modulus(material) / 1e6, "MPa"),
        Row("moment_I", section.moment_I, "m^4", section.moment_I * 1e12, "mm^4"),
        Row("torsional_rigidity_C", section.torsional_rigidity_C, "N*m^2",
            section.torsional_rigidity_C * 1e6, "N*mm^2"),
        Row("Pcr", state.critical_load_Pcr, "N", state.critical_load_Pcr, "N"),
        Row("A1", state.amplitude_A1, "rad/m^0.5", state.amplitude_A1, "rad/m^0.5"),
        Row("u_l", state.tip_deflection_u_l, "m", state.tip_deflection_u_l * 1e3, "mm"),
        Row("W_untilted", state.span_untilted, "m", state.span_untilted * 1e3, "mm"),
        Row("W_tilted", state.span_W, "m", state.span_W * 1e3, "mm"),
        Row("t_star", t_star, "s", t_star * 1e3, "ms"),
        Row("U_barr", U, "J", U * 1e3, "N*mm"),
        Row("fatigue_cycles", fatigue.cycles, "cycles", fatigue.cycles, "cycles",
            "ADVISORY, D = 20 mm scope" + (", extrapolated" if fatigue.extrapolated else "")),
    ]

    ref = cfg.reference
    context = [
        Row("ref_span", ref.span_mm * 1e-3, "m", ref.span_mm, "mm", "reported span, D = 20 mm, 10 deg tilt"),
        Row("ref_snap_measured", ref.measured_snap_ms * 1e-3, "s", ref.measured_snap_ms, "ms",
            f"measured closing time, +/- {ref.measured_snap_std_ms:g} ms"),
        Row("ref_snap_theory", ref.theory_snap_ms * 1e-3, "s", ref.theory_snap_ms, "ms",
            "reported timescale estimate"),
        Row("baseline_span", ref.baseline_span_mm * 1e-3, "m", ref.baseline_span_mm, "mm",
            "reference (traditional) gripper"),
        Row("baseline_close", ref.baseline_close_ms * 1e-3, "s", ref.baseline_close_ms, "ms",
            "reference (traditional) gripper"),
    ]
    span_ratio = state.span_W / (ref.baseline_span_mm * 1e-3)
    speed_ratio = ref.baseline_close_ms / ref.measured_snap_ms
    ratios = [
        Row("span_ratio", span_ratio, "-", span_ratio, "x", "computed W_tilted / baseline span"),
        Row("speed_ratio_measured", speed_ratio, "-", speed_ratio, "x",
            "baseline close / measured snap time"),
        Row("speed_ratio_t_star", ref.baseline_close_ms * 1e-3 / t_star, "-",
            ref.baseline_close_ms * 1e-3 / t_star, "x", "baseline close / computed t_star"),
    ]
    return {
        "design": {
            "section_mode": mode.value,
            "closure": assembly.closure.name,
            "prestress_D_m": assembly.prestress_D,
            "tilt_rad": assembly.tilt_angle,
            "install_gap_m": assembly.install_gap_Lf,
        },
        "results": results,
        "reference": context,
        "ratios": ratios,
    }


def _row_json(row: Row) -> dict:
    out = {"value": row.si, "unit": row.si_unit}
    if row.note:
        out["note"] = row.note
    return out


def render_analysis_json(report: dict) -> str:
    doc = {
        "design": report["design"],
        "results": {r.key: _row_json(r) for r in report["results"]},
        "reference": {r.key: _row_json(r) for r in report["reference"]},
        "ratios": {r.key: _row_json(r) for r in report["ratios"]},
    }
    return json.dumps(doc, indent=2) + "\n"


def render_analysis_csv(report: dict, precision: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["group", "quantity", "si_value", "si_unit", "value", "unit", "note"])
    for group in ("results", "reference", "ratios"):
        for r in report[group]:
            w.writerow([group, r.key, fmt(r.si, precision), r.si_unit,
                        fmt(r.shown, precision), r.shown_unit, r.note])
    return buf.getvalue()


def render_analysis_text(report: dict, precision: int) -> str:
    d = report["design"]
    lines = [
        f"section mode : {d['section_mode']}",
        f"closure      : {d['closure']}",
        "",
    ]

    def table(title, rows):
        lines.append(title)
        for r in rows:
            line = (f"  {r.key:<22} {fmt(r.shown, precision):>16} {r.shown_unit:<10}"
                    f" {fmt(r.si, precision):>16} {r.si_unit}")
            if r.note:
                line += f"   [{r.note}]"
            lines.append(line)
        lines.append("")

    table("computed", report["results"])
    table("reference values (context only)", report["reference"])
    table("ratios", report["ratios"])
    return "\n".join(lines)


def sweep_csv(table: SweepTable, precision: int, unit_scale: float = 1e3) -> str:
    """CSV with the fixed sweep schema; ``param`` is shown in config units (mm)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in table.rows:
        param = fmt(row.value * unit_scale, precision)
        p = row.point
        if p is None:
            w.writerow([param, "", "", "", "", "", "", "", row.status])
            continue
        s = p.state
        w.writerow([
            param,
            fmt(s.critical_load_Pcr, precision),
            fmt(s.amplitude_A1, precision),
            fmt(s.tip_deflection_u_l * 1e3, precision),
            fmt(s.span_untilted * 1e3, precision),
            fmt(s.span_W * 1e3, precision),
            fmt(p.metrics.snap_time * 1e3, precision),
            fmt(p.metrics.energy_barrier, precision),
            row.status,
        ])
    return buf.getvalue()


def _criterion_json(c: CriterionResult) -> dict:
    if not c.applied:
        return {"applied": False}
    return {"applied": True, "verdict": c.verdict, "margin_N": c.margin, "inputs": dict(c.inputs)}


def grasp_json(report: GraspReport, forces: dict, span_W: float) -> str:
    doc = {
        "label": report.label,
        "kind": report.kind.value,
        "span_W_m": span_W,
        "forces": forces,
        "criteria": {c.name: _criterion_json(c) for c in report.criteria},
        "criteria_applied": list(report.criteria_applied),
        "overall": report.overall,
        "failing": list(report.failing),
    }
    if report.ambiguity_note:
        doc["ambiguity_note"] = report.ambiguity_note
    return json.dumps(doc, indent=2) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file in the same directory and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

