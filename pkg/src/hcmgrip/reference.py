"""Bundled reference data: measured holding forces and the shipped example config."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .config import ObjectSection

__all__ = ["ReferenceObject", "load_reference_objects", "reference_config_text", "read_data"]


def read_data(name: str) -> str:
    return resources.files("hcmgrip").joinpath("data", name).read_text(encoding="utf-8")


def reference_config_text() -> str:
    return read_data("reference_design.cfg")


@dataclass(frozen=True)
class ReferenceObject:
    key: str
    kind: str
    label: str
    force_low_N: float
    force_high_N: float
    success_pct: Optional[float]
    source: str
    section: ObjectSection

    @property
    def representative_force_N(self) -> float:
        return 0.5 * (self.force_low_N + self.force_high_N)

    def force_citation(self) -> str:
        if self.force_low_N == self.force_high_N:
            band = f"{self.force_low_N:g} N"
        else:
            band = f"{self.force_low_N:g}-{self.force_high_N:g} N"
        return f"measured holding force {band} ({self.source})"


def parse_reference_objects(text: str) -> dict:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(io.StringIO("\n".join(lines)), delimiter="\t")
    out = {}
    for row in reader:
        success = row["success_pct"].strip()
        section = ObjectSection(
            kind=row["kind"],
            label=row["label"],
            mass_g=float(row["mass_g"]),
            mu_finger_object=float(row["mu_finger_object"]),
            mu_object_ground=float(row["mu_object_ground"]),
            bending_rigidity_per_width_uNm=float(row["bending_rigidity_per_width_uNm"]),
            engaged_width_mm=float(row["engaged_width_mm"]),
        )
        out[row["key"]] = ReferenceObject(
            key=row["key"],
            kind=row["kind"],
            label=row["label"],
            force_low_N=float(row["force_low_N"]),
            force_high_N=float(row["force_high_N"]),
            success_pct=None if success == "-" else float(success),
            source=row["source"],
            section=section,
        )
    return out


def load_reference_objects() -> dict:
    return parse_reference_objects(read_data("reference_objects.tsv"))
