"""Oracle comparison suite run by ``hcmgrip selftest``.

Reference values were computed with 50-digit arithmetic and frozen into
``data/oracles.json`` (see tools/make_oracles.py).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .buckling import LTB_COEFFICIENT, critical_load, shape_integrals
from .model import Material, RibbonGeometry, SectionMode, section_properties, shear_modulus
from .numerics import bessel_j_quarter, gamma_fn, integrate
from .reference import read_data


@dataclass(frozen=True)
class Case:
    name: str
    passed: bool
    detail: str


def load_oracles() -> dict:
    return json.loads(read_data("oracles.json"))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


def _case(name: str, got: float, want: float, tol: float) -> Case:
    err = _rel(got, want)
    return Case(name, err < tol, f"rel err {err:.2e} (tol {tol:.0e})")


def run() -> list:
    oracles = load_oracles()
    cases = []

    grid = oracles["bessel_j_quarter_grid"]
    worst = max(_rel(bessel_j_quarter(x), want) for x, want in grid)
    cases.append(Case(f"J_1/4 on {len(grid)}-point grid [1e-3, 50]", worst < 1e-10,
                      f"max rel err {worst:.2e} (tol 1e-10)"))
    for x, want in oracles["bessel_j_quarter_spot"].items():
        cases.append(_case(f"J_1/4({x})", bessel_j_quarter(float(x)), want, 1e-10))
    for x, want in oracles["gamma"].items():
        cases.append(_case(f"Gamma({x})", gamma_fn(float(x)), want, 1e-12))

    cases.append(_case("int_0^1 x^2", integrate(lambda x: x * x, 0.0, 1.0), 1.0 / 3.0, 1e-12))
    cases.append(_case("int_0^pi sin", integrate(math.sin, 0.0, math.pi), 2.0, 1e-12))
    q = oracles["quadrature"]
    cases.append(_case(
        "int_0^1 sqrt(1-z) J_1/4(z)",
        integrate(lambda z: math.sqrt(1.0 - z) * bessel_j_quarter(z), 0.0, 1.0),
        q["sqrt_one_minus_z_j_quarter"], 1e-9,
    ))

    material = Material.petg()
    geometry = RibbonGeometry.reference_design()
    ref = oracles["ref_geometry"]
    cases.append(_case("shear modulus (reference material)", shear_modulus(material),
                       ref["shear_modulus_Pa"], 1e-12))
    for mode in SectionMode:
        sec = section_properties(material, geometry, mode)
        cases.append(_case(f"P_cr reference geometry ({mode.value})", critical_load(sec, geometry),
                           ref[mode.value]["Pcr_N"], 1e-9))

    sec = section_properties(material, geometry, SectionMode.THIN_STRIP)
    Pcr = critical_load(sec, geometry)
    si = shape_integrals(Pcr, sec, geometry.half_length_l)
    cases.append(_case(f"unit tip integral (k = {LTB_COEFFICIENT / 2})", si.tip,
                       q["unit_tip_integral"], 1e-9))
    return cases
