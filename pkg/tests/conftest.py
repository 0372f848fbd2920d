import math

import pytest

from hcmgrip.model import (
    AssemblyConfig,
    Calibrated,
    Material,
    RibbonGeometry,
    SectionMode,
    Shortening,
    section_properties,
)


@pytest.fixture(scope="session")
def petg():
    return Material.petg()


@pytest.fixture(scope="session")
def ref_geometry():
    return RibbonGeometry.reference_design()


@pytest.fixture(scope="session")
def thin_section(petg, ref_geometry):
    return section_properties(petg, ref_geometry, SectionMode.THIN_STRIP)


@pytest.fixture(scope="session")
def ref_calibrated():
    return AssemblyConfig(48.0e-3, 20e-3, math.radians(10.0), Calibrated())


@pytest.fixture(scope="session")
def ref_shortening():
    return AssemblyConfig(48.0e-3, 20e-3, math.radians(10.0), Shortening())


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  [{number:2d}] {title}")
