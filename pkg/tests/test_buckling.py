import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.special import jv

from hcmgrip.buckling import (
    Calibrated,
    Shortening,
    critical_load,
    deflection_profile,
    end_shortening,
    mode_shape,
    shape_integrals,
    solve_amplitude,
    span,
    tilt_reduction,
)
from hcmgrip.model import AssemblyConfig, RibbonGeometry, SectionMode, section_properties
from hcmgrip.numerics import bessel_j_quarter
from hcmgrip.selftest import load_oracles

ORACLES = load_oracles()
TILT = math.radians(10.0)


def _brute_profile(A1, Pcr, section, l, n=10_000):
    """u' and u on an (n+1)-point grid by cumulative trapezoid sums (scipy jv)."""
    z = np.linspace(0.0, l, n + 1)
    s = l - z
    k = 0.5 * Pcr / math.sqrt(section.bending_rigidity * section.torsional_rigidity_C)
    phi = np.sqrt(s) * A1 * jv(0.25, k * s * s)
    inner = cumulative_trapezoid(phi * s, z, initial=0.0)
    pre = -Pcr / section.bending_rigidity
    slope = pre * inner
    u = cumulative_trapezoid(slope, z, initial=0.0)
    return z, slope, u


# -- critical load -------------------------------------------------------------

@pytest.mark.parametrize("mode", list(SectionMode))
def test_pcr_matches_oracle(petg, ref_geometry, mode):
    sec = section_properties(petg, ref_geometry, mode)
    want = ORACLES["ref_geometry"][mode.value]["Pcr_N"]
    assert abs(critical_load(sec, ref_geometry) - want) / want < 1e-9


def test_pcr_magnitudes(petg, ref_geometry):
    thin = critical_load(section_properties(petg, ref_geometry, SectionMode.THIN_STRIP), ref_geometry)
    printed = critical_load(section_properties(petg, ref_geometry, SectionMode.AS_PRINTED), ref_geometry)
    assert thin == pytest.approx(0.73, rel=5e-3)
    assert printed == pytest.approx(3.2e2, rel=2e-2)


@given(s=st.floats(0.1, 10.0))
def test_pcr_length_scaling(petg, s):
    g = RibbonGeometry.reference_design()
    g2 = dataclasses.replace(g, half_length_l=g.half_length_l * s)
    sec = section_properties(petg, g)
    assert critical_load(sec, g2) == pytest.approx(critical_load(sec, g) / s**2, rel=1e-12)


def test_pcr_doubling_length_quarters(petg, ref_geometry, thin_section):
    g2 = dataclasses.replace(ref_geometry, half_length_l=2 * ref_geometry.half_length_l)
    a, b = critical_load(thin_section, ref_geometry), critical_load(thin_section, g2)
    assert abs(b - a / 4) <= 1e-12 * a


@given(c=st.floats(0.01, 100.0))
def test_pcr_degree_one_in_sqrt_EIC(thin_section, ref_geometry, c):
    # multiplying both EI and C by c scales sqrt(EI C) by c
    scaled = dataclasses.replace(
        thin_section,
        bending_rigidity=thin_section.bending_rigidity * c,
        torsional_rigidity_C=thin_section.torsional_rigidity_C * c,
    )
    base = critical_load(thin_section, ref_geometry)
    assert critical_load(scaled, ref_geometry) == pytest.approx(c * base, rel=1e-12)


# -- mode shape ----------------------------------------------------------------

def test_mode_shape_vanishes_at_tip(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    assert mode_shape(l, 3.0, Pcr, thin_section, l) == 0.0


def test_mode_shape_zero_amplitude(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    assert all(mode_shape(z, 0.0, Pcr, thin_section, l) == 0.0 for z in np.linspace(0, l, 17))


def test_mode_shape_root_composition(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    EIC = thin_section.bending_rigidity * thin_section.torsional_rigidity_C
    want = math.sqrt(l) * bessel_j_quarter(0.5 * math.sqrt(Pcr**2 / EIC) * l * l)
    assert mode_shape(0.0, 1.0, Pcr, thin_section, l) == pytest.approx(want, rel=1e-14)
    # the argument at the clamp is 5.5618 / 2, next to the first zero of J_{1/4}
    assert abs(mode_shape(0.0, 1.0, Pcr, thin_section, l)) < 1e-3 * math.sqrt(l)


@given(A1=st.floats(-1e3, 1e3), frac=st.floats(0.0, 1.0))
def test_mode_shape_linear_in_amplitude(thin_section, ref_geometry, A1, frac):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    z = frac * l
    one = mode_shape(z, A1, Pcr, thin_section, l)
    two = mode_shape(z, 2 * A1, Pcr, thin_section, l)
    assert two == pytest.approx(2 * one, rel=1e-15, abs=1e-300)


def test_mode_shape_domain(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    with pytest.raises(ValueError):
        mode_shape(-1e-9, 1.0, 1.0, thin_section, l)
    with pytest.raises(ValueError):
        mode_shape(l * 1.0001, 1.0, 1.0, thin_section, l)


# -- deflection profile --------------------------------------------------------

def test_profile_zero_cases(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    assert deflection_profile(1.0, Pcr, thin_section, l)(0.0) == 0.0
    zero = deflection_profile(0.0, Pcr, thin_section, l)
    assert zero(l) == 0.0 and zero(0.5 * l) == 0.0


@pytest.mark.parametrize("mode", list(SectionMode))
def test_profile_tip_vs_double_sum_oracle(petg, ref_geometry, mode):
    sec = section_properties(petg, ref_geometry, mode)
    l = ref_geometry.half_length_l
    Pcr = critical_load(sec, ref_geometry)
    _, _, u = _brute_profile(1.0, Pcr, sec, l)
    got = deflection_profile(1.0, Pcr, sec, l)(l)
    assert abs(abs(got) - abs(u[-1])) / abs(u[-1]) < 1e-6


def test_profile_interior_vs_oracle(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    z, slope, u = _brute_profile(1.0, Pcr, thin_section, l)
    prof = deflection_profile(1.0, Pcr, thin_section, l)
    for i in (2500, 5000, 7500):
        assert prof(z[i]) == pytest.approx(u[i], rel=1e-6)
        assert prof.slope(z[i]) == pytest.approx(slope[i], rel=1e-6)


def test_profile_monotone_growth(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    prof = deflection_profile(1.0, Pcr, thin_section, l)
    values = [abs(prof(a)) for a in np.linspace(0, l, 21)]
    assert values == sorted(values)


def test_profile_outside_domain(thin_section, ref_geometry):
    l = ref_geometry.half_length_l
    prof = deflection_profile(1.0, 1.0, thin_section, l)
    with pytest.raises(ValueError):
        prof(2 * l)


def test_shape_integrals_match_profile(thin_section, ref_geometry):
    # closed-form tip/shortening (cached universal integrals) vs direct nested quadrature
    l = ref_geometry.half_length_l
    Pcr = critical_load(thin_section, ref_geometry)
    A1 = 2.5
    prof = deflection_profile(A1, Pcr, thin_section, l)
    si = shape_integrals(Pcr, thin_section, l)
    assert si.tip == pytest.approx(ORACLES["quadrature"]["unit_tip_integral"], rel=1e-9)
    tip = -(Pcr / thin_section.bending_rigidity) * A1 * l**3.5 * si.tip
    assert prof(l) == pytest.approx(tip, rel=1e-9)
    z, slope, _ = _brute_profile(A1, Pcr, thin_section, l)
    brute_short = 0.5 * trapezoid(slope**2, z)
    assert end_shortening(A1, Pcr, thin_section, l) == pytest.approx(brute_short, rel=1e-6)


# -- amplitude closures --------------------------------------------------------

def test_amplitude_zero_prestress(thin_section, ref_geometry):
    Pcr = critical_load(thin_section, ref_geometry)
    for closure in (Shortening(), Calibrated()):
        assert solve_amplitude(0.0, closure, Pcr, thin_section, ref_geometry, 48e-3) == 0.0


def test_amplitude_negative_prestress(thin_section, ref_geometry):
    with pytest.raises(ValueError):
        solve_amplitude(-1e-3, Shortening(), 1.0, thin_section, ref_geometry)


@pytest.mark.parametrize("mode", list(SectionMode))
def test_shortening_root_vs_scan(petg, ref_geometry, mode):
    sec = section_properties(petg, ref_geometry, mode)
    l = ref_geometry.half_length_l
    Pcr = critical_load(sec, ref_geometry)
    D = 20e-3
    A1 = solve_amplitude(D, Shortening(), Pcr, sec, ref_geometry)

    # independent residual: shortening of the brute-force slope, quadratic in A1
    z, slope, _ = _brute_profile(1.0, Pcr, sec, l)
    unit_short = 0.5 * trapezoid(slope**2, z)
    grid = np.linspace(0.0, 2.0 * A1, 10_001)
    residual = unit_short * grid**2 - D / 2
    i = int(np.argmax(residual >= 0))
    assert residual[i - 1] < 0 <= residual[i]
    spacing = grid[1] - grid[0]
    assert grid[i - 1] - 1e-6 * spacing <= A1 <= grid[i] + 1e-6 * spacing
    # and much tighter than the scan spacing
    assert A1 == pytest.approx(math.sqrt(D / 2 / unit_short), rel=1e-6)


def test_calibrated_reproduces_datum(petg, ref_geometry, ref_calibrated):
    for mode in SectionMode:
        state = span(ref_calibrated, petg, ref_geometry, mode)
        assert abs(state.span_W - 86e-3) / 86e-3 < 1e-12


def test_calibrated_sqrt_law(thin_section, ref_geometry):
    Pcr = critical_load(thin_section, ref_geometry)
    a = solve_amplitude(20e-3, Calibrated(), Pcr, thin_section, ref_geometry, 48e-3)
    b = solve_amplitude(5e-3, Calibrated(), Pcr, thin_section, ref_geometry, 48e-3)
    assert b == pytest.approx(a / 2, rel=1e-14)


def test_calibrated_needs_gap(thin_section, ref_geometry):
    with pytest.raises(ValueError, match="installation gap"):
        solve_amplitude(1e-3, Calibrated(), 1.0, thin_section, ref_geometry)


def test_calibrated_datum_not_wider_than_gap(thin_section, ref_geometry):
    bad = Calibrated(W_ref=10e-3, tilt_ref=0.0)
    with pytest.raises(ValueError, match="not wider"):
        solve_amplitude(1e-3, bad, 1.0, thin_section, ref_geometry, 48e-3)


# -- span ----------------------------------------------------------------------

@pytest.mark.parametrize("closure", [Shortening(), Calibrated()])
def test_span_zero_prestress_untilted(petg, ref_geometry, closure):
    state = span(AssemblyConfig(48e-3, 0.0, 0.0, closure), petg, ref_geometry)
    assert state.amplitude_A1 == 0.0
    assert state.tip_deflection_u_l == 0.0
    assert state.span_W == 48e-3 and state.span_untilted == 48e-3


@given(tilt_deg=st.floats(0.0, 80.0))
def test_span_zero_prestress_tilt_roundtrip(petg, tilt_deg):
    g = RibbonGeometry.reference_design()
    tilt = math.radians(tilt_deg)
    state = span(AssemblyConfig(48e-3, 0.0, tilt), petg, g)
    assert state.tip_deflection_u_l == 0.0
    assert state.span_W == max(48e-3 - 2 * g.half_length_l * math.sin(tilt), 0.0)


def test_span_tilt_difference(petg, ref_geometry, ref_calibrated):
    state = span(ref_calibrated, petg, ref_geometry)
    diff = state.span_untilted - state.span_W
    assert diff == pytest.approx(2 * 93.7e-3 * math.sin(TILT), rel=1e-12)
    assert diff * 1e3 == pytest.approx(32.5, abs=0.05)
    assert tilt_reduction(93.7e-3, TILT) == pytest.approx(diff, rel=1e-12)


@pytest.mark.parametrize("mode", list(SectionMode))
def test_span_shortening_within_ten_percent(petg, ref_geometry, ref_shortening, mode):
    W = span(ref_shortening, petg, ref_geometry, mode).span_W
    assert abs(W - 86e-3) <= 0.10 * 86e-3


def test_span_opens_outward(petg, ref_geometry):
    for D in (1e-3, 10e-3, 40e-3):
        for closure in (Shortening(), Calibrated()):
            state = span(AssemblyConfig(48e-3, D, 0.0, closure), petg, ref_geometry)
            assert state.span_W >= 48e-3
            assert state.critical_load_Pcr > 0


@pytest.mark.parametrize("closure", [Shortening(), Calibrated()])
@pytest.mark.parametrize("mode", list(SectionMode))
def test_span_monotone_in_D(petg, ref_geometry, closure, mode):
    Ds = np.linspace(0.0, 40e-3, 401)
    W = [span(AssemblyConfig(48e-3, float(D), TILT, closure), petg, ref_geometry, mode).span_W
         for D in Ds]
    assert all(b >= a for a, b in zip(W, W[1:]))


def test_span_reports_closure_and_mode(petg, ref_geometry, ref_shortening):
    state = span(ref_shortening, petg, ref_geometry, SectionMode.AS_PRINTED)
    assert state.closure == Shortening() and state.mode is SectionMode.AS_PRINTED
    assert state.prestress_D == 20e-3
