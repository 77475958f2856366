from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quotdt.bps import BpsVector, bps_basis_element, bps_summary, bps_to_pt, extract_bps
from quotdt.errors import InvalidInput
from quotdt.ringcore import LaurentSeries


def test_basis_examples():
    # rr = 1 gives q^0 (1+q)^0 = 1
    assert bps_basis_element(1, 1, (0, 3)).coeffs == (1, 0, 0, 0)
    assert bps_basis_element(0, 0, (1, 5)).coeffs == (1, -2, 3, -4, 5)
    assert bps_basis_element(2, 2, (-1, 1)).coeffs == (1, 2, 1)
    with pytest.raises(InvalidInput):
        bps_basis_element(2, 2, (0, 3))
    with pytest.raises(InvalidInput):
        bps_basis_element(3, 2, (-5, 3))


def test_basis_matches_series_product():
    # q^(1-r)(1+q)^(2r-2) for r = 0 is q * sum (-1)^j (j+1) q^j; for r = 3 it is q^-2 (1+q)^4
    assert bps_basis_element(0, 3, (-2, 4)).coeffs == (0, 0, 0, 1, -2, 3, -4)
    assert bps_basis_element(3, 3, (-2, 4)).coeffs == (1, 4, 6, 4, 1, 0, 0)


def test_bps_to_pt_examples():
    assert bps_to_pt(BpsVector(0, (1,)), (1, 4)).coeffs == (1, -2, 3, -4)
    assert bps_to_pt(BpsVector(1, (0, 5)), (0, 3)).coeffs == (5, 0, 0, 0)
    assert bps_to_pt(BpsVector(3, (0, 0, 0, 0)), (-2, 6)).is_zero()


def test_extract_examples():
    v, res = extract_bps(LaurentSeries(1, [1, -2, 3, -4]), 0)
    assert v.values == (1,) and res.is_zero()
    Z = bps_to_pt(BpsVector(2, (2, -1, 3)), (-1, 10))
    v, res = extract_bps(Z, 2)
    assert v.values == (2, -1, 3) and res.is_zero()


def test_non_rational_detected_far_out():
    coeffs = [Fraction(0)] * 50
    coeffs[0] = coeffs[49] = Fraction(1)
    v, res = extract_bps(LaurentSeries(1, coeffs), 0)
    assert v.values == (1,)
    assert res.coefficient(50) != 0
    assert not res.is_zero()


def test_extract_window_errors():
    with pytest.raises(InvalidInput, match="minimal length 3"):
        extract_bps(LaurentSeries(-1, [1, 2]), 2)
    with pytest.raises(InvalidInput):
        extract_bps(LaurentSeries(-3, [1, 2, 3, 4, 5]), 2)


def test_offset_above_minimum_is_padded():
    # Z starting at q^1 with g = 2 means n_2 = n_1 = 0
    Z = bps_to_pt(BpsVector(0, (Fraction(3, 2),)), (1, 6))
    v, res = extract_bps(Z, 2)
    assert v.values == (Fraction(3, 2), 0, 0) and res.is_zero()
    assert not v.integral


def test_triangularity():
    base = bps_to_pt(BpsVector(3, (1, 2, 3, 4)), (-2, 9))
    top = extract_bps(base, 3)[0].values[3]
    # perturbing any coefficient above q^(1-g) leaves n_g unchanged
    for e in range(-1, 10):
        coeffs = list(base.coeffs)
        coeffs[e + 2] += 7
        assert extract_bps(LaurentSeries(-2, coeffs), 3)[0].values[3] == top


def test_basis_restricted_system_is_unitriangular():
    for g in range(7):
        rows = [bps_basis_element(rr, g, (1 - g, 1)).coeffs for rr in range(g + 1)]
        for rr, row in enumerate(rows):
            lead = (1 - rr) - (1 - g)
            assert row[lead] == 1
            assert all(c == 0 for c in row[:lead])


rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


@given(st.integers(0, 6).flatmap(lambda g: st.tuples(st.just(g), st.lists(rationals, min_size=g + 1, max_size=g + 1))),
       st.integers(0, 8))
def test_roundtrip_property(g_values, extra):
    g, values = g_values
    v = BpsVector(g, tuple(values))
    Z = bps_to_pt(v, (1 - g, 1 - g + 2 * g + 4 + extra))
    got, res = extract_bps(Z, g)
    assert got == v and res.is_zero()


def test_summary_payload():
    out = bps_summary(["1", "-2", "3", "-4"], 1, 0)
    assert out == {"bps": ["1"], "residual_zero": True, "integral": True}
    out = bps_summary(["1/2", "0", "0"], 0, 1)
    assert out["bps"] == ["0", "1/2"] and not out["integral"] and out["residual_zero"]
