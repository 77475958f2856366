import pytest

from quotdt.errors import CostGuardExceeded, InvalidInput
from quotdt.macmahon import colored_count, macmahon_series, wall_crossing_factor
from quotdt.motivic import (
    MotivicSeries,
    factor_twice_exponents,
    motivic_quot_series,
    signed_chi_check,
    virtual_chi_series,
)
from quotdt.ringcore import HalfLaurent, TruncSeries, euler_specialize, series_pow, substitute_sign

L = HalfLaurent.monomial


def test_first_coefficients():
    assert motivic_quot_series(1, 1)[1] == L(3)
    assert motivic_quot_series(2, 1)[1] == L(2) + L(4)
    for r in (1, 2, 5):
        assert motivic_quot_series(r, 4)[0] == HalfLaurent.constant(1)


def test_factor_exponents():
    assert factor_twice_exponents(1, 1) == [3]
    assert factor_twice_exponents(2, 1) == [2, 4]
    assert factor_twice_exponents(1, 2) == [2, 4]


def test_matches_brute_product():
    # expand every factor of the product separately, then multiply them all
    r, N = 2, 5
    one = HalfLaurent.constant(1)
    total = TruncSeries([one] + [HalfLaurent()] * N)
    for m in range(1, N + 1):
        for k in range(r * m):
            e = 4 + 2 * k - r * m
            geo = [HalfLaurent()] * (N + 1)
            for j in range(N // m + 1):
                geo[m * j] = L(e * j)
            total = total * TruncSeries(geo)
    assert motivic_quot_series(r, N).inner == total


def test_constant_term_invariant():
    with pytest.raises(InvalidInput):
        MotivicSeries(TruncSeries([L(1), HalfLaurent()]), 1)
    with pytest.raises(InvalidInput):
        motivic_quot_series(0, 3)


def test_virtual_chi_examples():
    assert virtual_chi_series(1, 3).coeffs == (1, -1, 3, -6)
    assert virtual_chi_series(2, 2).coeffs == (1, 2, 7)
    assert virtual_chi_series(1, 0).coeffs == (1,)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_virtual_chi_is_signed_macmahon_power(r):
    expected = series_pow(substitute_sign(macmahon_series(10), (-1) ** r), r)
    assert virtual_chi_series(r, 10) == expected == wall_crossing_factor(r, 1, 10)


def test_signed_chi_examples():
    assert signed_chi_check(1, 2) == (3, 3)
    assert signed_chi_check(2, 1) == (2, 2)
    assert signed_chi_check(1, 0) == (1, 1)
    with pytest.raises(CostGuardExceeded):
        signed_chi_check(1, 13)


def test_signed_chi_agreement():
    for r in (1, 2, 3):
        for n in range(9):
            a, b = signed_chi_check(r, n)
            assert a == b, (r, n)


def test_no_cancellation_in_specialization():
    for r in (1, 2, 3):
        Z = motivic_quot_series(r, 8)
        for n in range(9):
            coeff = Z[n]
            assert all(c > 0 for c in coeff.terms.values())
            assert abs(euler_specialize(coeff)) == colored_count(r, n)


def test_json_shape():
    payload = motivic_quot_series(1, 1).to_json()
    assert payload["coeffs"][1] == {"terms": {"3": "1"}}
    assert payload["rank"] == 1 and payload["order"] == 1
