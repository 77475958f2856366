from fractions import Fraction

import pytest

from oracles import convolve, naive_colored_count, naive_plane_partitions
from quotdt.errors import CostGuardExceeded, InvalidInput
from quotdt.macmahon import (
    ColoredPartitionTuple,
    PlanePartition,
    colored_count,
    iter_plane_partitions,
    macmahon_series,
    n_invariants,
    n_invariants_roundtrip,
    plane_partition_oracle,
    wall_crossing_factor,
)
from quotdt.ringcore import TruncSeries, series_pow


def test_macmahon_small_orders():
    assert macmahon_series(0).coeffs == (1,)
    # frozen from the box-growing enumeration in tests/oracles.py
    assert macmahon_series(4).coeffs == (1, 1, 3, 6, 13)
    assert macmahon_series(6)[6] == 48 == len(naive_plane_partitions(6))


@pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (5, 24)])
def test_oracle_examples(n, count):
    assert plane_partition_oracle(n) == count == len(naive_plane_partitions(n))


def test_oracle_guard():
    with pytest.raises(CostGuardExceeded):
        plane_partition_oracle(13)
    assert plane_partition_oracle(13, bound=13) == macmahon_series(13)[13]
    with pytest.raises(InvalidInput):
        plane_partition_oracle(-1)


def test_product_matches_enumeration_up_to_ten():
    M = macmahon_series(10)
    for n in range(11):
        assert M[n] == plane_partition_oracle(n), n


def test_layer_enumeration_yields_each_partition_once():
    for n in range(8):
        listed = [pp.boxes for pp in iter_plane_partitions(n)]
        assert len(listed) == len(set(listed))
        assert set(listed) == set(naive_plane_partitions(n))


def test_plane_partition_rejects_floating_box():
    with pytest.raises(InvalidInput):
        PlanePartition(frozenset({(0, 0, 0), (0, 0, 2)}))
    pp = PlanePartition.from_layers([(2, 1), (1,)])
    assert pp.size == 4


def test_colored_tuple_size():
    a = PlanePartition.from_layers([(2,)])
    t = ColoredPartitionTuple((a, PlanePartition(frozenset())))
    assert t.size == 2
    with pytest.raises(InvalidInput):
        ColoredPartitionTuple(())


def test_colored_count_examples():
    assert colored_count(1, 3) == 6
    assert colored_count(2, 0) == 1
    # p(0)p(2) + p(1)p(1) + p(2)p(0)
    assert colored_count(2, 2) == 7 == naive_colored_count(2, 2)


def test_colored_count_agrees_with_power():
    for r in (1, 2, 3):
        power = series_pow(macmahon_series(8), r)
        for n in range(9):
            assert colored_count(r, n) == power[n] == naive_colored_count(r, n)


def test_wall_crossing_factor_examples():
    assert wall_crossing_factor(1, 0, 5) == TruncSeries.one(5)
    M = list(macmahon_series(3))
    assert convolve(M, M) == [1, 2, 7, 18]
    assert wall_crossing_factor(2, 1, 3).coeffs == (1, 2, 7, 18)
    assert wall_crossing_factor(1, 1, 3).coeffs == (1, -1, 3, -6)


def test_wall_crossing_factor_multiplicative_in_chi():
    for r in (1, 2, 3):
        for c1, c2 in [(1, 2), (-3, 5), (0, -1), (4, 4)]:
            assert wall_crossing_factor(r, c1 + c2, 10) == (
                wall_crossing_factor(r, c1, 10) * wall_crossing_factor(r, c2, 10)
            )


def test_n_invariants_chi_zero():
    ns, factor = n_invariants_roundtrip(2, 0, 6)
    assert all(x == 0 for x in ns)
    assert factor == TruncSeries.one(6)


def test_first_n_invariant_is_minus_chi():
    # first-order term of exp(sum (-1)^(m-1) m N_m q^m) = M(-q): N_1 = [q] M(-q) = -1
    assert n_invariants(1, 3)[0] == -1
    assert n_invariants(5, 3)[0] == -5


def test_n_invariants_match_divisor_sum():
    # independent closed form: log M(q) = sum_m sigma_2(m)/m q^m  =>  N_m = -chi sum_{k|m} 1/k^2
    chi = 3
    for m, value in enumerate(n_invariants(chi, 9), start=1):
        expected = -chi * sum(Fraction(1, k * k) for k in range(1, m + 1) if m % k == 0)
        assert value == expected


def test_roundtrip_example():
    _, factor = n_invariants_roundtrip(3, -2, 8)
    assert factor == wall_crossing_factor(3, -2, 8)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("chi", [-6, -1, 0, 1, 4])
def test_roundtrip_reproduces_factor(r, chi):
    _, factor = n_invariants_roundtrip(r, chi, 10)
    assert factor == wall_crossing_factor(r, chi, 10)
