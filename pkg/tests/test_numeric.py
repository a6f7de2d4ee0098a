import itertools

import pytest

from spectra_kit.numeric import (
    INF,
    EmptyIntersection,
    ExtNat,
    NatInterval,
    ext_add,
    ext_min,
    interval_intersect,
)
from spectra_kit.tristate import TriState

GRID = [ExtNat(0), ExtNat(1), ExtNat(2), ExtNat(3), ExtNat(5), INF]


def test_add_examples():
    assert ext_add(ExtNat(1), ExtNat(2)) == ExtNat(3)
    assert ext_add(ExtNat(5), INF) == INF
    assert ext_add(ExtNat(0), ExtNat(0)) == ExtNat(0)


def test_min_examples():
    assert ext_min(ExtNat(2), ExtNat(3)) == ExtNat(2)
    assert ext_min(INF, ExtNat(1)) == ExtNat(1)
    assert ext_min(INF, INF) == INF


def test_add_commutative_associative_exhaustive():
    for a, b in itertools.product(GRID, repeat=2):
        assert ext_add(a, b) == ext_add(b, a)
    for a, b, c in itertools.product(GRID, repeat=3):
        assert ext_add(ext_add(a, b), c) == ext_add(a, ext_add(b, c))


def test_min_idempotent_commutative_associative_exhaustive():
    for a in GRID:
        assert ext_min(a, a) == a
    for a, b in itertools.product(GRID, repeat=2):
        assert ext_min(a, b) == ext_min(b, a)
    for a, b, c in itertools.product(GRID, repeat=3):
        assert ext_min(ext_min(a, b), c) == ext_min(a, ext_min(b, c))


def test_total_order_inf_is_top():
    for a in GRID:
        if a.is_finite:
            assert a < INF
    assert not (INF < INF)
    assert ExtNat(0) < ExtNat(1) < ExtNat(2)


def test_extnat_rejects_negatives_and_non_ints():
    with pytest.raises(ValueError):
        ExtNat(-1)
    with pytest.raises(ValueError):
        ExtNat(True)


def test_extnat_json_round_trip():
    for a in GRID:
        assert ExtNat.from_json(a.to_json()) == a
    assert ExtNat.from_json("inf") == INF
    with pytest.raises(ValueError):
        ExtNat.from_json("nope")


def test_interval_intersect_examples():
    a = NatInterval(ExtNat(1), ExtNat(3))
    b = NatInterval(ExtNat(2), INF)
    assert interval_intersect(a, b) == NatInterval(ExtNat(2), ExtNat(3))
    assert interval_intersect(
        NatInterval(ExtNat(0), ExtNat(5)), NatInterval.exact(5)
    ) == NatInterval.exact(5)
    with pytest.raises(EmptyIntersection):
        interval_intersect(NatInterval(ExtNat(0), ExtNat(1)), NatInterval(ExtNat(2), ExtNat(3)))


def test_interval_intersect_commutative_and_monotone():
    points = GRID
    intervals = [
        NatInterval(lo, hi) for lo, hi in itertools.product(points, repeat=2) if lo <= hi
    ]
    for a, b in itertools.product(intervals, repeat=2):
        try:
            left = a.intersect(b)
        except EmptyIntersection:
            with pytest.raises(EmptyIntersection):
                b.intersect(a)
            continue
        assert left == b.intersect(a)
        assert a.contains_interval(left)
        assert b.contains_interval(left)


def test_interval_invariant_lo_le_hi():
    with pytest.raises(ValueError):
        NatInterval(ExtNat(3), ExtNat(1))


def test_interval_ge_threshold():
    assert NatInterval(ExtNat(2), INF).ge_threshold(1) is TriState.TRUE
    assert NatInterval.exact(0).ge_threshold(1) is TriState.FALSE
    assert NatInterval.unknown().ge_threshold(1) is TriState.UNKNOWN


def test_interval_shift_and_json():
    interval = NatInterval(ExtNat(1), INF)
    assert interval.shift(2) == NatInterval(ExtNat(3), INF)
    assert NatInterval.from_json(interval.to_json()) == interval
    assert NatInterval.from_json(4) == NatInterval.exact(4)
    assert NatInterval.from_json([1, "inf"]) == NatInterval(ExtNat(1), INF)
