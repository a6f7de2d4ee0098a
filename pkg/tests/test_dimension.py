import itertools
import random

import pytest

from spectra_kit import (
    AFSummary,
    MissingLabel,
    NonAF,
    PrimeNode,
    SpectralPoset,
    UnknownNode,
    big_d,
    delta,
    dim_tensor_af_general,
    dim_tensor_af_pair,
    dim_tensor_fields,
)
from spectra_kit.corpus import load_fixture
from spectra_kit.numeric import INF, ExtNat, ext_max

from support import fully_labeled_poset


def strong_s_counterexample() -> SpectralPoset:
    """Three-prime chain with labels matching the worked Δ computation."""
    return load_fixture("ex-5.1").poset


def test_delta_worked_values():
    poset = strong_s_counterexample()
    assert delta(2, 1, poset, "(0)") == ExtNat(2)
    assert delta(2, 1, poset, "p") == ExtNat(3)
    assert delta(2, 1, poset, "M") == ExtNat(4)
    assert delta(1, 0, poset, "(0)") == ExtNat(1)
    assert delta(1, 0, poset, "p") == ExtNat(2)
    assert delta(1, 0, poset, "M") == ExtNat(2)


def test_big_d_worked_values():
    poset = strong_s_counterexample()
    assert big_d(2, 1, poset) == ExtNat(4)
    assert big_d(1, 0, poset) == ExtNat(2)


def test_delta_validation_and_missing_labels():
    poset = strong_s_counterexample()
    with pytest.raises(ValueError):
        delta(1, 2, poset, "p")  # d > s
    with pytest.raises(UnknownNode):
        delta(1, 0, poset, "nope")
    bare = SpectralPoset([PrimeNode("x", residue_td=ExtNat(1))], [])
    with pytest.raises(MissingLabel) as err:
        delta(1, 0, bare, "x")
    assert "poly_heights[1]" in str(err.value)
    unlabeled = SpectralPoset([PrimeNode("x", poly_heights={1: ExtNat(0)})], [])
    with pytest.raises(MissingLabel) as err:
        delta(1, 0, unlabeled, "x")
    assert "residue_td" in str(err.value)


def test_s_zero_degenerates_to_heights():
    poset = strong_s_counterexample()
    assert delta(0, 0, poset, "M") == poset.height("M")
    assert big_d(0, 0, poset) == poset.krull_dim()


def test_single_node_degenerate_case():
    poset = SpectralPoset(
        [PrimeNode("x", residue_td=ExtNat(0), poly_heights={2: ExtNat(0)})], []
    )
    # min(s, d + 0) with height contribution 0
    assert big_d(2, 1, poset) == ExtNat(1)
    assert big_d(2, 2, poset) == ExtNat(2)


def test_dim_tensor_fields():
    assert dim_tensor_fields(ExtNat(2), ExtNat(3)) == ExtNat(2)
    assert dim_tensor_fields(ExtNat(0), INF) == ExtNat(0)
    assert dim_tensor_fields(INF, INF) == INF
    for a, b in itertools.product([ExtNat(0), ExtNat(3), INF], repeat=2):
        assert dim_tensor_fields(a, b) == dim_tensor_fields(b, a)


def test_dim_tensor_af_pair_worked_value_and_symmetry():
    v = AFSummary(td=ExtNat(2), dim=ExtNat(1))
    assert dim_tensor_af_pair(v, v) == ExtNat(3)
    a = AFSummary(td=ExtNat(3), dim=ExtNat(3))
    b = AFSummary(td=ExtNat(1), dim=ExtNat(1))
    assert dim_tensor_af_pair(a, b) == ExtNat(4)
    assert dim_tensor_af_pair(a, b) == dim_tensor_af_pair(b, a)


def test_af_pair_agrees_with_fields_formula_on_fields():
    for t, u in itertools.product(range(5), repeat=2):
        assert dim_tensor_af_pair(
            AFSummary(ExtNat(t), ExtNat(0)), AFSummary(ExtNat(u), ExtNat(0))
        ) == dim_tensor_fields(ExtNat(t), ExtNat(u))


def test_af_pair_rejects_infinite_td():
    with pytest.raises(NonAF):
        dim_tensor_af_pair(AFSummary(INF, ExtNat(1)), AFSummary(ExtNat(1), ExtNat(1)))
    with pytest.raises(ValueError):
        AFSummary(td=ExtNat(1), dim=ExtNat(2))


def test_af_general_worked_values():
    poset = strong_s_counterexample()
    # the rational function field in one variable with one polynomial variable
    assert dim_tensor_af_general(AFSummary(ExtNat(2), ExtNat(1)), poset) == ExtNat(4)
    # the rational function field alone
    assert dim_tensor_af_general(AFSummary(ExtNat(1), ExtNat(0)), poset) == ExtNat(2)
    # a trivial extension degenerates to the plain dimension
    assert dim_tensor_af_general(AFSummary(ExtNat(0), ExtNat(0)), poset) == poset.krull_dim()
    with pytest.raises(NonAF):
        dim_tensor_af_general(AFSummary(INF, ExtNat(0)), poset)


def test_af_pair_cross_checked_against_big_d_on_polynomial_analog():
    # the (3,3) x (1,1) pair models k[X,Y,Z] x k[T]; a two-prime poset with
    # the generic prime and one maximal of height one carries the critical data
    r = SpectralPoset(
        [
            PrimeNode("(0)", residue_td=ExtNat(1), poly_heights={3: ExtNat(0)}),
            PrimeNode("m", residue_td=ExtNat(0), poly_heights={3: ExtNat(1)}),
        ],
        [("(0)", "m")],
        complete=True,
    )
    assert big_d(3, 3, r) == ExtNat(4)
    assert dim_tensor_af_pair(
        AFSummary(ExtNat(3), ExtNat(3)), AFSummary(ExtNat(1), ExtNat(1))
    ) == ExtNat(4)


def test_delta_monotone_in_d_and_big_d_attained():
    rng = random.Random(0xD17)
    for _ in range(40):
        poset = fully_labeled_poset(rng, max_nodes=8, max_s=3)
        for s in (1, 2, 3):
            for d in range(s):
                for node_id in poset.nodes:
                    assert delta(s, d, poset, node_id) <= delta(s, d + 1, poset, node_id)
        best = big_d(2, 1, poset)
        values = [delta(2, 1, poset, n) for n in poset.nodes]
        assert all(v <= best for v in values)
        assert best in values  # the max is attained on the finite poset


def test_af_pair_sanity_lower_bound():
    rng = random.Random(0xFADE)
    for _ in range(60):
        td_a = rng.randint(0, 5)
        td_b = rng.randint(0, 5)
        a = AFSummary(ExtNat(td_a), ExtNat(rng.randint(0, td_a)))
        b = AFSummary(ExtNat(td_b), ExtNat(rng.randint(0, td_b)))
        assert dim_tensor_af_pair(a, b) >= ext_max(a.dim, b.dim)
