"""Exact dimension formulas for tensor products.

The workhorse is the height-plus-min functional

    delta(s, d, p) = ht(p[X_1..X_s]) + min(s, d + t.d.(A/p : k))

maximized over the stored primes; together with the two classical tensor
dimension formulas (min of the transcendence degrees for two field
extensions, and min(dim a + td b, td a + dim b) for a pair of AF-domains)
it reproduces the worked dimension computations exactly.  Every label the
arithmetic needs must be present; a missing one raises MissingLabel rather
than defaulting, since the computations are meaningless otherwise.

By convention s = 0 is allowed and means "no adjoined indeterminates": the
polynomial-extension height of a prime degenerates to its height, so the
general formula specializes to a plain Krull dimension query.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numeric import ExtNat, ext_max, ext_min
from .poset import SpectralPoset, UnknownNode


class MissingLabel(Exception):
    def __init__(self, node_id: str, label: str):
        super().__init__(f"node {node_id!r} has no {label} label")
        self.node_id = node_id
        self.label = label


class NonAF(Exception):
    def __init__(self, what: str):
        super().__init__(f"{what}: transcendence degree must be finite")
        self.what = what


@dataclass(frozen=True)
class AFSummary:
    """The two numbers that determine an AF-domain's tensor behavior."""

    td: ExtNat
    dim: ExtNat

    def __post_init__(self):
        if self.td < self.dim:
            raise ValueError(f"dim {self.dim} exceeds td {self.td}")


def delta(s: int, d: int, poset: SpectralPoset, node_id: str) -> ExtNat:
    """ht(p[X_1..X_s]) + min(s, d + residue t.d.) for one stored prime."""
    if not (0 <= d <= s):
        raise ValueError(f"need 0 <= d <= s, got d={d}, s={s}")
    node = poset.nodes.get(node_id)
    if node is None:
        raise UnknownNode(node_id)
    if s == 0:
        ph = poset.height(node_id)
    else:
        ph = node.poly_heights.get(s)
        if ph is None:
            raise MissingLabel(node_id, f"poly_heights[{s}]")
    if node.residue_td is None:
        raise MissingLabel(node_id, "residue_td")
    return ph + ext_min(ExtNat(s), ExtNat(d) + node.residue_td)


def big_d(s: int, d: int, poset: SpectralPoset) -> ExtNat:
    """Maximum of delta over every stored prime."""
    best = None
    for node_id in sorted(poset.nodes):
        value = delta(s, d, poset, node_id)
        best = value if best is None else ext_max(best, value)
    return best


def dim_tensor_fields(td_k: ExtNat, td_l: ExtNat) -> ExtNat:
    """Dimension of the tensor product of two field extensions."""
    return ext_min(td_k, td_l)


def dim_tensor_af_pair(a: AFSummary, b: AFSummary) -> ExtNat:
    """Dimension of the tensor product of two AF-domains."""
    if not a.td.is_finite:
        raise NonAF("first factor")
    if not b.td.is_finite:
        raise NonAF("second factor")
    return ext_min(a.dim + b.td, a.td + b.dim)


def dim_tensor_af_general(a: AFSummary, r: SpectralPoset) -> ExtNat:
    """Dimension of (AF-domain) tensor (arbitrary algebra given by a poset)."""
    if not a.td.is_finite:
        raise NonAF("AF factor")
    return big_d(a.td.value, a.dim.value, r)
