"""Shared test helpers: brute-force oracles and random generators.

The oracles here deliberately reimplement heights, MPC and the equal-chain
condition by exhaustive path enumeration, without reusing any package
internals, so they can serve as independent ground truth on small posets.
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence, Set, Tuple

from spectra_kit import (
    Atom,
    FieldExt,
    FieldKind,
    Localization,
    NatInterval,
    Poly,
    PrimeNode,
    PropertyKind,
    SpectralPoset,
    Tensor,
    TriState,
)
from spectra_kit.numeric import ExtNat, INF


# -- brute-force poset oracles (independent implementations) -------------------


def _succ(covers: Sequence[Tuple[str, str]], node: str) -> List[str]:
    return [b for a, b in covers if a == node]


def _pred(covers: Sequence[Tuple[str, str]], node: str) -> List[str]:
    return [a for a, b in covers if b == node]


def all_paths_up(covers, start: str, end: str) -> List[int]:
    """Lengths of every cover-path from start to end, by plain DFS."""
    out: List[int] = []

    def walk(node, steps):
        if node == end:
            out.append(steps)
        for nxt in _succ(covers, node):
            walk(nxt, steps + 1)

    walk(start, 0)
    return out


def brute_heights(ids: Sequence[str], covers) -> Dict[str, int]:
    """Longest chain from any minimal element, by enumerating all chains."""
    minimals = [n for n in ids if not _pred(covers, n)]
    heights = {}
    for node in ids:
        best = 0
        for m in minimals:
            lengths = all_paths_up(covers, m, node)
            if lengths:
                best = max(best, max(lengths))
        heights[node] = best
    return heights


def brute_mpc(ids: Sequence[str], covers) -> bool:
    """Every maximal element's down-set contains exactly one minimal element."""
    minimals = {n for n in ids if not _pred(covers, n)}
    maximals = [n for n in ids if not _succ(covers, n)]
    for top in maximals:
        below = {top}
        stack = [top]
        while stack:
            n = stack.pop()
            for p in _pred(covers, n):
                if p not in below:
                    below.add(p)
                    stack.append(p)
        if len(below & minimals) != 1:
            return False
    return True


def brute_q1(ids: Sequence[str], covers) -> bool:
    """All saturated chains between every comparable pair match the height gap."""
    heights = brute_heights(ids, covers)
    for a in ids:
        for b in ids:
            lengths = all_paths_up(covers, a, b)
            for length in lengths:
                if length != heights[b] - heights[a]:
                    return False
    return True


def comparable_pairs(ids, covers) -> List[Tuple[str, str]]:
    return [
        (a, b)
        for a in ids
        for b in ids
        if a != b and all_paths_up(covers, a, b)
    ]


# -- random poset generation ----------------------------------------------------


def random_dag(rng: random.Random, max_nodes: int = 12):
    n = rng.randint(1, max_nodes)
    ids = [f"n{i}" for i in range(n)]
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.25:
                edges.add((ids[i], ids[j]))
    # transitive reduction: drop (a, b) when some c sits strictly between
    reach: Dict[str, Set[str]] = {a: set() for a in ids}
    for a in ids:
        stack = [b for x, b in edges if x == a]
        while stack:
            b = stack.pop()
            if b not in reach[a]:
                reach[a].add(b)
                stack.extend(c for x, c in edges if x == b)
    covers = [
        (a, b)
        for a, b in edges
        if not any(c in reach[a] and b in reach[c] for c in ids if c not in (a, b))
    ]
    return ids, sorted(covers)


def random_poset(rng: random.Random, max_nodes: int = 12, labeled: bool = False) -> SpectralPoset:
    ids, covers = random_dag(rng, max_nodes)
    heights = brute_heights(ids, covers)
    nodes = []
    for node_id in ids:
        kwargs = {}
        if labeled:
            if rng.random() < 0.6:
                kwargs["residue_td"] = ExtNat(rng.randint(0, 4))
            poly_heights = {}
            for s in (1, 2):
                if rng.random() < 0.6:
                    poly_heights[s] = ExtNat(heights[node_id] + rng.randint(0, 2))
            kwargs["poly_heights"] = poly_heights
            kwargs["residue_is_s_domain"] = rng.choice(list(TriState))
            kwargs["residue_is_catenarian"] = rng.choice(list(TriState))
        nodes.append(PrimeNode(node_id, **kwargs))
    return SpectralPoset(nodes, covers)


def fully_labeled_poset(rng: random.Random, max_nodes: int = 8, max_s: int = 3) -> SpectralPoset:
    ids, covers = random_dag(rng, max_nodes)
    heights = brute_heights(ids, covers)
    nodes = [
        PrimeNode(
            node_id,
            residue_td=ExtNat(rng.randint(0, 4)),
            poly_heights={
                s: ExtNat(heights[node_id] + rng.randint(0, 2)) for s in range(1, max_s + 1)
            },
        )
        for node_id in ids
    ]
    return SpectralPoset(nodes, covers, complete=True)


# -- random expression generation -----------------------------------------------


_ASSERTABLE = [p for p in PropertyKind if p is not PropertyKind.FIELD]
_KINDS_ANY_TD = [FieldKind.PURELY_TRANSCENDENTAL, FieldKind.GENERAL]
_KINDS_TD0 = list(FieldKind)


def random_interval(rng: random.Random) -> NatInterval:
    lo = rng.randint(0, 4)
    if rng.random() < 0.3:
        return NatInterval(ExtNat(lo), INF)
    return NatInterval(ExtNat(lo), ExtNat(lo + rng.randint(0, 3)))


def random_atom(rng: random.Random, name: str = "") -> Atom:
    name = name or rng.choice("ABCRSTV") + str(rng.randint(0, 9))
    props = rng.sample(_ASSERTABLE, k=rng.randint(0, 3))
    facts = tuple((p, rng.random() < 0.7) for p in props)
    return Atom(
        name=name,
        asserted_facts=facts,
        td=random_interval(rng) if rng.random() < 0.4 else None,
        dim=random_interval(rng) if rng.random() < 0.3 else None,
        min_residue_td=random_interval(rng) if rng.random() < 0.2 else None,
        contains_sep_closure=rng.random() < 0.15,
        integral_closure_prufer=rng.random() < 0.15,
        sep_closure_in_qf=rng.random() < 0.15,
    )


def random_field(rng: random.Random) -> FieldExt:
    if rng.random() < 0.5:
        kind = rng.choice(_KINDS_TD0)
        td = ExtNat(0)
    else:
        kind = rng.choice(_KINDS_ANY_TD)
        td = INF if rng.random() < 0.2 else ExtNat(rng.randint(0, 5))
    finite_sep = rng.choice(list(TriState)) if kind in (
        FieldKind.ALGEBRAIC, FieldKind.GENERAL
    ) else TriState.UNKNOWN
    return FieldExt(td=td, kind=kind, finite_over_sep_closure=finite_sep)


def random_expression(rng: random.Random, depth: int = 3):
    if depth <= 0 or rng.random() < 0.35:
        return random_atom(rng) if rng.random() < 0.6 else random_field(rng)
    shape = rng.choice(["poly", "loc", "tensor", "tensor"])
    if shape == "poly":
        return Poly(random_expression(rng, depth - 1), rng.randint(1, 3))
    if shape == "loc":
        return Localization(random_expression(rng, depth - 1))
    return Tensor(random_expression(rng, depth - 1), random_expression(rng, depth - 1))
