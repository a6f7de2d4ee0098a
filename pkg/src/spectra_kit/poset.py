"""Finite labeled posets modeling the prime spectrum of a desk-scale example.

Nodes stand for prime ideals, covers for adjacent (saturated) inclusions.
Heights, chain sets and the chain-condition properties P1/P2/Q1/Q2, MPC,
catenarity and the S-ring property are computed exactly on the stored
order.  Labels that the order alone cannot supply (polynomial-extension
heights, residue transcendence degrees, residue-domain flags) are stored
per node; a missing label makes the dependent answer UNKNOWN, never a
default value.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .numeric import INF, ExtNat, coerce
from .tristate import TriState, kleene_all, kleene_and

DEFAULT_MAX_NODES = 64


class InvalidPoset(ValueError):
    """The nodes/covers data does not describe a valid labeled poset."""


class UnknownNode(KeyError):
    def __init__(self, node_id: str):
        super().__init__(node_id)
        self.node_id = node_id

    def __str__(self) -> str:
        return f"no node named {self.node_id!r} in this poset"


class NotComparable(ValueError):
    def __init__(self, lo: str, hi: str):
        super().__init__(f"{lo!r} is not below {hi!r} in this poset")
        self.lo = lo
        self.hi = hi


class PosetTooLarge(ValueError):
    def __init__(self, size: int, limit: int):
        super().__init__(
            f"chain enumeration refused: poset has {size} nodes, limit is {limit}"
        )
        self.size = size
        self.limit = limit


class PosetProperty(enum.Enum):
    P1 = "P1"
    P2 = "P2"
    Q1 = "Q1"
    Q2 = "Q2"
    MPC = "MPC"
    CATENARIAN = "CATENARIAN"
    S_RING = "S_RING"


@dataclass
class PrimeNode:
    """One prime ideal with its optional labels.

    poly_heights[s] records the height of the extension of this prime to
    the polynomial ring in s variables; residue_td the transcendence
    degree of the residue ring over the base field.  The residue flags
    assert properties of the residue domain that the poset itself cannot
    see.
    """

    id: str
    residue_td: Optional[ExtNat] = None
    poly_heights: Dict[int, ExtNat] = field(default_factory=dict)
    residue_is_s_domain: TriState = TriState.UNKNOWN
    residue_is_catenarian: TriState = TriState.UNKNOWN

    def to_json(self) -> dict:
        out: dict = {"id": self.id}
        if self.residue_td is not None:
            out["residue_td"] = self.residue_td.to_json()
        if self.poly_heights:
            out["poly_heights"] = {
                str(s): h.to_json() for s, h in sorted(self.poly_heights.items())
            }
        if self.residue_is_s_domain is not TriState.UNKNOWN:
            out["residue_is_s_domain"] = self.residue_is_s_domain.to_json()
        if self.residue_is_catenarian is not TriState.UNKNOWN:
            out["residue_is_catenarian"] = self.residue_is_catenarian.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PrimeNode":
        if "id" not in data:
            raise InvalidPoset("node without an 'id'")
        poly_heights: Dict[int, ExtNat] = {}
        for key, value in (data.get("poly_heights") or {}).items():
            s = int(key)
            if s < 1:
                raise InvalidPoset(f"poly_heights key must be >= 1, got {key!r}")
            poly_heights[s] = ExtNat.from_json(value)
        residue_td = data.get("residue_td")
        return cls(
            id=str(data["id"]),
            residue_td=None if residue_td is None else ExtNat.from_json(residue_td),
            poly_heights=poly_heights,
            residue_is_s_domain=TriState.from_json(data.get("residue_is_s_domain", "unknown")),
            residue_is_catenarian=TriState.from_json(
                data.get("residue_is_catenarian", "unknown")
            ),
        )


class SpectralPoset:
    """Immutable-after-construction poset given by its covering relation.

    The covers must form the Hasse diagram: acyclic and free of
    transitively implied edges.  All checkers are read-only, so a built
    poset can be shared freely between threads.
    """

    def __init__(
        self,
        nodes: Iterable[PrimeNode],
        covers: Iterable[Tuple[str, str]],
        algebra_td: Optional[ExtNat] = None,
        complete: bool = False,
    ):
        self.nodes: Dict[str, PrimeNode] = {}
        for node in nodes:
            if node.id in self.nodes:
                raise InvalidPoset(f"duplicate node id {node.id!r}")
            self.nodes[node.id] = node
        if not self.nodes:
            raise InvalidPoset("a poset needs at least one node")

        self.covers: List[Tuple[str, str]] = []
        self._up: Dict[str, List[str]] = {n: [] for n in self.nodes}
        self._down: Dict[str, List[str]] = {n: [] for n in self.nodes}
        seen = set()
        for lo, hi in covers:
            if lo not in self.nodes:
                raise UnknownNode(lo)
            if hi not in self.nodes:
                raise UnknownNode(hi)
            if lo == hi:
                raise InvalidPoset(f"self-cover on {lo!r}")
            if (lo, hi) in seen:
                continue
            seen.add((lo, hi))
            self.covers.append((lo, hi))
            self._up[lo].append(hi)
            self._down[hi].append(lo)

        self.algebra_td = algebra_td
        self.complete = complete

        self._topo = self._toposort()
        self._check_transitive_reduction()
        self._heights = self._compute_heights()
        self._min_below = self._compute_min_below()
        self._check_labels()

    # -- construction helpers -------------------------------------------------

    def _toposort(self) -> List[str]:
        indeg = {n: len(self._down[n]) for n in self.nodes}
        queue = sorted(n for n, d in indeg.items() if d == 0)
        order: List[str] = []
        while queue:
            n = queue.pop(0)
            order.append(n)
            for m in self._up[n]:
                indeg[m] -= 1
                if indeg[m] == 0:
                    queue.append(m)
            queue.sort()
        if len(order) != len(self.nodes):
            raise InvalidPoset("covers contain a cycle")
        return order

    def _check_transitive_reduction(self):
        for lo, hi in self.covers:
            # is hi reachable from lo without the direct edge?
            stack = [m for m in self._up[lo] if m != hi]
            visited: Set[str] = set(stack)
            while stack:
                n = stack.pop()
                if n == hi:
                    raise InvalidPoset(
                        f"cover ({lo!r}, {hi!r}) is transitively implied; "
                        "covers must be the Hasse diagram"
                    )
                for m in self._up[n]:
                    if m not in visited:
                        visited.add(m)
                        stack.append(m)

    def _compute_heights(self) -> Dict[str, int]:
        heights: Dict[str, int] = {}
        for n in self._topo:
            below = self._down[n]
            heights[n] = 0 if not below else 1 + max(heights[m] for m in below)
        return heights

    def _compute_min_below(self) -> Dict[str, frozenset]:
        out: Dict[str, frozenset] = {}
        for n in self._topo:
            below = self._down[n]
            if not below:
                out[n] = frozenset({n})
            else:
                acc: Set[str] = set()
                for m in below:
                    acc |= out[m]
                out[n] = frozenset(acc)
        return out

    def _check_labels(self):
        for node in self.nodes.values():
            h = self._heights[node.id]
            for s, ph in node.poly_heights.items():
                # extension along a faithfully flat map cannot drop height
                if ph < ExtNat(h):
                    raise InvalidPoset(
                        f"node {node.id!r}: poly_heights[{s}] = {ph} is below "
                        f"the node height {h}"
                    )
            if (
                self.algebra_td is not None
                and self.algebra_td.is_finite
                and node.residue_td is not None
                and node.residue_td.is_finite
            ):
                if h + node.residue_td.value > self.algebra_td.value:
                    raise InvalidPoset(
                        f"node {node.id!r}: height {h} + residue_td "
                        f"{node.residue_td} exceeds algebra_td {self.algebra_td}"
                    )

    # -- basic queries ---------------------------------------------------------

    def _require(self, node_id: str) -> PrimeNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def minimal_ids(self) -> List[str]:
        return [n for n in self._topo if not self._down[n]]

    def maximal_ids(self) -> List[str]:
        return [n for n in self._topo if not self._up[n]]

    def height(self, node_id: str) -> ExtNat:
        """Length of the longest chain from a minimal element up to the node."""
        self._require(node_id)
        return ExtNat(self._heights[node_id])

    def krull_dim(self) -> ExtNat:
        return ExtNat(max(self._heights.values()))

    def up_set(self, node_id: str) -> Set[str]:
        self._require(node_id)
        seen = {node_id}
        stack = [node_id]
        while stack:
            n = stack.pop()
            for m in self._up[n]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return seen

    def down_set(self, node_id: str) -> Set[str]:
        self._require(node_id)
        seen = {node_id}
        stack = [node_id]
        while stack:
            n = stack.pop()
            for m in self._down[n]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return seen

    def is_mpc(self) -> bool:
        """No prime contains two distinct minimal primes."""
        return all(len(self._min_below[n]) <= 1 for n in self.nodes)

    def saturated_chain_lengths(
        self, lo: str, hi: str, max_nodes: int = DEFAULT_MAX_NODES
    ) -> Set[int]:
        """Lengths of all saturated chains from lo up to hi.

        Enumeration is exponential in the worst case, so posets larger
        than max_nodes are refused outright.
        """
        self._require(lo)
        self._require(hi)
        if len(self.nodes) > max_nodes:
            raise PosetTooLarge(len(self.nodes), max_nodes)
        if lo == hi:
            return {0}
        # every intermediate member of a saturated chain lies in [lo, hi]
        relevant = self.up_set(lo) & self.down_set(hi)
        if hi not in relevant:
            raise NotComparable(lo, hi)

        lengths: Set[int] = set()

        def walk(n: str, steps: int):
            if n == hi:
                lengths.add(steps)
                return
            for m in self._up[n]:
                if m in relevant:
                    walk(m, steps + 1)

        walk(lo, 0)
        return lengths

    # -- chain-condition properties --------------------------------------------

    def check_property(self, prop) -> TriState:
        if isinstance(prop, str):
            prop = PosetProperty(prop.upper())
        if prop is PosetProperty.MPC:
            return TriState.of(self.is_mpc())
        if prop is PosetProperty.P1:
            return self._check_p1()
        if prop is PosetProperty.P2:
            return self._check_p2()
        if prop is PosetProperty.Q1:
            return self._check_q1()
        if prop is PosetProperty.Q2:
            return self._check_q2()
        if prop is PosetProperty.CATENARIAN:
            return kleene_and(self.check_property(PosetProperty.MPC), self._check_q1())
        if prop is PosetProperty.S_RING:
            return kleene_and(self.check_property(PosetProperty.MPC), self._check_p1())
        raise ValueError(f"unhandled property {prop!r}")

    def _check_p1(self) -> TriState:
        # residue domains of the minimal primes must all be S-domains;
        # that is label data, so missing flags degrade to UNKNOWN
        return kleene_all(
            self.nodes[m].residue_is_s_domain for m in self.minimal_ids()
        )

    def _check_p2(self) -> TriState:
        verdicts = []
        for n in self._topo:
            if self._heights[n] != 1:
                continue
            ph = self.nodes[n].poly_heights.get(1)
            if ph is None:
                verdicts.append(TriState.UNKNOWN)
            else:
                verdicts.append(TriState.of(ph == ExtNat(1)))
        return kleene_all(verdicts)

    def _check_q1(self) -> TriState:
        # finite posets are always LFD, so only the cover condition matters
        ok = all(
            self._heights[hi] == self._heights[lo] + 1 for lo, hi in self.covers
        )
        return TriState.of(ok)

    def _check_q2(self) -> TriState:
        verdicts = []
        for m in self.minimal_ids():
            flag = self.nodes[m].residue_is_catenarian
            if flag is not TriState.UNKNOWN:
                verdicts.append(flag)
            else:
                verdicts.append(TriState.of(self._up_set_satisfies_q1(m)))
        return kleene_all(verdicts)

    def _up_set_satisfies_q1(self, root: str) -> bool:
        # the up-set of a minimal prime, re-rooted, models the residue ring's
        # spectrum; its covers are exactly the original covers inside it
        members = self.up_set(root)
        heights: Dict[str, int] = {}
        for n in self._topo:
            if n not in members:
                continue
            below = [m for m in self._down[n] if m in members]
            heights[n] = 0 if not below else 1 + max(heights[m] for m in below)
        return all(
            heights[hi] == heights[lo] + 1
            for lo, hi in self.covers
            if lo in members and hi in members
        )

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {
            "nodes": [self.nodes[n].to_json() for n in sorted(self.nodes)],
            "covers": [[lo, hi] for lo, hi in sorted(self.covers)],
        }
        if self.algebra_td is not None:
            out["algebra_td"] = self.algebra_td.to_json()
        if self.complete:
            out["complete"] = True
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SpectralPoset":
        if not isinstance(data, dict):
            raise InvalidPoset("poset JSON must be an object")
        nodes = [PrimeNode.from_json(entry) for entry in data.get("nodes", [])]
        covers = []
        for pair in data.get("covers", []):
            if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                raise InvalidPoset(f"bad cover entry: {pair!r}")
            covers.append((str(pair[0]), str(pair[1])))
        algebra_td = data.get("algebra_td")
        return cls(
            nodes,
            covers,
            algebra_td=None if algebra_td is None else ExtNat.from_json(algebra_td),
            complete=bool(data.get("complete", False)),
        )

    @classmethod
    def load(cls, path: str) -> "SpectralPoset":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_dot(self) -> str:
        lines = ["digraph spectrum {", "  rankdir=BT;"]
        for n in sorted(self.nodes):
            lines.append(f'  "{n}";')
        for lo, hi in sorted(self.covers):
            lines.append(f'  "{lo}" -> "{hi}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectralPoset):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __repr__(self) -> str:
        return f"SpectralPoset({len(self.nodes)} nodes, {len(self.covers)} covers)"


def height(poset: SpectralPoset, node_id: str) -> ExtNat:
    return poset.height(node_id)


def krull_dim(poset: SpectralPoset) -> ExtNat:
    return poset.krull_dim()


def is_mpc(poset: SpectralPoset) -> bool:
    return poset.is_mpc()


def saturated_chain_lengths(
    poset: SpectralPoset, lo: str, hi: str, max_nodes: int = DEFAULT_MAX_NODES
) -> Set[int]:
    return poset.saturated_chain_lengths(lo, hi, max_nodes=max_nodes)


def check_property(poset: SpectralPoset, prop) -> TriState:
    return poset.check_property(prop)
