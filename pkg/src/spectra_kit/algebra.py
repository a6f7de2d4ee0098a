"""Algebra construction trees and the tri-state fact store attached to them.

An expression describes how an algebra is built from atoms (opaque rings
with asserted properties), field extensions of the base field, polynomial
rings, localizations and binary tensor products.  A KnowledgeBase maps
(expression node, property) pairs to TRUE/FALSE facts, each carrying a
provenance chain back to axioms; everything not derivable stays UNKNOWN.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .numeric import INF, ExtNat, NatInterval, EmptyIntersection, ZERO
from .poset import SpectralPoset
from .tristate import TriState

AXIOM = "axiom"

NUMERIC_FIELDS = ("dim", "td", "min_residue_td")


class UnknownSubject(KeyError):
    def __init__(self, subject: str):
        super().__init__(subject)
        self.subject = subject

    def __str__(self) -> str:
        return f"no expression node at path {self.subject!r}"


class ContradictionError(Exception):
    """The same (subject, property) was forced both TRUE and FALSE.

    Carries both derivations so the caller can report which axioms (or
    which modeling mistake) clash.  Also raised when numeric intervals
    for one quantity become disjoint.
    """

    def __init__(self, subject: str, description: str, existing, incoming):
        super().__init__(f"contradiction at {subject}: {description}")
        self.subject = subject
        self.description = description
        self.existing = existing
        self.incoming = incoming


class PropertyKind(enum.Enum):
    DOMAIN = "DOMAIN"
    FIELD = "FIELD"
    INTEGRALLY_CLOSED = "INTEGRALLY_CLOSED"
    NOETHERIAN = "NOETHERIAN"
    PRUFER = "PRUFER"
    MPC = "MPC"
    S_RING = "S_RING"
    STRONG_S = "STRONG_S"
    STABLY_STRONG_S = "STABLY_STRONG_S"
    CATENARIAN = "CATENARIAN"
    UNIV_CATENARIAN = "UNIV_CATENARIAN"
    LFD = "LFD"
    AF_DOMAIN = "AF_DOMAIN"
    POLY_RING_CATENARIAN = "POLY_RING_CATENARIAN"

    @property
    def flag(self) -> str:
        return self.name.lower()


FLAG_TO_PROPERTY = {p.flag: p for p in PropertyKind}


class FieldKind(enum.Enum):
    PURELY_TRANSCENDENTAL = "pure_trans"
    SEPARABLE_ALGEBRAIC_FINITE = "sep_alg_finite"
    ALGEBRAIC = "algebraic"
    PURELY_INSEPARABLE = "insep"
    GENERAL = "general"


# kinds that force the extension to be algebraic (transcendence degree 0)
ALGEBRAIC_KINDS = {
    FieldKind.SEPARABLE_ALGEBRAIC_FINITE,
    FieldKind.ALGEBRAIC,
    FieldKind.PURELY_INSEPARABLE,
}


class AlgebraExpr:
    """Base class for expression nodes."""

    def children(self) -> Sequence[Tuple[str, "AlgebraExpr"]]:
        return ()


@dataclass(frozen=True)
class Atom(AlgebraExpr):
    """An opaque ring known only through assertions and an optional poset.

    asserted_facts is an ordered sequence so that contradictory duplicate
    assertions survive until knowledge-base seeding, where they raise.
    """

    name: str
    asserted_facts: Tuple[Tuple[PropertyKind, bool], ...] = ()
    td: Optional[NatInterval] = None
    dim: Optional[NatInterval] = None
    min_residue_td: Optional[NatInterval] = None
    poset: Optional[SpectralPoset] = None
    poset_source: Optional[str] = None
    contains_sep_closure: bool = False
    integral_closure_prufer: bool = False
    sep_closure_in_qf: bool = False


@dataclass(frozen=True)
class FieldExt(AlgebraExpr):
    """A field extension of the base field, as an algebra in its own right."""

    td: ExtNat
    kind: FieldKind = FieldKind.GENERAL
    finite_over_sep_closure: TriState = TriState.UNKNOWN

    def __post_init__(self):
        if self.kind in ALGEBRAIC_KINDS and self.td != ZERO:
            raise ValueError(
                f"field extension of kind {self.kind.value} must have td = 0, "
                f"got td = {self.td}"
            )

    def is_algebraic(self) -> bool:
        return self.td == ZERO

    def effective_finite_over_sep_closure(self) -> TriState:
        """Whether the separable closure of the rational part has finite degree.

        Purely transcendental, finite separable and purely inseparable
        extensions satisfy this structurally; otherwise it is whatever was
        asserted.
        """
        if self.kind in (
            FieldKind.PURELY_TRANSCENDENTAL,
            FieldKind.SEPARABLE_ALGEBRAIC_FINITE,
            FieldKind.PURELY_INSEPARABLE,
        ):
            return TriState.TRUE
        return self.finite_over_sep_closure


@dataclass(frozen=True)
class Poly(AlgebraExpr):
    inner: AlgebraExpr
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("polynomial ring needs at least one indeterminate")

    def children(self):
        return (("inner", self.inner),)


@dataclass(frozen=True)
class Localization(AlgebraExpr):
    """A ring of fractions of the inner algebra.

    No multiplicative set is recorded; the node exists to carry the
    stability rules for fraction rings.  Asserting a fact here as an axiom
    is read as asserting it for every localization of the inner algebra.
    """

    inner: AlgebraExpr

    def children(self):
        return (("inner", self.inner),)


@dataclass(frozen=True)
class Tensor(AlgebraExpr):
    left: AlgebraExpr
    right: AlgebraExpr

    def children(self):
        return (("left", self.left), ("right", self.right))


def iter_nodes(expr: AlgebraExpr, path: str = "$") -> Iterator[Tuple[str, AlgebraExpr]]:
    yield path, expr
    for label, child in expr.children():
        yield from iter_nodes(child, f"{path}.{label}")


@dataclass(frozen=True)
class Provenance:
    rule_id: str
    citation: str
    premises: Tuple[tuple, ...] = ()

    def is_axiom(self) -> bool:
        return self.rule_id == AXIOM


@dataclass(frozen=True)
class Fact:
    subject: str
    property: PropertyKind
    value: TriState
    provenance: Provenance


@dataclass
class KBConfig:
    """Description of the base field k shared by the whole expression."""

    base_field_algebraically_closed: TriState = TriState.UNKNOWN


def fact_premise(subject: str, prop: PropertyKind) -> tuple:
    return ("fact", subject, prop)


def interval_premise(subject: str, field_name: str, interval: NatInterval) -> tuple:
    return ("interval", subject, field_name, repr(interval))


def structural_premise(text: str) -> tuple:
    return ("structural", text)


def config_premise(text: str) -> tuple:
    return ("config", text)


class KnowledgeBase:
    """Facts and numeric intervals for every node of one expression.

    Single-writer: seeding and inference mutate it; afterwards treat it as
    read-only.  Facts only accumulate and intervals only tighten, so
    inference is monotone by construction.
    """

    def __init__(self, expr: AlgebraExpr, config: Optional[KBConfig] = None):
        self.expr = expr
        self.config = config or KBConfig()
        self.nodes: Dict[str, AlgebraExpr] = dict(iter_nodes(expr))
        self.facts: Dict[Tuple[str, PropertyKind], Fact] = {}
        self._intervals: Dict[Tuple[str, str], NatInterval] = {}
        self._interval_history: Dict[Tuple[str, str], List[Tuple[str, str]]] = {}

    # -- reads ------------------------------------------------------------------

    def require_subject(self, subject: str) -> AlgebraExpr:
        try:
            return self.nodes[subject]
        except KeyError:
            raise UnknownSubject(subject) from None

    def value(self, subject: str, prop: PropertyKind) -> TriState:
        fact = self.facts.get((subject, prop))
        return fact.value if fact else TriState.UNKNOWN

    def fact(self, subject: str, prop: PropertyKind) -> Optional[Fact]:
        return self.facts.get((subject, prop))

    def interval(self, subject: str, field_name: str) -> NatInterval:
        if field_name not in NUMERIC_FIELDS:
            raise ValueError(f"unknown numeric field {field_name!r}")
        return self._intervals.get((subject, field_name), NatInterval.unknown())

    def interval_history(self, subject: str, field_name: str) -> List[Tuple[str, str]]:
        return list(self._interval_history.get((subject, field_name), []))

    def tensors(self) -> Iterator[Tuple[str, Tensor]]:
        for path in sorted(self.nodes):
            node = self.nodes[path]
            if isinstance(node, Tensor):
                yield path, node

    def of_type(self, node_type) -> Iterator[Tuple[str, AlgebraExpr]]:
        for path in sorted(self.nodes):
            node = self.nodes[path]
            if isinstance(node, node_type):
                yield path, node

    # -- writes -----------------------------------------------------------------

    def add_fact(
        self,
        subject: str,
        prop: PropertyKind,
        value: TriState,
        provenance: Provenance,
    ) -> bool:
        """Record a TRUE/FALSE fact; no-op if already known with the same value."""
        if value is TriState.UNKNOWN:
            raise ValueError("UNKNOWN is the absence of a fact, not a fact")
        self.require_subject(subject)
        key = (subject, prop)
        existing = self.facts.get(key)
        candidate = Fact(subject, prop, value, provenance)
        if existing is None:
            self.facts[key] = candidate
            return True
        if existing.value is value:
            return False  # keep the first derivation
        raise ContradictionError(
            subject,
            f"{prop.name} is both {existing.value.value} and {value.value}",
            existing,
            candidate,
        )

    def tighten(
        self,
        subject: str,
        field_name: str,
        interval: NatInterval,
        rule_id: str,
        citation: str,
    ) -> bool:
        self.require_subject(subject)
        current = self.interval(subject, field_name)
        try:
            refined = current.intersect(interval)
        except EmptyIntersection as exc:
            raise ContradictionError(
                subject,
                f"{field_name} cannot satisfy both {current} "
                f"(via {[r for r, _ in self.interval_history(subject, field_name)] or [AXIOM]}) "
                f"and {interval} (via {rule_id})",
                current,
                interval,
            ) from exc
        if refined == current:
            return False
        self._intervals[(subject, field_name)] = refined
        self._interval_history.setdefault((subject, field_name), []).append(
            (rule_id, citation)
        )
        return True

    # -- snapshots / dumps --------------------------------------------------------

    def snapshot(self) -> tuple:
        facts = tuple(
            sorted(
                (subject, prop.name, fact.value.value)
                for (subject, prop), fact in self.facts.items()
            )
        )
        intervals = tuple(
            sorted(
                (subject, field_name, repr(interval))
                for (subject, field_name), interval in self._intervals.items()
            )
        )
        return (facts, intervals)

    def dump_facts(self) -> dict:
        out: dict = {}
        for subject in sorted(self.nodes):
            entry = {}
            for prop in PropertyKind:
                fact = self.facts.get((subject, prop))
                if fact is not None:
                    entry[prop.name] = {
                        "value": fact.value.to_json(),
                        "rule_id": fact.provenance.rule_id,
                        "citation": fact.provenance.citation,
                    }
            numeric = {
                field_name: self.interval(subject, field_name).to_json()
                for field_name in NUMERIC_FIELDS
            }
            out[subject] = {"facts": entry, "numeric": numeric}
        return out


def get_fact(
    kb: KnowledgeBase, subject: str, prop: PropertyKind
) -> Tuple[TriState, Optional[Provenance]]:
    kb.require_subject(subject)
    fact = kb.fact(subject, prop)
    if fact is None:
        return TriState.UNKNOWN, None
    return fact.value, fact.provenance


AxiomSpec = Tuple[str, PropertyKind, Union[bool, TriState]]

_FIELD_FORCED = (
    PropertyKind.FIELD,
    PropertyKind.DOMAIN,
    PropertyKind.INTEGRALLY_CLOSED,
    PropertyKind.NOETHERIAN,
    PropertyKind.PRUFER,
    PropertyKind.UNIV_CATENARIAN,
    PropertyKind.LFD,
)


def new_kb(
    expr: AlgebraExpr,
    axioms: Iterable[AxiomSpec] = (),
    config: Optional[KBConfig] = None,
) -> KnowledgeBase:
    """Build a knowledge base seeded with axioms and structural facts.

    Field-extension nodes force a block of facts (a field is a domain,
    integrally closed, Noetherian, universally catenarian, ... with
    dim = [0, 0]).  Nothing is inferred beyond that here; run infer() for
    the rule catalog.
    """
    kb = KnowledgeBase(expr, config=config)
    for path in sorted(kb.nodes):
        node = kb.nodes[path]
        if isinstance(node, FieldExt):
            _seed_field(kb, path, node)
        elif isinstance(node, Atom):
            _seed_atom(kb, path, node)
    for subject, prop, value in axioms:
        tri = value if isinstance(value, TriState) else TriState.of(value)
        if tri is TriState.UNKNOWN:
            continue
        kb.add_fact(subject, prop, tri, Provenance(AXIOM, "asserted"))
    return kb


def _seed_field(kb: KnowledgeBase, path: str, node: FieldExt):
    prov = Provenance(AXIOM, "structural: field extension node")
    for prop in _FIELD_FORCED:
        kb.add_fact(path, prop, TriState.TRUE, prov)
    # finitely generated over itself; an AF-domain iff the transcendence
    # degree is finite
    kb.add_fact(
        path,
        PropertyKind.AF_DOMAIN,
        TriState.of(node.td.is_finite),
        prov,
    )
    kb.tighten(path, "dim", NatInterval.exact(0), AXIOM, prov.citation)
    kb.tighten(path, "td", NatInterval.exact(node.td), AXIOM, prov.citation)
    # the only prime is (0), whose residue field is the extension itself
    kb.tighten(path, "min_residue_td", NatInterval.exact(node.td), AXIOM, prov.citation)


def _seed_atom(kb: KnowledgeBase, path: str, node: Atom):
    prov = Provenance(AXIOM, f"asserted on atom {node.name}")
    for prop, value in node.asserted_facts:
        kb.add_fact(path, prop, TriState.of(value), prov)
    for field_name, interval in (
        ("td", node.td),
        ("dim", node.dim),
        ("min_residue_td", node.min_residue_td),
    ):
        if interval is not None:
            kb.tighten(path, field_name, interval, AXIOM, prov.citation)
    if node.poset is not None:
        _seed_atom_poset(kb, path, node)


def _seed_atom_poset(kb: KnowledgeBase, path: str, node: Atom):
    """Pull numeric summaries and decisive checks out of an attached poset.

    Only a poset attested complete may fix exact values; a partial poset
    yields one-sided bounds (its chains bound the dimension from below and
    its minimal primes bound the minimal residue degree from above).
    """
    poset = node.poset
    cite = f"poset model attached to atom {node.name}"
    kd = poset.krull_dim()
    if poset.complete:
        kb.tighten(path, "dim", NatInterval.exact(kd), AXIOM, cite)
        kb.add_fact(path, PropertyKind.LFD, TriState.TRUE, Provenance(AXIOM, cite))
        for prop, check in (
            (PropertyKind.MPC, "MPC"),
            (PropertyKind.S_RING, "S_RING"),
            (PropertyKind.CATENARIAN, "CATENARIAN"),
        ):
            verdict = poset.check_property(check)
            if verdict.is_decisive():
                kb.add_fact(path, prop, verdict, Provenance(AXIOM, cite))
    else:
        kb.tighten(path, "dim", NatInterval.at_least(kd), AXIOM, cite)
    if poset.algebra_td is not None:
        kb.tighten(path, "td", NatInterval.exact(poset.algebra_td), AXIOM, cite)

    residue_tds = [poset.nodes[m].residue_td for m in poset.minimal_ids()]
    present = [td for td in residue_tds if td is not None]
    if present:
        upper = present[0]
        for td in present[1:]:
            upper = min(upper, td)
        if poset.complete and len(present) == len(residue_tds):
            mrt = NatInterval.exact(upper)
        else:
            mrt = NatInterval.at_most(upper)
        kb.tighten(path, "min_residue_td", mrt, AXIOM, cite)


# -- expression serialization -------------------------------------------------


def expr_to_json(expr: AlgebraExpr) -> dict:
    if isinstance(expr, Atom):
        out: dict = {"variant": "atom", "name": expr.name}
        if expr.asserted_facts:
            out["facts"] = [[p.name, v] for p, v in expr.asserted_facts]
        for key, interval in (
            ("td", expr.td),
            ("dim", expr.dim),
            ("min_residue_td", expr.min_residue_td),
        ):
            if interval is not None:
                out[key] = interval.to_json()
        for key in ("contains_sep_closure", "integral_closure_prufer", "sep_closure_in_qf"):
            if getattr(expr, key):
                out[key] = True
        if expr.poset is not None:
            out["poset"] = expr.poset.to_json()
            if expr.poset_source:
                out["poset_source"] = expr.poset_source
        return out
    if isinstance(expr, FieldExt):
        out = {"variant": "field", "td": expr.td.to_json(), "kind": expr.kind.value}
        if expr.finite_over_sep_closure is not TriState.UNKNOWN:
            out["finite_over_sep_closure"] = expr.finite_over_sep_closure.to_json()
        return out
    if isinstance(expr, Poly):
        return {"variant": "poly", "inner": expr_to_json(expr.inner), "n": expr.n}
    if isinstance(expr, Localization):
        return {"variant": "loc", "inner": expr_to_json(expr.inner)}
    if isinstance(expr, Tensor):
        return {
            "variant": "tensor",
            "left": expr_to_json(expr.left),
            "right": expr_to_json(expr.right),
        }
    raise TypeError(f"not an expression node: {expr!r}")


def expr_from_json(data: dict) -> AlgebraExpr:
    variant = data.get("variant")
    if variant == "atom":
        facts = tuple(
            (PropertyKind[p], bool(v)) for p, v in data.get("facts", [])
        )
        poset = None
        if "poset" in data:
            poset = SpectralPoset.from_json(data["poset"])
        return Atom(
            name=data["name"],
            asserted_facts=facts,
            td=_opt_interval(data.get("td")),
            dim=_opt_interval(data.get("dim")),
            min_residue_td=_opt_interval(data.get("min_residue_td")),
            poset=poset,
            poset_source=data.get("poset_source"),
            contains_sep_closure=bool(data.get("contains_sep_closure", False)),
            integral_closure_prufer=bool(data.get("integral_closure_prufer", False)),
            sep_closure_in_qf=bool(data.get("sep_closure_in_qf", False)),
        )
    if variant == "field":
        return FieldExt(
            td=ExtNat.from_json(data["td"]),
            kind=FieldKind(data.get("kind", "general")),
            finite_over_sep_closure=TriState.from_json(
                data.get("finite_over_sep_closure", "unknown")
            ),
        )
    if variant == "poly":
        return Poly(expr_from_json(data["inner"]), int(data["n"]))
    if variant == "loc":
        return Localization(expr_from_json(data["inner"]))
    if variant == "tensor":
        return Tensor(expr_from_json(data["left"]), expr_from_json(data["right"]))
    raise ValueError(f"unknown expression variant {variant!r}")


def _opt_interval(value) -> Optional[NatInterval]:
    return None if value is None else NatInterval.from_json(value)
