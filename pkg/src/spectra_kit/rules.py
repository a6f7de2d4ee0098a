"""Inference-rule catalog and fixpoint engine over algebra expressions.

Each rule encodes one characterization or transfer theorem as a guarded,
monotone step: it may add TRUE/FALSE facts or tighten numeric intervals,
never retract.  Rules carry a citation (theorem label plus a verbatim
anchor quote) so every derived fact can be explained back to its source.
One-directional theorems yield one-directional rules; only statements
that are genuine equivalences propagate FALSE backwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .algebra import (
    AXIOM,
    Atom,
    FieldExt,
    FieldKind,
    KnowledgeBase,
    Localization,
    Poly,
    PropertyKind,
    Provenance,
    Tensor,
    config_premise,
    fact_premise,
    interval_premise,
    structural_premise,
)
from .numeric import INF, ExtNat, NatInterval, ZERO, ext_min
from .tristate import TriState, kleene_and, kleene_or

P = PropertyKind
TRUE, FALSE, UNKNOWN = TriState.TRUE, TriState.FALSE, TriState.UNKNOWN

ONE = NatInterval.exact(1)
TWO = NatInterval.exact(2)


class NotATensor(TypeError):
    def __init__(self, subject: str):
        super().__init__(f"node {subject!r} is not a tensor product")
        self.subject = subject


class NoDerivation(LookupError):
    def __init__(self, subject: str, prop: PropertyKind):
        super().__init__(f"{prop.name} at {subject!r} is unknown; nothing to explain")
        self.subject = subject
        self.property = prop


@dataclass(frozen=True)
class Rule:
    rule_id: str
    citation: str
    guard: str
    fn: Callable[[KnowledgeBase], Iterator[tuple]]


def _fact(subject, prop, value, premises=()):
    return ("fact", subject, prop, value, tuple(premises))


def _tighten(subject, field_name, interval):
    return ("interval", subject, field_name, interval)


def _equiv(kb: KnowledgeBase, members, extra_premises=()):
    """Propagate any decisive member value of a full equivalence to the rest."""
    for s, p in members:
        val = kb.value(s, p)
        if not val.is_decisive():
            continue
        prem = [fact_premise(s, p), *extra_premises]
        for s2, p2 in members:
            if (s2, p2) != (s, p):
                yield _fact(s2, p2, val, prem)


def _is_algebraic_field(node) -> bool:
    return isinstance(node, FieldExt) and node.is_algebraic()


def _exact_dim(kb, path, n) -> bool:
    return kb.interval(path, "dim") == NatInterval.exact(n)


# --------------------------------------------------------------------------
# property implication lattice
# --------------------------------------------------------------------------


def lat_field(kb):
    forced = (
        P.DOMAIN,
        P.INTEGRALLY_CLOSED,
        P.NOETHERIAN,
        P.PRUFER,
        P.UNIV_CATENARIAN,
        P.LFD,
    )
    for path in sorted(kb.nodes):
        if kb.value(path, P.FIELD) is TRUE:
            prem = [fact_premise(path, P.FIELD)]
            for prop in forced:
                yield _fact(path, prop, TRUE, prem)
            yield _tighten(path, "dim", NatInterval.exact(0))


def lat_uc_sss(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.UNIV_CATENARIAN) is TRUE:
            yield _fact(path, P.STABLY_STRONG_S, TRUE, [fact_premise(path, P.UNIV_CATENARIAN)])
        if kb.value(path, P.STABLY_STRONG_S) is FALSE:
            yield _fact(path, P.UNIV_CATENARIAN, FALSE, [fact_premise(path, P.STABLY_STRONG_S)])


def lat_uc_cat(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.UNIV_CATENARIAN) is TRUE:
            yield _fact(path, P.CATENARIAN, TRUE, [fact_premise(path, P.UNIV_CATENARIAN)])
            yield _fact(path, P.POLY_RING_CATENARIAN, TRUE, [fact_premise(path, P.UNIV_CATENARIAN)])
        if kb.value(path, P.CATENARIAN) is FALSE:
            yield _fact(path, P.UNIV_CATENARIAN, FALSE, [fact_premise(path, P.CATENARIAN)])
        if kb.value(path, P.POLY_RING_CATENARIAN) is FALSE:
            yield _fact(path, P.UNIV_CATENARIAN, FALSE, [fact_premise(path, P.POLY_RING_CATENARIAN)])


def lat_sss_ss(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.STABLY_STRONG_S) is TRUE:
            yield _fact(path, P.STRONG_S, TRUE, [fact_premise(path, P.STABLY_STRONG_S)])
        if kb.value(path, P.STRONG_S) is FALSE:
            yield _fact(path, P.STABLY_STRONG_S, FALSE, [fact_premise(path, P.STRONG_S)])


def lat_prufer_uc(kb):
    for path in sorted(kb.nodes):
        if (
            kb.value(path, P.PRUFER) is TRUE
            and kb.value(path, P.DOMAIN) is TRUE
            and kb.value(path, P.LFD) is TRUE
        ):
            prem = [
                fact_premise(path, P.PRUFER),
                fact_premise(path, P.DOMAIN),
                fact_premise(path, P.LFD),
            ]
            yield _fact(path, P.UNIV_CATENARIAN, TRUE, prem)


def lat_domain_mpc(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.DOMAIN) is TRUE:
            yield _fact(path, P.MPC, TRUE, [fact_premise(path, P.DOMAIN)])
        if kb.value(path, P.MPC) is FALSE:
            yield _fact(path, P.DOMAIN, FALSE, [fact_premise(path, P.MPC)])


def lat_sring_mpc(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.S_RING) is TRUE:
            yield _fact(path, P.MPC, TRUE, [fact_premise(path, P.S_RING)])
        if kb.value(path, P.MPC) is FALSE:
            yield _fact(path, P.S_RING, FALSE, [fact_premise(path, P.MPC)])


def lat_cat_mpc(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.CATENARIAN) is TRUE:
            yield _fact(path, P.MPC, TRUE, [fact_premise(path, P.CATENARIAN)])
            yield _fact(path, P.LFD, TRUE, [fact_premise(path, P.CATENARIAN)])
        if kb.value(path, P.MPC) is FALSE:
            yield _fact(path, P.CATENARIAN, FALSE, [fact_premise(path, P.MPC)])
        if kb.value(path, P.LFD) is FALSE:
            yield _fact(path, P.CATENARIAN, FALSE, [fact_premise(path, P.LFD)])


def lat_ss_mpc_sring(kb):
    for path in sorted(kb.nodes):
        mpc = kb.value(path, P.MPC)
        if mpc is not TRUE:
            continue
        prem_mpc = fact_premise(path, P.MPC)
        if kb.value(path, P.STRONG_S) is TRUE:
            yield _fact(path, P.S_RING, TRUE, [fact_premise(path, P.STRONG_S), prem_mpc])
        if kb.value(path, P.S_RING) is FALSE:
            yield _fact(path, P.STRONG_S, FALSE, [fact_premise(path, P.S_RING), prem_mpc])


# --------------------------------------------------------------------------
# numeric propagation
# --------------------------------------------------------------------------


def num_poly(kb):
    for path, node in kb.of_type(Poly):
        inner = f"{path}.inner"
        yield _tighten(path, "td", kb.interval(inner, "td").shift(node.n))
        # minimal primes of the polynomial ring are extensions of minimal
        # primes below, each residue gaining n indeterminates
        yield _tighten(path, "min_residue_td", kb.interval(inner, "min_residue_td").shift(node.n))
        yield _tighten(path, "dim", NatInterval.at_least(kb.interval(inner, "dim").lo + node.n))


def num_loc(kb):
    for path, node in kb.of_type(Localization):
        inner = f"{path}.inner"
        yield _tighten(path, "dim", NatInterval.at_most(kb.interval(inner, "dim").hi))
        yield _tighten(path, "td", NatInterval.at_most(kb.interval(inner, "td").hi))
        yield _tighten(
            path, "min_residue_td", NatInterval.at_least(kb.interval(inner, "min_residue_td").lo)
        )


def num_domain_mrt(kb):
    # a domain's only minimal prime is (0), so both quantities name t.d.(A:k)
    for path in sorted(kb.nodes):
        if kb.value(path, P.DOMAIN) is TRUE:
            yield _tighten(path, "min_residue_td", kb.interval(path, "td"))
            yield _tighten(path, "td", kb.interval(path, "min_residue_td"))


def num_mrt_le_td(kb):
    # inf over minimal primes never exceeds the sup over all primes
    for path in sorted(kb.nodes):
        yield _tighten(path, "min_residue_td", NatInterval.at_most(kb.interval(path, "td").hi))
        yield _tighten(path, "td", NatInterval.at_least(kb.interval(path, "min_residue_td").lo))


def r_dim_td(kb):
    for path in sorted(kb.nodes):
        if kb.value(path, P.DOMAIN) is TRUE:
            yield _tighten(path, "dim", NatInterval.at_most(kb.interval(path, "td").hi))


# --------------------------------------------------------------------------
# MPC transfer
# --------------------------------------------------------------------------


def r_2_2b(kb):
    for path, node in kb.of_type(Localization):
        inner = f"{path}.inner"
        if kb.value(inner, P.MPC) is TRUE:
            yield _fact(path, P.MPC, TRUE, [fact_premise(inner, P.MPC)])


def r_2_2c(kb):
    for path, node in kb.of_type(Poly):
        inner = f"{path}.inner"
        if kb.value(inner, P.MPC) is TRUE:
            yield _fact(path, P.MPC, TRUE, [fact_premise(inner, P.MPC)])


def r_3_1b(kb):
    for path, node in kb.tensors():
        left, right = f"{path}.left", f"{path}.right"
        if kb.value(path, P.MPC) is TRUE:
            yield _fact(left, P.MPC, TRUE, [fact_premise(path, P.MPC)])
            yield _fact(right, P.MPC, TRUE, [fact_premise(path, P.MPC)])
        for factor in (left, right):
            if kb.value(factor, P.MPC) is FALSE:
                yield _fact(path, P.MPC, FALSE, [fact_premise(factor, P.MPC)])


def r_3_3(kb):
    if kb.config.base_field_algebraically_closed is not TRUE:
        return
    conf = config_premise("base field is algebraically closed")
    for path, node in kb.tensors():
        left, right = f"{path}.left", f"{path}.right"
        if kb.value(left, P.MPC) is TRUE and kb.value(right, P.MPC) is TRUE:
            yield _fact(
                path, P.MPC, TRUE,
                [fact_premise(left, P.MPC), fact_premise(right, P.MPC), conf],
            )
        if kb.value(path, P.MPC) is FALSE:
            if kb.value(left, P.MPC) is TRUE:
                yield _fact(
                    right, P.MPC, FALSE,
                    [fact_premise(path, P.MPC), fact_premise(left, P.MPC), conf],
                )
            if kb.value(right, P.MPC) is TRUE:
                yield _fact(
                    left, P.MPC, FALSE,
                    [fact_premise(path, P.MPC), fact_premise(right, P.MPC), conf],
                )


def r_3_4(kb):
    for path, node in kb.tensors():
        left, right = f"{path}.left", f"{path}.right"
        prem = []
        ok = True
        for factor in (left, right):
            for prop in (P.DOMAIN, P.INTEGRALLY_CLOSED):
                if kb.value(factor, prop) is TRUE:
                    prem.append(fact_premise(factor, prop))
                else:
                    ok = False
        if ok:
            yield _fact(path, P.MPC, TRUE, prem)


def _qualifies_sep_closure_in_qf(kb, path, node):
    """Factor contains the separable algebraic closure of k in its quotient field."""
    if isinstance(node, FieldExt):
        return [structural_premise(f"{path} is a field extension")]
    if isinstance(node, Atom) and node.sep_closure_in_qf:
        if kb.value(path, P.DOMAIN) is TRUE:
            return [
                fact_premise(path, P.DOMAIN),
                structural_premise(
                    f"{path} asserted to contain the separable algebraic closure "
                    "of k in its quotient field"
                ),
            ]
    return None


def r_3_4r(kb):
    for path, node in kb.tensors():
        lp = _qualifies_sep_closure_in_qf(kb, f"{path}.left", node.left)
        rp = _qualifies_sep_closure_in_qf(kb, f"{path}.right", node.right)
        if lp is not None and rp is not None:
            yield _fact(path, P.MPC, TRUE, lp + rp)


def r_3_6(kb):
    for path, node in kb.tensors():
        if not (
            isinstance(node.left, FieldExt)
            and node.left.kind is FieldKind.PURELY_INSEPARABLE
        ):
            continue
        right = f"{path}.right"
        struct = structural_premise("left factor is a purely inseparable field extension")
        members = ((path, P.MPC), (right, P.MPC))
        for s, p in members:
            val = kb.value(s, p)
            if val.is_decisive():
                other = members[1] if (s, p) == members[0] else members[0]
                yield _fact(other[0], other[1], val, [fact_premise(s, p), struct])


# --------------------------------------------------------------------------
# S-ring transfer
# --------------------------------------------------------------------------


def r_3_7(kb):
    for path, node in kb.of_type(Poly):
        inner = f"{path}.inner"
        if kb.value(inner, P.MPC) is TRUE:
            yield _fact(path, P.S_RING, TRUE, [fact_premise(inner, P.MPC)])


def r_3_8(kb):
    for path, node in kb.tensors():
        if not isinstance(node.left, FieldExt):
            continue
        if kb.value(path, P.MPC) is not TRUE:
            continue
        right = f"{path}.right"
        mpc = fact_premise(path, P.MPC)
        if node.left.td >= ExtNat(1):
            yield _fact(
                path, P.S_RING, TRUE,
                [mpc, structural_premise(f"t.d. of left field extension is {node.left.td} >= 1")],
            )
            continue
        struct = structural_premise("left field extension is algebraic (t.d. = 0)")
        members = ((path, P.S_RING), (right, P.S_RING))
        for s, p in members:
            val = kb.value(s, p)
            if val.is_decisive():
                other = members[1] if (s, p) == members[0] else members[0]
                yield _fact(other[0], other[1], val, [fact_premise(s, p), mpc, struct])


def _s_ring_disjunction(kb, path, state_of):
    """Kleene value of the four-way condition behind the S-ring criterion."""
    left, right = f"{path}.left", f"{path}.right"
    sa, sb = state_of(left), state_of(right)
    mrt_a = kb.interval(left, "min_residue_td")
    mrt_b = kb.interval(right, "min_residue_td")
    ta, tb = mrt_a.ge_threshold(1), mrt_b.ge_threshold(1)
    verdict = kleene_or(
        kleene_and(sa, sb),
        kleene_and(sa, ta),
        kleene_and(sb, tb),
        kleene_and(ta, tb),
    )
    premises = []
    if sa.is_decisive():
        premises.append(fact_premise(left, P.S_RING))
    if sb.is_decisive():
        premises.append(fact_premise(right, P.S_RING))
    premises.append(interval_premise(left, "min_residue_td", mrt_a))
    premises.append(interval_premise(right, "min_residue_td", mrt_b))
    return verdict, premises


def r_3_9(kb):
    for path, node in kb.tensors():
        if kb.value(path, P.MPC) is not TRUE:
            continue
        verdict, premises = _s_ring_disjunction(
            kb, path, lambda p: kb.value(p, P.S_RING)
        )
        if verdict.is_decisive():
            yield _fact(path, P.S_RING, verdict, [fact_premise(path, P.MPC), *premises])


def p2_state(kb: KnowledgeBase, path: str) -> TriState:
    """Best-effort tri-state for 'the node satisfies the height-one condition'.

    A field has no height-one primes, so it holds vacuously; an attached
    poset is consulted directly; otherwise S-ring or strong S facts imply
    it (each forces every minimal residue to be an S-domain).
    """
    node = kb.require_subject(path)
    if isinstance(node, FieldExt):
        return TRUE
    if isinstance(node, Atom) and node.poset is not None:
        return node.poset.check_property("P2")
    if kb.value(path, P.S_RING) is TRUE or kb.value(path, P.STRONG_S) is TRUE:
        return TRUE
    return UNKNOWN


def eval_tensor_s_ring(kb: KnowledgeBase, tensor_path: str, variant: str = "s_ring") -> TriState:
    """Decide the S-ring criterion for a tensor node.

    variant="s_ring" requires the tensor's MPC fact to be TRUE (otherwise
    UNKNOWN); variant="p2" evaluates the height-one substitute, which
    needs no MPC hypothesis.
    """
    node = kb.require_subject(tensor_path)
    if not isinstance(node, Tensor):
        raise NotATensor(tensor_path)
    if variant == "s_ring":
        if kb.value(tensor_path, P.MPC) is not TRUE:
            return UNKNOWN
        verdict, _ = _s_ring_disjunction(kb, tensor_path, lambda p: kb.value(p, P.S_RING))
        return verdict
    if variant == "p2":
        verdict, _ = _s_ring_disjunction(kb, tensor_path, lambda p: p2_state(kb, p))
        return verdict
    raise ValueError(f"unknown variant {variant!r}")


# --------------------------------------------------------------------------
# one-dimensional and two-dimensional equivalence blocks
# --------------------------------------------------------------------------


def r_2_5(kb):
    for path in sorted(kb.nodes):
        if not _exact_dim(kb, path, 1):
            continue
        dim_prem = interval_premise(path, "dim", ONE)
        # stably strong S <=> strong S, with no further hypothesis
        yield from _equiv(
            kb, ((path, P.STABLY_STRONG_S), (path, P.STRONG_S)), (dim_prem,)
        )
        # an S-ring is MPC + minimal residues S-domains, which here forces
        # the strong S-property outright
        if kb.value(path, P.S_RING) is TRUE:
            yield _fact(
                path, P.STRONG_S, TRUE, [fact_premise(path, P.S_RING), dim_prem]
            )
        if kb.value(path, P.MPC) is TRUE:
            mpc_prem = fact_premise(path, P.MPC)
            members = (
                (path, P.STABLY_STRONG_S),
                (path, P.STRONG_S),
                (path, P.S_RING),
                (path, P.UNIV_CATENARIAN),
                (path, P.POLY_RING_CATENARIAN),
            )
            yield from _equiv(kb, members, (mpc_prem, dim_prem))


def r_4_11(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        right = f"{path}.right"
        if not _exact_dim(kb, right, 1):
            continue
        struct = structural_premise("left factor is an algebraic field extension")
        dim_prem = interval_premise(right, "dim", ONE)
        base = (
            (path, P.STABLY_STRONG_S),
            (path, P.STRONG_S),
            (right, P.STRONG_S),
        )
        yield from _equiv(kb, base, (struct, dim_prem))
        if kb.value(path, P.MPC) is TRUE:
            full = base + (
                (path, P.UNIV_CATENARIAN),
                (path, P.POLY_RING_CATENARIAN),
                (path, P.S_RING),
                (right, P.S_RING),
            )
            yield from _equiv(kb, full, (struct, dim_prem, fact_premise(path, P.MPC)))


def r_4_12(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        right = f"{path}.right"
        if not _exact_dim(kb, right, 2):
            continue
        if kb.value(path, P.MPC) is not TRUE:
            continue
        extra = (
            structural_premise("left factor is an algebraic field extension"),
            interval_premise(right, "dim", TWO),
            fact_premise(path, P.MPC),
        )
        yield from _equiv(kb, ((path, P.STRONG_S), (right, P.STRONG_S)), extra)
        yield from _equiv(kb, ((path, P.CATENARIAN), (right, P.CATENARIAN)), extra)


# --------------------------------------------------------------------------
# strong S-property / catenarity transfer
# --------------------------------------------------------------------------


def r_2_3(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        right = f"{path}.right"
        struct = structural_premise(
            "tensor with an algebraic field extension is integral over the other factor"
        )
        for prop in (P.STRONG_S, P.STABLY_STRONG_S):
            if kb.value(path, prop) is TRUE:
                yield _fact(right, prop, TRUE, [fact_premise(path, prop), struct])
            if kb.value(right, prop) is FALSE:
                yield _fact(path, prop, FALSE, [fact_premise(right, prop), struct])


def r_4_3(kb):
    for path, node in kb.of_type(Localization):
        inner = f"{path}.inner"
        for prop in (P.STRONG_S, P.CATENARIAN):
            if kb.value(inner, prop) is TRUE:
                yield _fact(path, prop, TRUE, [fact_premise(inner, prop)])
            # family direction: an axiom on the localization node asserts the
            # fact for every localization of the tensor, which pins it globally
            fact = kb.fact(path, prop)
            if (
                fact is not None
                and fact.provenance.is_axiom()
                and isinstance(node.inner, Tensor)
            ):
                yield _fact(inner, prop, fact.value, [fact_premise(path, prop)])


def r_frac_sring(kb):
    for path, node in kb.of_type(Localization):
        inner = f"{path}.inner"
        if kb.value(inner, P.S_RING) is TRUE:
            yield _fact(path, P.S_RING, TRUE, [fact_premise(inner, P.S_RING)])


def r_frac_stable(kb):
    for path, node in kb.of_type(Localization):
        inner = f"{path}.inner"
        for prop in (P.STABLY_STRONG_S, P.UNIV_CATENARIAN):
            if kb.value(inner, prop) is TRUE:
                yield _fact(path, prop, TRUE, [fact_premise(inner, prop)])


def r_4_1(kb):
    for path, node in kb.tensors():
        left, right = f"{path}.left", f"{path}.right"
        if kb.value(path, P.LFD) is TRUE:
            yield _fact(left, P.LFD, TRUE, [fact_premise(path, P.LFD)])
            yield _fact(right, P.LFD, TRUE, [fact_premise(path, P.LFD)])
        for factor in (left, right):
            if kb.value(factor, P.LFD) is FALSE:
                yield _fact(path, P.LFD, FALSE, [fact_premise(factor, P.LFD)])
        if kb.value(left, P.LFD) is TRUE and kb.value(right, P.LFD) is TRUE:
            for factor in (left, right):
                td = kb.interval(factor, "td")
                if td.hi.is_finite:
                    yield _fact(
                        path, P.LFD, TRUE,
                        [
                            fact_premise(left, P.LFD),
                            fact_premise(right, P.LFD),
                            interval_premise(factor, "td", td),
                        ],
                    )
                    break


def r_4_2(kb):
    for path, node in kb.tensors():
        if not (isinstance(node.left, FieldExt) and isinstance(node.right, FieldExt)):
            continue
        m = ext_min(node.left.td, node.right.td)
        struct = structural_premise(
            f"tensor of field extensions with t.d. {node.left.td} and {node.right.td}"
        )
        yield _fact(path, P.LFD, TriState.of(m.is_finite), [struct])
        yield _tighten(path, "dim", NatInterval.exact(m))


def r_4_4(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        right = f"{path}.right"
        struct = structural_premise("left factor is an algebraic field extension")
        for prop in (P.STRONG_S, P.CATENARIAN):
            if kb.value(path, prop) is TRUE:
                yield _fact(right, prop, TRUE, [fact_premise(path, prop), struct])
            if kb.value(right, prop) is FALSE:
                yield _fact(path, prop, FALSE, [fact_premise(right, prop), struct])


_FOUR_PROPS = (P.STRONG_S, P.STABLY_STRONG_S, P.CATENARIAN, P.UNIV_CATENARIAN)


def r_4_5(kb):
    for path, node in kb.tensors():
        if not (
            isinstance(node.left, FieldExt)
            and node.left.kind is FieldKind.PURELY_INSEPARABLE
        ):
            continue
        right = f"{path}.right"
        struct = structural_premise("left factor is a purely inseparable field extension")
        for prop in _FOUR_PROPS:
            yield from _equiv(kb, ((path, prop), (right, prop)), (struct,))


def r_4_6(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        if not (isinstance(node.right, Atom) and node.right.contains_sep_closure):
            continue
        right = f"{path}.right"
        if kb.value(right, P.DOMAIN) is not TRUE:
            continue
        extra = (
            structural_premise(
                "left factor algebraic; right factor asserted to contain a "
                "separable algebraic closure of k"
            ),
            fact_premise(right, P.DOMAIN),
        )
        for prop in _FOUR_PROPS:
            yield from _equiv(kb, ((path, prop), (right, prop)), extra)


def r_4_7(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        if not (isinstance(node.right, Atom) and node.right.integral_closure_prufer):
            continue
        right = f"{path}.right"
        if kb.value(right, P.DOMAIN) is not TRUE:
            continue
        yield _fact(
            path, P.STABLY_STRONG_S, TRUE,
            [
                fact_premise(right, P.DOMAIN),
                structural_premise(
                    "left factor algebraic; integral closure of the right factor "
                    "asserted Prufer"
                ),
            ],
        )


def r_4_8(kb):
    for path, node in kb.tensors():
        if not _is_algebraic_field(node.left):
            continue
        right = f"{path}.right"
        if (
            kb.value(right, P.LFD) is TRUE
            and kb.value(right, P.PRUFER) is TRUE
            and kb.value(right, P.DOMAIN) is TRUE
        ):
            yield _fact(
                path, P.CATENARIAN, TRUE,
                [
                    fact_premise(right, P.LFD),
                    fact_premise(right, P.PRUFER),
                    fact_premise(right, P.DOMAIN),
                    structural_premise("left factor is an algebraic field extension"),
                ],
            )


def r_4_9(kb):
    for path, node in kb.tensors():
        if not (isinstance(node.left, FieldExt) and node.left.td.is_finite):
            continue
        right = f"{path}.right"
        if not (
            kb.value(right, P.NOETHERIAN) is TRUE
            and kb.value(right, P.DOMAIN) is TRUE
        ):
            continue
        base = [
            fact_premise(right, P.NOETHERIAN),
            fact_premise(right, P.DOMAIN),
            structural_premise(
                f"left field extension has finite t.d. = {node.left.td}"
            ),
        ]
        yield _fact(path, P.STABLY_STRONG_S, TRUE, base)
        if (
            kb.value(path, P.MPC) is TRUE
            and kb.value(right, P.POLY_RING_CATENARIAN) is TRUE
        ):
            yield _fact(
                path, P.UNIV_CATENARIAN, TRUE,
                base
                + [
                    fact_premise(path, P.MPC),
                    fact_premise(right, P.POLY_RING_CATENARIAN),
                ],
            )


def r_4_10(kb):
    for path, node in kb.tensors():
        if not (isinstance(node.left, FieldExt) and isinstance(node.right, FieldExt)):
            continue
        if not ext_min(node.left.td, node.right.td).is_finite:
            continue
        yield _fact(
            path, P.UNIV_CATENARIAN, TRUE,
            [
                structural_premise(
                    "tensor of two field extensions, at least one of finite t.d."
                )
            ],
        )


def r_4_13(kb):
    for path, node in kb.tensors():
        if not isinstance(node.left, FieldExt):
            continue
        # the purely transcendental case is R-4.14's sharper statement
        if node.left.kind is FieldKind.PURELY_TRANSCENDENTAL:
            continue
        if node.left.effective_finite_over_sep_closure() is not TRUE:
            continue
        right = f"{path}.right"
        if kb.value(right, P.LFD) is not TRUE:
            continue
        td_r = kb.interval(right, "td")
        if not (node.left.td.is_finite or td_r.hi.is_finite):
            continue
        base = [
            fact_premise(right, P.LFD),
            structural_premise(
                "left field extension is finite over the separable closure of "
                "its rational part"
            ),
            interval_premise(right, "td", td_r)
            if td_r.hi.is_finite
            else structural_premise(f"left field extension has finite t.d. = {node.left.td}"),
        ]
        if kb.value(right, P.STABLY_STRONG_S) is TRUE:
            yield _fact(
                path, P.STABLY_STRONG_S, TRUE,
                [fact_premise(right, P.STABLY_STRONG_S), *base],
            )
        if (
            kb.value(right, P.UNIV_CATENARIAN) is TRUE
            and kb.value(path, P.MPC) is TRUE
        ):
            yield _fact(
                path, P.UNIV_CATENARIAN, TRUE,
                [
                    fact_premise(right, P.UNIV_CATENARIAN),
                    fact_premise(path, P.MPC),
                    *base,
                ],
            )


def r_4_14(kb):
    for path, node in kb.tensors():
        if not (
            isinstance(node.left, FieldExt)
            and node.left.kind is FieldKind.PURELY_TRANSCENDENTAL
        ):
            continue
        right = f"{path}.right"
        if kb.value(right, P.LFD) is not TRUE:
            continue
        td_r = kb.interval(right, "td")
        if not (node.left.td.is_finite or td_r.hi.is_finite):
            continue
        base = [
            fact_premise(right, P.LFD),
            structural_premise("left factor is a purely transcendental field extension"),
            interval_premise(right, "td", td_r)
            if td_r.hi.is_finite
            else structural_premise(f"left field extension has finite t.d. = {node.left.td}"),
        ]
        if kb.value(right, P.STABLY_STRONG_S) is TRUE:
            yield _fact(
                path, P.STABLY_STRONG_S, TRUE,
                [fact_premise(right, P.STABLY_STRONG_S), *base],
            )
        if kb.value(right, P.UNIV_CATENARIAN) is TRUE:
            yield _fact(
                path, P.UNIV_CATENARIAN, TRUE,
                [fact_premise(right, P.UNIV_CATENARIAN), *base],
            )


def r_def_sss_poly(kb):
    for path, node in kb.of_type(Poly):
        inner = f"{path}.inner"
        if kb.value(inner, P.STABLY_STRONG_S) is TRUE:
            prem = [fact_premise(inner, P.STABLY_STRONG_S)]
            yield _fact(path, P.STRONG_S, TRUE, prem)
            yield _fact(path, P.STABLY_STRONG_S, TRUE, prem)
        if kb.value(path, P.STRONG_S) is FALSE:
            yield _fact(inner, P.STABLY_STRONG_S, FALSE, [fact_premise(path, P.STRONG_S)])


def r_def_uc_poly(kb):
    for path, node in kb.of_type(Poly):
        inner = f"{path}.inner"
        if kb.value(inner, P.UNIV_CATENARIAN) is TRUE:
            prem = [fact_premise(inner, P.UNIV_CATENARIAN)]
            yield _fact(path, P.CATENARIAN, TRUE, prem)
            yield _fact(path, P.UNIV_CATENARIAN, TRUE, prem)
        if kb.value(path, P.CATENARIAN) is FALSE:
            yield _fact(inner, P.UNIV_CATENARIAN, FALSE, [fact_premise(path, P.CATENARIAN)])


def r_def_prc(kb):
    for path, node in kb.of_type(Poly):
        if node.n != 1:
            continue
        inner = f"{path}.inner"
        struct = structural_premise("one-variable polynomial ring over the inner algebra")
        members = ((inner, P.POLY_RING_CATENARIAN), (path, P.CATENARIAN))
        yield from _equiv(kb, members, (struct,))


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------

RULES: List[Rule] = [
    Rule("lat-field", '§2, "Also, any field is an S-domain" plus standard field facts',
         "FIELD=true forces domain/integrally closed/Noetherian/Prufer/univ. catenarian/LFD, dim=[0,0]",
         lat_field),
    Rule("lat-uc-sss", '§1, "is a stably strong S-domain" [5, Theorem 2.4]',
         "UNIV_CATENARIAN=true implies STABLY_STRONG_S=true", lat_uc_sss),
    Rule("lat-uc-cat", '§1, "is catenarian for each positive integer"',
         "UNIV_CATENARIAN=true implies CATENARIAN and POLY_RING_CATENARIAN", lat_uc_cat),
    Rule("lat-sss-ss", '§1, "is a strong S-ring for each positive integer"',
         "STABLY_STRONG_S=true implies STRONG_S=true", lat_sss_ss),
    Rule("lat-prufer-uc", '§1, "LFD Pr\\"ufer domains [7] are universally"',
         "PRUFER+DOMAIN+LFD imply UNIV_CATENARIAN", lat_prufer_uc),
    Rule("lat-domain-mpc", '§2, "any domain evidently satisfies MPC"',
         "DOMAIN=true implies MPC=true", lat_domain_mpc),
    Rule("lat-sring-mpc", '§2, "an S-ring if it satisfies MPC and $(P_1)$"',
         "S_RING=true implies MPC=true (definition)", lat_sring_mpc),
    Rule("lat-cat-mpc", '§2, "catenarian if $A$ satisfies MPC and $(Q_1)$"',
         "CATENARIAN=true implies MPC=true and LFD=true (definition)", lat_cat_mpc),
    Rule("lat-ss-mpc-sring", '§2, "an S-ring if it satisfies MPC and $(P_1)$"',
         "STRONG_S+MPC imply S_RING (strong S forces $(P_1)$)", lat_ss_mpc_sring),
    Rule("R-num-poly", 'Remark 2.2 proof, "are of the form $p[X_1,...,X_n]$"',
         "polynomial ring: td and min_residue_td gain n; dim at least dim+n", num_poly),
    Rule("R-num-loc", 'Remark 2.2 proof, "follows from basic facts about localization"',
         "localization: dim and td bounded above by the inner ring's", num_loc),
    Rule("R-num-domain-mrt", '§1, "t.d.(A)={\\rm sup}\\{t.d.(\\frac Ap)"',
         "for a domain, min residue t.d. equals the t.d.", num_domain_mrt),
    Rule("R-num-mrt-td", '§1, "t.d.(A)={\\rm sup}\\{t.d.(\\frac Ap)"',
         "min residue t.d. never exceeds the t.d.", num_mrt_le_td),
    Rule("R-dim-td", '§2, "{\\rm ht}(p)+t.d.(\\frac Ap)\\leq t.d.(A)"',
         "DOMAIN=true tightens dim <= td", r_dim_td),
    Rule("R-2.2b", 'Remark 2.2, "satisfies MPC for any multiplicative"',
         "localization inherits MPC", r_2_2b),
    Rule("R-2.2c", 'Remark 2.2, "satisfies MPC for all integers"',
         "polynomial ring inherits MPC", r_2_2c),
    Rule("R-2.3", 'Prop 2.3, "integral ring extension. If $T$"',
         "tensor with algebraic field extension strong S/stably strong S pushes down to the other factor",
         r_2_3),
    Rule("R-2.4/2.5", 'Prop 2.5, "Let $A$ be a one-dimensional ring"',
         "dim=[1,1]: stably strong S <=> strong S; S_RING implies strong S; all five equivalent under MPC",
         r_2_5),
    Rule("R-3.1b", 'Prop 3.1, "then $A$ and $B$ each satisfy MPC"',
         "tensor MPC=true pushes to both factors; a factor MPC=false pushes up as false", r_3_1b),
    Rule("R-3.3", 'Thm 3.3, "Let $k$ be an algebraically closed"',
         "base field algebraically closed: tensor MPC <=> both factors MPC", r_3_3),
    Rule("R-3.4", 'Thm 3.4, "are integrally closed domains that"',
         "both factors integrally closed domains: tensor MPC=true", r_3_4),
    Rule("R-3.4r", 'remark after Thm 3.4, "If $K_s\\subseteq A$ and $L_s\\subseteq B$"',
         "both factors domains containing the separable closure of k in their quotient fields: tensor MPC=true",
         r_3_4r),
    Rule("R-3.6", 'Prop 3.6, "purely inseparable field extension"',
         "left factor purely inseparable: tensor MPC <=> right factor MPC", r_3_6),
    Rule("R-3.7", 'Lemma 3.7, "is an S-ring, for every integer"',
         "polynomial ring over an MPC ring is an S-ring", r_3_7),
    Rule("R-3.8", 'Lemma 3.8, "either $A$ is an S-ring"',
         "left factor a field, tensor MPC=true: tensor S_RING <=> (right S_RING or t.d.(K) >= 1)",
         r_3_8),
    Rule("R-3.9", 'Thm 3.9, "is an S-ring if and only"',
         "tensor MPC=true: S_RING by the four-way minimal-residue criterion", r_3_9),
    Rule("R-4.1", 'Prop 4.1, "If both $A$ and $B$ are LFD"',
         "LFD transfer between tensor and factors (finite t.d. on one side for the upward direction)",
         r_4_1),
    Rule("R-4.2", 'Lemma 4.2, "LFD if and only if either"; dim per "[23, Theorem 3.1]"',
         "tensor of two field extensions: LFD iff min t.d. finite; dim = min t.d.", r_4_2),
    Rule("R-4.3", 'Prop 4.3, "is a strong S-ring (resp., catenarian)"',
         "strong S/catenarian pass to localizations; axiom on a localization of a tensor pins the tensor",
         r_4_3),
    Rule("R-frac-sring", '§2, "then so is $A_S$ ($=S^{-1}A$)"',
         "S_RING passes to localizations", r_frac_sring),
    Rule("R-frac-stable", 'Prop 4.14 proof, "stable under formation of"',
         "stably strong S and universal catenarity pass to localizations", r_frac_stable),
    Rule("R-4.4", 'Prop 4.4, "then $A$ is a strong S-ring"',
         "left factor algebraic: tensor strong S/catenarian push down to the right factor", r_4_4),
    Rule("R-4.5", 'Prop 4.5, "a strong S-ring (resp., stably"',
         "left factor purely inseparable: four chain properties biconditional with the right factor",
         r_4_5),
    Rule("R-4.6", 'Prop 4.6, "contains a separable algebraic closure"',
         "left algebraic, right a domain containing a separable algebraic closure of k: four-property biconditional",
         r_4_6),
    Rule("R-4.7", 'Thm 4.7, "integral closure $A^{\\prime}$ of"',
         "left algebraic, right a domain with Prufer integral closure: tensor stably strong S", r_4_7),
    Rule("R-4.8", 'Thm 4.8, "an LFD Pr\\"ufer domain"',
         "left algebraic, right an LFD Prufer domain: tensor catenarian", r_4_8),
    # R-4.10 precedes R-4.9: both can fire on a tensor of two fields, and the
    # more specific rule gives the sharper citation
    Rule("R-4.10", 'Cor 4.10, "K\\otimes _kL$ is universally catenarian"',
         "tensor of two field extensions with min t.d. finite: universally catenarian", r_4_10),
    Rule("R-4.9", 'Thm 4.9, "is a stably strong S-ring"',
         "left field of finite t.d., right Noetherian domain: tensor stably strong S; + MPC and A[X] catenarian: universally catenarian",
         r_4_9),
    Rule("R-4.11", 'Cor 4.11, "a one-dimensional $k$-algebra"',
         "left algebraic, right one-dimensional: equivalence blocks, extended under tensor MPC", r_4_11),
    Rule("R-4.12", 'Prop 4.12, "a two-dimensional $k$-algebra"',
         "left algebraic, right two-dimensional, tensor MPC=true: strong S and catenarian biconditional",
         r_4_12),
    Rule("R-4.13", 'Thm 4.13, "Assume that $[L:k(B)]<\\infty$"',
         "left field finite over the separable closure of its rational part, right LFD, one t.d. finite: stably strong S up; univ. catenarian up under MPC",
         r_4_13),
    Rule("R-4.14", 'Prop 4.14, "purely transcendental field extension"',
         "left purely transcendental, right LFD, one t.d. finite: stably strong S and univ. catenarity up",
         r_4_14),
    Rule("R-def-sss-poly", '§1, "is a strong S-ring for each positive integer"',
         "stably strong S below makes the polynomial ring (stably) strong S (definition)", r_def_sss_poly),
    Rule("R-def-uc-poly", '§1, "is catenarian for each positive integer"',
         "universal catenarity below makes the polynomial ring (universally) catenarian (definition)",
         r_def_uc_poly),
    Rule("R-def-prc", 'Thm 4.9, "$A[X]$ is catenarian"',
         "POLY_RING_CATENARIAN of A <=> CATENARIAN of poly(A, 1) when that node exists", r_def_prc),
]

RULES_BY_ID: Dict[str, Rule] = {rule.rule_id: rule for rule in RULES}

_MAX_PASSES = 1000


def infer(kb: KnowledgeBase) -> KnowledgeBase:
    """Run the catalog to its least fixpoint; returns the same (mutated) KB."""
    for _ in range(_MAX_PASSES):
        changed = False
        for rule in RULES:
            for emission in rule.fn(kb):
                changed = _commit(kb, rule, emission) or changed
        if not changed:
            return kb
    raise RuntimeError("inference did not reach a fixpoint; engine bug")


def _commit(kb: KnowledgeBase, rule: Rule, emission: tuple) -> bool:
    if emission[0] == "fact":
        _, subject, prop, value, premises = emission
        return kb.add_fact(
            subject, prop, value, Provenance(rule.rule_id, rule.citation, premises)
        )
    if emission[0] == "interval":
        _, subject, field_name, interval = emission
        return kb.tighten(subject, field_name, interval, rule.rule_id, rule.citation)
    raise ValueError(f"bad emission {emission!r}")


def explain(kb: KnowledgeBase, subject: str, prop: PropertyKind) -> dict:
    """Derivation tree for a decisive fact, down to axioms."""
    fact = kb.fact(subject, prop)
    if fact is None:
        kb.require_subject(subject)
        raise NoDerivation(subject, prop)
    return _explain_fact(kb, fact)


def _explain_fact(kb: KnowledgeBase, fact) -> dict:
    children = []
    for premise in fact.provenance.premises:
        kind = premise[0]
        if kind == "fact":
            _, subject, prop = premise
            inner = kb.fact(subject, prop)
            if inner is not None:
                children.append(_explain_fact(kb, inner))
        elif kind == "interval":
            _, subject, field_name, rendered = premise
            children.append(
                {
                    "kind": "interval",
                    "subject": subject,
                    "field": field_name,
                    "interval": rendered,
                    "tightened_by": [r for r, _ in kb.interval_history(subject, field_name)]
                    or [AXIOM],
                }
            )
        else:
            children.append({"kind": kind, "note": premise[1]})
    return {
        "kind": "fact",
        "subject": fact.subject,
        "property": fact.property.name,
        "value": fact.value.to_json(),
        "rule_id": fact.provenance.rule_id,
        "citation": fact.provenance.citation,
        "premises": children,
    }


def rules_catalog_json() -> list:
    return [
        {"rule_id": rule.rule_id, "citation": rule.citation, "guard": rule.guard}
        for rule in RULES
    ]


def collect_warnings(kb: KnowledgeBase) -> List[str]:
    """Unknown hypotheses that block named rules on this expression."""
    warnings: List[str] = []
    for path, node in kb.tensors():
        right = f"{path}.right"
        mpc = kb.value(path, P.MPC)
        if mpc is UNKNOWN:
            warnings.append(
                f"{path}: MPC of the tensor is unknown; R-3.8/R-3.9 (S-ring) and the "
                "universal-catenarity parts of R-4.9/R-4.13 stay blocked"
            )
            if (
                kb.config.base_field_algebraically_closed is UNKNOWN
                and kb.value(f"{path}.left", P.MPC) is TRUE
                and kb.value(right, P.MPC) is TRUE
            ):
                warnings.append(
                    f"{path}: both factors satisfy MPC but the base field flag is "
                    "unknown, so R-3.3 cannot fire (set --base-field-alg-closed)"
                )
        if isinstance(node.left, FieldExt):
            eff = node.left.effective_finite_over_sep_closure()
            blocked_up = (
                kb.value(right, P.STABLY_STRONG_S) is TRUE
                and kb.value(path, P.STABLY_STRONG_S) is UNKNOWN
            ) or (
                kb.value(right, P.UNIV_CATENARIAN) is TRUE
                and kb.value(path, P.UNIV_CATENARIAN) is UNKNOWN
            )
            if eff is UNKNOWN and blocked_up:
                warnings.append(
                    f"{path}: R-4.13 blocked; assert finite_sep on the left field "
                    "extension to state that it is finite over the separable "
                    "closure of its rational part"
                )
            if kb.value(right, P.LFD) is UNKNOWN and blocked_up:
                warnings.append(
                    f"{path}: R-4.13/R-4.14 blocked; LFD of {right} is unknown"
                )
            if (
                node.left.td.is_finite
                and kb.value(right, P.NOETHERIAN) is TRUE
                and kb.value(right, P.DOMAIN) is TRUE
                and kb.value(path, P.UNIV_CATENARIAN) is UNKNOWN
                and (mpc is not TRUE or kb.value(right, P.POLY_RING_CATENARIAN) is not TRUE)
            ):
                warnings.append(
                    f"{path}: universal catenarity via R-4.9 additionally needs tensor "
                    "MPC and POLY_RING_CATENARIAN on the right factor"
                )
    return sorted(set(warnings))
