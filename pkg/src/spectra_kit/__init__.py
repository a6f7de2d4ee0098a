"""spectra-kit: prime-spectrum properties and Krull dimensions of
tensor-product algebra constructions, decided by citation-carrying
inference rules and exact chain arithmetic on finite spectrum posets."""

from .algebra import (
    Atom,
    ContradictionError,
    Fact,
    FieldExt,
    FieldKind,
    KBConfig,
    KnowledgeBase,
    Localization,
    Poly,
    PropertyKind,
    Provenance,
    Tensor,
    UnknownSubject,
    get_fact,
    new_kb,
)
from .dimension import (
    AFSummary,
    MissingLabel,
    NonAF,
    big_d,
    delta,
    dim_tensor_af_general,
    dim_tensor_af_pair,
    dim_tensor_fields,
)
from .dsl import ParseError, format_expr, parse_expr
from .numeric import (
    INF,
    EmptyIntersection,
    ExtNat,
    NatInterval,
    ext_add,
    ext_min,
    interval_intersect,
)
from .poset import (
    InvalidPoset,
    NotComparable,
    PosetProperty,
    PosetTooLarge,
    PrimeNode,
    SpectralPoset,
    UnknownNode,
)
from .rules import (
    NoDerivation,
    NotATensor,
    RULES,
    eval_tensor_s_ring,
    explain,
    infer,
    rules_catalog_json,
)
from .tristate import TriState, kleene_and, kleene_or

__version__ = "0.1.0"
