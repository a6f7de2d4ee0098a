"""Tiny prefix DSL for algebra expressions.

    expr := atom(NAME, flag, ...)
          | field(td=EXTNAT [, kind=KIND] [, finite_sep=BOOL])
          | poly(expr, N)
          | loc(expr)
          | tensor(expr, expr)

Atom flags are property=true/false assertions (unknown is accepted and
means "assert nothing"), the numeric intervals td= / dim= / mrt=, the
assertable structural flags contains_sep_closure / integral_closure_prufer
/ sep_closure_in_qf, and poset="file.json".  A bare number is an exactly
known interval.  Printing a parsed expression and re-parsing it yields an
identical tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .algebra import (
    AlgebraExpr,
    Atom,
    FieldExt,
    FieldKind,
    FLAG_TO_PROPERTY,
    Localization,
    Poly,
    PropertyKind,
    Tensor,
    iter_nodes,
)
from .numeric import ExtNat, INF, NatInterval
from .poset import SpectralPoset
from .tristate import TriState

SPECIAL_ATOM_FLAGS = (
    "contains_sep_closure",
    "integral_closure_prufer",
    "sep_closure_in_qf",
)

KIND_NAMES = {kind.value: kind for kind in FieldKind}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, expected: Tuple[str, ...] = (), found: Optional[str] = None):
        detail = f"{message} at line {line}, column {col}"
        if expected:
            detail += f" (expected {', '.join(expected)}"
            if found is not None:
                detail += f"; found {found!r}"
            detail += ")"
        super().__init__(detail)
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT INT STRING LPAREN RPAREN LBRACK RBRACK COMMA EQUALS EOF
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    i = 0
    punct = {"(": "LPAREN", ")": "RPAREN", "[": "LBRACK", "]": "RBRACK",
             ",": "COMMA", "=": "EQUALS"}
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in punct:
            tokens.append(Token(punct[ch], ch, line, col))
            col += 1
            i += 1
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", line, col)
            tokens.append(Token("STRING", text[i + 1 : j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError("syntax error", tok.line, tok.col,
                             expected=(what,), found=tok.text or "end of input")
        return self.next()

    def fail(self, expected: Tuple[str, ...]):
        tok = self.peek()
        raise ParseError("syntax error", tok.line, tok.col,
                         expected=expected, found=tok.text or "end of input")

    # -- grammar ---------------------------------------------------------

    def expr(self) -> AlgebraExpr:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail(("atom", "field", "poly", "loc", "tensor"))
        if tok.text == "atom":
            return self.atom()
        if tok.text == "field":
            return self.field()
        if tok.text == "poly":
            return self.poly()
        if tok.text == "loc":
            return self.loc()
        if tok.text == "tensor":
            return self.tensor()
        self.fail(("atom", "field", "poly", "loc", "tensor"))

    def atom(self) -> Atom:
        self.next()
        self.expect("LPAREN", "'('")
        name = self.expect("IDENT", "atom name").text
        facts: List[Tuple[PropertyKind, bool]] = []
        numeric = {"td": None, "dim": None, "mrt": None}
        special = {flag: False for flag in SPECIAL_ATOM_FLAGS}
        poset = None
        poset_source = None
        while self.peek().kind == "COMMA":
            self.next()
            key_tok = self.expect("IDENT", "flag name")
            key = key_tok.text
            self.expect("EQUALS", "'='")
            if key in ("td", "dim", "mrt"):
                if numeric[key] is not None:
                    raise ParseError(f"duplicate {key}=", key_tok.line, key_tok.col)
                numeric[key] = self.interval_value()
            elif key in SPECIAL_ATOM_FLAGS:
                special[key] = self.bool_value()
            elif key == "poset":
                tok = self.expect("STRING", "quoted file path")
                poset_source = tok.text
                try:
                    poset = SpectralPoset.load(poset_source)
                except OSError as exc:
                    raise ParseError(f"cannot read poset file: {exc}",
                                     tok.line, tok.col) from None
                except ValueError as exc:
                    raise ParseError(f"bad poset file: {exc}", tok.line, tok.col) from None
            elif key in FLAG_TO_PROPERTY:
                value = self.tristate_value()
                if value is not TriState.UNKNOWN:
                    facts.append((FLAG_TO_PROPERTY[key], value is TriState.TRUE))
            else:
                raise ParseError(f"unknown atom flag {key!r}", key_tok.line, key_tok.col,
                                 expected=tuple(sorted(FLAG_TO_PROPERTY))
                                 + ("td", "dim", "mrt", "poset") + SPECIAL_ATOM_FLAGS)
        self.expect("RPAREN", "')'")
        return Atom(
            name=name,
            asserted_facts=tuple(facts),
            td=numeric["td"],
            dim=numeric["dim"],
            min_residue_td=numeric["mrt"],
            poset=poset,
            poset_source=poset_source,
            contains_sep_closure=special["contains_sep_closure"],
            integral_closure_prufer=special["integral_closure_prufer"],
            sep_closure_in_qf=special["sep_closure_in_qf"],
        )

    def field(self) -> FieldExt:
        head = self.next()
        self.expect("LPAREN", "'('")
        key = self.expect("IDENT", "td=")
        if key.text != "td":
            raise ParseError("field needs td= first", key.line, key.col,
                             expected=("td",), found=key.text)
        self.expect("EQUALS", "'='")
        td = self.extnat_value()
        kind = FieldKind.GENERAL
        finite_sep = TriState.UNKNOWN
        while self.peek().kind == "COMMA":
            self.next()
            opt = self.expect("IDENT", "kind= or finite_sep=")
            self.expect("EQUALS", "'='")
            if opt.text == "kind":
                tok = self.expect("IDENT", "field kind")
                if tok.text not in KIND_NAMES:
                    raise ParseError(f"unknown field kind {tok.text!r}", tok.line, tok.col,
                                     expected=tuple(sorted(KIND_NAMES)))
                kind = KIND_NAMES[tok.text]
            elif opt.text == "finite_sep":
                finite_sep = self.tristate_value()
            else:
                raise ParseError(f"unknown field option {opt.text!r}", opt.line, opt.col,
                                 expected=("kind", "finite_sep"))
        self.expect("RPAREN", "')'")
        try:
            return FieldExt(td=td, kind=kind, finite_over_sep_closure=finite_sep)
        except ValueError as exc:
            raise ParseError(str(exc), head.line, head.col) from None

    def poly(self) -> Poly:
        head = self.next()
        self.expect("LPAREN", "'('")
        inner = self.expr()
        self.expect("COMMA", "','")
        n_tok = self.expect("INT", "number of indeterminates")
        self.expect("RPAREN", "')'")
        try:
            return Poly(inner, int(n_tok.text))
        except ValueError as exc:
            raise ParseError(str(exc), head.line, head.col) from None

    def loc(self) -> Localization:
        self.next()
        self.expect("LPAREN", "'('")
        inner = self.expr()
        self.expect("RPAREN", "')'")
        return Localization(inner)

    def tensor(self) -> Tensor:
        self.next()
        self.expect("LPAREN", "'('")
        left = self.expr()
        self.expect("COMMA", "','")
        right = self.expr()
        self.expect("RPAREN", "')'")
        return Tensor(left, right)

    # -- values ----------------------------------------------------------

    def extnat_value(self) -> ExtNat:
        tok = self.peek()
        if tok.kind == "INT":
            self.next()
            return ExtNat(int(tok.text))
        if tok.kind == "IDENT" and tok.text == "inf":
            self.next()
            return INF
        self.fail(("a number", "inf"))

    def interval_value(self) -> NatInterval:
        tok = self.peek()
        if tok.kind == "LBRACK":
            self.next()
            lo = self.extnat_value()
            self.expect("COMMA", "','")
            hi = self.extnat_value()
            close = self.expect("RBRACK", "']'")
            try:
                return NatInterval(lo, hi)
            except ValueError as exc:
                raise ParseError(str(exc), close.line, close.col) from None
        return NatInterval.exact(self.extnat_value())

    def bool_value(self) -> bool:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text in ("true", "false"):
            self.next()
            return tok.text == "true"
        self.fail(("true", "false"))

    def tristate_value(self) -> TriState:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text in ("true", "false", "unknown"):
            self.next()
            return TriState(tok.text)
        self.fail(("true", "false", "unknown"))


def parse_expr(text: str):
    """Parse DSL text; returns the expression and its embedded axioms.

    The axioms list spells out every property assertion carried by the
    atoms, as (node path, property, value) triples; new_kb seeds the same
    assertions from the tree itself, so passing them again is harmless.
    """
    parser = _Parser(tokenize(text))
    expr = parser.expr()
    tail = parser.peek()
    if tail.kind != "EOF":
        raise ParseError("trailing input", tail.line, tail.col,
                         expected=("end of input",), found=tail.text)
    axioms = []
    for path, node in iter_nodes(expr):
        if isinstance(node, Atom):
            for prop, value in node.asserted_facts:
                axioms.append((path, prop, value))
    return expr, axioms


def _format_extnat(value: ExtNat) -> str:
    return "inf" if not value.is_finite else str(value.value)


def _format_interval(interval: NatInterval) -> str:
    if interval.is_exact:
        return _format_extnat(interval.lo)
    return f"[{_format_extnat(interval.lo)}, {_format_extnat(interval.hi)}]"


def format_expr(expr: AlgebraExpr) -> str:
    """Canonical printing; parse(format_expr(e)) reproduces e exactly."""
    if isinstance(expr, Atom):
        parts = [expr.name]
        for prop, value in expr.asserted_facts:
            parts.append(f"{prop.flag}={'true' if value else 'false'}")
        for key, interval in (("td", expr.td), ("dim", expr.dim), ("mrt", expr.min_residue_td)):
            if interval is not None:
                parts.append(f"{key}={_format_interval(interval)}")
        for key in SPECIAL_ATOM_FLAGS:
            if getattr(expr, key):
                parts.append(f"{key}=true")
        if expr.poset_source is not None:
            parts.append(f'poset="{expr.poset_source}"')
        return f"atom({', '.join(parts)})"
    if isinstance(expr, FieldExt):
        parts = [f"td={_format_extnat(expr.td)}"]
        if expr.kind is not FieldKind.GENERAL:
            parts.append(f"kind={expr.kind.value}")
        if expr.finite_over_sep_closure is not TriState.UNKNOWN:
            parts.append(f"finite_sep={expr.finite_over_sep_closure.value}")
        return f"field({', '.join(parts)})"
    if isinstance(expr, Poly):
        return f"poly({format_expr(expr.inner)}, {expr.n})"
    if isinstance(expr, Localization):
        return f"loc({format_expr(expr.inner)})"
    if isinstance(expr, Tensor):
        return f"tensor({format_expr(expr.left)}, {format_expr(expr.right)})"
    raise TypeError(f"not an expression: {expr!r}")
