"""Machine-readable worked examples with expected outputs.

Each fixture bundles a small spectrum poset and/or named DSL expressions
with a list of expectations.  Expectations come in two kinds:

* ``derivable`` — the checkers/rules must reproduce the value (hard
  regression gate);
* ``documented`` — the value is recorded ground truth established by
  arguments outside this toolkit's scope (explicit prime-ideal
  constructions); the engine is expected to answer UNKNOWN, and the
  runner labels the expectation "documented, underivable" instead of
  pass/fail.  A decisive answer that contradicts a documented value is
  still reported as a failure, since it would mean an unsound rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional

from ..algebra import PropertyKind, new_kb
from ..dimension import AFSummary, big_d, delta, dim_tensor_af_pair, dim_tensor_fields
from ..dsl import ParseError, parse_expr
from ..numeric import ExtNat
from ..poset import SpectralPoset
from ..rules import infer
from ..tristate import TriState


class UnknownFixture(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"no fixture named {self.name!r}; see 'corpus list'"


class InvalidFixture(ValueError):
    pass


_OPS = {
    "height",
    "krull_dim",
    "is_mpc",
    "check_property",
    "saturated_chain_lengths",
    "delta",
    "big_d",
    "dim_tensor_fields",
    "dim_tensor_af_pair",
    "fact",
}

_POSET_OPS = {"height", "krull_dim", "is_mpc", "check_property",
              "saturated_chain_lengths", "delta", "big_d"}
_DIMENSION_OPS = {"delta", "big_d"}


@dataclass(frozen=True)
class Expectation:
    op: str
    args: dict
    expect: object
    kind: str  # "derivable" | "documented"
    source: str

    def describe(self) -> str:
        if self.op == "fact":
            return (
                f"fact {self.args.get('expression', 'main')}:"
                f"{self.args.get('subject', '$')}.{self.args['property']}"
            )
        if self.op == "check_property":
            return f"check_property({self.args['property']})"
        if self.op == "delta":
            return f"delta({self.args['s']},{self.args['d']},{self.args['node']})"
        if self.op == "big_d":
            return f"big_d({self.args['s']},{self.args['d']})"
        if self.op == "height":
            return f"height({self.args['node']})"
        if self.op == "saturated_chain_lengths":
            return f"saturated_chain_lengths({self.args['lo']},{self.args['hi']})"
        if self.op == "dim_tensor_af_pair":
            a, b = self.args["a"], self.args["b"]
            return f"dim_tensor_af_pair(({a['td']},{a['dim']}),({b['td']},{b['dim']}))"
        if self.op == "dim_tensor_fields":
            return f"dim_tensor_fields({self.args['td_k']},{self.args['td_l']})"
        return self.op


@dataclass
class Fixture:
    name: str
    title: str
    poset: Optional[SpectralPoset]
    expressions: Dict[str, str]
    expectations: List[Expectation]

    def validate(self):
        if not self.expectations:
            raise InvalidFixture(f"{self.name}: no expectations")
        for exp in self.expectations:
            if exp.op not in _OPS:
                raise InvalidFixture(f"{self.name}: unknown operation {exp.op!r}")
            if exp.kind not in ("derivable", "documented"):
                raise InvalidFixture(f"{self.name}: bad expectation kind {exp.kind!r}")
            if '"' not in exp.source:
                raise InvalidFixture(
                    f"{self.name}: expectation source must carry a verbatim anchor quote"
                )
            if exp.op in _POSET_OPS and self.poset is None:
                raise InvalidFixture(f"{self.name}: {exp.op} needs a poset payload")
            if exp.op in _DIMENSION_OPS and not self.poset.complete:
                raise InvalidFixture(
                    f"{self.name}: dimension arithmetic requires the poset to be "
                    "attested complete"
                )
            if exp.op == "fact":
                ref = exp.args.get("expression", "main")
                if ref not in self.expressions:
                    raise InvalidFixture(f"{self.name}: no expression named {ref!r}")
        for name, text in self.expressions.items():
            try:
                parse_expr(text)
            except ParseError as exc:
                raise InvalidFixture(f"{self.name}: expression {name!r}: {exc}") from None


@dataclass(frozen=True)
class ExpectationResult:
    fixture: str
    description: str
    kind: str
    status: str  # "pass" | "fail" | "documented"
    expected: object
    actual: object
    source: str

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture,
            "expectation": self.description,
            "kind": self.kind,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "source": self.source,
        }


@dataclass
class FixtureReport:
    name: str
    results: List[ExpectationResult] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.results)

    def to_json(self) -> dict:
        return {"fixture": self.name, "results": [r.to_json() for r in self.results]}


def _data_root():
    return resources.files(__package__) / "data"


def list_fixtures() -> List[str]:
    names = []
    for entry in _data_root().iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[: -len(".json")])
    return sorted(names)


def load_fixture(name: str) -> Fixture:
    path = _data_root() / f"{name}.json"
    try:
        raw = path.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError):
        raise UnknownFixture(name) from None
    return fixture_from_json(json.loads(raw))


def fixture_from_json(data: dict) -> Fixture:
    try:
        name = data["name"]
        poset = SpectralPoset.from_json(data["poset"]) if "poset" in data else None
        expectations = [
            Expectation(
                op=e["op"],
                args=e.get("args", {}),
                expect=e["expect"],
                kind=e.get("kind", "derivable"),
                source=e["source"],
            )
            for e in data["expectations"]
        ]
    except KeyError as exc:
        raise InvalidFixture(f"fixture JSON is missing {exc}") from None
    except ValueError as exc:
        raise InvalidFixture(str(exc)) from None
    fixture = Fixture(
        name=name,
        title=data.get("title", ""),
        poset=poset,
        expressions=dict(data.get("expressions", {})),
        expectations=expectations,
    )
    fixture.validate()
    return fixture


def _normalize(value) -> object:
    if isinstance(value, TriState):
        return value.to_json()
    if isinstance(value, ExtNat):
        return value.to_json()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, list):
        return sorted(value)
    return value


def _evaluate(fixture: Fixture, exp: Expectation, kbs: dict):
    args = exp.args
    poset = fixture.poset
    if exp.op == "height":
        return poset.height(args["node"])
    if exp.op == "krull_dim":
        return poset.krull_dim()
    if exp.op == "is_mpc":
        return poset.is_mpc()
    if exp.op == "check_property":
        return poset.check_property(args["property"])
    if exp.op == "saturated_chain_lengths":
        return poset.saturated_chain_lengths(args["lo"], args["hi"])
    if exp.op == "delta":
        return delta(args["s"], args["d"], poset, args["node"])
    if exp.op == "big_d":
        return big_d(args["s"], args["d"], poset)
    if exp.op == "dim_tensor_fields":
        return dim_tensor_fields(
            ExtNat.from_json(args["td_k"]), ExtNat.from_json(args["td_l"])
        )
    if exp.op == "dim_tensor_af_pair":
        a = AFSummary(ExtNat.from_json(args["a"]["td"]), ExtNat.from_json(args["a"]["dim"]))
        b = AFSummary(ExtNat.from_json(args["b"]["td"]), ExtNat.from_json(args["b"]["dim"]))
        return dim_tensor_af_pair(a, b)
    if exp.op == "fact":
        ref = args.get("expression", "main")
        if ref not in kbs:
            expr, _ = parse_expr(fixture.expressions[ref])
            kbs[ref] = infer(new_kb(expr))
        kb = kbs[ref]
        return kb.value(args.get("subject", "$"), PropertyKind[args["property"]])
    raise InvalidFixture(f"unhandled operation {exp.op!r}")


def run_fixture(fixture: Fixture) -> FixtureReport:
    """Evaluate every expectation; mismatches are data, not exceptions."""
    report = FixtureReport(fixture.name)
    kbs: dict = {}
    for exp in fixture.expectations:
        try:
            actual = _normalize(_evaluate(fixture, exp, kbs))
        except Exception as exc:  # an error counts as a failed expectation
            report.results.append(
                ExpectationResult(
                    fixture.name, exp.describe(), exp.kind, "fail",
                    exp.expect, f"error: {exc}", exp.source,
                )
            )
            continue
        expected = _normalize(exp.expect)
        if actual == expected:
            status = "pass"
        elif exp.kind == "documented" and actual == "unknown":
            status = "documented"
        else:
            status = "fail"
        report.results.append(
            ExpectationResult(
                fixture.name, exp.describe(), exp.kind, status,
                expected, actual, exp.source,
            )
        )
    return report


def run_all(names: Optional[List[str]] = None) -> List[FixtureReport]:
    return [run_fixture(load_fixture(name)) for name in (names or list_fixtures())]
