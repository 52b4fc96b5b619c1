"""Sevenfold classification of context-tagged judgments.

A judgment asserts one truth value for one predicate under one named
context.  The set of distinct values asserted across mutually incompatible
contexts determines the predication class: the seven nonempty subsets of
{T, F, U} map to P1..P7.  Distinct values under *compatible* contexts are a
genuine contradiction and classify as Inconsistent; the judgment-level
entailment relation never lets such a contradiction leak into other
contexts or predicates, which is what blocks explosion.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable

from .errors import ModelError, UndeclaredName
from .formulas import Formula, schema, undet_name
from .semantics import ContextDef, Model
from .trivalent import Tv3

__all__ = [
    "Judgment",
    "PredicationTag",
    "PredicationClass",
    "Entailment",
    "SANSKRIT_NAMES",
    "classify",
    "entails",
    "induced_model",
    "canonical_witness",
    "CertificateRow",
    "mutual_exclusivity_certificate",
    "schema_formula_for",
    "judgments_from_json",
    "judgments_to_json",
]


@dataclass(frozen=True)
class Judgment:
    """A (context, predicate, value) triple: one conditional assertion."""

    context: str
    predicate: str
    value: Tv3

    def to_json(self) -> dict:
        return {"context": self.context, "predicate": self.predicate, "value": self.value.value}

    @classmethod
    def from_json(cls, data: dict) -> "Judgment":
        try:
            return cls(data["context"], data["predicate"], Tv3.from_str(data["value"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed judgment {data!r}: {exc}") from None


def judgments_from_json(data: list) -> tuple[Judgment, ...]:
    return tuple(Judgment.from_json(row) for row in data)


def judgments_to_json(judgments: Iterable[Judgment]) -> list[dict]:
    return [j.to_json() for j in judgments]


class PredicationTag(Enum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    INCONSISTENT = "Inconsistent"
    DEGENERATE = "Degenerate"

    def __str__(self) -> str:
        return self.value


# Transliterated names of the seven predications, used by text output.
SANSKRIT_NAMES = {
    PredicationTag.P1: "syāt asti",
    PredicationTag.P2: "syāt nāsti",
    PredicationTag.P3: "syāt avaktavyam",
    PredicationTag.P4: "syāt asti cha nāsti cha",
    PredicationTag.P5: "syāt asti cha avaktavyam cha",
    PredicationTag.P6: "syāt nāsti cha avaktavyam cha",
    PredicationTag.P7: "syād asti cha nāsti cha avaktavyam cha",
}

_VALUES_TO_TAG = {
    frozenset({Tv3.TRUE}): PredicationTag.P1,
    frozenset({Tv3.FALSE}): PredicationTag.P2,
    frozenset({Tv3.UNDET}): PredicationTag.P3,
    frozenset({Tv3.TRUE, Tv3.FALSE}): PredicationTag.P4,
    frozenset({Tv3.TRUE, Tv3.UNDET}): PredicationTag.P5,
    frozenset({Tv3.FALSE, Tv3.UNDET}): PredicationTag.P6,
    frozenset({Tv3.TRUE, Tv3.FALSE, Tv3.UNDET}): PredicationTag.P7,
}

_TAG_TO_VALUES = {tag: values for values, tag in _VALUES_TO_TAG.items()}

_SCHEMA_INDEX = {
    PredicationTag.P1: 1,
    PredicationTag.P2: 2,
    PredicationTag.P3: 3,
    PredicationTag.P4: 4,
    PredicationTag.P5: 5,
    PredicationTag.P6: 6,
    PredicationTag.P7: 7,
}

_VALUE_ORDER = (Tv3.TRUE, Tv3.FALSE, Tv3.UNDET)


@dataclass(frozen=True)
class PredicationClass:
    """Classification result: a tag plus the witness contexts.

    For P1..P7, ``contexts_used`` lists one witness context per asserted
    value in the order T, F, U (ties broken lexicographically).  For
    Inconsistent it carries the offending context; for Degenerate, nothing.
    """

    tag: PredicationTag
    contexts_used: tuple[str, ...] = ()

    @property
    def schema_index(self) -> int | None:
        return _SCHEMA_INDEX.get(self.tag)

    def to_json(self) -> dict:
        return {"class": self.tag.value, "contexts": list(self.contexts_used)}


def tag_for_values(values: Iterable[Tv3]) -> PredicationTag:
    """Predication tag for a nonempty set of asserted values."""
    return _VALUES_TO_TAG[frozenset(values)]


def classify(judgments: Iterable[Judgment], model: Model, predicate: str) -> PredicationClass:
    """Map a judgment set to its predication class for one predicate.

    Judgments about other predicates are ignored (classification is
    per-predicate).  Extra contexts asserting an already-present value are
    absorbed: only the set of distinct values matters.  Two failure shapes
    yield Inconsistent: the same context asserting two different values, and
    two *compatible* contexts asserting different values — "it is and it is
    not" is licensed only across mutually incompatible conditions.
    """
    judgments = tuple(judgments)
    if not model.is_predicate(predicate):
        raise UndeclaredName(f"undeclared predicate {predicate!r}")
    for j in judgments:
        if not model.is_context(j.context):
            raise UndeclaredName(f"undeclared context {j.context!r}")

    relevant = [j for j in judgments if j.predicate == predicate]
    by_context: dict[str, Tv3] = {}
    for j in relevant:
        seen = by_context.get(j.context)
        if seen is not None and seen is not j.value:
            return PredicationClass(PredicationTag.INCONSISTENT, (j.context,))
        by_context[j.context] = j.value

    if not by_context:
        return PredicationClass(PredicationTag.DEGENERATE, ())

    for c1, c2 in combinations(sorted(by_context), 2):
        if by_context[c1] is not by_context[c2] and not model.incompatible(c1, c2):
            return PredicationClass(PredicationTag.INCONSISTENT, (c1,))

    values = frozenset(by_context.values())
    witnesses = tuple(
        min(c for c, v in by_context.items() if v is value)
        for value in _VALUE_ORDER
        if value in values
    )
    return PredicationClass(_VALUES_TO_TAG[values], witnesses)


def schema_formula_for(cls: PredicationClass, predicate: str) -> Formula | None:
    """Quantified-formula presentation of a P1..P7 classification."""
    k = cls.schema_index
    if k is None:
        return None
    return schema(k, cls.contexts_used, predicate)


def induced_model(judgments: Iterable[Judgment], predicate: str) -> Model:
    """Build the minimal model on which a judgment set's schema holds.

    One entity satisfies every judgment context's condition; the valuation
    mirrors the judgments, with the derived indeterminacy predicate set true
    exactly where the value is U; all context pairs are mutually
    incompatible (distinct, non-overlapping conditions).
    """
    entity = "e"
    relevant = [j for j in judgments if j.predicate == predicate]
    names = sorted({j.context for j in relevant})
    if not names:
        raise ModelError("cannot induce a model from an empty judgment set")
    u_pred = undet_name(predicate)
    valuation: dict[tuple[str, str, str], Tv3] = {}
    for j in relevant:
        valuation[(j.context, entity, predicate)] = j.value
        valuation[(j.context, entity, u_pred)] = Tv3.from_bool(j.value is Tv3.UNDET)
    return Model(
        domain=[entity],
        contexts=[ContextDef(c, {entity}) for c in names],
        predicates=[predicate, u_pred],
        valuation=valuation,
        incompatible=list(combinations(names, 2)),
        background=names[0],
    )


class Entailment(Enum):
    YES = "Yes"
    NO = "No"
    UNDETERMINED = "Undetermined"

    def __str__(self) -> str:
        return self.value


def entails(judgments: Iterable[Judgment], model: Model, query: Judgment) -> Entailment:
    """Whether a judgment set settles a queried judgment.

    Judgments are atomic, so closure within a context reduces to identity:
    Yes on an exact match, No when the same (context, predicate) carries a
    different value, Undetermined otherwise.  Judgments never license
    inference across contexts — a T/F pair under incompatible contexts
    settles nothing about any other context or predicate.
    """
    if not model.is_context(query.context):
        raise UndeclaredName(f"undeclared context {query.context!r}")
    judgments = tuple(judgments)
    for j in judgments:
        if j == query:
            return Entailment.YES
    for j in judgments:
        if j.context == query.context and j.predicate == query.predicate and j.value is not query.value:
            return Entailment.NO
    return Entailment.UNDETERMINED


# ---------------------------------------------------------------------------
# Mutual exclusivity certificate.

_CANONICAL_CONTEXTS = ("c1", "c2", "c3")


def canonical_witness(tag: PredicationTag) -> tuple[tuple[Judgment, ...], Model]:
    """Canonical judgment set and model exhibiting a P1..P7 predication."""
    values = _TAG_TO_VALUES.get(tag)
    if values is None:
        raise ValueError(f"no canonical witness for {tag}")
    ordered = [v for v in _VALUE_ORDER if v in values]
    judgments = tuple(
        Judgment(_CANONICAL_CONTEXTS[i], "p", v) for i, v in enumerate(ordered)
    )
    return judgments, induced_model(judgments, "p")


@dataclass(frozen=True)
class CertificateRow:
    first: PredicationTag
    second: PredicationTag
    verdict: str
    reason: str

    def to_json(self) -> dict:
        return {
            "first": self.first.value,
            "second": self.second.value,
            "verdict": self.verdict,
            "reason": self.reason,
        }


def _value_set_text(values: frozenset[Tv3]) -> str:
    return "{" + ", ".join(v.value for v in _VALUE_ORDER if v in values) + "}"


def mutual_exclusivity_certificate() -> list[CertificateRow]:
    """Check pairwise distinctness of the seven predications.

    For each of the 21 unordered pairs, classify both canonical witnesses
    and verify neither lands on the other's class.  All rows must read
    "distinct"; the asserted value sets make the reason explicit.
    """
    tags = [t for t in PredicationTag if t in _TAG_TO_VALUES]
    rows = []
    for a, b in combinations(tags, 2):
        js_a, model_a = canonical_witness(a)
        js_b, model_b = canonical_witness(b)
        got_a = classify(js_a, model_a, "p")
        got_b = classify(js_b, model_b, "p")
        distinct = got_a.tag is a and got_b.tag is b and a is not b
        va, vb = _TAG_TO_VALUES[a], _TAG_TO_VALUES[b]
        if len(va) != len(vb):
            reason = f"{len(va)} vs {len(vb)} values"
        else:
            reason = f"value sets {_value_set_text(va)} vs {_value_set_text(vb)}"
        rows.append(CertificateRow(a, b, "distinct" if distinct else "OVERLAP", reason))
    return rows
