"""Finite models and three-valued evaluation of formulas over them.

A model is a finite entity domain, a set of named contexts (each with a
bivalent extension), a set of predicate names, a total three-valued
valuation indexed by (context, entity, predicate), and a symmetric
incompatibility relation over context pairs.  Models are immutable after
construction; evaluation is pure, so one model may be evaluated against
concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ModelError, NotASchema, UndeclaredName, UnboundVariable
from .formulas import (
    And,
    ContextGuard,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    PredicateApp,
)
from .trivalent import Tv3, conj3, disj3, iff3, impl3, neg3

__all__ = [
    "ContextDef",
    "Model",
    "evaluate",
    "check_incompatibility",
    "guard_of",
]


@dataclass(frozen=True)
class ContextDef:
    """A named context and the set of entities satisfying its condition.

    Guards are bivalent: an entity is in the extension or it is not.
    """

    name: str
    extension: frozenset[str]

    def __init__(self, name: str, extension: Iterable[str] = ()):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "extension", frozenset(extension))


class Model:
    """Immutable finite structure formulas are evaluated against."""

    def __init__(
        self,
        domain: Sequence[str],
        contexts: Iterable[ContextDef],
        predicates: Iterable[str],
        valuation: Mapping[tuple[str, str, str], Tv3] | None = None,
        incompatible: Iterable[tuple[str, str]] = (),
        background: str | None = None,
    ):
        self.domain: tuple[str, ...] = tuple(domain)
        if len(set(self.domain)) != len(self.domain):
            raise ModelError("duplicate entity names in domain")
        ctx_list = list(contexts)
        names = [c.name for c in ctx_list]
        if len(set(names)) != len(names):
            raise ModelError("duplicate context names")
        self.contexts: dict[str, ContextDef] = {c.name: c for c in ctx_list}
        for c in ctx_list:
            stray = c.extension - set(self.domain)
            if stray:
                raise ModelError(
                    f"context {c.name!r} extension mentions undeclared entities {sorted(stray)}"
                )
        self.predicates: tuple[str, ...] = tuple(predicates)
        self._predicate_set = frozenset(self.predicates)
        if len(self._predicate_set) != len(self.predicates):
            raise ModelError("duplicate predicate names")
        overlap = set(self.predicates) & set(self.contexts)
        if overlap:
            raise ModelError(f"names used as both context and predicate: {sorted(overlap)}")

        # Unguarded predicate lookups resolve against the background context,
        # which any model with contexts must name.
        if self.contexts:
            if background is None:
                raise ModelError("a model with contexts must declare a background context")
            if background not in self.contexts:
                raise ModelError(f"background context {background!r} is not declared")
        elif background is not None:
            raise ModelError("background given but no contexts declared")
        self.background = background

        self._incompatible: set[frozenset[str]] = set()
        for a, b in incompatible:
            if a not in self.contexts or b not in self.contexts:
                raise ModelError(f"incompatible pair ({a!r}, {b!r}) names an undeclared context")
            if a == b:
                raise ModelError(f"context {a!r} cannot be incompatible with itself")
            self._incompatible.add(frozenset({a, b}))

        # Totalize the valuation; unlisted cells default to U.  The count of
        # defaulted cells is kept for output metadata.
        given = dict(valuation or {})
        for (c, e, p) in given:
            if c not in self.contexts:
                raise ModelError(f"valuation names undeclared context {c!r}")
            if e not in self.domain:
                raise ModelError(f"valuation names undeclared entity {e!r}")
            if p not in self.predicates:
                raise ModelError(f"valuation names undeclared predicate {p!r}")
        self._valuation: dict[tuple[str, str, str], Tv3] = {}
        defaulted = 0
        for c in self.contexts:
            for e in self.domain:
                for p in self.predicates:
                    key = (c, e, p)
                    if key in given:
                        self._valuation[key] = given[key]
                    else:
                        self._valuation[key] = Tv3.UNDET
                        defaulted += 1
        self.defaulted_valuations = defaulted

    # -- lookups ------------------------------------------------------------

    def is_context(self, name: str) -> bool:
        return name in self.contexts

    def is_predicate(self, name: str) -> bool:
        return name in self._predicate_set

    def extension(self, context: str) -> frozenset[str]:
        try:
            return self.contexts[context].extension
        except KeyError:
            raise UndeclaredName(f"undeclared context {context!r}") from None

    def value(self, context: str, entity: str, predicate: str) -> Tv3:
        if context not in self.contexts:
            raise UndeclaredName(f"undeclared context {context!r}")
        if entity not in self.domain:
            raise UndeclaredName(f"undeclared entity {entity!r}")
        if predicate not in self._predicate_set:
            raise UndeclaredName(f"undeclared predicate {predicate!r}")
        return self._valuation[(context, entity, predicate)]

    def incompatible(self, c1: str, c2: str) -> bool:
        """Whether the unordered context pair is marked mutually incompatible.

        Every context is compatible with itself.
        """
        for c in (c1, c2):
            if c not in self.contexts:
                raise UndeclaredName(f"undeclared context {c!r}")
        if c1 == c2:
            return False
        return frozenset({c1, c2}) in self._incompatible

    # -- serialization --------------------------------------------------------

    @classmethod
    def from_json(cls, data: dict) -> "Model":
        """Build a model from its JSON object form.

        Unlisted valuation entries default to "U"; the number of defaulted
        cells is available as ``defaulted_valuations`` for output metadata.
        """
        try:
            domain = list(data["domain"])
            ctx_objs = [ContextDef(c["name"], c.get("extension", [])) for c in data["contexts"]]
            predicates = list(data["predicates"])
        except (KeyError, TypeError) as exc:
            raise ModelError(f"malformed model object: {exc}") from None
        valuation = {}
        for row in data.get("valuation", []):
            try:
                key = (row["context"], row["entity"], row["predicate"])
                valuation[key] = Tv3.from_str(row["value"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ModelError(f"malformed valuation row {row!r}: {exc}") from None
        incompatible = [tuple(pair) for pair in data.get("incompatible", [])]
        for pair in incompatible:
            if len(pair) != 2:
                raise ModelError(f"incompatible entry must be a pair, got {list(pair)!r}")
        return cls(
            domain,
            ctx_objs,
            predicates,
            valuation,
            incompatible,
            data.get("background"),
        )

    def to_json(self) -> dict:
        """Emit the JSON object form with a fully explicit valuation."""
        return {
            "domain": list(self.domain),
            "background": self.background,
            "contexts": [
                {"name": c.name, "extension": sorted(c.extension)}
                for c in self.contexts.values()
            ],
            "predicates": list(self.predicates),
            "valuation": [
                {"context": c, "entity": e, "predicate": p, "value": v.value}
                for (c, e, p), v in sorted(self._valuation.items())
            ],
            "incompatible": sorted(sorted(pair) for pair in self._incompatible),
        }


# ---------------------------------------------------------------------------
# Evaluation.


def _guard_context(model: Model, f: Formula) -> str | None:
    """Context named by a guard atom, or None if `f` is not a guard."""
    if isinstance(f, ContextGuard):
        return f.context
    if isinstance(f, PredicateApp) and model.is_context(f.name):
        return f.name
    return None


def _incompat_pattern(model: Model, f: Formula) -> tuple[str, str] | None:
    """Match the guard-incompatibility clause ``~(c1(x) <-> c2(x))``."""
    if not (isinstance(f, Not) and isinstance(f.operand, Iff)):
        return None
    c1 = _guard_context(model, f.operand.left)
    c2 = _guard_context(model, f.operand.right)
    if c1 is not None and c2 is not None and c1 != c2:
        return (c1, c2)
    return None


def evaluate(
    f: Formula,
    model: Model,
    env: Mapping[str, str] | None = None,
    *,
    incompat_mode: str = "relational",
) -> Tv3:
    """Evaluate a formula to a three-valued truth value.

    Predicate lookups resolve against the context of the innermost enclosing
    guarded implication, and against the model's background context outside
    any guard.  Guards themselves are bivalent extension-membership tests.
    Universal quantification folds conjunction over the domain (vacuously T
    on an empty domain); existential quantification is dual.

    ``incompat_mode`` fixes the reading of guard-incompatibility clauses
    ``~(c1(x) <-> c2(x))``: ``"relational"`` (default) consults the model's
    declared incompatibility relation — mutual exclusivity as a physical fact
    about the arrangements — while ``"extensional"`` evaluates the clause
    literally from the guard extensions.
    """
    if incompat_mode not in ("relational", "extensional"):
        raise ValueError(f"incompat_mode must be 'relational' or 'extensional', got {incompat_mode!r}")
    return _eval(f, model, dict(env or {}), None, incompat_mode)


def _eval(f: Formula, m: Model, env: dict[str, str], ctx: str | None, mode: str) -> Tv3:
    if isinstance(f, (PredicateApp, ContextGuard)):
        name = f.context if isinstance(f, ContextGuard) else f.name
        if f.var not in env:
            raise UnboundVariable(f.var, getattr(f, "span", None))
        entity = env[f.var]
        if entity not in m.domain:
            raise UndeclaredName(f"undeclared entity {entity!r}")
        if m.is_context(name):
            return Tv3.from_bool(entity in m.extension(name))
        if isinstance(f, ContextGuard):
            raise UndeclaredName(f"undeclared context {name!r}")
        if not m.is_predicate(name):
            raise UndeclaredName(f"undeclared predicate {name!r}")
        column = ctx or m.background
        if column is None:
            raise UndeclaredName(
                f"predicate {name!r} used outside any guard and the model declares no background context"
            )
        return m.value(column, entity, name)
    if isinstance(f, Not):
        if mode == "relational":
            pair = _incompat_pattern(m, f)
            if pair is not None:
                return Tv3.from_bool(m.incompatible(*pair))
        return neg3(_eval(f.operand, m, env, ctx, mode))
    if isinstance(f, And):
        return conj3(_eval(f.left, m, env, ctx, mode), _eval(f.right, m, env, ctx, mode))
    if isinstance(f, Or):
        return disj3(_eval(f.left, m, env, ctx, mode), _eval(f.right, m, env, ctx, mode))
    if isinstance(f, Iff):
        return iff3(_eval(f.left, m, env, ctx, mode), _eval(f.right, m, env, ctx, mode))
    if isinstance(f, Implies):
        guard_ctx = _guard_context(m, f.left)
        antecedent = _eval(f.left, m, env, ctx, mode)
        # Innermost guard wins: the consequent is read in the guard's context.
        consequent = _eval(f.right, m, env, guard_ctx or ctx, mode)
        return impl3(antecedent, consequent)
    if isinstance(f, ForAll):
        values = (_eval(f.body, m, {**env, f.var: e}, ctx, mode) for e in m.domain)
        out = Tv3.TRUE
        for v in values:
            out = conj3(out, v)
        return out
    if isinstance(f, Exists):
        out = Tv3.FALSE
        for e in m.domain:
            out = disj3(out, _eval(f.body, m, {**env, f.var: e}, ctx, mode))
        return out
    raise TypeError(f"not a formula node: {f!r}")


def check_incompatibility(
    model: Model,
    c1: str,
    c2: str,
    mode: str = "relational",
    *,
    quantifier: str = "exists",
) -> Tv3:
    """Decide whether two contexts are mutually incompatible.

    Relational mode reads the model's declared relation.  Extensional mode
    compares the guard extensions: with ``quantifier="exists"`` (default)
    the contexts are incompatible when at least one entity distinguishes
    them; with ``quantifier="forall"`` every entity must distinguish them.
    """
    for c in (c1, c2):
        if not model.is_context(c):
            raise UndeclaredName(f"undeclared context {c!r}")
    if mode == "relational":
        return Tv3.from_bool(model.incompatible(c1, c2))
    if mode != "extensional":
        raise ValueError(f"mode must be 'relational' or 'extensional', got {mode!r}")
    if quantifier not in ("exists", "forall"):
        raise ValueError(f"quantifier must be 'exists' or 'forall', got {quantifier!r}")
    e1, e2 = model.extension(c1), model.extension(c2)
    differs = [(e in e1) != (e in e2) for e in model.domain]
    if quantifier == "exists":
        return Tv3.from_bool(any(differs))
    return Tv3.from_bool(all(differs))


# ---------------------------------------------------------------------------
# Schema destructuring.


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _atom_over(f: Formula, var: str) -> str | None:
    if isinstance(f, PredicateApp) and f.var == var:
        return f.name
    if isinstance(f, ContextGuard) and f.var == var:
        return f.context
    return None


def guard_of(f: Formula) -> list[tuple[str, Formula]]:
    """Extract (context, consequent) pairs from a predication-schema instance.

    The formula must be a universally quantified conjunction of one to three
    guarded implications whose consequents are literals over the bound
    variable, together with exactly the pairwise guard-incompatibility
    clauses.  Pairs are returned in textual order.  Anything else raises
    :class:`NotASchema`.
    """
    if not isinstance(f, ForAll):
        raise NotASchema("schema instances are universally quantified")
    var = f.var
    impls: list[tuple[str, Formula]] = []
    clauses: list[frozenset[str]] = []
    for part in _conjuncts(f.body):
        if isinstance(part, Implies):
            guard = _atom_over(part.left, var)
            if guard is None:
                raise NotASchema("implication antecedent is not a guard atom")
            consequent = part.right
            literal = consequent.operand if isinstance(consequent, Not) else consequent
            if _atom_over(literal, var) is None:
                raise NotASchema("implication consequent is not a literal over the bound variable")
            impls.append((guard, consequent))
        elif isinstance(part, Not) and isinstance(part.operand, Iff):
            a = _atom_over(part.operand.left, var)
            b = _atom_over(part.operand.right, var)
            if a is None or b is None or a == b:
                raise NotASchema("incompatibility clause must relate two distinct guard atoms")
            clauses.append(frozenset({a, b}))
        else:
            raise NotASchema(f"unexpected conjunct: {type(part).__name__}")
    guards = [g for g, _ in impls]
    if not 1 <= len(guards) <= 3:
        raise NotASchema(f"schemas carry 1..3 guarded implications, found {len(guards)}")
    if len(set(guards)) != len(guards):
        raise NotASchema("guard contexts must be distinct")
    wanted = {
        frozenset({guards[i], guards[j]})
        for i in range(len(guards))
        for j in range(i + 1, len(guards))
    }
    if len(clauses) != len(wanted) or set(clauses) != wanted:
        raise NotASchema("pairwise incompatibility clauses do not match the guards")
    return impls
