"""Seeded random formula generator shared by round-trip tests."""
from __future__ import annotations

import random

from sapta.formulas import (
    And,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    PredicateApp,
)

NAMES = ("p", "q", "r", "phi", "psi", "chi")
VARS = ("x", "y", "z")


def random_formula(rng: random.Random, depth: int = 5) -> Formula:
    """Random well-formed formula; depth bounds the tree height."""
    if depth <= 0 or rng.random() < 0.25:
        return PredicateApp(rng.choice(NAMES), rng.choice(VARS))
    kind = rng.randrange(10)
    if kind < 2:
        return Not(random_formula(rng, depth - 1))
    if kind < 4:
        return And(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind < 6:
        return Or(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 6:
        return Implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind == 7:
        return Iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    cls = ForAll if kind == 8 else Exists
    return cls(rng.choice(VARS), random_formula(rng, depth - 1))
