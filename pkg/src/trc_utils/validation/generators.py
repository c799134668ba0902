"""Seeded generators for instances, formulas and lasso words."""

import logging
from typing import Iterator, Sequence, Union

import numpy as np
from python_utils.decorators import listify

from trc_utils.structs.ltl_structs import (
    And,
    AnnotatedFormula,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Op,
    Or,
    Prop,
    Release,
    Until,
    conjunction,
)
from trc_utils.structs.semilinear import SemilinearSet
from trc_utils.structs.snf_structs import Literal, SnfClause
from trc_utils.validation.lasso import LassoWord

logger = logging.getLogger(__name__)

PROFILES = ("random-clauses", "unsat-by-construction", "phltl-style")

_UNARY = (Op.NOT, Op.NEXT, Op.FINALLY, Op.GLOBALLY)
_BINARY = (Op.AND, Op.OR, Op.IMPLIES, Op.UNTIL, Op.RELEASE)


def _props(count: int) -> list[str]:
    return [f"p{i}" for i in range(count)]


def random_formula(rng: np.random.Generator, props: Sequence[str], depth: int = 3) -> Formula:
    """A random formula over ``props`` with at most ``depth`` nested operators."""
    if depth <= 0 or rng.random() < 0.2:
        return Prop(str(rng.choice(props)))
    if rng.random() < 0.4:
        op = _UNARY[rng.integers(len(_UNARY))]
        return Formula(op, (random_formula(rng, props, depth - 1),))
    op = _BINARY[rng.integers(len(_BINARY))]
    return Formula(op, (random_formula(rng, props, depth - 1), random_formula(rng, props, depth - 1)))


def random_semilinear(rng: np.random.Generator, max_constant: int = 6, max_period: int = 4) -> SemilinearSet:
    finite = tuple(int(k) for k in rng.choice(max_constant + 1, size=rng.integers(0, 3), replace=False))
    progressions = tuple(
        (int(rng.integers(max_constant + 1)), int(rng.integers(1, max_period + 1))) for _ in range(rng.integers(0, 3))
    )
    return SemilinearSet(finite, progressions)


def random_annotation(rng: np.random.Generator, f: Formula) -> AnnotatedFormula:
    """``f`` with a random set at every operand position."""
    return AnnotatedFormula.uniform(f, SemilinearSet()).with_sets(
        {occ: random_semilinear(rng) for occ, _ in f.occurrences() if occ}
    )


def _literal(rng: np.random.Generator, props: Sequence[str]) -> Literal:
    return Literal(str(rng.choice(props)), bool(rng.random() < 0.5))


def _literals(rng: np.random.Generator, props: Sequence[str], low: int, high: int) -> list[Literal]:
    return [_literal(rng, props) for _ in range(rng.integers(low, high + 1))]


def random_clauses(rng: np.random.Generator, size: int) -> list[SnfClause]:
    props = _props(max(2, size))
    clauses = [SnfClause.initial(*_literals(rng, props, 1, 2)) for _ in range(rng.integers(1, 3))]
    for _ in range(2 * size):
        clauses.append(SnfClause.always(_literals(rng, props, 0, 2), _literals(rng, props, 1, 2)))
    for _ in range(size):
        clauses.append(SnfClause.always(_literals(rng, props, 1, 2)))
    for _ in range(rng.integers(0, 3)):
        clauses.append(SnfClause.eventuality(_literal(rng, props), _literals(rng, props, 0, 1)))
    return list(dict.fromkeys(c for c in clauses if not c.is_tautology))


def _next(f: Formula, times: int) -> Formula:
    for _ in range(times):
        f = Next(f)
    return f


def unsat_by_construction(rng: np.random.Generator, size: int) -> Formula:
    """A random formula conjoined with one of several contradictory schemas."""
    props = _props(max(2, size))
    p, q = (Prop(str(name)) for name in rng.choice(props, size=2, replace=False))
    k = int(rng.integers(0, 3))
    schemas = [
        And(Globally(p), Finally(Not(p))),
        conjunction([p, Globally(Implies(p, Next(p))), Finally(Not(p))]),
        conjunction([p, Globally(Implies(p, Next(Next(p)))), Finally(And(Not(p), Next(Not(p))))]),
        And(_next(p, k), _next(Not(p), k)),
        And(Until(q, p), Globally(Not(p))),
        And(Globally(Finally(p)), Finally(Globally(Not(p)))),
        And(Not(Release(q, p)), Globally(p)),
    ]
    schema = schemas[rng.integers(len(schemas))]
    noise = random_formula(rng, props, depth=min(size, 3))
    return And(noise, schema) if rng.random() < 0.5 else And(schema, noise)


def phltl(n: int) -> Formula:
    """``n + 1`` pigeons that each need a single hole at some point, while the
    hole is open during the first ``n`` time points only."""
    pigeons = [Prop(f"h{i}") for i in range(n + 1)]
    hole = Prop("o")
    parts = [Finally(h) for h in pigeons]
    parts += [Globally(Or(Not(a), Not(b))) for i, a in enumerate(pigeons) for b in pigeons[i + 1 :]]
    parts += [Globally(Implies(h, hole)) for h in pigeons]
    parts.append(_next(Globally(Not(hole)), n))
    return conjunction(parts)


@listify()
def sample_instances(
    seed: int, count: int, profile: str = "unsat-by-construction", size: int = 3
) -> Iterator[Union[Formula, list[SnfClause]]]:
    """``count`` instances of a profile, the same list for the same seed."""
    if profile not in PROFILES:
        raise ValueError(f"Unknown profile: {profile} (expected one of {', '.join(PROFILES)})")
    rng = np.random.default_rng(seed)
    for i in range(count):
        if profile == "random-clauses":
            yield random_clauses(rng, size)
        elif profile == "unsat-by-construction":
            yield unsat_by_construction(rng, size)
        else:
            yield phltl(1 + (size + i) % max(size, 1))


@listify()
def sample_words(
    rng: np.random.Generator,
    props: Sequence[str],
    count: int,
    max_prefix: int = 6,
    max_loop: int = 6,
) -> Iterator[LassoWord]:
    """Words with uniformly drawn letters over ``props``."""
    props = sorted(props)

    def letter() -> frozenset[str]:
        return frozenset(p for p in props if rng.random() < 0.5)

    for _ in range(count):
        prefix = tuple(letter() for _ in range(rng.integers(0, max_prefix + 1)))
        loop = tuple(letter() for _ in range(rng.integers(1, max_loop + 1)))
        yield LassoWord(prefix, loop)
