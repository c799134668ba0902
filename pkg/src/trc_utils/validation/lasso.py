"""Evaluation of LTL and LTLp formulas on ultimately periodic words."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Union

import numpy as np

from trc_utils.structs.ltl_structs import IDENT_RGX, AnnotatedFormula, Formula, Op, Polarity, child_polarity
from trc_utils.structs.string_utils import split_top_level

logger = logging.getLogger(__name__)

Letter = frozenset[str]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"Syntax error at column {column}: {message}")
        self.column = column


class PeriodCapExceeded(ArithmeticError):
    """Raised when the period of an LTLp evaluation exceeds the configured cap."""


@dataclass(frozen=True)
class LassoWord:
    """The infinite word ``prefix loop loop loop ...``."""

    prefix: tuple[Letter, ...]
    loop: tuple[Letter, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(frozenset(a) for a in self.prefix))
        object.__setattr__(self, "loop", tuple(frozenset(a) for a in self.loop))
        if not self.loop:
            raise ValueError("The loop of a lasso word must not be empty")

    def __len__(self) -> int:
        return len(self.prefix) + len(self.loop)

    def letter(self, i: int) -> Letter:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.loop[(i - len(self.prefix)) % len(self.loop)]

    def unrolled(self, copies: int = 1) -> LassoWord:
        """The same word with ``copies`` loop iterations moved into the prefix."""
        return LassoWord(self.prefix + self.loop * copies, self.loop)

    def props(self) -> frozenset[str]:
        return frozenset().union(*self.prefix, *self.loop)

    def __str__(self) -> str:
        def letters(seq: Iterable[Letter]) -> str:
            return ".".join("{" + ",".join(sorted(a)) + "}" for a in seq)

        return f"{letters(self.prefix)} ; {letters(self.loop)}" if self.prefix else f"; {letters(self.loop)}"


def _parse_letters(text: str, offset: int) -> list[Letter]:
    if not text.strip():
        return []
    letters = []
    cursor = 0
    for part in split_top_level(text, sep=".", nesting="{}"):
        index = text.find(part, cursor) if part else cursor
        cursor = index + len(part)
        column = offset + index + 1
        if not (part.startswith("{") and part.endswith("}")):
            raise WordSyntaxError(f"expected a letter like {{p,q}}, got '{part}'", column)
        names = [n.strip() for n in part[1:-1].split(",") if n.strip()]
        for name in names:
            if IDENT_RGX.fullmatch(name) is None:
                raise WordSyntaxError(f"invalid proposition name '{name}'", column)
        letters.append(frozenset(names))
    return letters


def parse_word(text: str) -> LassoWord:
    """Read ``{p,q}.{}.{p} ; {p}.{q}``: letters separated by dots, prefix and loop
    separated by a semicolon. Without a semicolon the whole word is the loop."""
    if ";" in text:
        cut = text.index(";")
        prefix = _parse_letters(text[:cut], 0)
        loop = _parse_letters(text[cut + 1 :], cut + 1)
    else:
        prefix, loop = [], _parse_letters(text, 0)
    if not loop:
        raise WordSyntaxError("the loop must contain at least one letter", len(text) + 1)
    return LassoWord(tuple(prefix), tuple(loop))


class _Evaluator:
    """Truth values of all subformulas on positions ``0..horizon-1``, the last
    position being followed by position ``start``."""

    def __init__(self, word: LassoWord, start: int, period: int):
        self.horizon = start + period
        self.successor = np.arange(1, self.horizon + 1)
        self.successor[-1] = start
        self.letters = [word.letter(i) for i in range(self.horizon)]

    def prop(self, name: str) -> np.ndarray:
        return np.array([name in a for a in self.letters], dtype=bool)

    def until(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        result = b.copy()
        while True:
            updated = b | (a & result[self.successor])
            if np.array_equal(updated, result):
                return result
            result = updated

    def release(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        result = np.ones(self.horizon, dtype=bool)
        while True:
            updated = b & (a | result[self.successor])
            if np.array_equal(updated, result):
                return result
            result = updated

    def evaluate(self, node: Union[Formula, AnnotatedFormula], polarity: Polarity = Polarity.POSITIVE) -> np.ndarray:
        op = node.op
        if op is Op.TRUE:
            return np.ones(self.horizon, dtype=bool)
        if op is Op.FALSE:
            return np.zeros(self.horizon, dtype=bool)
        if op is Op.PROP:
            return self.prop(node.name)
        kids = [self.operand(node, i, child_polarity(op, i, polarity)) for i in range(len(node.children))]
        if op is Op.NOT:
            return ~kids[0]
        if op is Op.AND:
            return kids[0] & kids[1]
        if op is Op.OR:
            return kids[0] | kids[1]
        if op is Op.IMPLIES:
            return ~kids[0] | kids[1]
        if op is Op.NEXT:
            return kids[0][self.successor]
        if op is Op.FINALLY:
            return self.until(np.ones(self.horizon, dtype=bool), kids[0])
        if op is Op.GLOBALLY:
            return self.release(np.zeros(self.horizon, dtype=bool), kids[0])
        if op is Op.UNTIL:
            return self.until(kids[0], kids[1])
        return self.release(kids[0], kids[1])

    def operand(self, node: Union[Formula, AnnotatedFormula], index: int, polarity: Polarity) -> np.ndarray:
        value = self.evaluate(node.children[index], polarity)
        if not isinstance(node, AnnotatedFormula):
            return value
        member = node.sets[index].characteristic(self.horizon)
        # Outside its set an operand is true if positive, false if negative
        if polarity is Polarity.POSITIVE:
            return value | ~member
        return value & member


def eval_ltl(word: LassoWord, f: Formula) -> bool:
    evaluator = _Evaluator(word, len(word.prefix), len(word.loop))
    return bool(evaluator.evaluate(f)[0])


def _annotated_sets(a: AnnotatedFormula):
    for _, node in a.occurrences():
        yield from node.sets


def eval_ltlp(word: LassoWord, a: AnnotatedFormula, period_cap: Optional[int] = 100_000) -> bool:
    """Evaluate ``a`` at position 0 of ``word``.

    Beyond the largest constant of all sets and the prefix, both the letters
    and the set memberships repeat with the lcm of the loop length and all
    periods, so one such period closes the lasso.
    """
    sets = list(_annotated_sets(a))
    start = max([len(word.prefix)] + [s.max_constant + 1 for s in sets])
    period = reduce(math.lcm, (p for s in sets for p in s.periods), len(word.loop))
    if period_cap is not None and period > period_cap:
        raise PeriodCapExceeded(f"Evaluation period {period} exceeds the cap {period_cap}")
    evaluator = _Evaluator(word, start, period)
    return bool(evaluator.evaluate(a)[0])
