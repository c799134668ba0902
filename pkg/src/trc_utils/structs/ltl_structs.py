"""LTL and LTLp syntax trees.

Nodes are addressed by occurrence ids: the path of child indices from the root
(``()`` is the root, ``(1, 0)`` the first child of the second child).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Optional, Union

from trc_utils.structs.semilinear import ZERO, SemilinearSet

logger = logging.getLogger(__name__)

Occurrence = tuple[int, ...]

IDENT_RGX = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
RESERVED_PREFIX = "_"


class Op(Enum):
    """Node kinds; the value is the operator token of the ASCII grammar."""

    TRUE = "true"
    FALSE = "false"
    PROP = "prop"
    NOT = "~"
    AND = "&"
    OR = "|"
    IMPLIES = "->"
    NEXT = "X"
    FINALLY = "F"
    GLOBALLY = "G"
    UNTIL = "U"
    RELEASE = "R"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @property
    def is_temporal(self) -> bool:
        return self in (Op.NEXT, Op.FINALLY, Op.GLOBALLY, Op.UNTIL, Op.RELEASE)


_ARITY = {
    Op.TRUE: 0,
    Op.FALSE: 0,
    Op.PROP: 0,
    Op.NOT: 1,
    Op.NEXT: 1,
    Op.FINALLY: 1,
    Op.GLOBALLY: 1,
    Op.AND: 2,
    Op.OR: 2,
    Op.IMPLIES: 2,
    Op.UNTIL: 2,
    Op.RELEASE: 2,
}

KEYWORDS: set[str] = {"true", "false", "X", "F", "G", "U", "R"}
OPERATOR_TOKENS: dict[str, Op] = {op.value: op for op in Op if op not in (Op.TRUE, Op.FALSE, Op.PROP)}


class Polarity(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self) -> Polarity:
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


def child_polarity(op: Op, index: int, polarity: Polarity) -> Polarity:
    """Polarity of operand ``index`` of an ``op`` node that has ``polarity``.

    Negation and the left side of an implication (read as ``~a | b``) flip.
    """
    if op is Op.NOT or (op is Op.IMPLIES and index == 0):
        return polarity.flip()
    return polarity


class OccurrenceError(KeyError):
    """Raised for an occurrence id that does not address a node."""


class _PicklableCachedHash:
    """Keep the cached ``_hash`` out of the pickle state so it is recomputed per process.

    Formulas are shipped to bench worker processes; string hashing is salted per
    process, so a pickled cache would not match an equal formula built there.
    """

    def __getstate__(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if k not in ("_hash", "_str")}

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)


class _Tree:
    """Navigation shared by plain and annotated trees."""

    op: Op
    children: tuple
    name: Optional[str]

    @property
    def is_atomic(self) -> bool:
        return self.op.arity == 0

    @property
    def is_constant(self) -> bool:
        return self.op in (Op.TRUE, Op.FALSE)

    def subformula(self, occ: Occurrence):
        node = self
        for depth, index in enumerate(occ):
            if index < 0 or index >= len(node.children):
                raise OccurrenceError(f"Invalid occurrence {occ}: no child {index} at depth {depth}")
            node = node.children[index]
        return node

    def occurrences(self) -> Iterator[tuple[Occurrence, "_Tree"]]:
        """Preorder walk yielding ``(occurrence id, node)``."""
        stack: list[tuple[Occurrence, _Tree]] = [((), self)]
        while stack:
            occ, node = stack.pop()
            yield occ, node
            for index in reversed(range(len(node.children))):
                stack.append((occ + (index,), node.children[index]))

    def polarities(self) -> dict[Occurrence, Polarity]:
        result: dict[Occurrence, Polarity] = {(): Polarity.POSITIVE}
        for occ, node in self.occurrences():
            for index in range(len(node.children)):
                result[occ + (index,)] = child_polarity(node.op, index, result[occ])
        return result

    def props(self) -> frozenset[str]:
        return frozenset(node.name for _, node in self.occurrences() if node.op is Op.PROP)

    @property
    def size(self) -> int:
        return sum(1 for _ in self.occurrences())


def _check_node(op: Op, children: tuple, name: Optional[str]) -> None:
    if len(children) != op.arity:
        raise ValueError(f"Operator {op.name} expects {op.arity} operands, got {len(children)}")
    if op is Op.PROP:
        if not name or IDENT_RGX.fullmatch(name) is None or name in KEYWORDS:
            raise ValueError(f"Invalid proposition name: {name!r}")
    elif name is not None:
        raise ValueError(f"Only propositions carry a name, got {name!r} on {op.name}")


@dataclass(frozen=True, repr=False)
class Formula(_PicklableCachedHash, _Tree):
    """An LTL syntax tree node."""

    op: Op
    children: tuple[Formula, ...] = ()
    name: Optional[str] = None

    def __post_init__(self) -> None:
        _check_node(self.op, self.children, self.name)
        assert all(isinstance(c, Formula) for c in self.children)

    @cached_property
    def _str(self) -> str:
        return print_ltl(self)

    @cached_property
    def _hash(self) -> int:
        return hash((self.op, self.name, self.children))

    def __str__(self) -> str:
        return self._str

    def __repr__(self) -> str:
        return f"Formula({self._str})"

    def __hash__(self) -> int:
        return self._hash

    def replace(self, occ: Occurrence, new: Formula) -> Formula:
        """Return a copy with the subtree at ``occ`` replaced by ``new``."""
        if not occ:
            return new
        index, rest = occ[0], occ[1:]
        if index >= len(self.children):
            raise OccurrenceError(f"Invalid occurrence {occ}")
        children = list(self.children)
        children[index] = children[index].replace(rest, new)
        return Formula(self.op, tuple(children), self.name)


@dataclass(frozen=True, repr=False)
class AnnotatedFormula(_PicklableCachedHash, _Tree):
    """An LTLp syntax tree node.

    ``sets[i]`` is the set of time points of operand ``i``; an implication
    carries the set of its left operand (shared with the implicit negation)
    and the set of its right operand. The root itself carries no set.
    """

    op: Op
    children: tuple[AnnotatedFormula, ...] = ()
    name: Optional[str] = None
    sets: tuple[SemilinearSet, ...] = ()

    def __post_init__(self) -> None:
        _check_node(self.op, self.children, self.name)
        if len(self.sets) != self.op.arity:
            raise ValueError(f"Operator {self.op.name} expects {self.op.arity} sets, got {len(self.sets)}")
        assert all(isinstance(c, AnnotatedFormula) for c in self.children)

    @cached_property
    def _str(self) -> str:
        return print_ltlp(self)

    @cached_property
    def _hash(self) -> int:
        return hash((self.op, self.name, self.children, self.sets))

    def __str__(self) -> str:
        return self._str

    def __repr__(self) -> str:
        return f"AnnotatedFormula({self._str})"

    def __hash__(self) -> int:
        return self._hash

    def strip(self) -> Formula:
        """Drop all sets of time points."""
        return Formula(self.op, tuple(c.strip() for c in self.children), self.name)

    def operand_set(self, occ: Occurrence) -> SemilinearSet:
        """Set of time points attached to the (non-root) occurrence ``occ``."""
        if not occ:
            raise OccurrenceError("The root carries no set of time points")
        return self.subformula(occ[:-1]).sets[occ[-1]]

    def with_sets(self, sets: dict[Occurrence, SemilinearSet], default: Optional[SemilinearSet] = None) -> AnnotatedFormula:
        return _annotate(self.strip(), (), lambda occ: sets.get(occ, default))

    @classmethod
    def uniform(cls, f: Formula, s: SemilinearSet) -> AnnotatedFormula:
        """Annotate every operand position of ``f`` with ``s``."""
        return _annotate(f, (), lambda occ: s)


def _annotate(f: Formula, occ: Occurrence, set_for) -> AnnotatedFormula:
    children = tuple(_annotate(c, occ + (i,), set_for) for i, c in enumerate(f.children))
    sets = []
    for i in range(len(f.children)):
        s = set_for(occ + (i,))
        if s is None:
            raise OccurrenceError(f"No set of time points for occurrence {occ + (i,)}")
        sets.append(s)
    return AnnotatedFormula(f.op, children, f.name, tuple(sets))


Tree = Union[Formula, AnnotatedFormula]


def polarity_of(f: Tree, occ: Occurrence) -> Polarity:
    """Polarity of the node at ``occ``: positive iff under an even number of
    negations and implication left sides."""
    polarity = Polarity.POSITIVE
    node = f
    for depth, index in enumerate(occ):
        if index < 0 or index >= len(node.children):
            raise OccurrenceError(f"Invalid occurrence {occ}: no child {index} at depth {depth}")
        polarity = child_polarity(node.op, index, polarity)
        node = node.children[index]
    return polarity


# Constructors


TRUE = Formula(Op.TRUE)
FALSE = Formula(Op.FALSE)


def Prop(name: str) -> Formula:
    return Formula(Op.PROP, (), name)


def Not(f: Formula) -> Formula:
    return Formula(Op.NOT, (f,))


def And(a: Formula, b: Formula) -> Formula:
    return Formula(Op.AND, (a, b))


def Or(a: Formula, b: Formula) -> Formula:
    return Formula(Op.OR, (a, b))


def Implies(a: Formula, b: Formula) -> Formula:
    return Formula(Op.IMPLIES, (a, b))


def Next(f: Formula) -> Formula:
    return Formula(Op.NEXT, (f,))


def Finally(f: Formula) -> Formula:
    return Formula(Op.FINALLY, (f,))


def Globally(f: Formula) -> Formula:
    return Formula(Op.GLOBALLY, (f,))


def Until(a: Formula, b: Formula) -> Formula:
    return Formula(Op.UNTIL, (a, b))


def Release(a: Formula, b: Formula) -> Formula:
    return Formula(Op.RELEASE, (a, b))


def conjunction(parts: list[Formula]) -> Formula:
    """Right-nested conjunction; ``true`` for no parts."""
    if not parts:
        return TRUE
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = And(part, result)
    return result


# Printing


def _leaf(node: _Tree) -> str:
    return node.name if node.op is Op.PROP else node.op.value


def print_ltl(f: Formula) -> str:
    """Render in the ASCII grammar; non-atomic operands of binary operators
    and binary operands of unary operators are parenthesized."""
    if f.is_atomic:
        return _leaf(f)
    if f.op.arity == 1:
        child = f.children[0]
        if child.op.arity == 2:
            return f"{f.op.value}({print_ltl(child)})"
        sep = "" if f.op is Op.NOT else " "
        return f"{f.op.value}{sep}{print_ltl(child)}"
    left, right = (print_ltl(c) if c.is_atomic else f"({print_ltl(c)})" for c in f.children)
    return f"{left} {f.op.value} {right}"


def print_ltlp(a: AnnotatedFormula) -> str:
    """Render an LTLp formula with each operator followed by its operand sets."""
    if a.is_atomic:
        return _leaf(a)
    sets = "[" + ",".join(str(s) for s in a.sets) + "]"
    if a.op.arity == 1:
        child = a.children[0]
        if child.op.arity == 2 or (a.op in (Op.GLOBALLY, Op.FINALLY) and child.op.is_temporal):
            return f"{a.op.value}{sets}({print_ltlp(child)})"
        return f"{a.op.value}{sets} {print_ltlp(child)}"
    left, right = (print_ltlp(c) if c.is_atomic else f"({print_ltlp(c)})" for c in a.children)
    return f"{left} {a.op.value}{sets} {right}"


# Simplification


def simplify(f: Formula) -> Formula:
    """Propagate Boolean constants bottom-up."""
    if f.is_atomic:
        return f
    kids = tuple(simplify(c) for c in f.children)
    op = f.op
    if op is Op.NOT:
        (a,) = kids
        if a.is_constant:
            return FALSE if a.op is Op.TRUE else TRUE
    elif op in (Op.NEXT, Op.FINALLY, Op.GLOBALLY):
        if kids[0].is_constant:
            return kids[0]
    elif op is Op.AND:
        if FALSE in kids:
            return FALSE
        rest = [k for k in kids if k != TRUE]
        if len(rest) < 2:
            return rest[0] if rest else TRUE
    elif op is Op.OR:
        if TRUE in kids:
            return TRUE
        rest = [k for k in kids if k != FALSE]
        if len(rest) < 2:
            return rest[0] if rest else FALSE
    elif op is Op.IMPLIES:
        a, b = kids
        if a == FALSE or b == TRUE:
            return TRUE
        if a == TRUE:
            return b
        if b == FALSE:
            return simplify(Not(a))
    elif op in (Op.UNTIL, Op.RELEASE):
        a, b = kids
        if b.is_constant:
            return b
        if op is Op.UNTIL and a == FALSE:
            return b
        if op is Op.RELEASE and a == TRUE:
            return b
    return Formula(op, kids, f.name)


def _masked_constant(node: AnnotatedFormula, polarity: Polarity) -> Optional[bool]:
    """Value of a constant operand after masking, or None if it depends on time."""
    if node.op is Op.TRUE and polarity is Polarity.POSITIVE:
        return True
    if node.op is Op.FALSE and polarity is Polarity.NEGATIVE:
        return False
    return None


def simplify_annotated(a: AnnotatedFormula) -> AnnotatedFormula:
    """Drop constant operands of an LTLp formula where that keeps its meaning.

    Only constants that stay constant under their sets are propagated, and a
    neutral operand is removed only when the surviving operand's set contains
    the set of the position it moves into (at the root: contains 0).
    """
    result = _simplify_annotated(a, Polarity.POSITIVE, None)
    if result.is_constant:
        logger.warning("Core simplified to the constant %s", result.op.value)
    return result


def _constant(value: bool) -> AnnotatedFormula:
    return AnnotatedFormula(Op.TRUE if value else Op.FALSE)


def _simplify_annotated(
    a: AnnotatedFormula, polarity: Polarity, position: Optional[SemilinearSet]
) -> AnnotatedFormula:
    if a.is_atomic:
        return a
    kid_polarities = [child_polarity(a.op, i, polarity) for i in range(len(a.children))]
    kids = tuple(
        _simplify_annotated(c, kid_polarities[i], a.sets[i]) for i, c in enumerate(a.children)
    )
    masked = [_masked_constant(k, kid_polarities[i]) for i, k in enumerate(kids)]
    op = a.op
    if op is Op.NOT and masked[0] is not None:
        return _constant(not masked[0])
    if op in (Op.NEXT, Op.FINALLY, Op.GLOBALLY) and masked[0] is not None:
        return _constant(masked[0])
    if op is Op.IMPLIES and masked[1] is True:
        return _constant(True)
    if op is Op.IMPLIES and masked[0] is False:
        return _constant(True)
    if op in (Op.AND, Op.OR):
        dominant = op is Op.OR
        if dominant in masked:
            return _constant(dominant)
        for i, value in enumerate(masked):
            if value is None:
                continue
            other = 1 - i
            target = position if position is not None else ZERO
            if target.issubset(a.sets[other]):
                return kids[other]
    return AnnotatedFormula(op, kids, a.name, a.sets)
