"""Polarity-based translation from LTL to SNF and mapping of SNF cores back to LTL.

Every non-atomic occurrence gets a fresh proxy proposition ``_x<n>`` (preorder
numbering); propositions stand for themselves and Boolean constants get no
proxy. The clauses generated for an occurrence reference the proxies of its
operands; those operand references are the marks that tie a clause back to
the occurrences it constrains.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union

from trc_utils.structs.ltl_structs import (
    FALSE,
    TRUE,
    AnnotatedFormula,
    Formula,
    Occurrence,
    Op,
    Polarity,
)
from trc_utils.structs.semilinear import EMPTY, SemilinearSet
from trc_utils.structs.snf_structs import EMPTY_INITIAL, Literal, SnfClause

logger = logging.getLogger(__name__)

PROXY_PREFIX = "_x"


class Slot(Enum):
    NOW = "now"
    NEXT = "next"
    EVENTUALITY = "eventuality"


@dataclass(frozen=True)
class Mark:
    occurrence: Occurrence
    slot: Slot


class UcMappingError(ValueError):
    """Raised when a core does not fit the translation it is mapped through."""


@dataclass(frozen=True)
class OccurrenceMap:
    """Links the clauses of a translation back to formula occurrences."""

    clauses: tuple[SnfClause, ...]
    marks: Mapping[SnfClause, tuple[Mark, ...]] = field(default_factory=lambda: MappingProxyType({}))
    proxies: Mapping[Occurrence, str] = field(default_factory=lambda: MappingProxyType({}))
    root: Optional[str] = None

    def marks_of(self, clause: SnfClause) -> tuple[Mark, ...]:
        return self.marks.get(clause, ())


# A clause under construction: (slot, literal or constant truth value, marked occurrence).
_Term = tuple[Slot, Union[Literal, bool], Optional[Occurrence]]


class _Translator:
    def __init__(self, f: Formula):
        self.f = f
        self.polarities = f.polarities()
        self.proxies: dict[Occurrence, str] = {}
        for occ, node in f.occurrences():
            if not node.is_atomic:
                self.proxies[occ] = f"{PROXY_PREFIX}{len(self.proxies)}"
        self.clauses: list[SnfClause] = []
        self.marks: dict[SnfClause, list[Mark]] = {}

    def ref(self, occ: Occurrence, positive: bool = True) -> Union[Literal, bool]:
        node = self.f.subformula(occ)
        if node.op is Op.TRUE:
            return positive
        if node.op is Op.FALSE:
            return not positive
        name = node.name if node.op is Op.PROP else self.proxies[occ]
        return Literal(name, positive)

    def operand(self, occ: Occurrence, slot: Slot, positive: bool = True) -> _Term:
        return slot, self.ref(occ, positive), occ

    def emit(self, *terms: _Term) -> None:
        if any(value is True for _, value, _ in terms):
            return
        now, nxt, ev = [], [], None
        marks = []
        for slot, value, occ in terms:
            if occ is not None:
                marks.append(Mark(occ, slot))
            if value is False:
                continue
            if slot is Slot.NOW:
                now.append(value)
            elif slot is Slot.NEXT:
                nxt.append(value)
            else:
                ev = value
        if ev is not None:
            clause = SnfClause.eventuality(ev, now)
        else:
            clause = SnfClause.always(now, nxt)
        if clause not in self.marks:
            self.clauses.append(clause)
            self.marks[clause] = []
        self.marks[clause].extend(marks)

    def translate_root(self) -> None:
        root = self.ref(())
        if root is True:
            return
        if root is False:
            self.clauses.append(EMPTY_INITIAL)
            self.marks[EMPTY_INITIAL] = []
            return
        clause = SnfClause.initial(root)
        self.clauses.append(clause)
        self.marks[clause] = [Mark((), Slot.NOW)]

    def translate_occurrence(self, occ: Occurrence, node: Formula) -> None:
        x = Literal(self.proxies[occ])
        op = node.op
        a = occ + (0,)
        b = occ + (1,)
        NOW, NEXT, EV = Slot.NOW, Slot.NEXT, Slot.EVENTUALITY
        if self.polarities[occ] is Polarity.POSITIVE:
            head = (NOW, x.negate(), None)
            self_next = (NEXT, x, None)
            if op is Op.NOT:
                self.emit(head, self.operand(a, NOW, False))
            elif op is Op.AND:
                self.emit(head, self.operand(a, NOW))
                self.emit(head, self.operand(b, NOW))
            elif op is Op.OR:
                self.emit(head, self.operand(a, NOW), self.operand(b, NOW))
            elif op is Op.IMPLIES:
                self.emit(head, self.operand(a, NOW, False), self.operand(b, NOW))
            elif op is Op.NEXT:
                self.emit(head, self.operand(a, NEXT))
            elif op is Op.GLOBALLY:
                self.emit(head, self_next)
                self.emit(head, self.operand(a, NOW))
            elif op is Op.FINALLY:
                self.emit(head, self.operand(a, EV))
            elif op is Op.UNTIL:
                self.emit(head, self.operand(b, NOW), self.operand(a, NOW))
                self.emit(head, self.operand(b, NOW), self_next)
                self.emit(head, self.operand(b, EV))
            elif op is Op.RELEASE:
                self.emit(head, self.operand(b, NOW))
                self.emit(head, self.operand(a, NOW), self_next)
        else:
            head = (NOW, x, None)
            self_next = (NEXT, x.negate(), None)
            if op is Op.NOT:
                self.emit(head, self.operand(a, NOW))
            elif op is Op.AND:
                self.emit(head, self.operand(a, NOW, False), self.operand(b, NOW, False))
            elif op is Op.OR:
                self.emit(head, self.operand(a, NOW, False))
                self.emit(head, self.operand(b, NOW, False))
            elif op is Op.IMPLIES:
                self.emit(head, self.operand(a, NOW))
                self.emit(head, self.operand(b, NOW, False))
            elif op is Op.NEXT:
                self.emit(head, self.operand(a, NEXT, False))
            elif op is Op.GLOBALLY:
                self.emit(head, self.operand(a, EV, False))
            elif op is Op.FINALLY:
                self.emit(head, self_next)
                self.emit(head, self.operand(a, NOW, False))
            elif op is Op.UNTIL:
                self.emit(head, self.operand(b, NOW, False))
                self.emit(head, self.operand(a, NOW, False), self_next)
            elif op is Op.RELEASE:
                self.emit(head, self.operand(b, NOW, False), self.operand(a, NOW, False))
                self.emit(head, self.operand(b, NOW, False), self_next)
                self.emit(head, self.operand(b, EV, False))

    def run(self) -> tuple[list[SnfClause], OccurrenceMap]:
        self.translate_root()
        for occ, node in self.f.occurrences():
            if occ in self.proxies:
                self.translate_occurrence(occ, node)
        root = self.ref(())
        occ_map = OccurrenceMap(
            clauses=tuple(self.clauses),
            marks=MappingProxyType({c: tuple(m) for c, m in self.marks.items()}),
            proxies=MappingProxyType(dict(self.proxies)),
            root=root.name if isinstance(root, Literal) else None,
        )
        logger.debug("Translated %d occurrences into %d clauses", self.f.size, len(self.clauses))
        return list(self.clauses), occ_map


def translate(f: Formula) -> tuple[list[SnfClause], OccurrenceMap]:
    """Translate ``f`` into an equisatisfiable set of SNF clauses.

    The first clause is the unit initial clause asserting the root (absent for
    a ``true`` root, the empty clause for a ``false`` root).
    """
    return _Translator(f).run()


def _check_subset(uc: Sequence[SnfClause], occ_map: OccurrenceMap) -> None:
    known = set(occ_map.clauses)
    unknown = [c for c in uc if c not in known]
    if unknown:
        raise UcMappingError(f"Clauses not in the translation: {', '.join(map(str, unknown))}")


def map_uc_to_ltl(uc: Sequence[SnfClause], occ_map: OccurrenceMap, f: Formula) -> Formula:
    """Replace every occurrence without a surviving marked reference by
    ``true`` (positive polarity) or ``false`` (negative polarity)."""
    _check_subset(uc, occ_map)
    surviving = {mark.occurrence for clause in uc for mark in occ_map.marks_of(clause)}
    polarities = f.polarities()

    def rebuild(node: Formula, occ: Occurrence) -> Formula:
        if node.is_constant:
            return node
        if occ not in surviving:
            return TRUE if polarities[occ] is Polarity.POSITIVE else FALSE
        children = tuple(rebuild(child, occ + (i,)) for i, child in enumerate(node.children))
        return Formula(node.op, children, node.name)

    return rebuild(f, ())


def occurrence_sets(
    uc_annotated: Sequence[tuple[SnfClause, SemilinearSet]], occ_map: OccurrenceMap
) -> dict[Occurrence, SemilinearSet]:
    """Union of the per-clause contributions of every marked occurrence:
    the clause set for now slots, shifted by one for next slots and
    ``[min, oo)`` for eventuality slots."""
    contributions: dict[Occurrence, list[SemilinearSet]] = {}
    for clause, timepoints in uc_annotated:
        for mark in occ_map.marks_of(clause):
            if mark.slot is Slot.NOW:
                s = timepoints
            elif mark.slot is Slot.NEXT:
                s = timepoints.shift(1)
            else:
                s = timepoints.tail_from_min()
            contributions.setdefault(mark.occurrence, []).append(s)
    return {occ: EMPTY.union(*sets) for occ, sets in contributions.items()}


def annotate_ltl_uc(
    uc_annotated: Sequence[tuple[SnfClause, SemilinearSet]], occ_map: OccurrenceMap, f_uc: Formula
) -> AnnotatedFormula:
    """Attach to every operand position of ``f_uc`` the union of the sets its
    marked references carry in the annotated SNF core."""
    _check_subset([c for c, _ in uc_annotated], occ_map)
    sets = occurrence_sets(uc_annotated, occ_map)

    def set_for(occ: Occurrence) -> SemilinearSet:
        if occ in sets:
            return sets[occ]
        if f_uc.subformula(occ).is_constant:
            return EMPTY
        raise UcMappingError(f"Occurrence {occ} of the core has no surviving reference")

    def build(node: Formula, occ: Occurrence) -> AnnotatedFormula:
        children = tuple(build(child, occ + (i,)) for i, child in enumerate(node.children))
        operand_sets = tuple(set_for(occ + (i,)) for i in range(len(node.children)))
        return AnnotatedFormula(node.op, children, node.name, operand_sets)

    return build(f_uc, ())
