"""Append-only record of the production rule applications of one solver run."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from trc_utils.structs.snf_structs import Literal, SnfClause


class Rule(Enum):
    INIT_II = "init-ii"
    INIT_IN = "init-in"
    STEP_NN = "step-nn"
    STEP_NX = "step-nx"
    STEP_XX = "step-xx"
    AUG1 = "aug1"
    AUG2 = "aug2"
    LOOP_IT_INIT_X = "loop-it-init-x"
    LOOP_IT_INIT_N = "loop-it-init-n"
    LOOP_IT_INIT_C = "loop-it-init-c"
    LOOP_IT_SUB = "loop-it-sub"
    LOOP_CONCLUSION1 = "loop-conclusion1"
    LOOP_CONCLUSION2 = "loop-conclusion2"


SATURATION_RULES = frozenset({Rule.INIT_II, Rule.INIT_IN, Rule.STEP_NN, Rule.STEP_NX, Rule.STEP_XX})
LOOP_SATURATION_RULES = frozenset({Rule.STEP_XX})


@dataclass(frozen=True, order=True)
class PartitionId:
    """The main partition, or one iteration of one loop search."""

    search: int = -1
    iteration: int = -1

    @property
    def is_main(self) -> bool:
        return self.search < 0

    def __str__(self) -> str:
        return "M" if self.is_main else f"L{self.search}.{self.iteration}"


MAIN = PartitionId()


def waits_for(literal: Literal) -> Literal:
    """The fresh proposition introduced by augmentation for an eventuality literal."""
    prefix = "_w_" if literal.positive else "_wn_"
    return Literal(prefix + literal.name)


@dataclass(frozen=True)
class ProofEvent:
    """One rule application. ``conclusion`` is the id of the vertex the
    conclusion is attached to; ``new_vertex`` is False when it already existed."""

    rule: Rule
    conclusion: int
    premise1: Optional[int] = None
    premise2: Optional[int] = None
    new_vertex: bool = True

    def to_json(self) -> dict:
        return {
            "rule": self.rule.value,
            "conclusion": self.conclusion,
            "premise1": self.premise1,
            "premise2": self.premise2,
            "new_vertex": self.new_vertex,
        }


class MalformedLogError(ValueError):
    """Raised when a log violates the schema of its rules."""


class ProofLog:
    """Clause table (dense ids, starting clauses first) plus the event sequence."""

    def __init__(self):
        self._clauses: list[tuple[SnfClause, PartitionId]] = []
        self._events: list[ProofEvent] = []
        self._n_start = 0

    def add_start(self, clause: SnfClause) -> int:
        if self._events or len(self._clauses) != self._n_start:
            raise MalformedLogError("Starting clauses must precede all derived clauses")
        self._n_start += 1
        return self.add_clause(clause, MAIN)

    def add_clause(self, clause: SnfClause, partition: PartitionId) -> int:
        self._clauses.append((clause, partition))
        return len(self._clauses) - 1

    def record(self, event: ProofEvent) -> None:
        for premise in (event.premise1, event.premise2):
            if premise is not None and not 0 <= premise < len(self._clauses):
                raise MalformedLogError(f"Unknown premise id {premise} in {event}")
        if not 0 <= event.conclusion < len(self._clauses):
            raise MalformedLogError(f"Unknown conclusion id {event.conclusion} in {event}")
        self._events.append(event)

    @property
    def n_start(self) -> int:
        return self._n_start

    @property
    def events(self) -> tuple[ProofEvent, ...]:
        return tuple(self._events)

    def clause(self, clause_id: int) -> SnfClause:
        return self._clauses[clause_id][0]

    def partition(self, clause_id: int) -> PartitionId:
        return self._clauses[clause_id][1]

    def starting_clauses(self) -> list[SnfClause]:
        return [clause for clause, _ in self._clauses[: self._n_start]]

    def empty_clause_id(self) -> Optional[int]:
        for clause_id, (clause, partition) in enumerate(self._clauses):
            if partition.is_main and clause.is_empty:
                return clause_id
        return None

    def __len__(self) -> int:
        return len(self._clauses)

    def __iter__(self) -> Iterator[tuple[int, SnfClause, PartitionId]]:
        for clause_id, (clause, partition) in enumerate(self._clauses):
            yield clause_id, clause, partition

    def to_json(self) -> dict:
        return {
            "n_start": self._n_start,
            "clauses": [{"clause": c.to_json(), "partition": str(p)} for c, p in self._clauses],
            "events": [e.to_json() for e in self._events],
        }


def _resolvents(left: frozenset[Literal], right: frozenset[Literal]) -> Iterator[tuple[Literal, frozenset, frozenset]]:
    for literal in left:
        if literal.negate() in right:
            yield literal, left - {literal}, right - {literal.negate()}


def _expected_conclusions(log: ProofLog, event: ProofEvent) -> list[SnfClause]:
    rule = event.rule
    p1 = log.clause(event.premise1) if event.premise1 is not None else None
    p2 = log.clause(event.premise2) if event.premise2 is not None else None
    if rule is Rule.INIT_II and p1.is_initial and p2.is_initial:
        return [SnfClause.initial(*(a | b)) for _, a, b in _resolvents(p1.now, p2.now)]
    if rule is Rule.INIT_IN and p1.is_initial and p2.is_now_only:
        return [SnfClause.initial(*(a | b)) for _, a, b in _resolvents(p1.now, p2.now)]
    if rule is Rule.STEP_NN and p1.is_now_only and p2.is_now_only:
        return [SnfClause.always(a | b) for _, a, b in _resolvents(p1.now, p2.now)]
    if rule is Rule.STEP_NX and p1.is_now_only and p2.is_global and p2.next:
        return [SnfClause.always(p2.now, a | b) for _, a, b in _resolvents(p1.now, p2.next)]
    if rule is Rule.STEP_XX and p1.is_global and p2.is_global:
        return [SnfClause.always(p1.now | p2.now, a | b) for _, a, b in _resolvents(p1.next, p2.next)]
    if rule is Rule.AUG1 and p1.is_eventuality:
        return [SnfClause.always(p1.now | {p1.ev, waits_for(p1.ev)})]
    if rule is Rule.AUG2 and p1.is_eventuality:
        return [SnfClause.always({waits_for(p1.ev).negate()}, {p1.ev, waits_for(p1.ev)})]
    if rule is Rule.LOOP_IT_INIT_X and p1.is_global and p1.next:
        return [p1]
    if rule is Rule.LOOP_IT_INIT_N and p1.is_now_only:
        return [SnfClause.always((), p1.now)]
    if rule is Rule.LOOP_IT_INIT_C and p2.is_eventuality and (p1 is None or p1.is_now_only):
        previous = p1.now if p1 is not None else frozenset()
        return [SnfClause.always((), previous | {p2.ev})]
    if rule is Rule.LOOP_IT_SUB and p1.is_now_only and p2 is not None:
        origin = next((e for e in log.events if e.rule is Rule.LOOP_IT_INIT_C and e.conclusion == event.premise2), None)
        if origin is None:
            return []
        previous = log.clause(origin.premise1).now if origin.premise1 is not None else frozenset()
        return [p2] if p1.now <= previous and event.conclusion == event.premise2 else []
    if rule is Rule.LOOP_CONCLUSION1 and p1.is_now_only and p2.is_eventuality:
        return [SnfClause.always(p1.now | p2.now | {p2.ev})]
    if rule is Rule.LOOP_CONCLUSION2 and p1.is_now_only and p2.is_eventuality:
        return [SnfClause.always({waits_for(p2.ev).negate()}, p1.now | {p2.ev})]
    return []


def check_event(log: ProofLog, event: ProofEvent) -> bool:
    """Whether the conclusion of ``event`` is an instance of its rule's schema
    applied to the recorded premises."""
    try:
        expected = _expected_conclusions(log, event)
    except AttributeError:
        # A required premise is missing
        return False
    return log.clause(event.conclusion) in expected
