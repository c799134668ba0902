"""Temporal resolution with breadth-first loop search.

The main partition is saturated with the propositional-style step rules,
augmented with waits-for propositions and then alternately searched for
loops (one fresh partition per loop search iteration, saturated with step-xx
only) and re-saturated with the loop search conclusions.
"""

import heapq
from collections import Counter
import logging
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from trc_utils.settings import TrcConfig
from trc_utils.solving.proof_log import (
    LOOP_SATURATION_RULES,
    MAIN,
    SATURATION_RULES,
    PartitionId,
    ProofEvent,
    ProofLog,
    Rule,
    waits_for,
)
from trc_utils.solving.solver import ClauseLimitExceeded, Solver, TimeLimitExceeded, Verdict
from trc_utils.structs.snf_structs import Literal, SnfClause

logger = logging.getLogger(__name__)


class _ClauseIndex:
    """Active clauses of a partition by (part, literal), with part 0 for the
    now part and 1 for the next part. Eventuality clauses are not indexed:
    they only subsume and are only subsumed by themselves."""

    def __init__(self) -> None:
        self.by_literal: dict[tuple[int, Literal], set[int]] = {}
        self.sizes: dict[int, int] = {}
        self.without_literals: set[int] = set()

    @staticmethod
    def _keys(clause: SnfClause) -> list[tuple[int, Literal]]:
        return [(0, lit) for lit in clause.now] + [(1, lit) for lit in clause.next]

    def add(self, clause_id: int, clause: SnfClause) -> None:
        if clause.is_eventuality:
            return
        keys = self._keys(clause)
        self.sizes[clause_id] = len(keys)
        if not keys:
            self.without_literals.add(clause_id)
        for key in keys:
            self.by_literal.setdefault(key, set()).add(clause_id)

    def remove(self, clause_id: int, clause: SnfClause) -> None:
        if self.sizes.pop(clause_id, None) is None:
            return
        self.without_literals.discard(clause_id)
        for key in self._keys(clause):
            self.by_literal[key].discard(clause_id)

    def subset_candidates(self, clause: SnfClause) -> set[int]:
        """Clauses whose literals all occur in ``clause`` (in the same part)."""
        hits: Counter[int] = Counter()
        for key in self._keys(clause):
            hits.update(self.by_literal.get(key, ()))
        return {i for i, count in hits.items() if count == self.sizes[i]} | self.without_literals

    def superset_candidates(self, clause: SnfClause) -> set[int]:
        """Clauses containing every literal of ``clause`` (in the same part)."""
        keys = self._keys(clause)
        if not keys:
            return set(self.sizes)
        sets = sorted((self.by_literal.get(key, set()) for key in keys), key=len)
        return set(sets[0]).intersection(*sets[1:])


class _Partition:
    def __init__(self, pid: PartitionId, rules: frozenset[Rule]):
        self.pid = pid
        self.rules = rules
        self.index: dict[SnfClause, int] = {}
        self.ids: list[int] = []
        self.active: set[int] = set()
        self.active_index = _ClauseIndex()
        self.processed: list[int] = []
        self.processed_at: dict[int, int] = {}
        # processed clauses by literal (now or next part), for resolution partners
        self.processed_by_literal: dict[Literal, list[int]] = {}
        self.queue: list[tuple] = []
        # (id of the init-c clause, id of the previous iteration's clause or None for the empty clause)
        self.generated: list[tuple[int, Optional[int]]] = []

    def active_ids(self) -> list[int]:
        return [i for i in self.ids if i in self.active]

    def mark_processed(self, clause_id: int, clause: SnfClause) -> None:
        self.processed_at[clause_id] = len(self.processed)
        self.processed.append(clause_id)
        if clause.is_eventuality:
            return
        for lit in clause.now | clause.next:
            self.processed_by_literal.setdefault(lit, []).append(clause_id)

    def partners(self, clause: SnfClause) -> list[int]:
        """Processed clauses with a literal complementary to one of ``clause``,
        in processing order."""
        found: set[int] = set()
        for lit in clause.now | clause.next:
            found.update(self.processed_by_literal.get(lit.negate(), ()))
        return sorted(found, key=self.processed_at.__getitem__)


@dataclass
class LoopIteration:
    """Outcome of closing one loop search iteration."""

    partition: PartitionId
    new_now_only: list[int]
    generated: list[tuple[int, Optional[int]]]
    found: bool
    sub_events: list[ProofEvent] = field(default_factory=list)


class TemporalResolutionSolver(Solver):
    """Saturation-based temporal resolution over SNF clauses."""

    def __init__(self, config: Optional[TrcConfig] = None):
        super().__init__(config)
        self._reset_run()

    def _reset_run(self) -> None:
        self.log = ProofLog()
        self.main = _Partition(MAIN, SATURATION_RULES)
        self._empty: Optional[int] = None
        self._deadline = float("inf")
        self._searches = 0
        self._precedence = {}
        if self.config.literal_precedence is not None:
            count = len(self.config.literal_precedence)
            self._precedence = {name: count - i for i, name in enumerate(self.config.literal_precedence)}

    # Literal ordering

    def _atom_key(self, name: str) -> tuple:
        if name in self._precedence:
            return (0, self._precedence[name])
        return (1, name)

    def _clause_key(self, clause: SnfClause) -> tuple:
        parts = [(0, lit) for lit in clause.now] + [(1, lit) for lit in clause.next]
        if clause.ev is not None:
            parts.append((2, clause.ev))
        keys = sorted(((part, self._atom_key(lit.name), lit.positive) for part, lit in parts), reverse=True)
        return tuple(keys)

    def _eligible(self, literal: Literal, literals: frozenset[Literal]) -> bool:
        """Whether ``literal`` may be resolved upon: always for unordered
        resolution, otherwise only if its atom is maximal in ``literals``."""
        if self.config.literal_precedence is None:
            return True
        key = self._atom_key(literal.name)
        return all(self._atom_key(other.name) <= key for other in literals)

    def _resolve(self, left: frozenset[Literal], right: frozenset[Literal]) -> Iterator[tuple[frozenset, frozenset]]:
        for literal in sorted(left):
            complement = literal.negate()
            if complement in right and self._eligible(literal, left) and self._eligible(complement, right):
                yield left - {literal}, right - {complement}

    # Clause bookkeeping

    def _check_time(self) -> None:
        if time.monotonic() > self._deadline:
            raise TimeLimitExceeded(f"Time limit of {self.config.time_limit}s exceeded")

    def _push(self, partition: _Partition, clause_id: int) -> None:
        if self.config.selection == "fifo":
            key = (clause_id,)
        else:
            clause = self.log.clause(clause_id)
            key = (clause.weight, self._clause_key(clause), clause_id)
        heapq.heappush(partition.queue, key)

    def _activate(self, partition: _Partition, clause_id: int) -> None:
        clause = self.log.clause(clause_id)
        for other in partition.active_index.superset_candidates(clause):
            other_clause = self.log.clause(other)
            if clause.subsumes(other_clause):
                partition.active.discard(other)
                partition.active_index.remove(other, other_clause)
        partition.active.add(clause_id)
        partition.active_index.add(clause_id, clause)
        self._push(partition, clause_id)

    def _subsumed(self, partition: _Partition, clause: SnfClause) -> bool:
        if clause.is_eventuality:
            return partition.index.get(clause) in partition.active
        candidates = partition.active_index.subset_candidates(clause)
        return any(self.log.clause(other).subsumes(clause) for other in candidates)

    def _add_start(self, clause: SnfClause) -> int:
        clause_id = self.log.add_start(clause)
        self.main.index.setdefault(clause, clause_id)
        self.main.ids.append(clause_id)
        if clause.is_empty and self._empty is None:
            self._empty = clause_id
        if not clause.is_tautology and not self._subsumed(self.main, clause):
            self._activate(self.main, clause_id)
        return clause_id

    def _add(
        self,
        partition: _Partition,
        clause: SnfClause,
        rule: Rule,
        premise1: Optional[int] = None,
        premise2: Optional[int] = None,
        keep_subsumed: bool = False,
    ) -> tuple[Optional[int], bool]:
        """Add a conclusion to ``partition``.

        Returns the id of the vertex the conclusion is attached to (None if
        it was discarded) and whether that vertex is new.
        """
        if clause.is_tautology:
            return None, False
        existing = partition.index.get(clause)
        if existing is not None:
            self.log.record(ProofEvent(rule, existing, premise1, premise2, new_vertex=False))
            return existing, False
        subsumed = self._subsumed(partition, clause)
        if subsumed and not keep_subsumed:
            return None, False
        clause_id = self.log.add_clause(clause, partition.pid)
        if len(self.log) > self.config.max_clauses:
            raise ClauseLimitExceeded(f"More than {self.config.max_clauses} clauses generated")
        self.log.record(ProofEvent(rule, clause_id, premise1, premise2))
        partition.index[clause] = clause_id
        partition.ids.append(clause_id)
        if not subsumed:
            self._activate(partition, clause_id)
        if partition is self.main and clause.is_empty and self._empty is None:
            self._empty = clause_id
        return clause_id, True

    # Saturation

    def _inferences(self, partition: _Partition, first: int, second: int) -> Iterator[tuple[Rule, int, int, SnfClause]]:
        rules = partition.rules
        for id1, id2 in ((first, second), (second, first)):
            c1, c2 = self.log.clause(id1), self.log.clause(id2)
            if Rule.INIT_II in rules and c1.is_initial and c2.is_initial and id1 < id2:
                for a, b in self._resolve(c1.now, c2.now):
                    yield Rule.INIT_II, id1, id2, SnfClause.initial(*(a | b))
            if Rule.INIT_IN in rules and c1.is_initial and c2.is_now_only:
                for a, b in self._resolve(c1.now, c2.now):
                    yield Rule.INIT_IN, id1, id2, SnfClause.initial(*(a | b))
            if Rule.STEP_NN in rules and c1.is_now_only and c2.is_now_only and id1 < id2:
                for a, b in self._resolve(c1.now, c2.now):
                    yield Rule.STEP_NN, id1, id2, SnfClause.always(a | b)
            if Rule.STEP_NX in rules and c1.is_now_only and c2.is_global and c2.next:
                for a, b in self._resolve(c1.now, c2.next):
                    yield Rule.STEP_NX, id1, id2, SnfClause.always(c2.now, a | b)
            if Rule.STEP_XX in rules and c1.is_global and c2.is_global and c1.next and c2.next and id1 < id2:
                for a, b in self._resolve(c1.next, c2.next):
                    yield Rule.STEP_XX, id1, id2, SnfClause.always(c1.now | c2.now, a | b)

    def saturate(self, partition: Optional[_Partition] = None) -> bool:
        """Given-clause saturation of ``partition`` (the main partition by
        default) with the rules it allows. Returns True as soon as the empty
        clause is in the main partition."""
        partition = partition if partition is not None else self.main
        if self._empty is not None:
            return True
        rounds = 0
        while partition.queue:
            self._check_time()
            given = heapq.heappop(partition.queue)[-1]
            if given not in partition.active:
                continue
            rounds += 1
            for other in partition.partners(self.log.clause(given)):
                if other not in partition.active:
                    continue
                for rule, premise1, premise2, conclusion in self._inferences(partition, given, other):
                    self._add(partition, conclusion, rule, premise1, premise2)
                    if self._empty is not None:
                        logger.debug("Empty clause derived by %s", rule.value)
                        return True
                if given not in partition.active:
                    break
            partition.mark_processed(given, self.log.clause(given))
        logger.debug("Partition %s saturated after %d given clauses, %d clauses in total", partition.pid, rounds, len(self.log))
        self._statistics["given_clauses"] = self._statistics.get("given_clauses", 0) + rounds
        return False

    def augment(self) -> None:
        """aug1 for every eventuality clause of the main partition, aug2 once per eventuality literal."""
        augmented: set[Literal] = set()
        for clause_id in list(self.main.ids):
            clause = self.log.clause(clause_id)
            if not clause.is_eventuality:
                continue
            wait = waits_for(clause.ev)
            self._add(self.main, SnfClause.always(clause.now | {clause.ev, wait}), Rule.AUG1, clause_id)
            if clause.ev not in augmented:
                augmented.add(clause.ev)
                self._add(self.main, SnfClause.always({wait.negate()}, {clause.ev, wait}), Rule.AUG2, clause_id)

    # Loop search

    def init_loop_iteration(self, ev_id: int, previous: Optional[list[int]], pid: PartitionId) -> _Partition:
        """Fill a fresh partition with copies of the main partition's global
        clauses and one init-c clause per previous result (the empty clause
        on the first iteration)."""
        loop = _Partition(pid, LOOP_SATURATION_RULES)
        for clause_id in self.main.active_ids():
            clause = self.log.clause(clause_id)
            if clause.is_global and clause.next:
                self._add(loop, clause, Rule.LOOP_IT_INIT_X, clause_id)
            elif clause.is_now_only:
                self._add(loop, SnfClause.always((), clause.now), Rule.LOOP_IT_INIT_N, clause_id)
        ev = self.log.clause(ev_id)
        for previous_id in previous if previous is not None else [None]:
            now = self.log.clause(previous_id).now if previous_id is not None else frozenset()
            conclusion = SnfClause.always((), now | {ev.ev})
            clause_id, _ = self._add(loop, conclusion, Rule.LOOP_IT_INIT_C, previous_id, ev_id, keep_subsumed=True)
            if clause_id is not None:
                loop.generated.append((clause_id, previous_id))
        return loop

    def loop_iteration_close(self, loop: _Partition) -> LoopIteration:
        """Check whether every init-c source is subsumed by a global clause
        without next part derived in this iteration."""
        new_now_only = [i for i in loop.active_ids() if self.log.clause(i).is_now_only]
        found = True
        sub_events = []
        for generated_id, previous_id in loop.generated:
            previous = self.log.clause(previous_id).now if previous_id is not None else frozenset()
            subsumer = next((i for i in new_now_only if self.log.clause(i).now <= previous), None)
            if subsumer is None:
                found = False
                continue
            event = ProofEvent(Rule.LOOP_IT_SUB, generated_id, subsumer, generated_id, new_vertex=False)
            self.log.record(event)
            sub_events.append(event)
        return LoopIteration(loop.pid, new_now_only, list(loop.generated), found, sub_events)

    def loop_search(self, ev_id: int) -> Optional[list[int]]:
        """Breadth-first loop search for an eventuality clause. Returns the
        loop (global clauses without next part) or None."""
        search = self._searches
        self._searches += 1
        previous: Optional[list[int]] = None
        iteration = 0
        while True:
            self._check_time()
            loop = self.init_loop_iteration(ev_id, previous, PartitionId(search, iteration))
            self.saturate(loop)
            closed = self.loop_iteration_close(loop)
            self._statistics["loop_iterations"] = self._statistics.get("loop_iterations", 0) + 1
            logger.debug(
                "Loop search %d for %s, iteration %d: %d clauses without next part, found=%s",
                search,
                self.log.clause(ev_id),
                iteration,
                len(closed.new_now_only),
                closed.found,
            )
            if closed.found:
                return closed.new_now_only
            if not closed.new_now_only:
                return None
            previous = closed.new_now_only
            iteration += 1

    def derive_loop_conclusions(self, ev_id: int, loop: list[int]) -> bool:
        """Add both loop conclusions per loop clause to the main partition.
        Returns True if a new clause was added."""
        ev = self.log.clause(ev_id)
        wait = waits_for(ev.ev)
        changed = False
        for clause_id in loop:
            now = self.log.clause(clause_id).now
            _, new1 = self._add(self.main, SnfClause.always(now | ev.now | {ev.ev}), Rule.LOOP_CONCLUSION1, clause_id, ev_id)
            _, new2 = self._add(self.main, SnfClause.always({wait.negate()}, now | {ev.ev}), Rule.LOOP_CONCLUSION2, clause_id, ev_id)
            changed = changed or new1 or new2
        return changed

    def _solve(self, clauses: list[SnfClause]) -> tuple[Verdict, ProofLog]:
        self._reset_run()
        self.reset_statistics()
        try:
            return self._run(clauses)
        finally:
            self._statistics["loop_searches"] = self._searches
            self._statistics.setdefault("loop_iterations", 0)
            self._statistics.setdefault("given_clauses", 0)

    def _run(self, clauses: list[SnfClause]) -> tuple[Verdict, ProofLog]:
        self._deadline = time.monotonic() + self.config.time_limit
        for clause in clauses:
            self._add_start(clause)
        if self._empty is not None or self.saturate():
            return Verdict.UNSAT, self.log
        self.augment()
        if self.saturate():
            return Verdict.UNSAT, self.log
        eventualities = [i for i in range(self.log.n_start) if self.log.clause(i).is_eventuality]
        changed = True
        while changed:
            changed = False
            for ev_id in eventualities:
                loop = self.loop_search(ev_id)
                if loop is None:
                    continue
                changed = self.derive_loop_conclusions(ev_id, loop) or changed
                if self.saturate():
                    return Verdict.UNSAT, self.log
        return Verdict.SAT, self.log
