"""Sets of time points for the vertices of a core graph and for the clauses of a core."""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from trc_utils.cores.resolution_graph import ResolutionGraph, uc_snf
from trc_utils.cores.unary_nfa import parikh_images, to_unary_nfa
from trc_utils.settings import TrcConfig, default_config
from trc_utils.structs.ltl_structs import FALSE, TRUE, AnnotatedFormula, Op
from trc_utils.structs.semilinear import EMPTY, ZERO, SemilinearSet
from trc_utils.structs.snf_structs import Literal, SnfClause

logger = logging.getLogger(__name__)


def label_vertices(core_graph: ResolutionGraph, config: Optional[TrcConfig] = None) -> dict[int, SemilinearSet]:
    """Label every vertex with the numbers of time steps on its paths to the empty clause."""
    config = config if config is not None else default_config()
    images = parikh_images(to_unary_nfa(core_graph), config.parikh_method)
    images[core_graph.empty_vertex] = ZERO
    logger.debug("Labeled %d vertices", len(images))
    return images


def _literal_key(literal: Literal) -> tuple:
    return literal.name, not literal.positive


def _render_literal(literal: Literal, timepoints: SemilinearSet) -> str:
    return literal.name if literal.positive else f"~[{timepoints}]{literal.name}"


def _render_disjunction(literals, timepoints: SemilinearSet) -> list[str]:
    return [_render_literal(lit, timepoints) for lit in sorted(literals, key=_literal_key)]


def _literal_ltlp(literal: Literal, timepoints: SemilinearSet) -> AnnotatedFormula:
    atom = AnnotatedFormula(Op.PROP, (), literal.name)
    if literal.positive:
        return atom
    return AnnotatedFormula(Op.NOT, (atom,), None, (timepoints,))


def _disjunction_ltlp(parts: list[AnnotatedFormula], timepoints: SemilinearSet) -> AnnotatedFormula:
    if not parts:
        return AnnotatedFormula(FALSE.op)
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = AnnotatedFormula(Op.OR, (part, result), None, (timepoints, timepoints))
    return result


@dataclass(frozen=True)
class AnnotatedClause:
    """A clause with the set of time points at which it is needed.

    Now literals carry the set itself, next literals the set shifted by one
    and the eventuality literal the interval from the least element on.
    """

    clause: SnfClause
    timepoints: SemilinearSet

    @property
    def next_timepoints(self) -> SemilinearSet:
        return self.timepoints.shift(1)

    @property
    def eventuality_timepoints(self) -> SemilinearSet:
        return self.timepoints.tail_from_min()

    def __str__(self) -> str:
        now = _render_disjunction(self.clause.now, self.timepoints)
        if self.clause.is_initial:
            return " | ".join(now) or "false"
        parts = list(now)
        if self.clause.next:
            nxt = _render_disjunction(self.clause.next, self.next_timepoints)
            body = f" {nxt[0]}" if len(nxt) == 1 else f"({' | '.join(nxt)})"
            parts.append(f"X[{self.next_timepoints}]{body}")
        if self.clause.is_eventuality:
            ev = _render_literal(self.clause.ev, self.eventuality_timepoints)
            parts.append(f"F[{self.eventuality_timepoints}] {ev}")
        return f"G[{self.timepoints}]({' | '.join(parts) or 'false'})"

    def to_ltlp(self) -> AnnotatedFormula:
        """The clause as an LTLp formula evaluated at time point 0."""
        timepoints = self.timepoints
        now = [_literal_ltlp(lit, timepoints) for lit in sorted(self.clause.now, key=_literal_key)]
        if self.clause.is_initial:
            return _disjunction_ltlp(now, timepoints)
        parts = list(now)
        if self.clause.next:
            shifted = self.next_timepoints
            nxt = _disjunction_ltlp(
                [_literal_ltlp(lit, shifted) for lit in sorted(self.clause.next, key=_literal_key)], shifted
            )
            parts.append(AnnotatedFormula(Op.NEXT, (nxt,), None, (shifted,)))
        if self.clause.is_eventuality:
            tail = self.eventuality_timepoints
            ev = _literal_ltlp(self.clause.ev, tail)
            parts.append(AnnotatedFormula(Op.FINALLY, (ev,), None, (tail,)))
        return AnnotatedFormula(Op.GLOBALLY, (_disjunction_ltlp(parts, timepoints),), None, (timepoints,))

    def to_json(self) -> dict:
        data = self.clause.to_json()
        data["timepoints"] = str(self.timepoints)
        return data


def clause_with_timepoints(clause: SnfClause, timepoints: SemilinearSet) -> AnnotatedClause:
    if timepoints.is_empty:
        raise ValueError(f"Empty set of time points for {clause}")
    return AnnotatedClause(clause, timepoints)


def clause_timepoints(core_graph: ResolutionGraph, labels: dict[int, SemilinearSet], clause: SnfClause) -> SemilinearSet:
    """Union of the labels of all main partition vertices of ``core_graph`` labeled with ``clause``."""
    sets = [
        labels[v]
        for v in core_graph.vertices
        if core_graph.partition(v).is_main and core_graph.label(v) == clause and v in labels
    ]
    return EMPTY.union(*sets)


def uc_with_timepoints(
    core_graph: ResolutionGraph,
    clauses: Optional[Sequence[SnfClause]] = None,
    labels: Optional[dict[int, SemilinearSet]] = None,
    config: Optional[TrcConfig] = None,
) -> list[AnnotatedClause]:
    """One annotated clause per member of the core, in input order."""
    if labels is None:
        labels = label_vertices(core_graph, config)
    return [
        clause_with_timepoints(clause, clause_timepoints(core_graph, labels, clause))
        for clause in uc_snf(core_graph, clauses)
    ]


def conjoin(annotated: Sequence[AnnotatedClause]) -> AnnotatedFormula:
    """Right-nested conjunction of the clauses, every conjunct at ``{0}``."""
    if not annotated:
        return AnnotatedFormula(TRUE.op)
    result = annotated[-1].to_ltlp()
    for clause in reversed(annotated[:-1]):
        result = AnnotatedFormula(Op.AND, (clause.to_ltlp(), result), None, (ZERO, ZERO))
    return result
