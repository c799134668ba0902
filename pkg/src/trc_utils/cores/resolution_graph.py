"""Resolution graph of a solver run and unsatisfiable cores in SNF."""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from trc_utils.solving.proof_log import MalformedLogError, PartitionId, ProofLog, Rule
from trc_utils.structs.snf_structs import SnfClause

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RuleMeta:
    """Edges (with their time steps) and vertex creation of one production rule.

    Partition codes: ``M`` main, ``L`` current loop search iteration, ``L'``
    previous iteration of the same loop search, ``ML`` same partition as the
    conclusion.
    """

    edge1: bool
    ts1: int
    edge2: bool
    ts2: int
    creates_vertex: bool
    partition1: Optional[str] = None
    partition2: Optional[str] = None
    conclusion_partition: str = "M"


RULE_META: dict[Rule, RuleMeta] = {
    Rule.INIT_II: RuleMeta(True, 0, True, 0, True, "M", "M", "M"),
    Rule.INIT_IN: RuleMeta(True, 0, True, 0, True, "M", "M", "M"),
    Rule.STEP_NN: RuleMeta(True, 0, True, 0, True, "M", "M", "M"),
    Rule.STEP_NX: RuleMeta(True, 1, True, 0, True, "M", "M", "M"),
    Rule.STEP_XX: RuleMeta(True, 0, True, 0, True, "ML", "ML", "ML"),
    Rule.AUG1: RuleMeta(True, 0, False, 0, True, "M", None, "M"),
    Rule.AUG2: RuleMeta(False, 0, False, 0, True, "M", None, "M"),
    Rule.LOOP_IT_INIT_X: RuleMeta(True, 0, False, 0, True, "M", None, "L"),
    Rule.LOOP_IT_INIT_N: RuleMeta(True, 1, False, 0, True, "M", None, "L"),
    Rule.LOOP_IT_INIT_C: RuleMeta(False, 0, False, 0, True, "L'", "M", "L"),
    Rule.LOOP_IT_SUB: RuleMeta(True, 1, False, 0, False, "ML", "ML", "L"),
    Rule.LOOP_CONCLUSION1: RuleMeta(True, 0, True, 0, True, "L", "M", "M"),
    Rule.LOOP_CONCLUSION2: RuleMeta(True, 1, False, 0, True, "L", "M", "M"),
}


class SatisfiableInstanceError(ValueError):
    """Raised when a core is requested for a run that did not derive the empty clause."""


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    ts: int
    rule: Rule


@dataclass
class ResolutionGraph:
    """Vertices are clause ids of the proof log; edges run from premise to conclusion."""

    log: ProofLog
    vertices: list[int]
    edges: list[Edge]
    empty_vertex: Optional[int] = None
    _incoming: dict[int, list[Edge]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._incoming = {v: [] for v in self.vertices}
        for edge in self.edges:
            self._incoming[edge.target].append(edge)

    def label(self, vertex: int) -> SnfClause:
        return self.log.clause(vertex)

    def partition(self, vertex: int) -> PartitionId:
        return self.log.partition(vertex)

    def incoming(self, vertex: int) -> list[Edge]:
        return self._incoming.get(vertex, [])

    def __contains__(self, vertex: int) -> bool:
        return vertex in self._incoming

    def __len__(self) -> int:
        return len(self.vertices)

    def subgraph(self, vertices: Iterable[int]) -> "ResolutionGraph":
        keep = set(vertices)
        return ResolutionGraph(
            self.log,
            [v for v in self.vertices if v in keep],
            [e for e in self.edges if e.source in keep and e.target in keep],
            self.empty_vertex if self.empty_vertex in keep else None,
        )


def _partition_matches(code: Optional[str], premise: PartitionId, conclusion: PartitionId) -> bool:
    if code == "M":
        return premise.is_main
    if code == "ML":
        return premise == conclusion
    if code == "L":
        return not premise.is_main
    if code == "L'":
        return premise.search == conclusion.search and premise.iteration == conclusion.iteration - 1
    return True


def build_graph(log: ProofLog, clauses: Optional[Sequence[SnfClause]] = None) -> ResolutionGraph:
    """Build the resolution graph from a completed run, validating the log
    against the edge and vertex columns of every rule."""
    if clauses is not None and list(clauses) != log.starting_clauses():
        raise MalformedLogError("The starting clauses of the log differ from the given clauses")
    created = set(range(log.n_start))
    edges: dict[tuple[int, int, int], Edge] = {}
    for event in log.events:
        meta = RULE_META[event.rule]
        conclusion_part = log.partition(event.conclusion)
        if event.new_vertex:
            if not meta.creates_vertex:
                raise MalformedLogError(f"Rule {event.rule.value} does not create vertices: {event}")
            if event.conclusion in created:
                raise MalformedLogError(f"Vertex {event.conclusion} created twice: {event}")
            created.add(event.conclusion)
        elif event.conclusion not in created:
            raise MalformedLogError(f"Event refers to a vertex that does not exist yet: {event}")
        if meta.conclusion_partition == "M" and not conclusion_part.is_main:
            raise MalformedLogError(f"Conclusion of {event.rule.value} must be in the main partition: {event}")
        if meta.conclusion_partition != "M" and meta.conclusion_partition != "ML" and conclusion_part.is_main:
            raise MalformedLogError(f"Conclusion of {event.rule.value} must be in a loop partition: {event}")
        premises = (
            (event.premise1, meta.edge1, meta.ts1, meta.partition1),
            (event.premise2, meta.edge2, meta.ts2, meta.partition2),
        )
        for premise, has_edge, ts, code in premises:
            if premise is None:
                if has_edge:
                    raise MalformedLogError(f"Rule {event.rule.value} needs its premises: {event}")
                continue
            if premise not in created:
                raise MalformedLogError(f"Premise {premise} does not precede its event: {event}")
            if not _partition_matches(code, log.partition(premise), conclusion_part):
                raise MalformedLogError(f"Premise {premise} is in the wrong partition for {event.rule.value}")
            if has_edge:
                edges.setdefault((premise, event.conclusion, ts), Edge(premise, event.conclusion, ts, event.rule))
    if len(created) != len(log):
        missing = sorted(set(range(len(log))) - created)
        raise MalformedLogError(f"Clauses without a creating event: {missing}")
    graph = ResolutionGraph(log, list(range(len(log))), list(edges.values()), log.empty_clause_id())
    logger.debug("Resolution graph with %d vertices and %d edges", len(graph), len(graph.edges))
    return graph


def backward_subgraph(graph: ResolutionGraph) -> ResolutionGraph:
    """The smallest subgraph containing the empty clause vertex and everything
    backward reachable from it."""
    if graph.empty_vertex is None:
        raise SatisfiableInstanceError("No empty clause in the main partition")
    reached = {graph.empty_vertex}
    queue = deque([graph.empty_vertex])
    while queue:
        vertex = queue.popleft()
        for edge in graph.incoming(vertex):
            if edge.source not in reached:
                reached.add(edge.source)
                queue.append(edge.source)
    return graph.subgraph(reached)


def uc_snf(core_graph: ResolutionGraph, clauses: Optional[Sequence[SnfClause]] = None) -> list[SnfClause]:
    """Starting clauses with a main-partition vertex in ``core_graph``, in input order."""
    starting = core_graph.log.starting_clauses()
    in_core = {starting[v] for v in core_graph.vertices if v < len(starting)}
    candidates = starting if clauses is None else clauses
    return [c for c in dict.fromkeys(candidates) if c in in_core]


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: ResolutionGraph, highlight: Optional[ResolutionGraph] = None) -> str:
    """DOT rendering: one cluster per partition, time-step edges dotted red,
    vertices and edges of ``highlight`` drawn bold blue."""
    core = set(highlight.vertices) if highlight is not None else set()
    core_edges = {(e.source, e.target, e.ts) for e in highlight.edges} if highlight is not None else set()
    clusters: dict[PartitionId, list[int]] = {}
    for v in graph.vertices:
        clusters.setdefault(graph.partition(v), []).append(v)
    lines = ["digraph resolution {", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for pid in sorted(clusters):
        name = str(pid).replace(".", "_")
        lines.append(f'  subgraph cluster_{name} {{')
        lines.append(f'    label="{pid}";')
        for v in clusters[pid]:
            style = ', color=blue, style="bold,dashed"' if v in core else ""
            lines.append(f'    v{v} [label="{_dot_escape(str(graph.label(v)))} ({pid})"{style}];')
        lines.append("  }")
    for edge in graph.edges:
        attrs = [f'label="{edge.rule.value}"', f"ts={edge.ts}"]
        if edge.ts == 1:
            attrs += ["color=red", "style=dotted"]
        if (edge.source, edge.target, edge.ts) in core_edges:
            attrs.append("penwidth=2")
        lines.append(f"  v{edge.source} -> v{edge.target} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
