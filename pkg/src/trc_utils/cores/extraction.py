"""End-to-end extraction of unsatisfiable cores with sets of time points."""

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from trc_utils.cores.resolution_graph import ResolutionGraph, backward_subgraph, build_graph, uc_snf
from trc_utils.cores.timepoints import AnnotatedClause, label_vertices, uc_with_timepoints
from trc_utils.settings import TrcConfig, default_config
from trc_utils.solving.solver import SolverResult, Verdict
from trc_utils.solving.temporal_resolution import TemporalResolutionSolver
from trc_utils.structs.ltl_parser import parse, parse_ltlp
from trc_utils.structs.ltl_structs import AnnotatedFormula, Formula, Occurrence, Op, simplify_annotated
from trc_utils.structs.ltl_structs import simplify as simplify_ltl
from trc_utils.structs.semilinear import SemilinearSet, parse_semilinear
from trc_utils.structs.snf_parser import parse_snf
from trc_utils.structs.snf_structs import SnfClause
from trc_utils.translation.snf_translation import annotate_ltl_uc, map_uc_to_ltl

logger = logging.getLogger(__name__)

Instance = Union[Formula, list[SnfClause]]


def load_instance(path: Union[str, Path]) -> Union[Formula, AnnotatedFormula, list[SnfClause]]:
    """Read an instance; the suffix selects the format (``.ltl``, ``.ltlp`` or ``.snf``)."""
    path = Path(path)
    with open(path, "r") as f:
        text = f.read()
    if path.suffix == ".snf":
        return parse_snf(text)
    if path.suffix == ".ltlp":
        return parse_ltlp(text)
    if path.suffix == ".ltl":
        return parse(text)
    raise ValueError(f"Unknown instance format: {path.name} (expected .ltl, .ltlp or .snf)")


# Core formulas as nested JSON objects


def _node_to_json(node: Union[Formula, AnnotatedFormula], occ: Occurrence) -> dict:
    data: dict = {"op": node.op.value, "occurrence": list(occ)}
    if node.name is not None:
        data["name"] = node.name
    if isinstance(node, AnnotatedFormula) and node.sets:
        data["sets"] = [str(s) for s in node.sets]
    if node.children:
        data["children"] = [_node_to_json(c, occ + (i,)) for i, c in enumerate(node.children)]
    return data


def _node_from_json(data: dict, annotated: bool) -> Union[Formula, AnnotatedFormula]:
    op = Op(data["op"])
    children = tuple(_node_from_json(c, annotated) for c in data.get("children", ()))
    name = data.get("name")
    if annotated:
        sets = tuple(parse_semilinear(s) for s in data.get("sets", ()))
        return AnnotatedFormula(op, children, name, sets)
    return Formula(op, children, name)


@dataclass
class UcReport:
    """Outcome of one extraction: the core in SNF (with sets of time points
    when computed), the core of the LTL input if there was one, and statistics."""

    verdict: Verdict
    uc_snf: list[SnfClause] = field(default_factory=list)
    timepoints: Optional[list[SemilinearSet]] = None
    uc_ltl: Optional[Union[Formula, AnnotatedFormula]] = None
    statistics: dict = field(default_factory=dict)

    @property
    def annotated(self) -> list[AnnotatedClause]:
        if self.timepoints is None:
            return []
        return [AnnotatedClause(c, s) for c, s in zip(self.uc_snf, self.timepoints)]

    def to_json(self) -> dict:
        clauses = []
        for i, clause in enumerate(self.uc_snf):
            data = clause.to_json()
            if self.timepoints is not None:
                data["timepoints"] = str(self.timepoints[i])
            clauses.append(data)
        return {
            "status": self.verdict.value,
            "uc_snf": clauses,
            "uc_ltl": _node_to_json(self.uc_ltl, ()) if self.uc_ltl is not None else None,
            "stats": self.statistics,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "UcReport":
        clauses = [SnfClause.from_json(c) for c in data["uc_snf"]]
        timepoints = None
        if clauses and all("timepoints" in c for c in data["uc_snf"]):
            timepoints = [parse_semilinear(c["timepoints"]) for c in data["uc_snf"]]
        uc_ltl = None
        if data.get("uc_ltl") is not None:
            uc_ltl = _node_from_json(data["uc_ltl"], annotated=timepoints is not None)
        return cls(Verdict(data["status"]), clauses, timepoints, uc_ltl, dict(data.get("stats", {})))

    @classmethod
    def loads(cls, text: str) -> "UcReport":
        return cls.from_json(json.loads(text))

    def to_text(self) -> str:
        lines = [self.verdict.value.upper()]
        if self.verdict is Verdict.UNSAT:
            lines.append("c core in SNF")
            if self.timepoints is not None:
                lines.extend(str(c) for c in self.annotated)
            else:
                lines.extend(str(c) for c in self.uc_snf)
            if self.uc_ltl is not None:
                lines.append("c core in LTL")
                lines.append(str(self.uc_ltl))
        return "\n".join(lines) + "\n"


@dataclass
class Extraction:
    """Everything computed on the way to a report, kept for verification and DOT output."""

    instance: Instance
    result: SolverResult
    report: UcReport
    graph: Optional[ResolutionGraph] = None
    core_graph: Optional[ResolutionGraph] = None
    labels: dict[int, SemilinearSet] = field(default_factory=dict)
    ltl_core: Optional[Formula] = None


def extract(
    instance: Instance,
    config: Optional[TrcConfig] = None,
    timepoints: bool = True,
    simplify: bool = False,
) -> Extraction:
    """Solve ``instance`` and, if it is unsatisfiable, extract its core.

    With ``timepoints`` every core clause gets its set of time points and
    the core of an LTL input is annotated with sets of time points.
    """
    config = config if config is not None else default_config()
    solver = TemporalResolutionSolver(config)
    if isinstance(instance, Formula):
        result = solver.solve_ltl(instance)
    else:
        result = solver.solve(instance)
    statistics = dict(result.statistics)
    statistics["input_clauses"] = len(result.clauses)
    if not result.is_unsat:
        return Extraction(instance, result, UcReport(Verdict.SAT, statistics=statistics))

    start_time = time.time()
    graph = build_graph(result.log, result.clauses)
    core_graph = backward_subgraph(graph)
    statistics["vertices"] = len(graph)
    statistics["core_vertices"] = len(core_graph)
    uc = uc_snf(core_graph, result.clauses)
    statistics["uc_size"] = len(uc)

    labels: dict[int, SemilinearSet] = {}
    sets = None
    if timepoints:
        label_time = time.time()
        labels = label_vertices(core_graph, config)
        annotated = uc_with_timepoints(core_graph, result.clauses, labels)
        sets = [a.timepoints for a in annotated]
        statistics["labeling_time"] = time.time() - label_time

    ltl_core = None
    uc_ltl = None
    if result.occurrences is not None:
        ltl_core = map_uc_to_ltl(uc, result.occurrences, instance)
        uc_ltl = ltl_core
        if timepoints:
            uc_ltl = annotate_ltl_uc(list(zip(uc, sets)), result.occurrences, ltl_core)
            if simplify:
                uc_ltl = simplify_annotated(uc_ltl)
        elif simplify:
            uc_ltl = simplify_ltl(ltl_core)
    statistics["extraction_time"] = time.time() - start_time
    logger.info("Core with %d of %d clauses, %d of %d vertices", len(uc), len(result.clauses), len(core_graph), len(graph))

    report = UcReport(Verdict.UNSAT, uc, sets, uc_ltl, statistics)
    return Extraction(instance, result, report, graph, core_graph, labels, ltl_core)


def extract_uc(
    instance: Instance, config: Optional[TrcConfig] = None, timepoints: bool = True, simplify: bool = False
) -> UcReport:
    return extract(instance, config, timepoints, simplify).report
