"""Executable checks of an extraction, run by ``trc uc --verify`` and the property tests."""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from trc_utils.cores.extraction import Extraction
from trc_utils.cores.timepoints import conjoin
from trc_utils.cores.unary_nfa import epsilon_free, to_unary_nfa
from trc_utils.settings import TrcConfig, default_config
from trc_utils.solving.proof_log import check_event
from trc_utils.solving.temporal_resolution import TemporalResolutionSolver
from trc_utils.structs.ltl_structs import AnnotatedFormula
from trc_utils.structs.semilinear import ZERO
from trc_utils.validation.generators import sample_words
from trc_utils.validation.lasso import PeriodCapExceeded, eval_ltl, eval_ltlp
from trc_utils.validation.parikh_oracle import parikh_agrees

logger = logging.getLogger(__name__)

# Largest core graph cross-checked against brute-force Parikh images
BRUTEFORCE_MAX_STATES = 60


@dataclass
class VerificationReport:
    violations: dict[str, list[str]] = field(default_factory=dict)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def add(self, check: str, problems: list[str]) -> None:
        self.violations.setdefault(check, []).extend(problems)

    @property
    def output(self) -> str:
        lines = []
        for check, problems in self.violations.items():
            lines.append(f"{check}: {'ok' if not problems else f'{len(problems)} violation(s)'}")
            lines.extend(f"  {p}" for p in problems[:10])
        lines.extend(f"skipped: {s}" for s in self.skipped)
        return "\n".join(lines)


def check_core_unsat(extraction: Extraction, config: TrcConfig) -> list[str]:
    result = TemporalResolutionSolver(config).solve(extraction.report.uc_snf)
    return [] if result.is_unsat else ["the core in SNF is satisfiable"]


def check_events(extraction: Extraction) -> list[str]:
    log = extraction.result.log
    return [f"event does not match its rule: {e}" for e in log.events if not check_event(log, e)]


def check_initial_labels(extraction: Extraction) -> list[str]:
    graph, labels = extraction.core_graph, extraction.labels
    return [
        f"initial clause {graph.label(v)} labeled {labels[v]}"
        for v in graph.vertices
        if graph.label(v).is_initial and not labels[v].equals(ZERO)
    ]


def check_edge_labels(extraction: Extraction) -> list[str]:
    """The label of a premise contains the label of its conclusion shifted by the edge's time step."""
    labels = extraction.labels
    problems = []
    for edge in extraction.core_graph.edges:
        shifted = labels[edge.target].shift(edge.ts)
        if not shifted.issubset(labels[edge.source]):
            problems.append(
                f"edge {edge.source}->{edge.target} ({edge.rule.value}, ts={edge.ts}): "
                f"{shifted} is not a subset of {labels[edge.source]}"
            )
    return problems


def check_nonempty_labels(extraction: Extraction) -> list[str]:
    labels = extraction.labels
    return [f"vertex {v} has an empty label" for v in extraction.core_graph.vertices if labels[v].is_empty]


def check_parikh_images(extraction: Extraction) -> list[str]:
    nfa = epsilon_free(to_unary_nfa(extraction.core_graph))
    n = len(nfa.states)
    return parikh_agrees(extraction.labels, nfa, 4 * n * n + 2 * n)


def _falsified(formula, words, evaluate, period_cap: Optional[int] = None) -> list[str]:
    problems = []
    for word in words:
        if period_cap is None:
            holds = evaluate(word, formula)
        else:
            holds = evaluate(word, formula, period_cap)
        if holds:
            problems.append(f"satisfied by {word}")
    return problems


def verify_extraction(extraction: Extraction, config: Optional[TrcConfig] = None) -> VerificationReport:
    """Run every check on an unsatisfiable extraction with sets of time points."""
    config = config if config is not None else default_config()
    report = VerificationReport()
    uc = extraction.report
    report.add("core unsatisfiable", check_core_unsat(extraction, config))
    report.add("events", check_events(extraction))
    if uc.timepoints is None:
        report.skipped.append("time point checks (no sets of time points)")
        return report

    report.add("initial clauses at {0}", check_initial_labels(extraction))
    report.add("time-shifted inclusion along edges", check_edge_labels(extraction))
    report.add("nonempty labels", check_nonempty_labels(extraction))
    if len(extraction.core_graph) <= BRUTEFORCE_MAX_STATES:
        report.add("brute-force Parikh images", check_parikh_images(extraction))
    else:
        report.skipped.append(f"brute-force Parikh images ({len(extraction.core_graph)} vertices)")

    rng = np.random.default_rng(config.seed)
    theta = conjoin(uc.annotated)
    words = sample_words(rng, theta.props(), config.verify_words, config.word_max_prefix, config.word_max_loop)
    try:
        report.add("annotated SNF core falsified", _falsified(theta, words, eval_ltlp, config.eval_period_cap))
    except PeriodCapExceeded as e:
        logger.warning("Skipping falsification of the annotated SNF core: %s", e)
        report.skipped.append(f"annotated SNF core ({e})")

    if extraction.ltl_core is not None:
        words = sample_words(
            rng, extraction.ltl_core.props(), config.verify_words, config.word_max_prefix, config.word_max_loop
        )
        report.add("LTL core falsified", _falsified(extraction.ltl_core, words, eval_ltl))
        if isinstance(uc.uc_ltl, AnnotatedFormula):
            try:
                report.add("annotated LTL core falsified", _falsified(uc.uc_ltl, words, eval_ltlp, config.eval_period_cap))
            except PeriodCapExceeded as e:
                logger.warning("Skipping falsification of the annotated LTL core: %s", e)
                report.skipped.append(f"annotated LTL core ({e})")
    logger.info("Verification %s", "passed" if report.ok else "failed")
    return report
