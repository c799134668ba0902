"""General interface for an SNF satisfiability solver."""

import abc
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Union

from trc_utils.settings import TrcConfig, default_config
from trc_utils.solving.proof_log import ProofLog
from trc_utils.structs.ltl_structs import Formula
from trc_utils.structs.snf_parser import parse_snf
from trc_utils.structs.snf_structs import SnfClause
from trc_utils.translation.snf_translation import OccurrenceMap, translate

logger = logging.getLogger(__name__)


class Verdict(Enum):
    SAT = "sat"
    UNSAT = "unsat"


@dataclass
class SolverResult:
    verdict: Verdict
    log: ProofLog
    clauses: list[SnfClause]
    statistics: dict = field(default_factory=dict)
    occurrences: Optional[OccurrenceMap] = None

    @property
    def is_unsat(self) -> bool:
        return self.verdict is Verdict.UNSAT


class Solver:
    """An abstract solver."""

    def __init__(self, config: Optional[TrcConfig] = None):
        self.config = config if config is not None else default_config()
        self._statistics = {}

    def solve(self, clauses: Iterable[SnfClause]) -> SolverResult:
        start_time = time.time()
        clauses = list(dict.fromkeys(clauses))
        verdict, log = self._solve(clauses)
        self._statistics["solve_time"] = time.time() - start_time
        self._statistics["clauses"] = len(log)
        self._statistics["events"] = len(log.events)
        logger.info("%s after %.3fs with %d clauses", verdict.value.upper(), self._statistics["solve_time"], len(log))
        return SolverResult(verdict, log, clauses, dict(self._statistics))

    def solve_ltl(self, f: Formula) -> SolverResult:
        """Translate ``f`` to SNF and solve; the result carries the occurrence map."""
        clauses, occurrences = translate(f)
        result = self.solve(clauses)
        result.occurrences = occurrences
        return result

    def solve_from_str(self, snf_str: str) -> SolverResult:
        return self.solve(parse_snf(snf_str))

    def solve_from_file(self, snf_file: Union[str, Path]) -> SolverResult:
        with open(snf_file, "r") as f:
            return self.solve_from_str(f.read())

    @abc.abstractmethod
    def _solve(self, clauses: list[SnfClause]) -> tuple[Verdict, ProofLog]:
        raise NotImplementedError("Override me!")

    def reset_statistics(self):
        """Reset the internal statistics dictionary."""
        self._statistics = {}

    def get_statistics(self):
        """Get the internal statistics dictionary."""
        return self._statistics


class ResourceCapExceeded(Exception):
    """Exception raised when a run exceeds one of its resource caps."""

    pass


class ClauseLimitExceeded(ResourceCapExceeded):
    """Exception raised when a run generates more clauses than allowed."""

    pass


class TimeLimitExceeded(ResourceCapExceeded):
    """Exception raised when a run times out."""

    pass
