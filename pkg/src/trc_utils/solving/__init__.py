from .proof_log import (
    MAIN,
    MalformedLogError,
    PartitionId,
    ProofEvent,
    ProofLog,
    Rule,
    check_event,
    waits_for,
)
from .solver import (
    ClauseLimitExceeded,
    ResourceCapExceeded,
    Solver,
    SolverResult,
    TimeLimitExceeded,
    Verdict,
)
from .temporal_resolution import LoopIteration, TemporalResolutionSolver

__all__ = [
    "LoopIteration",
    "TemporalResolutionSolver",
    "check_event",
    "ClauseLimitExceeded",
    "MAIN",
    "MalformedLogError",
    "PartitionId",
    "ProofEvent",
    "ProofLog",
    "ResourceCapExceeded",
    "Rule",
    "Solver",
    "SolverResult",
    "TimeLimitExceeded",
    "Verdict",
    "waits_for",
]
