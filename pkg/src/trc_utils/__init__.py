# Solving
from .solving import (
    ClauseLimitExceeded,
    ProofLog,
    ResourceCapExceeded,
    Rule,
    SolverResult,
    TemporalResolutionSolver,
    TimeLimitExceeded,
    Verdict,
)

# Cores
from .cores import (
    AnnotatedClause,
    Extraction,
    ResolutionGraph,
    UcReport,
    backward_subgraph,
    build_graph,
    extract,
    extract_uc,
    label_vertices,
    load_instance,
    to_dot,
    uc_snf,
    uc_with_timepoints,
)

# Structs
from .structs import (
    AnnotatedFormula,
    Formula,
    Literal,
    LtlSyntaxError,
    SemilinearSet,
    SnfClause,
    SnfSyntaxError,
    parse,
    parse_ltlp,
    parse_semilinear,
    parse_snf,
)
from .translation import annotate_ltl_uc, map_uc_to_ltl, translate

# Validation
from .validation import LassoWord, eval_ltl, eval_ltlp, parse_word, verify_extraction

from .settings import TrcConfig, default_config

__all__ = [
    "AnnotatedClause",
    "AnnotatedFormula",
    "ClauseLimitExceeded",
    "Extraction",
    "Formula",
    "LassoWord",
    "Literal",
    "LtlSyntaxError",
    "ProofLog",
    "ResolutionGraph",
    "ResourceCapExceeded",
    "Rule",
    "SemilinearSet",
    "SnfClause",
    "SnfSyntaxError",
    "SolverResult",
    "TemporalResolutionSolver",
    "TimeLimitExceeded",
    "TrcConfig",
    "UcReport",
    "Verdict",
    "annotate_ltl_uc",
    "backward_subgraph",
    "build_graph",
    "default_config",
    "eval_ltl",
    "eval_ltlp",
    "extract",
    "extract_uc",
    "label_vertices",
    "load_instance",
    "map_uc_to_ltl",
    "parse",
    "parse_ltlp",
    "parse_semilinear",
    "parse_snf",
    "parse_word",
    "to_dot",
    "translate",
    "uc_snf",
    "uc_with_timepoints",
    "verify_extraction",
]
