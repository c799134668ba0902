from .extraction import Extraction, UcReport, extract, extract_uc, load_instance
from .resolution_graph import (
    RULE_META,
    Edge,
    ResolutionGraph,
    RuleMeta,
    SatisfiableInstanceError,
    backward_subgraph,
    build_graph,
    to_dot,
    uc_snf,
)
from .timepoints import (
    AnnotatedClause,
    clause_timepoints,
    clause_with_timepoints,
    conjoin,
    label_vertices,
    uc_with_timepoints,
)
from .unary_nfa import (
    ParikhBoundError,
    UnaryNfa,
    epsilon_free,
    parikh_all_states,
    parikh_images,
    parikh_layered,
    to_unary_nfa,
)

__all__ = [
    "Extraction",
    "UcReport",
    "extract",
    "extract_uc",
    "load_instance",
    "AnnotatedClause",
    "backward_subgraph",
    "build_graph",
    "clause_timepoints",
    "clause_with_timepoints",
    "conjoin",
    "Edge",
    "epsilon_free",
    "label_vertices",
    "ParikhBoundError",
    "parikh_all_states",
    "parikh_images",
    "parikh_layered",
    "ResolutionGraph",
    "RuleMeta",
    "RULE_META",
    "SatisfiableInstanceError",
    "to_dot",
    "to_unary_nfa",
    "uc_snf",
    "uc_with_timepoints",
    "UnaryNfa",
]
