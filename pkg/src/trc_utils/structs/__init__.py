from .ltl_parser import LtlSyntaxError, parse, parse_any, parse_ltlp
from .ltl_structs import (
    FALSE,
    TRUE,
    And,
    AnnotatedFormula,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Occurrence,
    OccurrenceError,
    Op,
    Or,
    Polarity,
    Prop,
    Release,
    Until,
    conjunction,
    polarity_of,
    print_ltl,
    print_ltlp,
    simplify,
    simplify_annotated,
)
from .semilinear import (
    EMPTY,
    NATURALS,
    ZERO,
    SemilinearOverflowError,
    SemilinearSet,
    parse_semilinear,
    set_lcm_cap,
)
from .snf_parser import SnfSyntaxError, format_snf, parse_snf, parse_snf_clause
from .snf_structs import EMPTY_GLOBAL, EMPTY_INITIAL, ClauseKind, Literal, SnfClause, neg, pos

__all__ = [
    "And",
    "AnnotatedFormula",
    "ClauseKind",
    "EMPTY",
    "EMPTY_GLOBAL",
    "EMPTY_INITIAL",
    "FALSE",
    "Finally",
    "Formula",
    "Globally",
    "Implies",
    "Literal",
    "LtlSyntaxError",
    "NATURALS",
    "Next",
    "Not",
    "Occurrence",
    "OccurrenceError",
    "Op",
    "Or",
    "Polarity",
    "Prop",
    "Release",
    "SemilinearOverflowError",
    "SemilinearSet",
    "SnfClause",
    "SnfSyntaxError",
    "TRUE",
    "Until",
    "ZERO",
    "conjunction",
    "format_snf",
    "neg",
    "parse",
    "parse_any",
    "parse_ltlp",
    "parse_semilinear",
    "parse_snf",
    "parse_snf_clause",
    "polarity_of",
    "pos",
    "print_ltl",
    "print_ltlp",
    "set_lcm_cap",
    "simplify",
    "simplify_annotated",
]
