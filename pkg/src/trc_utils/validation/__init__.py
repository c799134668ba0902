from .generators import PROFILES, phltl, random_annotation, random_formula, sample_instances, sample_words
from .invariants import VerificationReport, verify_extraction
from .lasso import LassoWord, PeriodCapExceeded, WordSyntaxError, eval_ltl, eval_ltlp, parse_word
from .parikh_oracle import parikh_agrees, parikh_bruteforce

__all__ = [
    "LassoWord",
    "PROFILES",
    "PeriodCapExceeded",
    "VerificationReport",
    "WordSyntaxError",
    "eval_ltl",
    "eval_ltlp",
    "parikh_agrees",
    "parikh_bruteforce",
    "parse_word",
    "phltl",
    "random_annotation",
    "random_formula",
    "sample_instances",
    "sample_words",
    "verify_extraction",
]
