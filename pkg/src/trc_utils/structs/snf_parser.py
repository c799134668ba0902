import re
from typing import Iterable

from trc_utils.structs.ltl_structs import RESERVED_PREFIX
from trc_utils.structs.snf_structs import Literal, SnfClause, literal_from_str
from trc_utils.structs.string_utils import remove_comments, split_top_level

_GLOBAL_RGX = re.compile(r"G\s*\((.*)\)")
_NEXT_RGX = re.compile(r"X(?:\s*\((.*)\)|\s+(~?\s*[A-Za-z_][A-Za-z0-9_]*))")
_EVENTUALITY_RGX = re.compile(r"F(?:\s*\(\s*(~?\s*[A-Za-z_][A-Za-z0-9_]*)\s*\)|\s+(~?\s*[A-Za-z_][A-Za-z0-9_]*))")


class SnfSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"Syntax error at line {line}: {message}")
        self.line = line


def _literals(text: str, line: int, allow_reserved: bool) -> list[Literal]:
    literals = []
    for part in split_top_level(text, sep="|", nesting="()"):
        if part == "false":
            continue
        try:
            literal = literal_from_str(part)
        except ValueError as e:
            raise SnfSyntaxError(str(e), line) from None
        if literal.name.startswith(RESERVED_PREFIX) and not allow_reserved:
            raise SnfSyntaxError(f"names starting with '{RESERVED_PREFIX}' are reserved: '{literal.name}'", line)
        literals.append(literal)
    return literals


def parse_snf_clause(text: str, line: int = 1, allow_reserved: bool = False) -> SnfClause:
    """Parse one clause: ``l1 | l2``, ``G(l1 | X(m1 | m2))`` or ``G(l1 | F l)``."""
    text = text.strip()
    match = _GLOBAL_RGX.fullmatch(text)
    if match is None:
        return SnfClause.initial(*_literals(text, line, allow_reserved))
    now: list[Literal] = []
    nxt: list[Literal] = []
    ev = None
    for part in split_top_level(match.group(1), sep="|", nesting="()"):
        next_match = _NEXT_RGX.fullmatch(part)
        ev_match = _EVENTUALITY_RGX.fullmatch(part)
        if next_match is not None:
            nxt.extend(_literals(next_match.group(1) or next_match.group(2), line, allow_reserved))
        elif ev_match is not None:
            if ev is not None:
                raise SnfSyntaxError("more than one eventuality literal", line)
            (ev,) = _literals(ev_match.group(1) or ev_match.group(2), line, allow_reserved)
        else:
            now.extend(_literals(part, line, allow_reserved))
    if ev is not None:
        if nxt:
            raise SnfSyntaxError("an eventuality clause has no next part", line)
        return SnfClause.eventuality(ev, now)
    return SnfClause.always(now, nxt)


def parse_snf(text: str, allow_reserved: bool = False) -> list[SnfClause]:
    """Parse one clause per line; ``#`` starts a comment."""
    clauses = []
    for number, line in enumerate(remove_comments(text).splitlines(), start=1):
        if line.strip():
            clauses.append(parse_snf_clause(line, number, allow_reserved))
    return clauses


def format_snf(clauses: Iterable[SnfClause]) -> str:
    return "".join(f"{clause}\n" for clause in clauses)
