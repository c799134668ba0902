"""Recursive-descent parser for the ASCII LTL grammar and its annotated (LTLp) variant.

Precedence from high to low: unary ``~ X F G``; ``U R``; ``&``; ``|``; ``->``.
Binary operators group to the right.
"""

import re
from dataclasses import dataclass
from typing import Optional, Union

from trc_utils.structs.ltl_structs import (
    KEYWORDS,
    OPERATOR_TOKENS,
    RESERVED_PREFIX,
    AnnotatedFormula,
    Formula,
    Op,
)
from trc_utils.structs.semilinear import SemilinearSet, parse_semilinear
from trc_utils.structs.string_utils import line_and_column, remove_comments, split_top_level, until_closing_bracket

_TOKEN_RGX = re.compile(r"->|[~&|()\[]|[A-Za-z_][A-Za-z0-9_]*")


class LtlSyntaxError(ValueError):
    """Syntax error with a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"Syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    text: str
    offset: int
    sets: Optional[tuple[SemilinearSet, ...]] = None


class _Parser:
    def __init__(self, text: str, annotated: bool, allow_reserved: bool):
        self.text = text
        self.annotated = annotated
        self.allow_reserved = allow_reserved
        self.tokens = self._tokenize()
        self.pos = 0

    def error(self, message: str, offset: int) -> LtlSyntaxError:
        return LtlSyntaxError(message, *line_and_column(self.text, offset))

    def _tokenize(self) -> list[_Token]:
        tokens: list[_Token] = []
        offset = 0
        text = self.text
        while True:
            while offset < len(text) and text[offset].isspace():
                offset += 1
            if offset >= len(text):
                break
            match = _TOKEN_RGX.match(text, offset)
            if match is None:
                raise self.error(f"unknown token '{text[offset]}'", offset)
            if match.group() == "[":
                if not self.annotated:
                    raise self.error("sets of time points are only allowed in annotated input", offset)
                try:
                    inner, _ = until_closing_bracket(text[offset:])
                except ValueError:
                    raise self.error("unclosed '['", offset) from None
                try:
                    sets = tuple(parse_semilinear(part) for part in split_top_level(inner))
                except ValueError as e:
                    raise self.error(str(e), offset) from None
                tokens.append(_Token("[", offset, sets))
                offset += len(inner) + 2
                continue
            tokens.append(_Token(match.group(), offset))
            offset = match.end()
        tokens.append(_Token("", len(text)))
        return tokens

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.advance()
        if token.text != text:
            found = token.text or "end of input"
            raise self.error(f"expected '{text}', found '{found}'", token.offset)
        return token

    def operator_sets(self, op: Op, token: _Token) -> tuple[SemilinearSet, ...]:
        if not self.annotated:
            return ()
        sets_token = self.peek()
        if sets_token.sets is None:
            raise self.error(f"operator '{op.value}' needs {op.arity} set(s) of time points", token.offset)
        self.advance()
        if len(sets_token.sets) != op.arity:
            raise self.error(
                f"operator '{op.value}' needs {op.arity} set(s), got {len(sets_token.sets)}", sets_token.offset
            )
        return sets_token.sets

    def node(self, op: Op, children: tuple = (), name: Optional[str] = None, sets: tuple = ()):
        if self.annotated:
            return AnnotatedFormula(op, children, name, sets)
        return Formula(op, children, name)

    def parse(self):
        result = self.parse_binary(0)
        token = self.peek()
        if token.text:
            raise self.error(f"unexpected '{token.text}'", token.offset)
        return result

    _LEVELS = (("->",), ("|",), ("&",), ("U", "R"))

    def parse_binary(self, level: int):
        if level == len(self._LEVELS):
            return self.parse_unary()
        left = self.parse_binary(level + 1)
        token = self.peek()
        if token.text in self._LEVELS[level]:
            self.advance()
            op = OPERATOR_TOKENS[token.text]
            sets = self.operator_sets(op, token)
            right = self.parse_binary(level)
            return self.node(op, (left, right), sets=sets)
        return left

    def parse_unary(self):
        token = self.peek()
        if token.text in ("~", "X", "F", "G"):
            self.advance()
            op = OPERATOR_TOKENS[token.text]
            sets = self.operator_sets(op, token)
            return self.node(op, (self.parse_unary(),), sets=sets)
        return self.parse_atom()

    def parse_atom(self):
        token = self.advance()
        if token.text == "(":
            inner = self.parse_binary(0)
            self.expect(")")
            return inner
        if token.text == "true":
            return self.node(Op.TRUE)
        if token.text == "false":
            return self.node(Op.FALSE)
        if token.text and (token.text[0].isalpha() or token.text[0] == "_") and token.text not in KEYWORDS:
            if token.text.startswith(RESERVED_PREFIX) and not self.allow_reserved:
                raise self.error(f"names starting with '{RESERVED_PREFIX}' are reserved: '{token.text}'", token.offset)
            return self.node(Op.PROP, name=token.text)
        found = token.text or "end of input"
        raise self.error(f"expected a formula, found '{found}'", token.offset)


def parse(text: str, allow_reserved: bool = False) -> Formula:
    """Parse an LTL formula; ``#`` starts a comment."""
    return _Parser(remove_comments(text), annotated=False, allow_reserved=allow_reserved).parse()


def parse_ltlp(text: str, allow_reserved: bool = False) -> AnnotatedFormula:
    """Parse an LTLp formula: every operator is followed by ``[S]`` or ``[S,S']``."""
    return _Parser(remove_comments(text), annotated=True, allow_reserved=allow_reserved).parse()


def parse_any(text: str) -> Union[Formula, AnnotatedFormula]:
    """Parse annotated input if it contains sets of time points, plain LTL otherwise."""
    stripped = remove_comments(text)
    return parse_ltlp(stripped) if "[" in stripped else parse(stripped)
