"""Clauses in separated normal form (SNF)."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional

from trc_utils.structs.ltl_structs import IDENT_RGX


@dataclass(frozen=True, order=True)
class Literal:
    name: str
    positive: bool = True

    def __post_init__(self) -> None:
        if not self.name or IDENT_RGX.fullmatch(self.name) is None:
            raise ValueError(f"Invalid proposition name: {self.name!r}")

    def negate(self) -> Literal:
        return Literal(self.name, not self.positive)

    def __neg__(self) -> Literal:
        return self.negate()

    def __str__(self) -> str:
        return self.name if self.positive else f"~{self.name}"

    def __repr__(self) -> str:
        return str(self)


def pos(name: str) -> Literal:
    return Literal(name, True)


def neg(name: str) -> Literal:
    return Literal(name, False)


class ClauseKind(Enum):
    INITIAL = "initial"
    GLOBAL = "global"
    EVENTUALITY = "eventuality"


def _sorted(literals: Iterable[Literal]) -> str:
    return " | ".join(str(lit) for lit in sorted(literals, key=lambda lit: (lit.name, not lit.positive)))


@dataclass(frozen=True, repr=False)
class SnfClause:
    """An initial clause ``P``, a global clause ``G(P | X(Q))`` or an
    eventuality clause ``G(P | F l)``.

    ``now`` is P, ``next`` is Q (global clauses only) and ``ev`` is l
    (eventuality clauses only). A global clause with an empty next part is
    stored with ``next`` empty, which is the same clause as ``G(P | X false)``.
    """

    kind: ClauseKind
    now: frozenset[Literal] = field(default_factory=frozenset)
    next: frozenset[Literal] = field(default_factory=frozenset)
    ev: Optional[Literal] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "now", frozenset(self.now))
        object.__setattr__(self, "next", frozenset(self.next))
        if self.kind is not ClauseKind.GLOBAL and self.next:
            raise ValueError(f"Only global clauses have a next part: {self.kind.value}")
        if (self.kind is ClauseKind.EVENTUALITY) != (self.ev is not None):
            raise ValueError("Exactly the eventuality clauses carry an eventuality literal")

    @classmethod
    def initial(cls, *literals: Literal) -> SnfClause:
        return cls(ClauseKind.INITIAL, frozenset(literals))

    @classmethod
    def always(cls, now: Iterable[Literal] = (), next: Iterable[Literal] = ()) -> SnfClause:
        return cls(ClauseKind.GLOBAL, frozenset(now), frozenset(next))

    @classmethod
    def eventuality(cls, ev: Literal, now: Iterable[Literal] = ()) -> SnfClause:
        return cls(ClauseKind.EVENTUALITY, frozenset(now), ev=ev)

    @property
    def is_empty(self) -> bool:
        return self.kind is not ClauseKind.EVENTUALITY and not self.now and not self.next

    @property
    def is_initial(self) -> bool:
        return self.kind is ClauseKind.INITIAL

    @property
    def is_global(self) -> bool:
        return self.kind is ClauseKind.GLOBAL

    @property
    def is_eventuality(self) -> bool:
        return self.kind is ClauseKind.EVENTUALITY

    @property
    def is_now_only(self) -> bool:
        """A global clause with an empty next part."""
        return self.kind is ClauseKind.GLOBAL and not self.next

    @property
    def is_tautology(self) -> bool:
        return any(lit.negate() in self.now for lit in self.now) or any(
            lit.negate() in self.next for lit in self.next
        )

    @property
    def literals(self) -> frozenset[Literal]:
        extra = {self.ev} if self.ev is not None else set()
        return self.now | self.next | extra

    @property
    def props(self) -> frozenset[str]:
        return frozenset(lit.name for lit in self.literals)

    def subsumes(self, other: SnfClause) -> bool:
        """Literal-set inclusion within the same clause kind. A global clause
        without next part also subsumes initial clauses that contain its literals."""
        if self.is_now_only and other.kind is ClauseKind.INITIAL:
            return self.now <= other.now
        if self.kind is not other.kind or self.kind is ClauseKind.EVENTUALITY:
            return self == other
        return self.now <= other.now and self.next <= other.next

    @property
    def weight(self) -> int:
        return len(self.now) + len(self.next) + (self.ev is not None)

    @cached_property
    def _str(self) -> str:
        if self.kind is ClauseKind.INITIAL:
            return _sorted(self.now) or "false"
        parts = [_sorted(self.now)] if self.now else []
        if self.kind is ClauseKind.GLOBAL and self.next:
            parts.append(f"X({_sorted(self.next)})")
        if self.kind is ClauseKind.EVENTUALITY:
            parts.append(f"F {self.ev}")
        return f"G({' | '.join(parts) or 'false'})"

    def __str__(self) -> str:
        return self._str

    def __repr__(self) -> str:
        return f"SnfClause({self._str})"

    def to_json(self) -> dict:
        data = {
            "kind": self.kind.value,
            "now": [str(lit) for lit in sorted(self.now, key=lambda lit: (lit.name, not lit.positive))],
            "next": [str(lit) for lit in sorted(self.next, key=lambda lit: (lit.name, not lit.positive))],
        }
        if self.ev is not None:
            data["ev"] = str(self.ev)
        return data

    @classmethod
    def from_json(cls, data: dict) -> SnfClause:
        now = [literal_from_str(s) for s in data["now"]]
        nxt = [literal_from_str(s) for s in data["next"]]
        ev = literal_from_str(data["ev"]) if "ev" in data else None
        return cls(ClauseKind(data["kind"]), frozenset(now), frozenset(nxt), ev)


def literal_from_str(text: str) -> Literal:
    text = text.strip()
    if text.startswith("~"):
        return Literal(text[1:].strip(), False)
    return Literal(text, True)


EMPTY_INITIAL = SnfClause.initial()
EMPTY_GLOBAL = SnfClause.always()
