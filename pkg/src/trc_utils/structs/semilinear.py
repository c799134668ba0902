"""Semilinear subsets of the naturals: finite offsets plus arithmetic progressions.

Values are immutable and always stored in canonical form, so two sets denote
the same subset of N iff their fields are equal. The textual notation is
``{0,3} u 5N+4`` (``pN+o``; ``pN`` for o = 0; ``N+o`` for p = 1; ``N`` for both).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Optional

import numpy as np

DEFAULT_LCM_CAP = 1_000_000

_lcm_cap = DEFAULT_LCM_CAP


class SemilinearOverflowError(ArithmeticError):
    """Raised when the lcm of the periods of a set exceeds the cap."""


def set_lcm_cap(cap: int) -> None:
    """Set the largest period lcm canonicalization will expand."""
    global _lcm_cap
    if cap < 1:
        raise ValueError(f"lcm cap must be positive, got {cap}")
    _lcm_cap = cap


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _lcm_of(periods: Iterable[int]) -> int:
    lcm = reduce(math.lcm, periods, 1)
    if lcm > _lcm_cap:
        raise SemilinearOverflowError(f"lcm of periods {lcm} exceeds cap {_lcm_cap}")
    return lcm


def _bits(finite: Iterable[int], progressions: Iterable[tuple[int, int]], length: int) -> np.ndarray:
    bits = np.zeros(length, dtype=bool)
    for k in finite:
        if k < length:
            bits[k] = True
    for offset, period in progressions:
        bits[offset::period] = True
    return bits


def _canonical(
    finite: Iterable[int], progressions: Iterable[tuple[int, int]]
) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    finite = sorted(set(finite))
    progressions = sorted(set(progressions), key=lambda op: (op[1], op[0]))
    if any(k < 0 for k in finite):
        raise ValueError(f"Negative element in {finite}")
    for offset, period in progressions:
        if offset < 0 or period < 1:
            raise ValueError(f"Invalid progression {period}N+{offset}")
    if not progressions:
        return tuple(finite), ()

    lcm = _lcm_of(p for _, p in progressions)
    max_constant = max(finite + [o for o, _ in progressions])
    bits = _bits(finite, progressions, max_constant + 2 * lcm + 1)

    # past every constant the bits repeat with the lcm; the minimal period divides it
    tail = bits[max_constant + 1 :]
    period = next((p for p in _divisors(lcm) if np.array_equal(tail[:-p], tail[p:])), lcm)
    start = max_constant + 1
    while start > 0 and bits[start - 1] == bits[start - 1 + period]:
        start -= 1

    window = range(start, start + period)
    residues = [r for r in window if bits[r]]
    chosen: list[tuple[int, int, frozenset[int]]] = []
    covered: set[int] = set()
    for d in _divisors(period):
        for r in residues:
            if r in covered:
                continue
            first = start + (r - start) % d
            members = frozenset(range(first, start + period, d))
            if not all(bits[m] for m in members):
                continue
            offset = first
            while offset - d >= 0 and bits[offset - d]:
                offset -= d
            chosen.append((offset, d, members))
            covered |= members

    # drop progressions whose window residues are covered by the others
    kept = list(chosen)
    for entry in reversed(chosen):
        others = set().union(*(m for o, d, m in kept if (o, d, m) != entry))
        if entry[2] <= others:
            kept.remove(entry)

    prog = sorted(((o, d) for o, d, _ in kept), key=lambda op: (op[1], op[0]))
    rest = tuple(
        k for k in range(start) if bits[k] and not any(k >= o and (k - o) % d == 0 for o, d in prog)
    )
    return rest, tuple(prog)


@dataclass(frozen=True, repr=False)
class SemilinearSet:
    """A finite union of linear sets ``{p*n + o | n in N}`` and single naturals.

    The constructor canonicalizes: ``finite`` holds the elements not covered by
    any progression, and ``progressions`` holds ``(offset, period)`` pairs sorted
    by ``(period, offset)`` none of which is redundant.
    """

    finite: tuple[int, ...] = ()
    progressions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        finite, progressions = _canonical(self.finite, self.progressions)
        object.__setattr__(self, "finite", finite)
        object.__setattr__(self, "progressions", progressions)

    @classmethod
    def of(cls, *elements: int) -> SemilinearSet:
        return cls(tuple(elements))

    @classmethod
    def progression(cls, period: int, offset: int = 0) -> SemilinearSet:
        return cls((), ((offset, period),))

    @cached_property
    def _str(self) -> str:
        parts = []
        if self.finite or not self.progressions:
            parts.append("{" + ",".join(map(str, self.finite)) + "}")
        parts.extend(_format_progression(o, p) for o, p in self.progressions)
        return " u ".join(parts)

    def __str__(self) -> str:
        return self._str

    def __repr__(self) -> str:
        return f"SemilinearSet({self._str})"

    def __contains__(self, k: int) -> bool:
        return self.contains(k)

    @property
    def is_empty(self) -> bool:
        return not self.finite and not self.progressions

    @property
    def is_finite(self) -> bool:
        return not self.progressions

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.progressions)

    @property
    def max_constant(self) -> int:
        """Largest finite element or progression offset (0 for the empty set)."""
        return max(self.finite + tuple(o for o, _ in self.progressions), default=0)

    @property
    def decision_bound(self) -> int:
        """Agreement on all k up to this bound decides equality."""
        return self.max_constant + 2 * _lcm_of(self.periods)

    def min(self) -> int:
        if self.is_empty:
            raise ValueError("Empty set has no minimum")
        return min(self.finite + tuple(o for o, _ in self.progressions))

    def contains(self, k: int) -> bool:
        if k < 0:
            return False
        if k in self.finite:
            return True
        return any(k >= o and (k - o) % p == 0 for o, p in self.progressions)

    def characteristic(self, length: int) -> np.ndarray:
        """Boolean membership vector for 0..length-1."""
        return _bits(self.finite, self.progressions, length)

    def union(self, *others: SemilinearSet) -> SemilinearSet:
        finite = list(self.finite)
        progressions = list(self.progressions)
        for other in others:
            finite.extend(other.finite)
            progressions.extend(other.progressions)
        return SemilinearSet(tuple(finite), tuple(progressions))

    def __or__(self, other: SemilinearSet) -> SemilinearSet:
        return self.union(other)

    def shift(self, d: int) -> SemilinearSet:
        if d < 0:
            raise ValueError(f"Shift must be non-negative, got {d}")
        return SemilinearSet(
            tuple(k + d for k in self.finite),
            tuple((o + d, p) for o, p in self.progressions),
        )

    def tail_from_min(self) -> SemilinearSet:
        """The interval [min, oo) as the progression N+min."""
        return SemilinearSet.progression(1, self.min())

    def equals(self, other: SemilinearSet) -> bool:
        bound = max(self.decision_bound, other.decision_bound) + 1
        return bool(np.array_equal(self.characteristic(bound), other.characteristic(bound)))

    def issubset(self, other: SemilinearSet) -> bool:
        bound = max(self.decision_bound, other.decision_bound) + 1
        return not bool(np.any(self.characteristic(bound) & ~other.characteristic(bound)))

    def __le__(self, other: SemilinearSet) -> bool:
        return self.issubset(other)


def _format_progression(offset: int, period: int) -> str:
    base = "N" if period == 1 else f"{period}N"
    return base if offset == 0 else f"{base}+{offset}"


EMPTY = SemilinearSet()
NATURALS = SemilinearSet.progression(1)
ZERO = SemilinearSet.of(0)

_FINITE_RGX = re.compile(r"\{\s*(\d+(?:\s*,\s*\d+)*)?\s*\}")
_PROGRESSION_RGX = re.compile(r"(\d*)N(?:\s*\+\s*(\d+))?")


def parse_semilinear(text: str) -> SemilinearSet:
    """Parse the ``{k1,k2} u pN+o`` notation."""
    finite: list[int] = []
    progressions: list[tuple[int, int]] = []
    for part in re.split(r"\s+u\s+", text.strip()):
        finite_match = _FINITE_RGX.fullmatch(part)
        if finite_match is not None:
            if finite_match.group(1):
                finite.extend(int(k) for k in finite_match.group(1).split(","))
            continue
        prog_match = _PROGRESSION_RGX.fullmatch(part)
        if prog_match is None:
            raise ValueError(f"Syntax error: cannot read set '{part}' in '{text}'")
        period = int(prog_match.group(1)) if prog_match.group(1) else 1
        if period == 0:
            raise ValueError(f"Syntax error: period 0 in '{text}'")
        offset: Optional[str] = prog_match.group(2)
        progressions.append((int(offset) if offset else 0, period))
    return SemilinearSet(tuple(finite), tuple(progressions))
