"""Brute-force Parikh images, used to cross-check the semilinear ones."""

import numpy as np

from trc_utils.cores.unary_nfa import UnaryNfa


def parikh_bruteforce(nfa: UnaryNfa, bound: int) -> dict[int, np.ndarray]:
    """``rows[s][k]`` is True iff some path reads exactly ``k`` symbols from an
    initial state to ``s``, for ``k`` in ``0..bound``."""
    if bound < 1:
        raise ValueError(f"Bound must be at least 1, got {bound}")
    if not nfa.is_epsilon_free:
        raise ValueError("The NFA must be epsilon-free")
    successors: dict[int, set[int]] = {}
    for s, t in nfa.ones:
        successors.setdefault(s, set()).add(t)
    rows = {s: np.zeros(bound + 1, dtype=bool) for s in nfa.states}
    frontier = set(nfa.initial_states)
    for k in range(bound + 1):
        for s in frontier:
            rows[s][k] = True
        frontier = {t for s in frontier for t in successors.get(s, ())}
    return rows


def parikh_agrees(images: dict, nfa: UnaryNfa, bound: int) -> list[str]:
    """Disagreements between ``images`` and brute force up to ``bound``."""
    rows = parikh_bruteforce(nfa, bound)
    problems = []
    for state, row in rows.items():
        expected = images[state].characteristic(bound + 1)
        mismatch = np.flatnonzero(expected != row)
        if mismatch.size:
            problems.append(f"state {state}: image {images[state]} differs at k={int(mismatch[0])}")
    return problems
