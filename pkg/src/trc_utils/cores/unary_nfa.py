"""Unary NFAs read off a reversed resolution graph and their per-state Parikh images.

A path of the NFA from the empty clause vertex to a vertex ``v`` corresponds
to a path from ``v`` to the empty clause in the graph; the number of symbols
``1`` it reads is the number of time steps on it.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from trc_utils.cores.resolution_graph import ResolutionGraph
from trc_utils.structs.semilinear import SemilinearSet

logger = logging.getLogger(__name__)


class ParikhBoundError(AssertionError):
    """Raised when a computed image breaks the period or threshold bound."""


@dataclass(frozen=True)
class UnaryNfa:
    """States are graph vertices; every state is a potential final state."""

    states: tuple[int, ...]
    initial: int
    initial_states: frozenset[int]
    epsilon: frozenset[tuple[int, int]]
    ones: frozenset[tuple[int, int]]

    @property
    def is_epsilon_free(self) -> bool:
        return not self.epsilon

    def successors(self, state: int) -> list[int]:
        return sorted(t for s, t in self.ones if s == state)

    def ones_matrix(self) -> np.ndarray:
        """``m[i, j]`` is True iff there is a 1-transition from state ``i`` to ``j`` (state positions)."""
        position = {s: i for i, s in enumerate(self.states)}
        m = np.zeros((len(self.states), len(self.states)), dtype=bool)
        for s, t in self.ones:
            m[position[s], position[t]] = True
        return m

    def initial_vector(self) -> np.ndarray:
        return np.array([s in self.initial_states for s in self.states], dtype=bool)


def to_unary_nfa(core_graph: ResolutionGraph) -> UnaryNfa:
    """Reverse the edges of ``core_graph``: time step 0 becomes epsilon, 1 the symbol ``1``."""
    if core_graph.empty_vertex is None:
        raise ValueError("The graph has no empty clause vertex")
    epsilon, ones = set(), set()
    for edge in core_graph.edges:
        (ones if edge.ts == 1 else epsilon).add((edge.target, edge.source))
    return UnaryNfa(
        tuple(core_graph.vertices),
        core_graph.empty_vertex,
        frozenset({core_graph.empty_vertex}),
        frozenset(epsilon),
        frozenset(ones),
    )


def _closures(states: Iterable[int], epsilon: Iterable[tuple[int, int]]) -> dict[int, frozenset[int]]:
    successors: dict[int, list[int]] = {}
    for s, t in epsilon:
        successors.setdefault(s, []).append(t)
    closures = {}
    for state in states:
        reached = {state}
        queue = deque([state])
        while queue:
            for t in successors.get(queue.popleft(), ()):
                if t not in reached:
                    reached.add(t)
                    queue.append(t)
        closures[state] = frozenset(reached)
    return closures


def epsilon_free(nfa: UnaryNfa) -> UnaryNfa:
    """Replace every ``eps* 1 eps*`` path by one 1-transition and start from the
    epsilon closure of the initial state. States are kept as they are."""
    if nfa.is_epsilon_free:
        return nfa
    closure = _closures(nfa.states, nfa.epsilon)
    ones = set()
    for state in nfa.states:
        for middle in closure[state]:
            for s, t in nfa.ones:
                if s == middle:
                    ones.update((state, end) for end in closure[t])
    return UnaryNfa(nfa.states, nfa.initial, closure[nfa.initial], frozenset(), frozenset(ones))


def _step(frontier: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    return (frontier.astype(np.int64) @ matrix) > 0


def _frontier_cycle(nfa: UnaryNfa, limit: Optional[int] = None) -> tuple[list[np.ndarray], Optional[int]]:
    """Frontiers 0, 1, ... until one repeats (or ``limit`` are collected), and
    the index the sequence loops back to (None when cut off by ``limit``)."""
    matrix = nfa.ones_matrix().astype(np.int64)
    seen: dict[bytes, int] = {}
    frontiers: list[np.ndarray] = []
    frontier = nfa.initial_vector()
    while frontier.tobytes() not in seen:
        if limit is not None and len(frontiers) == limit:
            return frontiers, None
        seen[frontier.tobytes()] = len(frontiers)
        frontiers.append(frontier)
        frontier = _step(frontier, matrix)
    return frontiers, seen[frontier.tobytes()]


def _short_lengths(nfa: UnaryNfa, bound: int) -> dict[int, list[int]]:
    """Per state, the lengths below ``bound`` of the words reaching it."""
    frontiers, start = _frontier_cycle(nfa, bound)
    rows = np.array(frontiers)
    lengths = {}
    for i, state in enumerate(nfa.states):
        hits = np.flatnonzero(rows[:, i]).tolist()
        if start is not None:
            period = len(frontiers) - start
            hits += [k for first in hits if first >= start for k in range(first + period, bound, period)]
        lengths[state] = sorted(hits)
    return lengths


def parikh_layered(nfa: UnaryNfa) -> dict[int, SemilinearSet]:
    """Iterate the reachable frontier until it repeats and read the images off
    the cycle of frontiers."""
    if not nfa.is_epsilon_free:
        raise ValueError("The NFA must be epsilon-free")
    frontiers, start = _frontier_cycle(nfa)
    period = len(frontiers) - start
    images = {}
    for i, state in enumerate(nfa.states):
        finite = tuple(k for k in range(start) if frontiers[k][i])
        progressions = tuple((k, period) for k in range(start, len(frontiers)) if frontiers[k][i])
        images[state] = SemilinearSet(finite, progressions)
    logger.debug("Frontier sequence with preperiod %d and period %d", start, period)
    return images


def _sccs(states: tuple[int, ...], successors: dict[int, list[int]]) -> list[list[int]]:
    # Iterative Tarjan
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in states:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child = work.pop()
            if child == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            children = successors.get(node, [])
            if child < len(children):
                work.append((node, child + 1))
                nxt = children[child]
                if nxt not in index:
                    work.append((nxt, 0))
                elif nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
                continue
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return components


def _period_and_phases(component: list[int], successors: dict[int, list[int]]) -> tuple[int, dict[int, int]]:
    members = set(component)
    depth = {component[0]: 0}
    queue = deque([component[0]])
    g = 0
    while queue:
        u = queue.popleft()
        for v in successors.get(u, []):
            if v not in members:
                continue
            if v not in depth:
                depth[v] = depth[u] + 1
                queue.append(v)
            else:
                g = math.gcd(g, depth[u] + 1 - depth[v])
    return g, {v: d % g for v, d in depth.items()}


def _product_reach(sources: Iterable[tuple[int, int]], successors: dict[int, list[int]], g: int) -> dict[int, set[int]]:
    reached = set(sources)
    queue = deque(reached)
    while queue:
        u, r = queue.popleft()
        for v in successors.get(u, []):
            pair = (v, (r + 1) % g)
            if pair not in reached:
                reached.add(pair)
                queue.append(pair)
    residues: dict[int, set[int]] = {}
    for v, r in reached:
        residues.setdefault(v, set()).add(r)
    return residues


def parikh_all_states(nfa: UnaryNfa) -> dict[int, SemilinearSet]:
    """Parikh images of all states in one pass.

    Lengths below ``3n^2 + n`` are enumerated explicitly. Beyond that, a path
    to a state passes through some nontrivial strongly connected component,
    and the lengths through a component of period ``g`` are eventually exactly
    the residues mod ``g`` found by two product searches over ``state x Z_g``.
    """
    if not nfa.is_epsilon_free:
        raise ValueError("The NFA must be epsilon-free")
    n = len(nfa.states)
    threshold = 3 * n * n + n
    successors: dict[int, list[int]] = {}
    for s, t in sorted(nfa.ones):
        successors.setdefault(s, []).append(t)

    finite = _short_lengths(nfa, threshold)
    progressions: dict[int, list[tuple[int, int]]] = {state: [] for state in nfa.states}

    for component in _sccs(nfa.states, successors):
        if len(component) == 1 and component[0] not in successors.get(component[0], []):
            continue
        g, phase = _period_and_phases(component, successors)
        entering = _product_reach(((s, 0) for s in nfa.initial_states), successors, g)
        entries = {(r - phase[u]) % g for u in component for r in entering.get(u, ())}
        if not entries:
            continue
        leaving = _product_reach(((v, phase[v]) for v in component), successors, g)
        for state, residues in leaving.items():
            for rho in {(d + e) % g for d in residues for e in entries}:
                offset = threshold + (rho - threshold) % g
                progressions[state].append((offset, g))

    images = {}
    for state in nfa.states:
        image = SemilinearSet(tuple(finite[state]), tuple(progressions[state]))
        _check_bounds(image, n)
        images[state] = image
    return images


def _check_bounds(image: SemilinearSet, n: int) -> None:
    if any(p > n for p in image.periods):
        raise ParikhBoundError(f"Period above {n} in {image}")
    if image.max_constant > 4 * n * n:
        raise ParikhBoundError(f"Threshold above {4 * n * n} in {image}")


def parikh_images(nfa: UnaryNfa, method: str = "multi-final") -> dict[int, SemilinearSet]:
    nfa = epsilon_free(nfa)
    if method == "layered":
        return parikh_layered(nfa)
    if method == "multi-final":
        return parikh_all_states(nfa)
    raise ValueError(f"Unknown Parikh method: {method}")
