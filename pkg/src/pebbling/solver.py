"""Exact root-solvability decisions.

Depth-first search over pebbling moves with memoization on
symmetry-canonical configurations. Every move shrinks the configuration
by one pebble, so the search graph is acyclic and a plain two-valued
memo is sound. Exactly two shortcuts are used, both of which are exact:

* a configuration whose distance potential sum(p(v) * 2^-d(v,r)) is
  below the target can never reach the root (moves never increase the
  potential);
* a vertex holding t * 2^d(v,r) pebbles alone suffices.

No dominance tables or other heuristics take part in the verdict, which
keeps the oracle auditable. Move ordering prefers moves toward the root;
it only affects how fast witnesses are found.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .configurations import Configuration, canonical_counts
from .errors import BadParameterError, GraphMismatchError, ResourceLimitError
from .graphs import Graph, distances_from, shortest_path

DEFAULT_MAX_NODES = 10**8

Move = tuple[int, int]


def default_max_nodes() -> int:
    env = os.environ.get("PEBBLE_MAX_NODES")
    return int(env) if env else DEFAULT_MAX_NODES


def default_max_seconds() -> float | None:
    env = os.environ.get("PEBBLE_MAX_SECONDS")
    return float(env) if env else None


@dataclass
class SearchLimits:
    max_nodes: int = field(default_factory=default_max_nodes)
    max_seconds: float | None = field(default_factory=default_max_seconds)

    def deadline(self) -> float | None:
        return None if self.max_seconds is None else time.monotonic() + self.max_seconds


@dataclass
class SolveStats:
    nodes: int = 0
    memo_hits: int = 0


@dataclass(frozen=True)
class SolveOutcome:
    solvable: bool
    witness: tuple[Move, ...] | None
    stats: SolveStats


def potential(g: Graph, p: Configuration) -> Fraction:
    """sum over vertices of p(v) * 2^-d(v, root), exactly."""
    if p.graph is not g:
        raise GraphMismatchError("configuration belongs to a different graph")
    dist = distances_from(g, g.root)
    return sum(
        (Fraction(c, 1 << dist[v]) for v, c in enumerate(p.counts) if c),
        start=Fraction(0),
    )


class Solver:
    """Reusable decision engine for one graph and one target count.

    The memo table persists across calls, so scanning many
    configurations of one graph amortizes the shared search space.
    Instances are single-process; parallel scans give each worker its
    own solver, which yields identical verdicts by determinism.
    """

    def __init__(self, graph: Graph, target: int = 1, limits: SearchLimits | None = None):
        if target < 1:
            raise BadParameterError("target pebble count must be at least 1")
        self.graph = graph
        self.target = target
        self.limits = limits or SearchLimits()
        dist = distances_from(graph, graph.root)
        self.dist = dist
        depth = max(dist)
        # integer-scaled potential: weight 2^(depth - d), target t * 2^depth
        self._pot = tuple(1 << (depth - d) for d in dist)
        self._pot_target = target << depth
        self.stack_threshold = tuple(target << d for d in dist)
        moves = []
        for u in range(graph.vertex_count):
            for v in graph.neighbors[u]:
                moves.append((u, v))
        moves.sort(key=lambda m: (0 if dist[m[1]] < dist[m[0]] else 1, dist[m[0]], m))
        self._moves = tuple(moves)
        self.memo: dict[tuple[int, ...], bool] = {}
        self.stats = SolveStats()
        self._deadline = self.limits.deadline()

    def restart_clock(self) -> None:
        """Re-anchor the wall-clock budget; call at operation entry."""
        self._deadline = self.limits.deadline()

    def check_deadline(self) -> None:
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise ResourceLimitError(f"search exceeded {self.limits.max_seconds} seconds")

    # -- decision without witness -------------------------------------

    def decide(self, counts: tuple[int, ...]) -> bool:
        stats = self.stats
        stats.nodes += 1
        if stats.nodes > self.limits.max_nodes:
            raise ResourceLimitError(f"search exceeded {self.limits.max_nodes} nodes")
        if self._deadline is not None and not stats.nodes % 4096:
            self.check_deadline()
        thr = self.stack_threshold
        pot = 0
        pw = self._pot
        for v, c in enumerate(counts):
            if c:
                if c >= thr[v]:
                    return True
                pot += c * pw[v]
        if pot < self._pot_target:
            return False
        key = canonical_counts(self.graph, counts)
        cached = self.memo.get(key)
        if cached is not None:
            stats.memo_hits += 1
            return cached
        result = False
        for u, v in self._moves:
            if counts[u] >= 2:
                child = list(counts)
                child[u] -= 2
                child[v] += 1
                if self.decide(tuple(child)):
                    result = True
                    break
        self.memo[key] = result
        return result

    # -- witness construction ------------------------------------------

    def _stack_witness(self, counts: tuple[int, ...], v: int) -> list[Move]:
        path = shortest_path(self.graph, v, self.graph.root)
        moves: list[Move] = []
        carry = counts[v]
        for a, b in zip(path, path[1:]):
            k = carry // 2
            moves.extend([(a, b)] * k)
            carry = k
        return moves

    def _witness(self, counts: tuple[int, ...]) -> list[Move] | None:
        stats = self.stats
        stats.nodes += 1
        if stats.nodes > self.limits.max_nodes:
            raise ResourceLimitError(f"search exceeded {self.limits.max_nodes} nodes")
        if self._deadline is not None and not stats.nodes % 4096:
            self.check_deadline()
        if counts[self.graph.root] >= self.target:
            return []
        thr = self.stack_threshold
        pot = 0
        pw = self._pot
        for v, c in enumerate(counts):
            if c:
                if c >= thr[v]:
                    return self._stack_witness(counts, v)
                pot += c * pw[v]
        if pot < self._pot_target:
            return None
        key = canonical_counts(self.graph, counts)
        if self.memo.get(key) is False:
            stats.memo_hits += 1
            return None
        for u, v in self._moves:
            if counts[u] >= 2:
                child = list(counts)
                child[u] -= 2
                child[v] += 1
                tail = self._witness(tuple(child))
                if tail is not None:
                    tail.insert(0, (u, v))
                    return tail
        self.memo[key] = False
        return None

    def solve(self, p: Configuration, want_witness: bool = False) -> SolveOutcome:
        if p.graph is not self.graph:
            raise GraphMismatchError("configuration belongs to a different graph")
        nodes0, hits0 = self.stats.nodes, self.stats.memo_hits
        if want_witness:
            moves = self._witness(p.counts)
            solvable = moves is not None
            witness = tuple(moves) if moves is not None else None
        else:
            solvable = self.decide(p.counts)
            witness = None
        stats = SolveStats(self.stats.nodes - nodes0, self.stats.memo_hits - hits0)
        return SolveOutcome(solvable, witness, stats)


def shared_solver(g: Graph, target: int = 1, limits: SearchLimits | None = None) -> Solver:
    """Per-graph cached solver so repeated scans reuse one memo table."""
    limits = limits or SearchLimits()
    key = ("solver", target, limits.max_nodes, limits.max_seconds)
    cache = g._cache
    if key not in cache:
        cache[key] = Solver(g, target, limits)
    return cache[key]


def is_solvable(
    g: Graph,
    p: Configuration,
    t: int = 1,
    want_witness: bool = False,
    limits: SearchLimits | None = None,
) -> SolveOutcome:
    """Decide whether some move sequence puts at least t pebbles on the root."""
    solver = shared_solver(g, t, limits)
    solver.restart_clock()
    return solver.solve(p, want_witness=want_witness)
