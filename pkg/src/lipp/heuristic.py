"""Induced-path verification and the G-HLIPP warm-start heuristic."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Graph, eccentricities


@dataclass(frozen=True)
class PathSolution:
    sequence: tuple[int, ...]

    @property
    def cardinality(self) -> int:
        return len(self.sequence)


@dataclass
class HeuristicConfig:
    maxpaths: int = 5000
    time_limit: float = float("inf")
    seed: int = 0

    def __post_init__(self):
        if self.maxpaths < 1:
            raise ValueError("maxpaths must be >= 1")


def verify_induced_path(seq: Sequence[int], g: Graph) -> tuple[bool, str]:
    """Check that ``seq`` is a chordless simple path of ``g``; the string names the first failure."""
    if len(set(seq)) != len(seq):
        return False, "duplicate vertex"
    for v in seq:
        if not 0 <= v < g.n:
            return False, f"vertex {v} not in graph"
    for a, b in zip(seq, seq[1:]):
        if not g.has_edge(a, b):
            return False, f"missing edge {a}-{b}"
    for i in range(len(seq)):
        for j in range(i + 2, len(seq)):
            if g.has_edge(seq[i], seq[j]):
                return False, f"chord {seq[i]}-{seq[j]}"
    return True, ""


def maximal_induced_paths(g: Graph, source: int) -> Iterator[list[int]]:
    """Depth-first enumeration of tail-maximal induced paths starting at ``source``.

    A vertex extends the path when it is adjacent to the tail and to no earlier
    path vertex. Extensions are tried by ascending degree, then id.
    """
    order = [sorted(g.adj[v], key=lambda w: (g.degree(w), w)) for v in range(g.n)]
    path = [source]
    # blocked[w] counts path vertices adjacent to w (or w itself on the path)
    blocked = [0] * g.n
    blocked[source] += 1
    for w in g.adj[source]:
        blocked[w] += 1

    def candidates(tail: int) -> list[int]:
        # a neighbour of the tail is blocked once by the tail itself
        return [w for w in order[tail] if blocked[w] == 1]

    stack = [iter(candidates(source))]
    extended = [False]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            if not extended[-1]:
                yield list(path)
            stack.pop()
            extended.pop()
            v = path.pop()
            blocked[v] -= 1
            for w in g.adj[v]:
                blocked[w] -= 1
            continue
        extended[-1] = True
        path.append(nxt)
        blocked[nxt] += 1
        for w in g.adj[nxt]:
            blocked[w] += 1
        stack.append(iter(candidates(nxt)))
        extended.append(False)


def source_order(g: Graph) -> list[int]:
    ecc, _ = eccentricities(g)
    return sorted(range(g.n), key=lambda v: (-ecc[v], g.degree(v), v))


def ghlipp(g: Graph, cfg: HeuristicConfig | None = None) -> PathSolution:
    """Explore induced paths from every source vertex, keeping the longest.

    From each source the exploration stops after ``maxpaths`` consecutive
    maximal paths that do not beat the best path found from that source.
    """
    cfg = cfg or HeuristicConfig()
    if g.n == 0:
        raise ValueError("graph has no vertices")
    deadline = time.monotonic() + cfg.time_limit
    best: list[int] = [0]
    for src in source_order(g):
        local = 0
        stale = 0
        for path in maximal_induced_paths(g, src):
            if len(path) > local:
                local = len(path)
                stale = 0
                if local > len(best):
                    best = path
            else:
                stale += 1
                if stale >= cfg.maxpaths:
                    break
            if time.monotonic() > deadline:
                return PathSolution(tuple(best))
    return PathSolution(tuple(best))
