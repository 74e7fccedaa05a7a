"""Reading edge-list / DIMACS instances and generating the synthetic families."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph, collapse_edges

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class InstanceMeta:
    name: str
    n: int
    m: int
    source: str  # "file" or "generated"
    labels: list[str] = field(default_factory=list)
    dropped: int = 0


def parse_edge_list(text: str | bytes, name: str = "<text>") -> tuple[Graph, InstanceMeta]:
    """Parse a plain edge list or a DIMACS-like ``p edge n m`` file.

    With a ``p`` header, ``c`` lines are comments, edges may be prefixed by
    ``e`` and labels must be integers ``1..n`` (mapped to ``0..n-1``). Without
    a header each line is ``u v``; ``#`` and ``%`` start comments. Integer
    labels are ordered numerically, anything else by first appearance.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    dimacs_n = None
    for i, raw in enumerate(lines, 1):
        tok = raw.split()
        if tok and tok[0] == "p":
            if len(tok) < 3:
                raise ParseError("malformed header, expected 'p edge n m'", i)
            try:
                dimacs_n = int(tok[2])
            except ValueError:
                raise ParseError(f"bad vertex count {tok[2]!r}", i) from None
            break

    pairs: list[tuple[str, str]] = []
    singles: list[str] = []
    for i, raw in enumerate(lines, 1):
        tok = raw.split()
        if not tok or tok[0][0] in "#%":
            continue
        if tok[0] == "p":
            continue
        if dimacs_n is not None and tok[0] == "c":
            continue
        if tok[0] == "e" and len(tok) == 3:
            tok = tok[1:]
        if len(tok) == 1 and dimacs_n is None:
            singles.append(tok[0])
            continue
        if len(tok) != 2:
            if dimacs_n is None and tok[0] == "c":
                continue
            raise ParseError(f"expected two vertex labels, got {raw.strip()!r}", i)
        pairs.append((tok[0], tok[1]))

    if dimacs_n is not None:
        ids: list[tuple[int, int]] = []
        for u, v in pairs:
            try:
                a, b = int(u) - 1, int(v) - 1
            except ValueError:
                raise ParseError(f"non-integer label in DIMACS edge {u} {v}") from None
            if not (0 <= a < dimacs_n and 0 <= b < dimacs_n):
                raise ParseError(f"label out of range 1..{dimacs_n}: {u} {v}")
            ids.append((a, b))
        n = dimacs_n
        labels = [str(i + 1) for i in range(n)]
    else:
        seen: dict[str, None] = {}
        for u, v in pairs:
            seen.setdefault(u)
            seen.setdefault(v)
        for u in singles:
            seen.setdefault(u)
        labels = list(seen)
        if labels and all(_is_int(x) for x in labels):
            labels.sort(key=int)
        pos = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        ids = [(pos[u], pos[v]) for u, v in pairs]
    if n == 0:
        raise ParseError("instance has no vertices")

    edges, dropped = collapse_edges(ids)
    if dropped:
        log.warning("%s: dropped %d self-loop/duplicate edge(s)", name, dropped)
    g = Graph.from_edges(n, edges)
    return g, InstanceMeta(name, g.n, g.m, "file", labels, dropped)


def _is_int(x: str) -> bool:
    try:
        int(x)
    except ValueError:
        return False
    return True


def read_instance(path: str | Path) -> tuple[Graph, InstanceMeta]:
    path = Path(path)
    return parse_edge_list(path.read_bytes(), name=path.stem)


def write_edge_list(g: Graph) -> str:
    """DIMACS text; parsing it back gives the same ids."""
    out = [f"p edge {g.n} {g.m}"]
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(out) + "\n"


class SplitMix64:
    """Tiny portable PRNG so generated instances are reproducible outside Python."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        return self.next() % k


def generate_barabasi_albert(n: int, d: int, seed: int) -> Graph:
    """Preferential attachment with exactly ``(n - d) * d`` edges.

    Starts from ``d`` isolated seed vertices; the first new vertex links to all
    of them, every later vertex to ``d`` distinct targets drawn proportionally
    to degree.
    """
    if not 1 <= d < n:
        raise ValueError(f"need 1 <= d < n, got n={n}, d={d}")
    rng = SplitMix64(seed)
    edges: list[tuple[int, int]] = []
    repeated: list[int] = []
    targets = list(range(d))
    for v in range(d, n):
        for t in targets:
            edges.append((t, v))
        repeated.extend(targets)
        repeated.extend([v] * d)
        chosen: list[int] = []
        while len(chosen) < d:
            t = repeated[rng.below(len(repeated))]
            if t not in chosen:
                chosen.append(t)
        targets = chosen
    return Graph.from_edges(n, edges)


def generate_hypercube(k: int) -> Graph:
    if not 1 <= k <= 16:
        raise ValueError("hypercube dimension must be in 1..16")
    n = 1 << k
    return Graph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(k) if v < v ^ (1 << b)])


def generate_torus(n: int) -> Graph:
    """``n x n`` grid with wrap-around in both directions."""
    if n < 3:
        raise ValueError("torus side must be >= 3")
    edges = []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            edges.append((v, r * n + (c + 1) % n))
            edges.append((v, ((r + 1) % n) * n + c))
    return Graph.from_edges(n * n, edges)


def generated_meta(name: str, g: Graph) -> InstanceMeta:
    return InstanceMeta(name, g.n, g.m, "generated", [str(i) for i in range(g.n)])
