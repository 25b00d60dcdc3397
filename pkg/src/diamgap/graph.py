"""Graph container and the shortest-path primitives built on it.

Distances are ``float64`` numpy arrays indexed by vertex id; a vertex that
cannot be reached carries ``UNREACHABLE`` (``+inf``), which propagates
through addition and compares above every finite distance.  Integer edge
weights therefore give exact sums well past any desk-scale graph.
"""
from __future__ import annotations

import enum
import math
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import FormatError, InputError

UNREACHABLE = math.inf

#: Slack for threshold comparisons on non-integer sums.
TOL = 1e-9

# The all-pairs bitset sweep holds n*n bits twice over.
_BITSET_MAX_N = 40_000


def leq(a: float, b: float) -> bool:
    """``a <= b`` up to a relative tolerance of ``TOL``; inf never fits."""
    if a == UNREACHABLE:
        return False
    return a <= b + TOL * max(1.0, abs(b))


class Direction(enum.Enum):
    OUT = "out"
    IN = "in"


class Graph:
    """Directed or undirected graph with strictly positive edge weights.

    Edges are stored once each, as parallel arrays ``src``, ``dst`` and
    ``weight``; undirected edges are traversed both ways.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[float]] = (), directed: bool = True):
        rows = [tuple(e) for e in edges]
        src = np.array([int(r[0]) for r in rows], dtype=np.int64)
        dst = np.array([int(r[1]) for r in rows], dtype=np.int64)
        w = np.array([float(r[2]) if len(r) > 2 else 1.0 for r in rows], dtype=np.float64)
        self._init(n, src, dst, w, directed)

    @classmethod
    def from_arrays(cls, n, src, dst, weight=None, directed: bool = True) -> Graph:
        g = cls.__new__(cls)
        src = np.ascontiguousarray(src, dtype=np.int64)
        dst = np.ascontiguousarray(dst, dtype=np.int64)
        if weight is None:
            weight = np.ones(src.size)
        g._init(n, src, dst, np.ascontiguousarray(weight, dtype=np.float64), directed)
        return g

    def _init(self, n, src, dst, w, directed):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        if not (src.shape == dst.shape == w.shape) or src.ndim != 1:
            raise InputError("edge arrays must be 1-D and of equal length")
        if src.size:
            lo = min(src.min(), dst.min())
            hi = max(src.max(), dst.max())
            if lo < 0 or hi >= n:
                raise InputError(f"edge endpoint outside [0, {n})")
            if not (np.all(np.isfinite(w)) and np.all(w > 0)):
                raise InputError("edge weights must be finite and strictly positive")
        self.n = int(n)
        self.directed = bool(directed)
        self.src = src
        self.dst = dst
        self.weight = w
        for arr in (src, dst, w):
            arr.setflags(write=False)

    # ---- basic facts -----------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.src.size)

    @cached_property
    def w_min(self) -> float:
        return float(self.weight.min()) if self.m else 1.0

    @cached_property
    def w_max(self) -> float:
        return float(self.weight.max()) if self.m else 1.0

    @cached_property
    def unit(self) -> bool:
        """True when every edge has the same weight (BFS applies)."""
        return self.m == 0 or self.w_min == self.w_max

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.n}, m={self.m})"

    # ---- adjacency -------------------------------------------------------

    def _build_csr(self, tails, heads, w):
        order = np.argsort(tails, kind="stable")
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(tails, minlength=self.n), out=indptr[1:])
        return indptr, np.ascontiguousarray(heads[order]), np.ascontiguousarray(w[order])

    @cached_property
    def _csr_out(self):
        if self.directed:
            return self._build_csr(self.src, self.dst, self.weight)
        return self._build_csr(
            np.concatenate([self.src, self.dst]),
            np.concatenate([self.dst, self.src]),
            np.concatenate([self.weight, self.weight]),
        )

    @cached_property
    def _csr_in(self):
        if self.directed:
            return self._build_csr(self.dst, self.src, self.weight)
        return self._csr_out

    def csr(self, direction: Direction = Direction.OUT):
        """``(indptr, indices, weights)`` for traversal in ``direction``."""
        return self._csr_out if direction is Direction.OUT else self._csr_in

    def arcs(self, direction: Direction = Direction.OUT):
        """Edge list as traversal arcs ``(tails, heads, w)``; undirected edges appear twice."""
        if self.directed:
            if direction is Direction.OUT:
                return self.src, self.dst, self.weight
            return self.dst, self.src, self.weight
        return (
            np.concatenate([self.src, self.dst]),
            np.concatenate([self.dst, self.src]),
            np.concatenate([self.weight, self.weight]),
        )

    @cached_property
    def arc_weight(self) -> dict[tuple[int, int], float]:
        """Lightest weight of each traversable arc ``(u, v)``."""
        table: dict[tuple[int, int], float] = {}
        tails, heads, w = self.arcs(Direction.OUT)
        for u, v, x in zip(tails.tolist(), heads.tolist(), w.tolist()):
            if x < table.get((u, v), math.inf):
                table[(u, v)] = x
        return table

    # ---- derived graphs --------------------------------------------------

    def with_edges(self, extra: Iterable[Sequence[float]]) -> Graph:
        """``G + E'``: a new graph with the extra weighted edges appended."""
        rows = [tuple(e) for e in extra]
        if not rows:
            return Graph.from_arrays(self.n, self.src, self.dst, self.weight, self.directed)
        es = np.array([r[0] for r in rows], dtype=np.int64)
        ed = np.array([r[1] for r in rows], dtype=np.int64)
        ew = np.array([r[2] for r in rows], dtype=np.float64)
        return Graph.from_arrays(
            self.n,
            np.concatenate([self.src, es]),
            np.concatenate([self.dst, ed]),
            np.concatenate([self.weight, ew]),
            self.directed,
        )

    def scaled(self, factor: float) -> Graph:
        if not factor > 0:
            raise InputError("scale factor must be positive")
        return Graph.from_arrays(self.n, self.src, self.dst, self.weight * factor, self.directed)


# ---- primitives -----------------------------------------------------------


def _check_vertex(g: Graph, v) -> int:
    if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
        raise InputError(f"vertex id must be an integer, got {v!r}")
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} outside [0, {g.n})")
    return int(v)


def _search(g: Graph, sources: np.ndarray, direction: Direction):
    indptr, indices, w = g.csr(direction)
    if g.unit:
        level, parent = kernels.bfs(indptr, indices, sources)
        step = g.w_min
        dist = np.where(level >= 0, level * step, UNREACHABLE).astype(np.float64)
        return dist, parent
    return kernels.dijkstra(indptr, indices, w, sources)


def shortest_path_tree(g: Graph, source: int, direction: Direction = Direction.OUT):
    """Distances and parent pointers from ``source`` (``-1`` marks roots and misses)."""
    s = _check_vertex(g, source)
    return _search(g, np.array([s], dtype=np.int64), direction)


def sssp(g: Graph, source: int, direction: Direction = Direction.OUT) -> np.ndarray:
    return shortest_path_tree(g, source, direction)[0]


def multi_source_sssp(g: Graph, sources: Iterable[int], direction: Direction = Direction.OUT) -> np.ndarray:
    """``d(X, v)`` for ``OUT``, ``d(v, X)`` for ``IN``."""
    ids = sorted({_check_vertex(g, s) for s in sources})
    if not ids:
        raise InputError("multi-source search needs at least one source")
    return _search(g, np.array(ids, dtype=np.int64), direction)[0]


def tree_path(parent: np.ndarray, root: int, target: int) -> list[int] | None:
    """Walk parent pointers from ``target`` back to ``root``."""
    path = [int(target)]
    while path[-1] != root:
        p = int(parent[path[-1]])
        if p < 0 or len(path) > parent.size:
            return None
        path.append(p)
    path.reverse()
    return path


def eccentricity(g: Graph, v: int, direction: Direction = Direction.OUT) -> float:
    """Max distance from ``v`` (``OUT``) or to ``v`` (``IN``)."""
    d = sssp(g, v, direction)
    return float(d.max()) if d.size else 0.0


def exact_diameter(g: Graph) -> float:
    """Brute-force diameter over all ordered pairs; ``UNREACHABLE`` if disconnected."""
    if g.n < 1:
        raise InputError("diameter needs at least one vertex")
    if g.unit and g.n <= _BITSET_MAX_N:
        indptr, indices, _ = g.csr(Direction.IN)
        levels = kernels.unit_diameter(indptr, indices)
        return UNREACHABLE if levels < 0 else levels * g.w_min
    indptr, indices, w = g.csr(Direction.OUT)
    return float(kernels.weighted_diameter(indptr, indices, w))


def all_pairs(g: Graph) -> np.ndarray:
    """Distance matrix ``D[u, v] = d(u, v)``."""
    indptr, indices, w = g.csr(Direction.OUT)
    return kernels.apsp_matrix(indptr, indices, w)


def ball(g: Graph, v: int, r: float, direction: Direction = Direction.OUT) -> set[int]:
    """Vertices within distance ``r`` from (``OUT``) or to (``IN``) ``v``."""
    if r < 0:
        raise InputError("radius must be non-negative")
    d = sssp(g, v, direction)
    return set(np.flatnonzero(d <= r + TOL * max(1.0, r)).tolist())


def ball_edges_from_dist(g: Graph, dist: np.ndarray, r: float, direction: Direction) -> np.ndarray:
    """Edge indices of the ``r``-ball described by a precomputed distance map."""
    inside = dist <= r + TOL * max(1.0, r)
    if not g.directed:
        return np.flatnonzero(inside[g.src] | inside[g.dst])
    if direction is Direction.OUT:
        return np.flatnonzero(inside[g.src])
    return np.flatnonzero(inside[g.dst])


def ball_edges(g: Graph, v: int, r: float, direction: Direction = Direction.OUT) -> set[int]:
    """Indices (into ``g.edges``) of edges whose tail (``OUT``) or head (``IN``) is in the ball.

    On undirected graphs: every edge incident to the ball.
    """
    if r < 0:
        raise InputError("radius must be non-negative")
    return set(ball_edges_from_dist(g, sssp(g, v, direction), r, direction).tolist())


def hop_limited_distance(g: Graph, u: int, v: int, beta: int) -> float:
    """Lightest ``u``->``v`` walk using at most ``beta`` edges."""
    u = _check_vertex(g, u)
    v = _check_vertex(g, v)
    if beta < 1:
        raise InputError("hop bound must be at least 1")
    tails, heads, w = g.arcs(Direction.OUT)
    d = kernels.hop_limited(tails, heads, w, g.n, u, min(int(beta), max(g.n - 1, 1)))
    return float(d[v])


def hop_limited_path(g: Graph, u: int, v: int, beta: int) -> list[int] | None:
    """A lightest walk from ``u`` to ``v`` with at most ``beta`` edges, or None."""
    u = _check_vertex(g, u)
    v = _check_vertex(g, v)
    beta = min(int(beta), max(g.n - 1, 1))
    tails, heads, w = g.arcs(Direction.OUT)
    dist, parent = kernels.hop_limited_table(tails, heads, w, g.n, u, beta)
    if dist[beta, v] == UNREACHABLE:
        return None
    return _unwind(parent, beta, v)


def _unwind(parent: np.ndarray, h: int, v: int) -> list[int]:
    path = [v]
    while h > 0:
        p = int(parent[h, v])
        if p >= 0:
            path.append(p)
            v = p
        h -= 1
    path.reverse()
    return path


# ---- text format ------------------------------------------------------------


def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def dumps_graph(g: Graph) -> str:
    kind = "directed" if g.directed else "undirected"
    lines = [f"{kind} {g.n} {g.m}"]
    lines += [f"{u} {v} {format_weight(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 3 or rows[0][0] not in ("directed", "undirected"):
        raise FormatError("header must be 'directed|undirected <n> <m>'")
    try:
        n, m = int(rows[0][1]), int(rows[0][2])
    except ValueError as exc:
        raise FormatError(f"bad header counts: {rows[0]}") from exc
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header says {m} edges, found {len(body)}")
    src = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)
    w = np.empty(m, dtype=np.float64)
    for i, row in enumerate(body):
        if len(row) != 3:
            raise FormatError(f"edge line {i + 2} needs '<u> <v> <w>'")
        try:
            src[i], dst[i], w[i] = int(row[0]), int(row[1]), float(row[2])
        except ValueError as exc:
            raise FormatError(f"edge line {i + 2}: {exc}") from exc
    try:
        return Graph.from_arrays(n, src, dst, w, directed=rows[0][0] == "directed")
    except InputError as exc:
        raise FormatError(str(exc)) from exc


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(dumps_graph(g))


def read_graph(path) -> Graph:
    return loads_graph(Path(path).read_text())
