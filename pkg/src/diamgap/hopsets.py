"""Additive hopsets: the sampled truncated-Dijkstra construction for
undirected graphs, an all-pairs fallback for directed ones, and checkers.

A hopset here is a list of shortcut edges ``(u, v, w)`` whose weights are
exact graph distances, so adding them never changes a shortest path.  What
it buys is a bound on the number of edges a near-shortest path needs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import kernels
from ._config import size_budget as _default_budget
from .errors import FormatError, InputError, SizeBudgetError
from .graph import TOL, UNREACHABLE, Direction, Graph, all_pairs, format_weight


@dataclass(frozen=True)
class Hopset:
    shortcuts: tuple[tuple[int, int, float], ...]
    claimed_beta: int
    claimed_epsilon: float

    def __post_init__(self):
        rows = tuple((int(u), int(v), float(w)) for u, v, w in self.shortcuts)
        object.__setattr__(self, "shortcuts", rows)
        if int(self.claimed_beta) < 1:
            raise InputError("hop bound must be at least 1")
        object.__setattr__(self, "claimed_beta", int(self.claimed_beta))
        if not self.claimed_epsilon >= 0:
            raise InputError("epsilon must be non-negative")

    def __len__(self) -> int:
        return len(self.shortcuts)

    def augment(self, g: Graph) -> Graph:
        """``G + E'``."""
        return g.with_edges(self.shortcuts)


@dataclass(frozen=True)
class HopsetParams:
    """Level schedule of the sampled construction for an ``m``-edge graph."""

    delta: float
    epsilon: float
    m: int
    k: int = field(init=False)

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise InputError("delta must lie in (0, 1)")
        if not 0 < self.epsilon < 1:
            raise InputError("epsilon must lie in (0, 1)")
        # 1/(1/3) is 3.0000000000000004 in floating point; do not round that up to 4.
        object.__setattr__(self, "k", max(1, math.ceil(1.0 / self.delta - 1e-9)))

    def budget(self, i: int) -> float:
        """``M_i = m^((k+1-i)/k)``: half the edge-visit allowance at level ``i``."""
        return self.m ** ((self.k + 1 - i) / self.k)

    def sample_count(self, i: int) -> int:
        """Random edges drawn for level ``i``, capped at ``m``."""
        raw = 4.0 * self.m ** (i / self.k) * math.log(max(self.m, 2))
        return min(self.m, math.ceil(raw))

    @property
    def beta(self) -> int:
        """Hop bound the construction is claimed to meet: ``2(k+1)(eps/6)^-k``, rounded up."""
        raw = 2 * (self.k + 1) * (self.epsilon / 6.0) ** (-self.k)
        # 0.3 / 6 lands just under 0.05; keep rounding noise from adding a hop.
        return math.ceil(raw * (1 - 1e-12))


def truncated_dijkstra(g: Graph, v: int, M: float) -> tuple[np.ndarray, np.ndarray]:
    """Dijkstra from ``v`` stopped once ``2M`` arc scans have happened.

    Returns the settled vertices in settle order and their exact distances.
    """
    if not M >= 1:
        raise InputError("M must be at least 1")
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} outside [0, {g.n})")
    indptr, indices, w = g.csr(Direction.OUT)
    return kernels.truncated_dijkstra(indptr, indices, w, int(v), int(math.ceil(2 * M)))


def _merge(us: np.ndarray, vs: np.ndarray, ws: np.ndarray, directed: bool):
    """Sorted, deduplicated shortcut rows, keeping the lightest copy of each pair."""
    if not directed:
        us, vs = np.minimum(us, vs), np.maximum(us, vs)
    order = np.lexsort((ws, vs, us))
    us, vs, ws = us[order], vs[order], ws[order]
    first = np.ones(us.size, dtype=bool)
    first[1:] = (us[1:] != us[:-1]) | (vs[1:] != vs[:-1])
    return tuple(zip(us[first].tolist(), vs[first].tolist(), ws[first].tolist()))


def build_undirected_hopset(g: Graph, delta: float, epsilon: float, seed: int) -> Hopset:
    """Sampled multi-level truncated-Dijkstra hopset for an undirected graph."""
    if g.directed:
        raise InputError("this construction needs an undirected graph")
    params = HopsetParams(delta, epsilon, g.m)
    if g.m == 0:
        return Hopset((), params.beta, epsilon)
    rng = np.random.default_rng(seed)
    us, vs, ws = [], [], []
    for i in range(1, params.k + 1):
        count = params.sample_count(i)
        picked = np.arange(g.m) if count >= g.m else rng.integers(0, g.m, size=count)
        sources = np.unique(np.concatenate([g.src[picked], g.dst[picked]]))
        for v in sources.tolist():
            reached, dist = truncated_dijkstra(g, v, params.budget(i))
            keep = reached != v
            us.append(np.full(int(keep.sum()), v, dtype=np.int64))
            vs.append(reached[keep])
            ws.append(dist[keep])
    rows = _merge(np.concatenate(us), np.concatenate(vs), np.concatenate(ws), directed=False)
    return Hopset(rows, params.beta, epsilon)


def exhaustive_hopset(g: Graph, size_budget: Optional[int] = None) -> Hopset:
    """Every reachable pair as a shortcut; the trivial ``(1, 0)`` hopset."""
    budget = _default_budget() if size_budget is None else size_budget
    if g.n * g.n > budget:
        raise SizeBudgetError(f"{g.n}^2 shortcut candidates exceed the budget of {budget}")
    dist = all_pairs(g)
    us, vs = np.nonzero(np.isfinite(dist))
    keep = us != vs
    if not g.directed:
        keep &= us < vs
    us, vs = us[keep], vs[keep]
    rows = zip(us.tolist(), vs.tolist(), dist[us, vs].tolist())
    return Hopset(tuple(rows), 1, 0.0)


def default_builder(g: Graph, epsilon: float, seed: int, delta: float = 0.5) -> Hopset:
    """Sampled construction on undirected graphs, exhaustive on directed ones."""
    if g.directed:
        return exhaustive_hopset(g)
    return build_undirected_hopset(g, delta, epsilon, seed)


def _valid_shortcuts(g: Graph, h: Hopset) -> bool:
    for u, v, w in h.shortcuts:
        if not (0 <= u < g.n and 0 <= v < g.n) or not (math.isfinite(w) and w > 0):
            return False
    return True


def verify_distance_preservation(g: Graph, h: Hopset) -> bool:
    """True iff adding the shortcuts leaves every pairwise distance unchanged."""
    if not _valid_shortcuts(g, h):
        return False
    if not h.shortcuts:
        return True
    before = all_pairs(g)
    after = all_pairs(h.augment(g))
    if not np.array_equal(np.isinf(before), np.isinf(after)):
        return False
    fin = np.isfinite(before)
    return bool(np.all(after[fin] >= before[fin] - TOL * np.maximum(1.0, before[fin])))


def _hop_rows(g2: Graph, source: int, beta: int) -> np.ndarray:
    tails, heads, w = g2.arcs(Direction.OUT)
    return kernels.hop_limited(tails, heads, w, g2.n, source, beta)


def verify_additive_hopbound(
    g: Graph,
    h: Hopset,
    beta: int,
    epsilon: float,
    pairs: Optional[Sequence[tuple[int, int]]] = None,
) -> bool:
    """True iff every tested pair has a ``beta``-edge path in ``G + E'`` within ``d + eps*diam``.

    ``pairs=None`` tests all ordered pairs.
    """
    if beta < 1 or not _valid_shortcuts(g, h):
        return False
    dist = all_pairs(g)
    diam = float(dist.max()) if dist.size else 0.0
    slack = epsilon * diam
    g2 = h.augment(g)
    beta = min(int(beta), max(g.n - 1, 1))
    if pairs is None:
        by_source = {u: None for u in range(g.n)}
    else:
        by_source: dict[int, list[int]] = {}
        for u, v in pairs:
            if not (0 <= u < g.n and 0 <= v < g.n):
                return False
            by_source.setdefault(int(u), []).append(int(v))
    for u, targets in by_source.items():
        hop = _hop_rows(g2, u, beta)
        base = dist[u] if targets is None else dist[u, targets]
        got = hop if targets is None else hop[targets]
        bound = base + slack
        ok = np.where(np.isinf(base), True, got <= bound + TOL * np.maximum(1.0, bound))
        if not ok.all():
            return False
    return True


def minimal_hopbound(g: Graph, h: Hopset, epsilon: float) -> int:
    """Smallest ``beta`` for which ``verify_additive_hopbound`` holds on all pairs."""
    if g.n <= 1:
        return 1
    dist = all_pairs(g)
    fin = np.isfinite(dist)
    diam = float(dist[fin].max())
    g2 = h.augment(g)
    tails, heads, w = g2.arcs(Direction.OUT)
    need = 1
    for u in range(g.n):
        table, _ = kernels.hop_limited_table(tails, heads, w, g.n, u, g.n - 1)
        bound = dist[u] + epsilon * diam
        fits = table <= bound + TOL * np.maximum(1.0, bound)
        fits[:, ~fin[u]] = True
        first = np.argmax(fits, axis=0)
        need = max(need, int(first.max()))
    return need


# ---- text format ------------------------------------------------------------


def dumps_hopset(h: Hopset) -> str:
    lines = [f"hopset {len(h)} {h.claimed_beta} {format_weight(h.claimed_epsilon)}"]
    lines += [f"{u} {v} {format_weight(w)}" for u, v, w in h.shortcuts]
    return "\n".join(lines) + "\n"


def loads_hopset(text: str) -> Hopset:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 4 or rows[0][0] != "hopset":
        raise FormatError("header must be 'hopset <count> <beta> <epsilon>'")
    try:
        count, beta, eps = int(rows[0][1]), int(rows[0][2]), float(rows[0][3])
        body = [(int(r[0]), int(r[1]), float(r[2])) for r in rows[1:] if len(r) == 3]
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if len(body) != len(rows) - 1 or len(body) != count:
        raise FormatError(f"header says {count} shortcuts, found {len(rows) - 1} lines")
    try:
        return Hopset(tuple(body), beta, eps)
    except InputError as exc:
        raise FormatError(str(exc)) from exc


def write_hopset(h: Hopset, path) -> None:
    Path(path).write_text(dumps_hopset(h))


def read_hopset(path) -> Hopset:
    return loads_hopset(Path(path).read_text())


__all__ = [
    "Hopset",
    "HopsetParams",
    "UNREACHABLE",
    "truncated_dijkstra",
    "build_undirected_hopset",
    "exhaustive_hopset",
    "default_builder",
    "verify_distance_preservation",
    "verify_additive_hopbound",
    "minimal_hopbound",
    "dumps_hopset",
    "loads_hopset",
    "write_hopset",
    "read_hopset",
]
