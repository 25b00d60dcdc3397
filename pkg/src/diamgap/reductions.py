"""OV-to-Diameter gadgets.

``build_directed_gadget`` produces the layered digraph ``L_0 .. L_{k-1}``
whose diameter is at most ``k`` when the Single-Set k-OV instance has no
solution and at least ``2k - 1`` (or infinite) when it has one.
``build_undirected_gadget`` produces the unweighted undirected graph on
``S = A^2`` and ``X = {(a, i, j) : a[i] = a[j] = 1}`` separating diameter 3
from diameter 5 for 3-OV.

Vertex ids are assigned layer by layer, each layer in lexicographic order
of its semantic tuple, so the same instance always yields the same graph.
Coordinates and vector indices in labels are 0-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from ._config import size_budget as default_budget
from .errors import InputError, SizeBudgetError
from .graph import Graph, dumps_graph
from .ov import OvInstance, add_all_ones


@dataclass
class GadgetGraph:
    """A gadget graph plus the layer and semantic tuple of every vertex.

    ``vec[v]`` holds vector indices and ``idx[v]`` coordinate indices, both
    padded with -1.  Directed gadgets use layers ``0 .. k-1``; undirected
    ones use 0 for S and 1 for X.
    """

    graph: Graph
    kind: str
    k: int
    instance: OvInstance
    layer: np.ndarray
    vec: np.ndarray
    idx: np.ndarray
    layer_names: tuple[str, ...] = field(default=())

    def layer_name(self, v: int) -> str:
        return self.layer_names[int(self.layer[v])]

    def label(self, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        a = tuple(int(x) for x in self.vec[v] if x >= 0)
        x = tuple(int(y) for y in self.idx[v] if y >= 0)
        return a, x

    def layer_vertices(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.layer == i)

    def mapping_lines(self) -> list[str]:
        out = []
        for v in range(self.graph.n):
            a, x = self.label(v)
            tup = "a=" + ",".join(map(str, a))
            if x:
                tup += ";x=" + ",".join(map(str, x))
            out.append(f"{v} {self.layer_name(v)} {tup}")
        return out


def _axis_view(arr2d: np.ndarray, axes: tuple[int, int], ndim: int) -> np.ndarray:
    """Reshape a 2-D table so its axes land on ``axes`` of an ``ndim`` grid."""
    shape = [1] * ndim
    shape[axes[0]] = arr2d.shape[0]
    shape[axes[1]] = arr2d.shape[1]
    return arr2d.reshape(shape)


def _cartesian(src: np.ndarray, dst: np.ndarray):
    return np.repeat(src, dst.size), np.tile(dst, src.size)


def _dedupe(n: int, src: list, dst: list, undirected: bool = False):
    s = np.concatenate(src) if src else np.empty(0, dtype=np.int64)
    d = np.concatenate(dst) if dst else np.empty(0, dtype=np.int64)
    keep = s != d
    s, d = s[keep], d[keep]
    if undirected:
        s, d = np.minimum(s, d), np.maximum(s, d)
    key = np.unique(s * np.int64(n) + d)
    return key // n, key % n


def directed_layer_masks(inst: OvInstance, k: int) -> list[np.ndarray]:
    """Existence masks over ``A^(k-2) x [d]^(k-1)`` for layers 1 .. k-1."""
    B = inst.bits().astype(bool)
    nv, d = B.shape
    T, X = k - 2, k - 1
    shape = (nv,) * T + (d,) * X
    ndim = T + X
    l1 = np.ones(shape, dtype=bool)
    for j in range(1, T + 1):
        for q in range(1, k - j + 1):
            l1 &= _axis_view(B, (j - 1, T + q - 1), ndim)
    lk = np.ones(shape, dtype=bool)
    for p in range(1, T + 1):
        for q in range(k - 1 - p, k):
            lk &= _axis_view(B, (p - 1, T + q - 1), ndim)
    masks = [np.ones(shape, dtype=bool) for _ in range(1, k)]
    masks[0] = l1
    masks[-1] = lk
    return masks


def estimate_directed_size(inst: OvInstance, k: int) -> int:
    """Upper bound on vertices + edges of the directed gadget, without building it."""
    nv = inst.size
    masks = directed_layer_masks(inst, k)
    T = k - 2
    per_tuple = [m.reshape(nv**T, -1).sum(axis=1).astype(np.int64) for m in masks]
    verts = nv ** (k - 1) + sum(int(c.sum()) for c in per_tuple)
    total_mid = sum(per_tuple)
    edges = int((total_mid * per_tuple[0]).sum() + (per_tuple[-1] * total_mid).sum())
    edges += nv * sum(int(c.sum()) for c in per_tuple)
    return verts + edges


def build_directed_gadget(inst: OvInstance, k: int, size_budget: Optional[int] = None) -> GadgetGraph:
    if k < 3:
        raise InputError("the directed gadget needs k >= 3")
    budget = default_budget() if size_budget is None else size_budget
    est = estimate_directed_size(inst, k)
    if est > budget:
        raise SizeBudgetError(f"directed gadget needs up to {est} vertices+edges, budget is {budget}")

    B = inst.bits().astype(bool)
    nv, d = B.shape
    T, X = k - 2, k - 1
    masks = directed_layer_masks(inst, k)

    # L_0 ids first, then L_1 .. L_{k-1}, each in C (lexicographic) order.
    n0 = nv ** (k - 1)
    id0 = np.arange(n0, dtype=np.int64).reshape((nv,) * (k - 1))
    ids = []
    nxt = n0
    for m in masks:
        arr = np.full(m.shape, -1, dtype=np.int64)
        cnt = int(m.sum())
        arr[m] = np.arange(nxt, nxt + cnt)
        nxt += cnt
        ids.append(arr)
    n = nxt

    layer = np.zeros(n, dtype=np.int8)
    vec = np.full((n, k - 1), -1, dtype=np.int64)
    idx = np.full((n, k - 1), -1, dtype=np.int64)
    vec[:n0] = np.array(list(itertools.product(range(nv), repeat=k - 1)), dtype=np.int64).reshape(n0, k - 1)
    for i, (m, arr) in enumerate(zip(masks, ids), start=1):
        where = np.argwhere(m)
        vid = arr[m]
        layer[vid] = i
        vec[vid, :T] = where[:, :T]
        idx[vid, :X] = where[:, T:]

    src: list[np.ndarray] = []
    dst: list[np.ndarray] = []

    def emit(s, t, cond=None):
        s, t = np.broadcast_arrays(s, t) if cond is None else np.broadcast_arrays(s, t, cond)[:2]
        ok = (s >= 0) & (t >= 0)
        if cond is not None:
            ok &= np.broadcast_to(cond, ok.shape)
        src.append(s[ok].ravel())
        dst.append(t[ok].ravel())

    full = T + 1 + X
    # L_0 -> L_1: (a_1..a_{k-1}) -> (a_1..a_{k-2}, x) when a_{k-1}[x_1] = 1.
    s = id0.reshape((nv,) * (k - 1) + (1,) * X)
    t = np.expand_dims(ids[0], T)
    emit(s, t, _axis_view(B, (T, T + 1), full))
    # L_{k-1} -> L_0: (a_3..a_k, x) -> (a_2..a_k) when a_2[x_{k-1}] = 1.
    s = np.expand_dims(ids[k - 2], 0)
    t = id0.reshape((nv,) * (k - 1) + (1,) * X)
    emit(s, t, _axis_view(B, (0, full - 1), full))
    # L_i -> L_{i+1}: same x, vector tuples agree off position k-1-i.
    for i in range(1, k - 1):
        ax = k - 2 - i
        s = ids[i - 1][..., None]
        t = np.expand_dims(np.moveaxis(ids[i], ax, -1), ax)
        emit(s, t)
    # Index-changing edges: same vector tuple, any two index tuples.
    flat = [a.reshape(nv**T, -1) for a in ids]
    for row in range(nv**T):
        into_l1 = flat[0][row][flat[0][row] >= 0]
        from_last = flat[k - 2][row][flat[k - 2][row] >= 0]
        for i in range(k - 1):
            here = flat[i][row][flat[i][row] >= 0]
            a, b = _cartesian(here, into_l1)
            src.append(a)
            dst.append(b)
            a, b = _cartesian(from_last, here)
            src.append(a)
            dst.append(b)

    es, ed = _dedupe(n, src, dst)
    g = Graph.from_arrays(n, es, ed, None, directed=True)
    names = tuple(f"L{i}" for i in range(k))
    return GadgetGraph(g, "directed", k, inst, layer, vec, idx, names)


def build_undirected_gadget(inst: OvInstance, size_budget: Optional[int] = None) -> GadgetGraph:
    inst = add_all_ones(inst)
    budget = default_budget() if size_budget is None else size_budget
    B = inst.bits().astype(bool)
    nv, d = B.shape
    xmask = B[:, :, None] & B[:, None, :]
    nx = int(xmask.sum())
    est = nv * nv + nx + nv * nv * d * d + nx * (nv + d * d)
    if est > budget:
        raise SizeBudgetError(f"undirected gadget needs up to {est} vertices+edges, budget is {budget}")

    ns = nv * nv
    sid = np.arange(ns, dtype=np.int64).reshape(nv, nv)
    xid = np.full((nv, d, d), -1, dtype=np.int64)
    xid[xmask] = np.arange(ns, ns + nx)
    n = ns + nx

    layer = np.zeros(n, dtype=np.int8)
    layer[ns:] = 1
    vec = np.full((n, 2), -1, dtype=np.int64)
    idx = np.full((n, 2), -1, dtype=np.int64)
    vec[:ns] = np.array(list(itertools.product(range(nv), repeat=2)), dtype=np.int64)
    where = np.argwhere(xmask)
    vec[ns:, 0] = where[:, 0]
    idx[ns:] = where[:, 1:]

    src, dst = [], []
    # (a,b)_S -- (a,i,j)_X when b[i] = 1 or b[j] = 1; axes (a, b, i, j).
    hit = B[None, :, :, None] | B[None, :, None, :]
    s = np.broadcast_to(sid[:, :, None, None], (nv, nv, d, d))
    t = np.broadcast_to(xid[:, None, :, :], (nv, nv, d, d))
    ok = hit & (t >= 0)
    src.append(s[ok])
    dst.append(t[ok])
    # (a,i,j)_X -- (b,i,j)_X.
    for i in range(d):
        for j in range(d):
            col = xid[:, i, j]
            col = col[col >= 0]
            a, b = _cartesian(col, col)
            src.append(a)
            dst.append(b)
    # (a,i,j)_X -- (a,i',j')_X.
    for a in range(nv):
        row = xid[a][xid[a] >= 0]
        u, v = _cartesian(row, row)
        src.append(u)
        dst.append(v)

    es, ed = _dedupe(n, src, dst, undirected=True)
    g = Graph.from_arrays(n, es, ed, None, directed=False)
    return GadgetGraph(g, "undirected", 3, inst, layer, vec, idx, ("S", "X"))


# ---- structural checks ------------------------------------------------------


@dataclass
class FactReport:
    bad_edges: list[tuple[int, int, str]] = field(default_factory=list)
    bad_vertices: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.bad_edges and not self.bad_vertices

    def __len__(self) -> int:
        return len(self.bad_edges) + len(self.bad_vertices)


def has_property_l1(inst: OvInstance, a: int, x: tuple[int, ...], i: int, k: int) -> bool:
    """``a[x_1] = .. = a[x_{k-i}] = 1``."""
    return all(inst.bit(a, x[q]) for q in range(k - i))


def has_property_lk(inst: OvInstance, a: int, x: tuple[int, ...], i: int, k: int) -> bool:
    """``a[x_{k+1-i}] = .. = a[x_{k-1}] = 1``."""
    return all(inst.bit(a, x[q - 1]) for q in range(k + 1 - i, k))


def check_layer_edge_facts(gg: GadgetGraph) -> FactReport:
    """List edges breaking the layer-ordering facts and L_1 / L_{k-1} vertices
    whose defining property fails for the stored labels."""
    if gg.kind != "directed":
        raise InputError("layer facts apply to directed gadgets only")
    k = gg.k
    rep = FactReport()
    g = gg.graph
    li = gg.layer[g.src].astype(int)
    lj = gg.layer[g.dst].astype(int)
    forward = li < lj
    bad_fwd = forward & (lj != li + 1)
    bad_back = ~forward & (li != k - 1) & (lj != 1)
    for e in np.flatnonzero(bad_fwd | bad_back).tolist():
        u, v = int(g.src[e]), int(g.dst[e])
        which = "forward edge skips a layer" if bad_fwd[e] else "backward edge neither from L_{k-1} nor into L_1"
        rep.bad_edges.append((u, v, which))

    expected_l0 = gg.instance.size ** (k - 1)
    if int((gg.layer == 0).sum()) != expected_l0:
        rep.bad_vertices.append((-1, f"|L_0| != {expected_l0}"))
    for v in gg.layer_vertices(1).tolist():
        a, x = gg.label(v)
        for j in range(1, k - 1):
            if not has_property_l1(gg.instance, a[j - 1], x, j, k):
                rep.bad_vertices.append((v, f"property ({j},L_1) fails"))
                break
    for v in gg.layer_vertices(k - 1).tolist():
        a, x = gg.label(v)
        for j in range(3, k + 1):
            if not has_property_lk(gg.instance, a[j - 3], x, j, k):
                rep.bad_vertices.append((v, f"property ({j},L_k-1) fails"))
                break
    return rep


def export_gadget(gg: GadgetGraph, prefix) -> tuple[Path, Path]:
    """Write ``<prefix>.graph`` and the ``<prefix>.map`` sidecar."""
    prefix = Path(prefix)
    gpath = prefix.with_name(prefix.name + ".graph")
    mpath = prefix.with_name(prefix.name + ".map")
    gpath.write_text(dumps_graph(gg.graph))
    mpath.write_text("\n".join(gg.mapping_lines()) + "\n")
    return gpath, mpath
