"""Deterministic checkers for upper-bound certificates and lower-bound witnesses.

Every check is total: a malformed certificate is rejected with a reason
code, never raised.  Acceptance of an upper-bound certificate implies the
diameter is below ``D'`` by a triangle-inequality chain whose pieces are
exactly the conditions tested here.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..graph import TOL, Direction, Graph, eccentricity, leq, multi_source_sssp, sssp
from ..hopsets import Hopset
from .model import (
    CertParams,
    GoodSetClaim,
    LbWitness,
    Mode,
    UbCertificate,
    Variant,
    goodness_radius,
    path_edge_limit,
    path_weight_limit,
    size_bound,
)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.accepted


ACCEPT = Verdict(True)


def _reject(reason: str) -> Verdict:
    return Verdict(False, reason)


# Reason codes.
MALFORMED = "malformed"
PARAM_MISMATCH = "param_mismatch"
WRONG_SHAPE = "wrong_shape"
BAD_VERTEX = "bad_vertex"
EMPTY_SET = "empty_set"
SIZE_BOUND = "size_bound"
NOT_GOOD = "not_good"
ECCENTRICITY = "eccentricity"
MISSING_PATH = "missing_path"
PATH_NOT_IN_GRAPH = "path_not_in_graph"
PATH_TOO_HEAVY = "path_too_heavy"
PATH_TOO_MANY_EDGES = "path_too_many_edges"
HOPSET_INVALID = "hopset_invalid"
HOPSET_SHORTENS = "hopset_shortens"
NOT_ABOVE_D = "eccentricity_not_above_D"


def _vertices_ok(g: Graph, ids) -> bool:
    return all(isinstance(v, int) and 0 <= v < g.n for v in ids)


def _claim_problem(
    g: Graph, claim: GoodSetClaim, params: CertParams, mode: Mode, beta: Optional[int]
) -> Optional[str]:
    if not claim.vertices:
        return EMPTY_SET
    if not _vertices_ok(g, claim.vertices):
        return BAD_VERTEX
    if not 0 <= claim.level <= params.k:
        return WRONG_SHAPE
    bound = size_bound(g, params, mode, claim.direction, claim.level, beta)
    if len(claim.vertices) > bound:
        return SIZE_BOUND
    dist = multi_source_sssp(g, claim.vertices, claim.direction)
    radius = goodness_radius(params, mode, claim.direction, claim.level)
    if not leq(float(dist.max()), radius):
        return NOT_GOOD
    return None


def check_good_set(
    g: Graph,
    claim: GoodSetClaim,
    params: CertParams,
    mode: Mode = Mode.UNWEIGHTED,
    beta: Optional[int] = None,
) -> bool:
    """Size bound plus one multi-source search confirming the distance bound."""
    try:
        return _claim_problem(g, claim, params, mode, beta) is None
    except Exception:
        return False


def _ecc_problem(g: Graph, vertices, direction: Direction, D: float) -> Optional[str]:
    for x in vertices:
        if not leq(eccentricity(g, x, direction), D):
            return ECCENTRICITY
    return None


def _arc_table(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Sorted arc keys ``u * n + v`` and the lightest weight of each."""
    tails, heads, w = g.arcs(Direction.OUT)
    keys = tails * g.n + heads
    order = np.lexsort((w, keys))
    keys, w = keys[order], w[order]
    first = np.ones(keys.size, dtype=bool)
    first[1:] = keys[1:] != keys[:-1]
    return keys[first], w[first]


def _pairs_problem(g: Graph, cert: UbCertificate, max_edges: int, max_weight: float) -> Optional[str]:
    """Every listed path is a walk in ``g`` within both limits, and every pair has one."""
    n = g.n
    paths = cert.paths
    lengths = np.fromiter((len(p) for p in paths), dtype=np.int64, count=len(paths))
    if lengths.size and lengths.min() == 0:
        return MISSING_PATH
    flat = np.fromiter(itertools.chain.from_iterable(paths), dtype=np.int64, count=int(lengths.sum()))
    if flat.size and (flat.min() < 0 or flat.max() >= n):
        return BAD_VERTEX
    if lengths.size and lengths.max() - 1 > max_edges:
        return PATH_TOO_MANY_EDGES
    ends = np.cumsum(lengths)
    starts = ends - lengths
    if flat.size > 1:
        step_ok = np.ones(flat.size - 1, dtype=bool)
        step_ok[ends[:-1] - 1] = False  # no step across a path boundary
        keys = flat[:-1] * n + flat[1:]
        table_keys, table_w = _arc_table(g)
        pos = np.searchsorted(table_keys, keys)
        pos_c = np.minimum(pos, max(table_keys.size - 1, 0))
        hit = (pos < table_keys.size) & (table_keys[pos_c] == keys) if table_keys.size else np.zeros_like(step_ok)
        if np.any(step_ok & ~hit):
            return PATH_NOT_IN_GRAPH
        step_w = np.where(step_ok, table_w[pos_c] if table_keys.size else 0.0, 0.0)
        totals = np.add.reduceat(np.append(step_w, 0.0), starts) if starts.size else step_w[:0]
        # reduceat over a single-vertex path picks up the next path's first step; zero it.
        totals = np.where(lengths > 1, totals, 0.0)
        if np.any(totals > max_weight + TOL * max(1.0, max_weight)):
            return PATH_TOO_HEAVY
    have = np.unique(flat[starts] * n + flat[ends - 1]) if flat.size else np.empty(0, np.int64)
    need = (np.asarray(cert.in_set.vertices)[:, None] * n + np.asarray(cert.out_set.vertices)[None, :]).ravel()
    if not np.isin(need, have).all():
        return MISSING_PATH
    return None


def _hopset_problem(g: Graph, h: Hopset) -> Optional[str]:
    rows = h.shortcuts
    for u, v, w in rows:
        if not (0 <= u < g.n and 0 <= v < g.n) or not (math.isfinite(w) and w > 0):
            return HOPSET_INVALID
    by_tail: dict[int, list[tuple[int, float]]] = {}
    for u, v, w in rows:
        by_tail.setdefault(u, []).append((v, w))
    for u, heads in by_tail.items():
        d = sssp(g, u, Direction.OUT)
        vs = np.array([v for v, _ in heads], dtype=np.int64)
        ws = np.array([w for _, w in heads])
        # A shortcut lighter than the true distance would shorten some path.
        if np.any(ws < d[vs] - TOL * np.maximum(1.0, d[vs])):
            return HOPSET_SHORTENS
    return None


def _expect(claim: Optional[GoodSetClaim], direction: Direction, level: int) -> bool:
    return claim is not None and claim.direction is direction and claim.level == level


def _shape_ok(cert: UbCertificate, k: int) -> bool:
    v, mode, ell = cert.variant, cert.mode, cert.level
    if mode is Mode.HOPSET and (not isinstance(cert.beta, int) or cert.beta < 1):
        return False
    if v is Variant.ECC_COVER_OUT:
        return _expect(cert.out_set, Direction.OUT, k - 1)
    if v is Variant.ECC_COVER_IN:
        return mode is Mode.HOPSET and _expect(cert.in_set, Direction.IN, k - 1)
    if v is Variant.PAIR_COVER:
        return (
            mode is Mode.UNWEIGHTED
            and isinstance(ell, int)
            and 1 <= ell <= k
            and _expect(cert.in_set, Direction.IN, k - ell)
            and _expect(cert.out_set, Direction.OUT, ell - 1)
        )
    if v is Variant.HOPSET_PAIR_COVER:
        return (
            mode is Mode.HOPSET
            and cert.hopset is not None
            and isinstance(ell, int)
            and 1 <= ell <= k - 2
            and _expect(cert.in_set, Direction.IN, ell)
            and _expect(cert.out_set, Direction.OUT, k - 1 - ell)
        )
    return False


def _verify(g: Graph, cert: UbCertificate, params: CertParams) -> Verdict:
    if cert.params != params:
        return _reject(PARAM_MISMATCH)
    if not _shape_ok(cert, params.k):
        return _reject(WRONG_SHAPE)
    mode, beta = cert.mode, cert.beta
    for claim in (cert.in_set, cert.out_set):
        if claim is not None:
            problem = _claim_problem(g, claim, params, mode, beta)
            if problem:
                return _reject(problem)

    if cert.variant is Variant.ECC_COVER_OUT:
        problem = _ecc_problem(g, cert.out_set.vertices, Direction.IN, params.D)
    elif cert.variant is Variant.ECC_COVER_IN:
        problem = _ecc_problem(g, cert.in_set.vertices, Direction.OUT, params.D)
    elif cert.variant is Variant.PAIR_COVER:
        limit = path_edge_limit(g, params, mode, beta)
        problem = _pairs_problem(g, cert, limit, path_weight_limit(params, mode))
    else:
        problem = _hopset_problem(g, cert.hopset)
        if problem is None:
            g2 = cert.hopset.augment(g)
            problem = _pairs_problem(g2, cert, beta, path_weight_limit(params, mode))
    return _reject(problem) if problem else ACCEPT


def verify_ub(g: Graph, cert: UbCertificate, params: CertParams) -> Verdict:
    """ACCEPT only if the certificate proves ``diameter(g) < params.D_prime``."""
    try:
        return _verify(g, cert, params)
    except Exception as exc:  # verification must be total
        return _reject(f"{MALFORMED}: {type(exc).__name__}")


def verify_lb(g: Graph, witness: LbWitness, D: float) -> Verdict:
    """ACCEPT iff the witnessed vertex has eccentricity strictly above ``D``."""
    try:
        v = witness.vertex
        if not isinstance(v, int) or not 0 <= v < g.n:
            return _reject(BAD_VERTEX)
        if not isinstance(witness.direction, Direction):
            return _reject(MALFORMED)
        if eccentricity(g, v, witness.direction) > D:
            return ACCEPT
        return _reject(NOT_ABOVE_D)
    except Exception as exc:
        return _reject(f"{MALFORMED}: {type(exc).__name__}")
