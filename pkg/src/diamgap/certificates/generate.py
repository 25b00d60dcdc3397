"""Certificate generation: seeded searches standing in for nondeterministic guesses.

Both certifiers pair up good sets at complementary levels.  For each level
the structural dichotomy says that either a small good out-set exists at
one level or a small good in-set exists at the complementary one, and the
constructive side of that dichotomy is ``find_cover_pair``.  The
generator collects whichever sets it finds and assembles the first
certificate variant whose pieces are all present.
"""
from __future__ import annotations

from typing import Callable, Iterable, Optional

import numpy as np

from ..errors import GenerationFailure, InputError
from ..graph import TOL, Direction, Graph, all_pairs, shortest_path_tree
from ..hopsets import Hopset, default_builder
from .. import kernels
from .hitting import hitting_set
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
from .verify import check_good_set, verify_ub

HopsetBuilder = Callable[[Graph, float, int], Hopset]


def _within(dist: np.ndarray, radius: float) -> np.ndarray:
    return dist <= radius + TOL * max(1.0, radius)


def _ball_edge_masks(g: Graph, inside: np.ndarray, direction: Direction) -> np.ndarray:
    """Row ``v``: which edges belong to the ball whose vertex mask is ``inside[v]``."""
    if not g.directed:
        return inside[:, g.src] | inside[:, g.dst]
    return inside[:, g.src] if direction is Direction.OUT else inside[:, g.dst]


def _endpoints(g: Graph, edge_ids: np.ndarray) -> np.ndarray:
    return np.unique(np.concatenate([g.src[edge_ids], g.dst[edge_ids]]))


def _claim(g, params, mode, direction, level, vertices, beta) -> GoodSetClaim:
    return GoodSetClaim(
        direction, level, tuple(vertices.tolist()), size_bound(g, params, mode, direction, level, beta)
    )


def _checked(g, params, mode, beta, claim: GoodSetClaim) -> GoodSetClaim:
    if not check_good_set(g, claim, params, mode, beta):
        raise GenerationFailure(
            f"constructed {claim.direction.value}-set at level {claim.level} is not good"
        )
    return claim


def _hit_edges(g, masks, K, seed) -> np.ndarray:
    sets = [np.flatnonzero(row) for row in masks]
    try:
        return hitting_set(g.m, sets, K, seed)
    except InputError as exc:
        raise GenerationFailure(str(exc)) from exc


def _cover_unweighted(g, ell, params, seed, dist) -> GoodSetClaim:
    k, D = params.k, params.D
    mode = Mode.UNWEIGHTED
    r_scaled = params.r / g.w_min
    rho = g.w_max / g.w_min
    masks = _ball_edge_masks(g, _within(dist, (k - ell) / k * D), Direction.OUT)
    counts = masks.sum(axis=1)
    threshold = g.m ** (1 - ell / k) * r_scaled
    v = int(np.argmin(counts))
    if counts[v] <= threshold:
        # A sparse out-ball: hit, inside its vertex set, every vertex's near in-neighbourhood.
        ball = np.flatnonzero(masks[v])
        universe = _endpoints(g, ball)
        if universe.size == 0:
            universe = np.array([v])
        reach = _within(dist[np.ix_(universe, np.arange(g.n))], goodness_radius(params, mode, Direction.OUT, ell))
        sets = [np.flatnonzero(reach[:, u]) for u in range(g.n)]
        try:
            picked = hitting_set(universe.size, sets, r_scaled / rho, seed)
        except InputError as exc:
            raise GenerationFailure(str(exc)) from exc
        claim = _claim(g, params, mode, Direction.OUT, ell, universe[picked], None)
    else:
        # Every out-ball is heavy: random edges land in all of them.
        edges = _hit_edges(g, masks, threshold, seed)
        claim = _claim(g, params, mode, Direction.IN, k - ell, _endpoints(g, edges), None)
    return _checked(g, params, mode, None, claim)


def _cover_hopset(g, ell, params, seed, dist, beta) -> GoodSetClaim:
    k, D = params.k, params.D
    mode = Mode.HOPSET
    m1 = size_bound(g, params, mode, Direction.IN, ell, beta) - 1.0
    # In-ball of u at radius ((k-ell)/k) D: column u of the distance matrix.
    masks = _ball_edge_masks(g, _within(dist.T, (k - ell) / k * D), Direction.IN)
    counts = masks.sum(axis=1)
    u = int(np.argmin(counts))
    if counts[u] <= m1 / 2:
        near = _endpoints(g, np.flatnonzero(masks[u]))
        if near.size == 0:
            near = np.array([u])
        claim = _claim(g, params, mode, Direction.IN, ell, near, beta)
    else:
        edges = _hit_edges(g, masks, m1 / 2, seed)
        claim = _claim(g, params, mode, Direction.OUT, k - ell, _endpoints(g, edges), beta)
    return _checked(g, params, mode, beta, claim)


def find_cover_pair(
    g: Graph,
    ell: int,
    params: CertParams,
    seed: int,
    mode: Mode = Mode.UNWEIGHTED,
    beta: Optional[int] = None,
    dist: Optional[np.ndarray] = None,
) -> GoodSetClaim:
    """A verified good set for pairing index ``ell``.

    Unweighted mode returns an out-set at level ``ell`` or an in-set at
    level ``k - ell``.  Hopset mode returns an in-set at level ``ell`` or an
    out-set at level ``k - ell``.  Raises ``GenerationFailure`` when neither
    side can be built, which is expected once the diameter exceeds ``D``.
    """
    if not 1 <= ell <= params.k - 1:
        raise InputError(f"level must lie in [1, {params.k - 1}]")
    if g.m == 0:
        raise GenerationFailure("graph has no edges")
    if dist is None:
        dist = all_pairs(g)
    if mode is Mode.HOPSET:
        if beta is None:
            raise InputError("hopset mode needs beta")
        return _cover_hopset(g, ell, params, seed, dist, beta)
    return _cover_unweighted(g, ell, params, seed, dist)


def _collect(g, params, mode, seed, dist, beta):
    """Good sets keyed by (direction, level) across every pairing index.

    The whole vertex set is good at every level, so wherever it fits the
    size bound it backs up a level the sampled search did not reach.
    """
    found: dict[tuple[Direction, int], GoodSetClaim] = {}
    for ell in range(1, params.k):
        try:
            claim = find_cover_pair(g, ell, params, seed * 1009 + ell, mode, beta, dist)
        except GenerationFailure:
            continue
        found.setdefault((claim.direction, claim.level), claim)
    every = np.arange(g.n)
    for direction in Direction:
        for level in range(params.k):
            if g.n <= size_bound(g, params, mode, direction, level, beta):
                found.setdefault((direction, level), _claim(g, params, mode, direction, level, every, beta))
    return found


def _tree_paths(parent: np.ndarray, root: int, targets: np.ndarray, max_edges: int):
    """Root-to-target paths read off a parent array, or None if one is missing or too long."""
    cur = targets.copy()
    rows = [cur]
    for _ in range(max_edges):
        if (cur == root).all():
            break
        cur = np.where(cur == root, root, parent[cur])
        if (cur < 0).any():
            return None
        rows.append(cur)
    if not (cur == root).all():
        return None
    table = np.stack(rows)
    depth = (table != root).sum(axis=0)
    return [tuple(col[d::-1]) for col, d in zip(table.T.tolist(), depth.tolist())]


def _plain_paths(g, sources, targets, dist, params) -> Optional[tuple]:
    limit_w = path_weight_limit(params, Mode.UNWEIGHTED)
    limit_e = path_edge_limit(g, params, Mode.UNWEIGHTED, None)
    src = np.asarray(sources, dtype=np.int64)
    dst = np.asarray(targets, dtype=np.int64)
    if dist[np.ix_(src, dst)].max() > limit_w + TOL * max(1.0, limit_w):
        return None
    paths = []
    for x in src.tolist():
        _, parent = shortest_path_tree(g, x, Direction.OUT)
        found = _tree_paths(parent, x, dst, limit_e)
        if found is None:
            return None
        paths.extend(found)
    return tuple(paths)


def _hop_paths(g2: Graph, sources, targets, beta, limit) -> Optional[tuple]:
    tails, heads, w = g2.arcs(Direction.OUT)
    rounds = min(beta, max(g2.n - 1, 1))
    paths = []
    for x in sources:
        table, parent = kernels.hop_limited_table(tails, heads, w, g2.n, x, rounds)
        for y in targets:
            if not table[rounds, y] <= limit + TOL * max(1.0, limit):
                return None
            path, h, v = [y], rounds, y
            while h > 0:
                p = int(parent[h, v])
                if p >= 0:
                    path.append(p)
                    v = p
                h -= 1
            paths.append(tuple(reversed(path)))
    return tuple(paths)


def _max_ecc(dist: np.ndarray, vertices, direction: Direction) -> float:
    idx = list(vertices)
    block = dist[:, idx] if direction is Direction.IN else dist[idx, :]
    return float(block.max())


def _assemble_unweighted(g, params, found, dist, allowed) -> Optional[UbCertificate]:
    k = params.k
    mode = Mode.UNWEIGHTED
    top = found.get((Direction.OUT, k - 1))
    if (
        Variant.ECC_COVER_OUT in allowed
        and top is not None
        and _max_ecc(dist, top.vertices, Direction.IN) <= params.D * (1 + TOL)
    ):
        return UbCertificate(Variant.ECC_COVER_OUT, mode, params, out_set=top)
    if Variant.PAIR_COVER not in allowed:
        return None
    for ell in range(1, k + 1):
        ins = found.get((Direction.IN, k - ell))
        outs = found.get((Direction.OUT, ell - 1))
        if ins is None or outs is None:
            continue
        paths = _plain_paths(g, ins.vertices, outs.vertices, dist, params)
        if paths is not None:
            return UbCertificate(
                Variant.PAIR_COVER, mode, params, in_set=ins, out_set=outs, level=ell, paths=paths
            )
    return None


def _assemble_hopset(g, params, found, dist, hopset, beta, allowed) -> Optional[UbCertificate]:
    k = params.k
    mode = Mode.HOPSET
    tol = params.D * (1 + TOL)
    top_in = found.get((Direction.IN, k - 1))
    if (
        Variant.ECC_COVER_IN in allowed
        and top_in is not None
        and _max_ecc(dist, top_in.vertices, Direction.OUT) <= tol
    ):
        return UbCertificate(Variant.ECC_COVER_IN, mode, params, in_set=top_in, beta=beta)
    top_out = found.get((Direction.OUT, k - 1))
    if (
        Variant.ECC_COVER_OUT in allowed
        and top_out is not None
        and _max_ecc(dist, top_out.vertices, Direction.IN) <= tol
    ):
        return UbCertificate(Variant.ECC_COVER_OUT, mode, params, out_set=top_out, beta=beta)
    if Variant.HOPSET_PAIR_COVER not in allowed:
        return None
    g2 = hopset.augment(g)
    limit = path_weight_limit(params, mode)
    for ell in range(1, k - 1):
        ins = found.get((Direction.IN, ell))
        outs = found.get((Direction.OUT, k - 1 - ell))
        if ins is None or outs is None:
            continue
        paths = _hop_paths(g2, ins.vertices, outs.vertices, beta, limit)
        if paths is not None:
            return UbCertificate(
                Variant.HOPSET_PAIR_COVER, mode, params, in_set=ins, out_set=outs,
                level=ell, paths=paths, hopset=hopset, beta=beta,
            )
    return None


def generate_ub_certificate(
    g: Graph,
    params: CertParams,
    mode: Mode = Mode.UNWEIGHTED,
    hopset_builder: Optional[HopsetBuilder] = None,
    seed: int = 0,
    retries: int = 20,
    allowed: Optional[Iterable[Variant]] = None,
) -> UbCertificate:
    """A certificate that ``verify_ub`` accepts, or ``GenerationFailure``.

    Preference order: eccentricity covers, then the pair cover with the
    smallest pairing index.  In hopset mode the builder is called as
    ``builder(g, epsilon / 2, seed)``; the default is ``default_builder``.
    ``allowed`` restricts which variants may be emitted.
    """
    allowed = set(Variant) if allowed is None else set(allowed)
    if g.n < 1:
        raise InputError("graph needs at least one vertex")
    dist = all_pairs(g)
    if not np.isfinite(dist).all():
        raise GenerationFailure("graph is not strongly connected")
    if g.n == 1:
        # No edges to sample; the lone vertex is trivially its own good set.
        beta = 1 if mode is Mode.HOPSET else None
        only = _claim(g, params, mode, Direction.OUT, params.k - 1, np.array([0]), beta)
        return UbCertificate(Variant.ECC_COVER_OUT, mode, params, out_set=only, beta=beta)
    builder = hopset_builder or default_builder
    for attempt in range(retries):
        sub_seed = seed * 7919 + attempt
        if mode is Mode.HOPSET:
            hopset = builder(g, params.epsilon / 2.0, sub_seed)
            beta = hopset.claimed_beta
            found = _collect(g, params, mode, sub_seed, dist, beta)
            cert = _assemble_hopset(g, params, found, dist, hopset, beta, allowed)
        else:
            found = _collect(g, params, mode, sub_seed, dist, None)
            cert = _assemble_unweighted(g, params, found, dist, allowed)
        if cert is not None and verify_ub(g, cert, params):
            return cert
    raise GenerationFailure(f"no certificate assembled in {retries} attempts")


def generate_lb(g: Graph, D: float) -> Optional[LbWitness]:
    """First vertex (by id) whose out-eccentricity exceeds ``D``; None if the diameter is at most ``D``."""
    if g.n < 1:
        return None
    dist = all_pairs(g)
    ecc = dist.max(axis=1)
    over = np.flatnonzero(ecc > D)
    if over.size == 0:
        return None
    return LbWitness(int(over[0]), Direction.OUT)


__all__ = [
    "find_cover_pair",
    "generate_ub_certificate",
    "generate_lb",
]
