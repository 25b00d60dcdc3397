"""Parameter block, certificate records and the size/distance thresholds they must meet."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from ..errors import InputError
from ..graph import Direction, Graph
from ..hopsets import Hopset


class Mode(enum.Enum):
    """Which certifier a certificate belongs to.

    ``UNWEIGHTED`` pairs good sets with explicit shortest paths in ``G``;
    ``HOPSET`` pairs them with few-edge paths in ``G`` plus a hopset.
    """

    UNWEIGHTED = "unweighted"
    HOPSET = "hopset"


class Variant(enum.Enum):
    ECC_COVER_OUT = "ecc_cover_out"
    ECC_COVER_IN = "ecc_cover_in"
    PAIR_COVER = "pair_cover"
    HOPSET_PAIR_COVER = "hopset_pair_cover"


@dataclass(frozen=True)
class CertParams:
    k: int
    D: float
    epsilon: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise InputError("k must be an integer >= 2")
        if not (math.isfinite(self.D) and self.D > 0):
            raise InputError("D must be a positive real")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise InputError("epsilon must be a positive real")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "D", float(self.D))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def r(self) -> float:
        return self.epsilon * self.D / 2.0

    @property
    def D_prime(self) -> float:
        return (2.0 - 1.0 / self.k + self.epsilon) * self.D


@dataclass(frozen=True)
class GoodSetClaim:
    direction: Direction
    level: int
    vertices: tuple[int, ...]
    size_bound: float

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted({int(v) for v in self.vertices})))
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "size_bound", float(self.size_bound))


@dataclass(frozen=True)
class UbCertificate:
    """Upper-bound certificate: evidence that the diameter is below ``D'``.

    ``level`` is the pairing index for the two pair-cover variants.
    ``paths`` lists one vertex sequence per (in-set, out-set) pair, each
    running from the in-set element to the out-set element.  ``beta`` is
    the hop bound the hopset certifier works with; it is ``None`` in
    unweighted mode.
    """

    variant: Variant
    mode: Mode
    params: CertParams
    in_set: Optional[GoodSetClaim] = None
    out_set: Optional[GoodSetClaim] = None
    level: Optional[int] = None
    paths: tuple[tuple[int, ...], ...] = ()
    hopset: Optional[Hopset] = None
    beta: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))


@dataclass(frozen=True)
class LbWitness:
    vertex: int
    direction: Direction = Direction.OUT


# ---- thresholds ----------------------------------------------------------------


def _log_m(g: Graph) -> float:
    # Natural log; a one-edge graph would otherwise get a zero bound.
    return math.log(max(g.m, 2))


def size_bound(
    g: Graph,
    params: CertParams,
    mode: Mode,
    direction: Direction,
    level: int,
    beta: Optional[int] = None,
) -> float:
    """Largest admissible size of a level-``level`` set, with one element of slack."""
    k = params.k
    spread = float(g.m) ** (1.0 - level / k) if g.m else 0.0
    if mode is Mode.HOPSET:
        if beta is None or beta < 1:
            raise InputError("hopset-mode bounds need a hop bound beta >= 1")
        return 8.0 * spread * float(beta) ** (-1.0 + 2.0 * level / k) * _log_m(g) + 1.0
    if direction is Direction.OUT:
        rho = g.w_max / g.w_min
        return 8.0 * spread * rho * _log_m(g) + 1.0
    r_scaled = params.r / g.w_min
    return 8.0 * spread / r_scaled * _log_m(g) + 1.0


def goodness_radius(params: CertParams, mode: Mode, direction: Direction, level: int) -> float:
    """Distance every vertex must be within from (OUT) or to (IN) a good set."""
    base = level / params.k * params.D
    if mode is Mode.UNWEIGHTED and direction is Direction.OUT:
        return base + params.r
    return base


def path_weight_limit(params: CertParams, mode: Mode) -> float:
    if mode is Mode.HOPSET:
        return (1.0 + params.epsilon / 2.0) * params.D
    return params.D


def path_edge_limit(g: Graph, params: CertParams, mode: Mode, beta: Optional[int]) -> int:
    if mode is Mode.HOPSET:
        return int(beta)
    # Each edge weighs at least w_min, so a path of weight <= D has this many edges at most.
    return int(math.floor(params.D / g.w_min * (1 + 1e-12)))
