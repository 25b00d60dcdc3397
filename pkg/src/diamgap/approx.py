"""Diameter approximation baselines and the gap-oracle binary search."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InputError, OracleViolation, UnreachableDiameterError
from .graph import UNREACHABLE, Direction, Graph, eccentricity, exact_diameter


@dataclass(frozen=True)
class ApproxResult:
    lower: float
    upper: float
    queries: int = 0

    @property
    def ratio(self) -> float:
        if self.lower == 0:
            return 1.0 if self.upper == 0 else math.inf
        return self.upper / self.lower


class GapAnswer(enum.Enum):
    AT_LEAST = "at_least"  # diameter >= alpha * D
    AT_MOST = "at_most"  # diameter <= D
    EITHER = "either"  # neither promise applies


GapOracle = Callable[[Graph, float], GapAnswer]


def two_approx(g: Graph, probe: Optional[int] = None) -> ApproxResult:
    """One out-search and one in-search from ``probe`` bracket the diameter within 2x."""
    if g.n < 1:
        raise InputError("diameter needs at least one vertex")
    v = 0 if probe is None else probe
    lower = max(eccentricity(g, v, Direction.OUT), eccentricity(g, v, Direction.IN))
    if lower == UNREACHABLE:
        raise UnreachableDiameterError("graph is not (strongly) connected")
    return ApproxResult(lower, 2.0 * lower)


def exact_gap_oracle(alpha: float) -> GapOracle:
    """Truthful oracle for the alpha-gap problem, answering from the exact diameter."""

    def oracle(g: Graph, D: float) -> GapAnswer:
        diam = exact_diameter(g)
        if diam <= D:
            return GapAnswer.AT_MOST
        if diam >= alpha * D:
            return GapAnswer.AT_LEAST
        return GapAnswer.EITHER

    return oracle


def gap_binary_search(
    g: Graph,
    gap_oracle: GapOracle,
    alpha: float,
    beta_acc: float,
    max_queries: int = 1000,
) -> ApproxResult:
    """Shrink a ``two_approx`` bracket with gap queries until ``upper/lower <= alpha + beta_acc``.

    Every query is posed at threshold 1 on a copy of ``g`` rescaled by ``1/t``,
    so the oracle only ever decides an ``alpha``-vs-1 gap.
    """
    if alpha < 1:
        raise InputError("alpha must be at least 1")
    if beta_acc <= 0:
        raise InputError("accuracy must be positive")
    start = two_approx(g)
    lo, hi = start.lower, start.upper
    if lo == 0:
        return ApproxResult(0.0, 0.0)
    target = alpha + beta_acc
    queries = 0
    while hi / lo > target:
        if queries >= max_queries:
            raise OracleViolation(f"no convergence after {max_queries} queries")
        # Balance the two outcomes: AT_LEAST gives [t, hi], AT_MOST gives [lo, alpha*t].
        t = math.sqrt(lo * hi / alpha)
        answer = gap_oracle(g.scaled(1.0 / t), 1.0)
        queries += 1
        if answer is GapAnswer.AT_LEAST:
            lo = max(lo, alpha * t)
        elif answer is GapAnswer.AT_MOST:
            hi = min(hi, t)
        else:
            lo, hi = max(lo, t), min(hi, alpha * t)
        if lo > hi * (1 + 1e-12):
            raise OracleViolation(f"bracket inverted to [{lo}, {hi}]")
    return ApproxResult(lo, hi, queries)
