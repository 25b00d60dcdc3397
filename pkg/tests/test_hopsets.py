import math

import numpy as np
import pytest

from diamgap.errors import FormatError, InputError, SizeBudgetError
from diamgap.graph import Graph, all_pairs, exact_diameter, hop_limited_distance, sssp
from diamgap.hopsets import (
    Hopset,
    HopsetParams,
    build_undirected_hopset,
    dumps_hopset,
    exhaustive_hopset,
    loads_hopset,
    minimal_hopbound,
    read_hopset,
    truncated_dijkstra,
    verify_additive_hopbound,
    verify_distance_preservation,
    write_hopset,
)
from graphgen import connected_undirected, strongly_connected


def path(n):
    return Graph(n, [(i, i + 1, 1) for i in range(n - 1)], directed=False)


def cycle(n):
    return Graph(n, [(i, (i + 1) % n, 1) for i in range(n)], directed=True)


# ---- parameters ---------------------------------------------------------------


def test_params_schedule():
    p = HopsetParams(0.5, 0.3, 100)
    assert p.k == 2
    assert p.budget(1) == pytest.approx(100)
    assert p.budget(p.k) == pytest.approx(100 ** 0.5)
    assert p.sample_count(1) == min(100, math.ceil(4 * 10 * math.log(100)))
    assert p.beta == math.ceil(2 * 3 * (0.05) ** -2)


def test_params_third_rounds_to_three():
    assert HopsetParams(1 / 3, 0.3, 10).k == 3


@pytest.mark.parametrize("delta,eps", [(0, 0.3), (1, 0.3), (0.5, 0), (0.5, 1)])
def test_params_reject(delta, eps):
    with pytest.raises(InputError):
        HopsetParams(delta, eps, 10)


# ---- truncated Dijkstra ---------------------------------------------------------


def test_truncated_full_when_budget_large():
    g = connected_undirected(30, 20, 0, wmax=5)
    reached, dist = truncated_dijkstra(g, 3, g.m + 1)
    assert sorted(reached.tolist()) == list(range(30))
    assert np.array_equal(dist, sssp(g, 3)[reached])


def test_truncated_star_center():
    star = Graph(6, [(0, i, 1) for i in range(1, 6)], directed=False)
    reached, dist = truncated_dijkstra(star, 0, 1)
    # Settling the centre scans all five spokes, which exhausts the 2-scan allowance.
    assert reached.tolist() == [0] and dist.tolist() == [0.0]
    reached, _ = truncated_dijkstra(star, 0, 3)
    assert reached[0] == 0 and 1 < reached.size <= 6


@pytest.mark.parametrize("seed", range(6))
def test_truncated_distances_exact(seed):
    g = connected_undirected(60, 60, seed, wmax=10)
    full = sssp(g, 5)
    for M in (1, 3, 10, 40):
        reached, dist = truncated_dijkstra(g, 5, M)
        assert np.array_equal(dist, full[reached])
        # Settle order is non-decreasing in distance.
        assert np.all(np.diff(dist) >= 0)


def test_truncated_rejects():
    with pytest.raises(InputError):
        truncated_dijkstra(path(3), 0, 0)


# ---- A.1 construction ---------------------------------------------------------


@pytest.mark.parametrize("seed", range(5))
def test_shortcuts_are_exact_distances(seed):
    g = connected_undirected(50, 40, seed, wmax=10)
    h = build_undirected_hopset(g, 0.5, 0.3, seed)
    dist = all_pairs(g)
    assert len(h) > 0
    for u, v, w in h.shortcuts:
        assert w == dist[u, v]
        assert u < v  # undirected pairs stored once
    assert verify_distance_preservation(g, h)


def test_path_100():
    g = path(100)
    hs = [build_undirected_hopset(g, 0.5, 0.3, s) for s in range(5)]
    assert all(verify_distance_preservation(g, h) for h in hs)
    assert any(verify_additive_hopbound(g, h, h.claimed_beta, 0.3) for h in hs)
    # The exported beta is loose; the construction does far better in practice.
    assert minimal_hopbound(g, hs[0], 0.3) < hs[0].claimed_beta


def test_complete_graph_beta_one():
    g = Graph(6, [(i, j, 1) for i in range(6) for j in range(i + 1, 6)], directed=False)
    assert verify_additive_hopbound(g, Hopset((), 1, 0.0), 1, 0.0)
    h = build_undirected_hopset(g, 0.5, 0.3, 0)
    assert verify_distance_preservation(g, h)


def test_deterministic_given_seed():
    g = connected_undirected(40, 30, 1, wmax=4)
    assert build_undirected_hopset(g, 0.5, 0.3, 7) == build_undirected_hopset(g, 0.5, 0.3, 7)


def test_directed_rejected():
    with pytest.raises(InputError):
        build_undirected_hopset(cycle(4), 0.5, 0.3, 0)


# ---- exhaustive ---------------------------------------------------------------


def test_exhaustive_cycle5():
    h = exhaustive_hopset(cycle(5))
    assert len(h) == 20
    assert (h.claimed_beta, h.claimed_epsilon) == (1, 0.0)


@pytest.mark.parametrize("seed", range(4))
def test_exhaustive_one_hop(seed):
    g = strongly_connected(20, 25, seed, wmax=6)
    h = exhaustive_hopset(g)
    assert verify_distance_preservation(g, h)
    assert verify_additive_hopbound(g, h, 1, 0.0)
    g2 = h.augment(g)
    dist = all_pairs(g)
    for u in range(0, 20, 3):
        for v in range(0, 20, 4):
            assert hop_limited_distance(g2, u, v, 1) == dist[u, v]


def test_exhaustive_budget():
    with pytest.raises(SizeBudgetError):
        exhaustive_hopset(cycle(20), size_budget=100)


# ---- verifiers ----------------------------------------------------------------


def test_empty_hopset_preserves():
    assert verify_distance_preservation(path(5), Hopset((), 1, 0.1))


def test_decremented_shortcut_fails():
    g = connected_undirected(30, 20, 2, wmax=5)
    h = exhaustive_hopset(g)
    rows = list(h.shortcuts)
    u, v, w = next(r for r in rows if r[2] > 1)
    rows[rows.index((u, v, w))] = (u, v, w - 0.5)
    assert not verify_distance_preservation(g, Hopset(tuple(rows), 1, 0.0))


def test_preservation_invariant_to_order_and_duplicates():
    g = connected_undirected(25, 15, 3, wmax=3)
    h = build_undirected_hopset(g, 0.5, 0.3, 3)
    rows = list(h.shortcuts)
    shuffled = rows[::-1] + rows[: len(rows) // 2]
    assert verify_distance_preservation(g, Hopset(tuple(shuffled), h.claimed_beta, 0.3))


def test_hopbound_large_beta_always_holds():
    g = connected_undirected(20, 5, 4, wmax=9)
    assert verify_additive_hopbound(g, Hopset((), 1, 0.0), g.n - 1, 0.0)
    assert not verify_additive_hopbound(g, Hopset((), 1, 0.0), 1, 0.0) or exact_diameter(g) == g.w_max


def test_hopbound_pairs_subset():
    g = path(10)
    empty = Hopset((), 1, 0.0)
    assert verify_additive_hopbound(g, empty, 1, 0.0, pairs=[(0, 1), (4, 5)])
    assert not verify_additive_hopbound(g, empty, 1, 0.0, pairs=[(0, 2)])
    assert not verify_additive_hopbound(g, empty, 1, 0.0, pairs=[(0, 99)])


def test_minimal_hopbound_path_no_shortcuts():
    g = path(8)
    assert minimal_hopbound(g, Hopset((), 1, 0.0), 0.0) == 7


def test_monotone_in_added_shortcuts():
    g = connected_undirected(30, 10, 5, wmax=4)
    h = exhaustive_hopset(g)
    part = Hopset(h.shortcuts[: len(h) // 3], 1, 0.0)
    a = minimal_hopbound(g, Hopset((), 1, 0.0), 0.1)
    b = minimal_hopbound(g, part, 0.1)
    c = minimal_hopbound(g, h, 0.1)
    assert a >= b >= c == 1


# ---- file format --------------------------------------------------------------


def test_round_trip(tmp_path):
    h = build_undirected_hopset(connected_undirected(20, 10, 6, wmax=3), 0.5, 0.3, 0)
    text = dumps_hopset(h)
    assert text.splitlines()[0] == f"hopset {len(h)} {h.claimed_beta} 0.3"
    assert loads_hopset(text) == h
    write_hopset(h, tmp_path / "h.txt")
    assert read_hopset(tmp_path / "h.txt") == h


@pytest.mark.parametrize("bad", ["", "hopset 2 1 0\n0 1 1\n", "hop 0 1 0\n", "hopset 1 0 0\n0 1 1\n"])
def test_format_rejects(bad):
    with pytest.raises(FormatError):
        loads_hopset(bad)
