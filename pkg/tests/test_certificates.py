import dataclasses
import math

import numpy as np
import pytest

from diamgap.certificates import (
    CertParams,
    GoodSetClaim,
    LbWitness,
    Mode,
    UbCertificate,
    Variant,
    check_good_set,
    dumps,
    find_cover_pair,
    generate_lb,
    generate_ub_certificate,
    goodness_radius,
    hitting_set,
    loads,
    read,
    sample_size,
    size_bound,
    verify_lb,
    verify_ub,
    write,
)
from diamgap.errors import FormatError, GenerationFailure, InputError
from diamgap.graph import Direction, Graph, all_pairs, exact_diameter, multi_source_sssp
from diamgap.hopsets import exhaustive_hopset
from fuzz import mutants, random_certificate
from graphgen import connected_undirected, strongly_connected


def complete(n):
    return Graph(n, [(i, j, 1) for i in range(n) for j in range(n) if i != j], directed=True)


def cycle(n):
    return Graph(n, [(i, (i + 1) % n, 1) for i in range(n)], directed=True)


def path(n):
    return Graph(n, [(i, i + 1, 1) for i in range(n - 1)], directed=False)


# ---- parameters ---------------------------------------------------------------


def test_params_derived_values():
    p = CertParams(3, 10, 0.5)
    assert p.r == 2.5
    assert p.D_prime == pytest.approx((2 - 1 / 3 + 0.5) * 10)
    assert p.D_prime > p.D


@pytest.mark.parametrize("args", [(1, 1, 0.5), (2, 0, 0.5), (2, 1, 0), (2, math.inf, 0.5), (2.5, 1, 0.5)])
def test_params_reject(args):
    with pytest.raises(InputError):
        CertParams(*args)


def test_size_bound_formulas():
    g = strongly_connected(30, 40, 0, wmax=3)
    p = CertParams(3, 10, 0.5)
    lm = math.log(g.m)
    rho = g.w_max / g.w_min
    assert size_bound(g, p, Mode.UNWEIGHTED, Direction.OUT, 1) == pytest.approx(8 * g.m ** (2 / 3) * rho * lm + 1)
    r_s = p.r / g.w_min
    assert size_bound(g, p, Mode.UNWEIGHTED, Direction.IN, 2) == pytest.approx(8 * g.m ** (1 / 3) / r_s * lm + 1)
    assert size_bound(g, p, Mode.HOPSET, Direction.IN, 1, beta=8) == pytest.approx(
        8 * g.m ** (2 / 3) * 8 ** (-1 / 3) * lm + 1)
    with pytest.raises(InputError):
        size_bound(g, p, Mode.HOPSET, Direction.IN, 1)


def test_goodness_radius_adds_r_only_to_unweighted_out():
    p = CertParams(4, 8, 0.5)
    assert goodness_radius(p, Mode.UNWEIGHTED, Direction.OUT, 2) == 4 + 2
    assert goodness_radius(p, Mode.UNWEIGHTED, Direction.IN, 2) == 4
    assert goodness_radius(p, Mode.HOPSET, Direction.OUT, 2) == 4


# ---- hitting sets --------------------------------------------------------------


def test_hitting_whole_universe():
    out = hitting_set(20, [range(20)], 20, seed=0)
    assert 1 <= out.size <= sample_size(20, 20, 1)


def test_hitting_disjoint_blocks():
    sets = [range(i * 5, i * 5 + 5) for i in range(8)]
    out = hitting_set(40, sets, 5, seed=3)
    assert all(set(s) & set(out.tolist()) for s in sets)
    assert out.size >= 8


def test_hitting_bound_example():
    rng = np.random.default_rng(0)
    sets = [rng.choice(100, size=50, replace=False) for _ in range(10)]
    assert sample_size(100, 50, 10) == math.ceil(2 * 2 * math.log(10)) == 10
    for seed in range(20):
        out = hitting_set(100, sets, 50, seed)
        assert out.size <= 10
        assert all(np.intersect1d(s, out).size for s in sets)


def test_hitting_rejects_and_fails():
    with pytest.raises(InputError):
        hitting_set(10, [[1, 2]], 3, seed=0)
    with pytest.raises(InputError):
        hitting_set(10, [[11]], 1, seed=0)
    with pytest.raises(GenerationFailure):
        hitting_set(10, [[1, 2]], 2, seed=0, retries=0)
    assert hitting_set(10, [], 1, seed=0).size == 0


def test_hitting_deterministic():
    sets = [range(i, i + 30) for i in range(0, 70, 7)]
    assert np.array_equal(hitting_set(100, sets, 30, 11), hitting_set(100, sets, 30, 11))


# ---- good sets -----------------------------------------------------------------


def test_good_set_all_vertices_level0():
    g = strongly_connected(40, 60, 1)
    p = CertParams(2, exact_diameter(g), 0.5)
    claim = GoodSetClaim(Direction.OUT, 0, tuple(range(40)), 0)
    expect = 40 <= size_bound(g, p, Mode.UNWEIGHTED, Direction.OUT, 0)
    assert check_good_set(g, claim, p) == expect


def test_good_set_empty_false():
    g = cycle(5)
    assert not check_good_set(g, GoodSetClaim(Direction.OUT, 1, (), 0), CertParams(2, 4, 0.5))


def test_good_set_matches_recomputation():
    g = strongly_connected(60, 90, 2)
    p = CertParams(3, exact_diameter(g), 0.5)
    claim = find_cover_pair(g, 1, p, seed=0)
    assert check_good_set(g, claim, p)
    for drop in range(min(len(claim.vertices), 8)):
        smaller = dataclasses.replace(claim, vertices=claim.vertices[:drop] + claim.vertices[drop + 1:])
        if not smaller.vertices:
            continue
        d = multi_source_sssp(g, smaller.vertices, claim.direction)
        radius = goodness_radius(p, Mode.UNWEIGHTED, claim.direction, claim.level)
        assert check_good_set(g, smaller, p) == bool(d.max() <= radius + 1e-9)


def test_cover_pair_complete_digraph():
    g = complete(8)
    p = CertParams(3, 1, 0.5)
    for ell in (1, 2):
        claim = find_cover_pair(g, ell, p, seed=ell)
        assert check_good_set(g, claim, p)
        assert (claim.direction, claim.level) in {(Direction.OUT, ell), (Direction.IN, 3 - ell)}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_cover_pair_cycle(k):
    g = cycle(12)
    p = CertParams(k, 11, 0.5)
    claim = find_cover_pair(g, k - 1, p, seed=5)
    assert check_good_set(g, claim, p)


def test_cover_pair_level_range():
    with pytest.raises(InputError):
        find_cover_pair(cycle(4), 0, CertParams(2, 3, 0.5), seed=0)


# ---- generation + verification ---------------------------------------------------


def test_complete_digraph_ecc_cover():
    g = complete(10)
    p = CertParams(2, 1, 0.5)
    cert = generate_ub_certificate(g, p, seed=0)
    assert cert.variant is Variant.ECC_COVER_OUT
    assert verify_ub(g, cert, p)


def test_cycle20():
    g = cycle(20)
    p = CertParams(2, 19, 0.5)
    cert = generate_ub_certificate(g, p, seed=1)
    assert verify_ub(g, cert, p)


def test_single_vertex():
    g = Graph(1)
    p = CertParams(2, 1, 0.5)
    assert verify_ub(g, generate_ub_certificate(g, p), p)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("k", [2, 3])
def test_generated_certificates_accept(seed, k):
    g = strongly_connected(40 + 10 * seed, 60 + 20 * seed, seed)
    p = CertParams(k, exact_diameter(g), 0.5)
    cert = generate_ub_certificate(g, p, seed=seed)
    assert verify_ub(g, cert, p)
    assert exact_diameter(g) < p.D_prime


@pytest.mark.parametrize("seed", range(4))
def test_weighted_unweighted_mode(seed):
    g = strongly_connected(30, 50, seed, wmax=4)
    p = CertParams(2, exact_diameter(g), 0.5)
    cert = generate_ub_certificate(g, p, seed=seed)
    assert verify_ub(g, cert, p)


@pytest.mark.parametrize("seed", range(4))
def test_forced_pair_cover(seed):
    g = strongly_connected(40, 70, seed)
    p = CertParams(3, exact_diameter(g), 0.5)
    cert = generate_ub_certificate(g, p, seed=seed, allowed=[Variant.PAIR_COVER])
    assert cert.variant is Variant.PAIR_COVER
    assert verify_ub(g, cert, p)
    # Every listed path starts in the in-set and ends in the out-set.
    for walk in cert.paths:
        assert walk[0] in cert.in_set.vertices and walk[-1] in cert.out_set.vertices


def test_removed_path_edge_rejects():
    g = strongly_connected(40, 70, 7)
    p = CertParams(3, exact_diameter(g), 0.5)
    cert = generate_ub_certificate(g, p, seed=0, allowed=[Variant.PAIR_COVER])
    walk = next(w for w in cert.paths if len(w) > 1)
    a, b = walk[0], walk[1]
    kept = [(u, v, w) for u, v, w in g.edges if (u, v) != (a, b)]
    g2 = Graph(g.n, kept, directed=True)
    verdict = verify_ub(g2, cert, p)
    assert not verdict
    assert verdict.reason in {"path_not_in_graph", "not_good", "eccentricity", "size_bound"}


@pytest.mark.parametrize("seed", range(3))
def test_hopset_mode_directed(seed):
    g = strongly_connected(30, 50, seed, wmax=3)
    p = CertParams(3, exact_diameter(g), 0.5)
    builder = lambda graph, eps, s: exhaustive_hopset(graph)  # noqa: E731
    cert = generate_ub_certificate(g, p, Mode.HOPSET, builder, seed=seed, allowed=[Variant.HOPSET_PAIR_COVER])
    assert cert.variant is Variant.HOPSET_PAIR_COVER and cert.beta == 1
    assert verify_ub(g, cert, p)


@pytest.mark.parametrize("seed", range(3))
def test_hopset_mode_undirected_default_builder(seed):
    g = connected_undirected(40, 30, seed, wmax=5)
    p = CertParams(2, exact_diameter(g), 0.5)
    cert = generate_ub_certificate(g, p, Mode.HOPSET, seed=seed)
    assert cert.mode is Mode.HOPSET
    assert verify_ub(g, cert, p)


def test_light_shortcut_rejected():
    g = strongly_connected(20, 30, 3, wmax=3)
    p = CertParams(3, exact_diameter(g), 0.5)
    builder = lambda graph, eps, s: exhaustive_hopset(graph)  # noqa: E731
    cert = generate_ub_certificate(g, p, Mode.HOPSET, builder, allowed=[Variant.HOPSET_PAIR_COVER])
    u, v, w = next(r for r in cert.hopset.shortcuts if r[2] > 1)
    bad = dataclasses.replace(cert.hopset, shortcuts=cert.hopset.shortcuts + ((u, v, w - 1),))
    verdict = verify_ub(g, dataclasses.replace(cert, hopset=bad), p)
    assert verdict.reason == "hopset_shortens"


def test_param_mismatch():
    g = cycle(10)
    p = CertParams(2, 9, 0.5)
    cert = generate_ub_certificate(g, p)
    assert verify_ub(g, cert, CertParams(2, 9, 0.5))
    assert verify_ub(g, cert, CertParams(2, 8, 0.5)).reason == "param_mismatch"


def test_generation_fails_above_d_prime():
    g = cycle(30)
    p = CertParams(2, 10, 0.5)  # D' = 20 < 29
    with pytest.raises(GenerationFailure):
        generate_ub_certificate(g, p, retries=3)


def test_disconnected_generation_fails():
    with pytest.raises(GenerationFailure):
        generate_ub_certificate(Graph(3, [(0, 1, 1), (1, 2, 1)]), CertParams(2, 5, 0.5))


@pytest.mark.parametrize("seed", range(5))
def test_fuzz_small(seed):
    """Corrupted and random certificates never pass on a graph of diameter >= D'."""
    rng = np.random.default_rng(seed)
    good = strongly_connected(24, 40, seed)
    p = CertParams(3, exact_diameter(good), 0.5)
    bad = cycle(24)
    bad_p = CertParams(3, 23 / p.D_prime * p.D * 0.999, 0.5)
    assert exact_diameter(bad) >= bad_p.D_prime
    cert = dataclasses.replace(generate_ub_certificate(good, p, seed=seed), params=bad_p)
    cands = mutants(cert, bad, rng) + [cert] + [random_certificate(bad, bad_p, rng) for _ in range(30)]
    for c in cands:
        assert not verify_ub(bad, c, bad_p)


def test_verify_is_total():
    g = cycle(5)
    p = CertParams(2, 4, 0.5)
    junk = UbCertificate(Variant.PAIR_COVER, Mode.UNWEIGHTED, p, in_set=None, out_set=None, level="x")
    assert not verify_ub(g, junk, p)
    assert not verify_ub(g, object(), p)


# ---- lower bounds --------------------------------------------------------------


def test_lb_path():
    g = path(3)
    w = generate_lb(g, 1)
    assert w == LbWitness(0, Direction.OUT)
    assert verify_lb(g, w, 1)


def test_lb_complete():
    g = complete(5)
    assert generate_lb(g, 1) is None
    for v in range(5):
        assert not verify_lb(g, LbWitness(v), 1)
    assert verify_lb(g, LbWitness(9), 1).reason == "bad_vertex"


@pytest.mark.parametrize("seed", range(10))
def test_lb_matches_oracle(seed):
    g = strongly_connected(25, 30, seed, wmax=3)
    diam = exact_diameter(g)
    for D in (diam - 1, diam, diam + 0.5):
        w = generate_lb(g, D)
        assert (w is not None) == (diam > D)
        if w is not None:
            assert verify_lb(g, w, D)


def test_lb_on_planted_gadget():
    from diamgap.ov import OvInstance
    from diamgap.reductions import build_directed_gadget

    gg = build_directed_gadget(OvInstance.from_rows(["110", "101", "011"]), 3)
    w = generate_lb(gg.graph, 3)
    assert w is not None and verify_lb(gg.graph, w, 3)


# ---- serialization -------------------------------------------------------------


@pytest.mark.parametrize("mode", [Mode.UNWEIGHTED, Mode.HOPSET])
def test_round_trip(tmp_path, mode):
    g = strongly_connected(30, 40, 4)
    p = CertParams(3, exact_diameter(g), 0.5)
    builder = lambda graph, eps, s: exhaustive_hopset(graph)  # noqa: E731
    cert = generate_ub_certificate(g, p, mode, builder, seed=2)
    text = dumps(cert)
    assert loads(text) == cert
    assert dumps(loads(text)) == text
    write(cert, tmp_path / "c.json")
    assert read(tmp_path / "c.json") == cert
    lb = LbWitness(3, Direction.IN)
    assert loads(dumps(lb)) == lb


@pytest.mark.parametrize("bad", ["[]", "{", '{"format":"nope","version":1}', '{"format":"diamgap-ub-certificate","version":2}',
                                 '{"format":"diamgap-ub-certificate","version":1}'])
def test_loads_rejects(bad):
    with pytest.raises(FormatError):
        loads(bad)
