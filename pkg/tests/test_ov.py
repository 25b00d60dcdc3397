import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diamgap.errors import FormatError, InputError
from diamgap.ov import (
    OvInstance,
    add_all_ones,
    brute_force,
    dumps_ov,
    gen_random,
    is_orthogonal,
    loads_ov,
    plant,
    read_ov,
    write_ov,
)


def enumerate_witness(inst, k):
    """Independent oracle: scan every k-tuple in lexicographic order."""
    for t in itertools.product(range(inst.size), repeat=k):
        if all(any(inst.bit(i, x) == 0 for i in t) for x in range(inst.dim)):
            return t
    return None


def test_all_ones_has_no_solution():
    inst = OvInstance.from_rows(["111"])
    for k in (2, 3, 4):
        assert brute_force(inst, k) is None


def test_zero_vector_gives_repeated_witness():
    inst = OvInstance.from_rows(["000", "111", "101"])
    assert brute_force(inst, 3) == (0, 0, 0)
    other = OvInstance.from_rows(["111", "000"])
    assert is_orthogonal(other, (1, 1, 1))
    assert is_orthogonal(other, brute_force(other, 3))


def test_three_rotations():
    inst = OvInstance.from_rows(["110", "101", "011"])
    w = brute_force(inst, 3)
    assert w is not None and is_orthogonal(inst, w)
    assert sorted(w) == [0, 1, 2]
    assert brute_force(inst, 2) is None


def test_k_below_two():
    with pytest.raises(InputError):
        brute_force(OvInstance.from_rows(["1"]), 1)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.floats(0, 1), st.integers(0, 10**6), st.integers(2, 4))
def test_brute_force_agrees_with_enumeration(n, d, p, seed, k):
    inst = gen_random(n, d, p, seed)
    got = brute_force(inst, k)
    ref = enumerate_witness(inst, k)
    assert (got is None) == (ref is None)
    if got is not None:
        assert is_orthogonal(inst, got)
        assert got == ref  # lexicographically smallest


def test_gen_random_extremes_and_determinism():
    assert set(gen_random(4, 5, 1.0, 0).vectors) == {0b11111}
    assert set(gen_random(4, 5, 0.0, 0).vectors) == {0}
    assert gen_random(6, 8, 0.5, 42) == gen_random(6, 8, 0.5, 42)
    with pytest.raises(InputError):
        gen_random(3, 3, 1.5, 0)


@pytest.mark.parametrize("seed", range(40))
def test_plant_creates_witness(seed):
    inst = gen_random(6, 7, 0.9, seed)
    for k in (2, 3):
        assert brute_force(plant(inst, k, seed), k) is not None


def test_plant_edge_cases():
    with_zero = OvInstance.from_rows(["11", "00"])
    assert plant(with_zero, 2, 0) == with_zero
    two = OvInstance.from_rows(["1", "1"])
    assert sorted(plant(two, 2, 5).vectors) == [0, 1]
    with pytest.raises(InputError):
        plant(OvInstance.from_rows(["1"]), 2, 0)


def test_add_all_ones():
    ones = OvInstance.from_rows(["11"])
    assert add_all_ones(ones) == ones
    assert add_all_ones(OvInstance.from_rows(["10"])).vectors == OvInstance.from_rows(["10", "11"]).vectors


@pytest.mark.parametrize("seed", range(30))
def test_add_all_ones_preserves_solvability(seed):
    inst = gen_random(5, 5, 0.7, seed)
    for k in (2, 3, 4):
        assert (brute_force(inst, k) is None) == (brute_force(add_all_ones(inst), k) is None)


def test_text_round_trip(tmp_path):
    inst = gen_random(5, 9, 0.4, 3)
    text = dumps_ov(inst)
    assert text.splitlines()[0] == "5 9"
    assert loads_ov(text) == inst
    write_ov(inst, tmp_path / "a.ov")
    assert read_ov(tmp_path / "a.ov") == inst


@pytest.mark.parametrize("bad", ["", "2 3\n101\n", "1 3\n1x1\n", "1 3\n11\n"])
def test_text_rejects(bad):
    with pytest.raises((FormatError, InputError)):
        loads_ov(bad)
