"""Single-Set k-OV instances and the brute-force solver.

Vectors are packed into Python ints (bit ``x`` is coordinate ``x``), so
``d`` is capped at 64 to keep every coordinate product one AND.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import FormatError, InputError

MAX_DIM = 64


@dataclass(frozen=True)
class OvInstance:
    dim: int
    vectors: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise InputError(f"dimension must be in [1, {MAX_DIM}]")
        if not self.vectors:
            raise InputError("an OV instance needs at least one vector")
        limit = 1 << self.dim
        for v in self.vectors:
            if not 0 <= v < limit:
                raise InputError(f"vector {v:b} does not fit in {self.dim} bits")
        object.__setattr__(self, "vectors", tuple(int(v) for v in self.vectors))

    @classmethod
    def from_rows(cls, rows) -> OvInstance:
        """Build from 0/1 sequences or strings like ``"101"``."""
        rows = [[int(c) for c in r] for r in rows]
        if not rows:
            raise InputError("an OV instance needs at least one vector")
        d = len(rows[0])
        if any(len(r) != d for r in rows):
            raise InputError("all vectors must have the same length")
        return cls(d, tuple(sum(b << x for x, b in enumerate(r)) for r in rows))

    @property
    def size(self) -> int:
        return len(self.vectors)

    @property
    def all_ones(self) -> int:
        return (1 << self.dim) - 1

    def bit(self, index: int, coord: int) -> int:
        return (self.vectors[index] >> coord) & 1

    def bits(self) -> np.ndarray:
        """``(size, dim)`` uint8 matrix of coordinates."""
        v = np.array(self.vectors, dtype=np.uint64)[:, None]
        shifts = np.arange(self.dim, dtype=np.uint64)[None, :]
        return ((v >> shifts) & np.uint64(1)).astype(np.uint8)

    def row(self, index: int) -> str:
        return "".join(str(self.bit(index, x)) for x in range(self.dim))


def is_orthogonal(inst: OvInstance, witness) -> bool:
    acc = inst.all_ones
    for i in witness:
        acc &= inst.vectors[i]
    return acc == 0


def brute_force(inst: OvInstance, k: int) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest orthogonal k-tuple (repeats allowed), or None."""
    if k < 2:
        raise InputError("k-OV needs k >= 2")
    vecs = inst.vectors

    def extend(acc: int, picks: tuple[int, ...]):
        for i, v in enumerate(vecs):
            cur = acc & v
            if cur == 0:
                # Any completion works; index 0 is the smallest one.
                return picks + (i,) + (0,) * (k - len(picks) - 1)
            if len(picks) + 1 < k:
                found = extend(cur, picks + (i,))
                if found is not None:
                    return found
        return None

    return extend(inst.all_ones, ())


def gen_random(n_vec: int, d: int, p_one: float, seed: int) -> OvInstance:
    if not 0.0 <= p_one <= 1.0:
        raise InputError("p_one must lie in [0, 1]")
    if n_vec < 1:
        raise InputError("need at least one vector")
    rng = np.random.default_rng(seed)
    bits = rng.random((n_vec, d)) < p_one
    return OvInstance.from_rows(bits.astype(int).tolist())


def plant(inst: OvInstance, k: int, seed: int) -> OvInstance:
    """Clear bits so that k randomly chosen vectors become orthogonal."""
    if k < 2:
        raise InputError("k-OV needs k >= 2")
    if inst.size < k:
        raise InputError(f"need at least {k} vectors to plant a solution")
    if 0 in inst.vectors:
        return inst
    rng = np.random.default_rng(seed)
    chosen = rng.choice(inst.size, size=k, replace=False)
    vecs = list(inst.vectors)
    for x in range(inst.dim):
        victim = int(chosen[rng.integers(k)])
        vecs[victim] &= ~(1 << x)
    return OvInstance(inst.dim, tuple(vecs))


def add_all_ones(inst: OvInstance) -> OvInstance:
    if inst.all_ones in inst.vectors:
        return inst
    return OvInstance(inst.dim, inst.vectors + (inst.all_ones,))


# ---- text format ------------------------------------------------------------


def dumps_ov(inst: OvInstance) -> str:
    lines = [f"{inst.size} {inst.dim}"] + [inst.row(i) for i in range(inst.size)]
    return "\n".join(lines) + "\n"


def loads_ov(text: str) -> OvInstance:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise FormatError("empty OV file")
    head = rows[0].split()
    if len(head) != 2:
        raise FormatError("header must be '<count> <dim>'")
    count, dim = int(head[0]), int(head[1])
    body = rows[1:]
    if len(body) != count:
        raise FormatError(f"header says {count} vectors, found {len(body)}")
    for i, r in enumerate(body):
        if len(r) != dim or set(r) - {"0", "1"}:
            raise FormatError(f"vector line {i + 2} must be {dim} characters of 0/1")
    try:
        return OvInstance.from_rows(body)
    except InputError as exc:
        raise FormatError(str(exc)) from exc


def write_ov(inst: OvInstance, path) -> None:
    Path(path).write_text(dumps_ov(inst))


def read_ov(path) -> OvInstance:
    return loads_ov(Path(path).read_text())
