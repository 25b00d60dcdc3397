"""JSON encoding for certificates and witnesses.

Floats go through ``repr`` inside ``json``, which round-trips every
``float64`` exactly, and keys are sorted, so ``dumps(loads(text)) == text``
for any text this module produced.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from ..errors import FormatError
from ..graph import Direction
from ..hopsets import Hopset
from .model import CertParams, GoodSetClaim, LbWitness, Mode, UbCertificate, Variant

UB_FORMAT = "diamgap-ub-certificate"
LB_FORMAT = "diamgap-lb-witness"
VERSION = 1


def _claim_doc(c: GoodSetClaim | None):
    if c is None:
        return None
    return {
        "direction": c.direction.value,
        "level": c.level,
        "vertices": list(c.vertices),
        "size_bound": c.size_bound,
    }


def _claim_from(doc) -> GoodSetClaim | None:
    if doc is None:
        return None
    return GoodSetClaim(Direction(doc["direction"]), doc["level"], tuple(doc["vertices"]), doc["size_bound"])


def to_doc(obj: Union[UbCertificate, LbWitness]) -> dict:
    if isinstance(obj, LbWitness):
        return {"format": LB_FORMAT, "version": VERSION, "vertex": obj.vertex, "direction": obj.direction.value}
    p = obj.params
    hop = None
    if obj.hopset is not None:
        hop = {
            "beta": obj.hopset.claimed_beta,
            "epsilon": obj.hopset.claimed_epsilon,
            "shortcuts": [list(row) for row in obj.hopset.shortcuts],
        }
    return {
        "format": UB_FORMAT,
        "version": VERSION,
        "variant": obj.variant.value,
        "mode": obj.mode.value,
        "params": {"k": p.k, "D": p.D, "epsilon": p.epsilon},
        "level": obj.level,
        "beta": obj.beta,
        "in_set": _claim_doc(obj.in_set),
        "out_set": _claim_doc(obj.out_set),
        "paths": [list(path) for path in obj.paths],
        "hopset": hop,
    }


def from_doc(doc: dict) -> Union[UbCertificate, LbWitness]:
    try:
        kind = doc["format"]
        if doc.get("version") != VERSION:
            raise FormatError(f"unsupported version {doc.get('version')!r}")
        if kind == LB_FORMAT:
            return LbWitness(int(doc["vertex"]), Direction(doc["direction"]))
        if kind != UB_FORMAT:
            raise FormatError(f"unknown document format {kind!r}")
        p = doc["params"]
        hop = doc.get("hopset")
        hopset = None
        if hop is not None:
            hopset = Hopset(tuple(tuple(r) for r in hop["shortcuts"]), hop["beta"], hop["epsilon"])
        return UbCertificate(
            variant=Variant(doc["variant"]),
            mode=Mode(doc["mode"]),
            params=CertParams(p["k"], p["D"], p["epsilon"]),
            in_set=_claim_from(doc.get("in_set")),
            out_set=_claim_from(doc.get("out_set")),
            level=doc.get("level"),
            paths=tuple(tuple(path) for path in doc.get("paths", [])),
            hopset=hopset,
            beta=doc.get("beta"),
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate document: {exc}") from exc


def dumps(obj: Union[UbCertificate, LbWitness]) -> str:
    return json.dumps(to_doc(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)


def loads(text: str) -> Union[UbCertificate, LbWitness]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("certificate must be a JSON object")
    return from_doc(doc)


def write(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def read(path):
    return loads(Path(path).read_text())
