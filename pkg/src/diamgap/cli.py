"""Command-line workbench: ``diamgap <subcommand> ...``.

Each command prints one JSON object per result on stdout and returns 0
exactly when its postcondition holds.  Sweeps write CSV.  Diagnostics go
to stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import certificates as cert_mod
from ._config import size_budget as default_size_budget
from .approx import two_approx
from .certificates import CertParams, LbWitness, Mode
from .errors import DiamgapError, GenerationFailure
from .graph import UNREACHABLE, Graph, exact_diameter, read_graph
from .hopsets import (
    build_undirected_hopset,
    exhaustive_hopset,
    minimal_hopbound,
    read_hopset,
    verify_additive_hopbound,
    verify_distance_preservation,
    write_hopset,
)
from .ov import add_all_ones, brute_force, gen_random, plant, read_ov, write_ov
from .reductions import build_directed_gadget, build_undirected_gadget, export_gadget

GAP_COLUMNS = ["k", "n", "d", "seed", "planted", "ov_solution", "diameter", "gap_ok"]
CERT_COLUMNS = ["graph", "n", "m", "k", "D", "D_prime", "mode", "variant", "accepted", "reason", "seconds"]


def _num(x: float):
    if x == UNREACHABLE:
        return "UNREACHABLE"
    return int(x) if float(x).is_integer() else float(x)


def _emit(record: dict) -> None:
    print(json.dumps(record, sort_keys=True))


def _warn(msg: str) -> None:
    print(f"diamgap: {msg}", file=sys.stderr)


# ---- commands -----------------------------------------------------------------


def cmd_gen_ov(a) -> int:
    inst = gen_random(a.n, a.d, a.p_one, a.seed)
    if a.plant:
        inst = plant(inst, a.plant, a.seed)
    write_ov(inst, a.out)
    _emit({"command": "gen-ov", "out": str(a.out), "n": inst.size, "d": inst.dim})
    return 0


def cmd_solve_ov(a) -> int:
    inst = read_ov(a.instance)
    w = brute_force(inst, a.k)
    _emit({"command": "solve-ov", "k": a.k, "solution": None if w is None else list(w)})
    return 0


def cmd_reduce(a) -> int:
    inst = read_ov(a.instance)
    if a.variant == "undirected":
        if a.k not in (None, 3):
            _warn("the undirected gadget has a fixed gap of 3 vs 5; ignoring --k")
        gg = build_undirected_gadget(inst, size_budget=a.size_budget)
    else:
        gg = build_directed_gadget(inst, 3 if a.k is None else a.k, size_budget=a.size_budget)
    export_gadget(gg, a.out_prefix)
    _emit({
        "command": "reduce",
        "variant": a.variant,
        "k": gg.k,
        "n": gg.graph.n,
        "m": gg.graph.m,
        "graph": f"{a.out_prefix}.graph",
        "map": f"{a.out_prefix}.map",
    })
    return 0


def cmd_diameter(a) -> int:
    g = read_graph(a.graph)
    t0 = time.perf_counter()
    if a.mode == "exact":
        value = exact_diameter(g)
        rec = {"mode": "exact", "value": _num(value)}
    else:
        res = two_approx(g, a.probe)
        rec = {"mode": "two-approx", "lower": _num(res.lower), "upper": _num(res.upper)}
    rec.update(command="diameter", runtime=round(time.perf_counter() - t0, 6))
    _emit(rec)
    return 0


def _builder_for(a):
    if a.hopset:
        fixed = read_hopset(a.hopset)
        return lambda g, eps, seed: fixed
    if a.exhaustive:
        return lambda g, eps, seed: exhaustive_hopset(g, a.size_budget)
    return lambda g, eps, seed: (
        exhaustive_hopset(g, a.size_budget) if g.directed else build_undirected_hopset(g, a.delta, eps, seed)
    )


def cmd_certify(a) -> int:
    g = read_graph(a.graph)
    if a.kind == "lb":
        w = cert_mod.generate_lb(g, a.D)
        if w is None:
            _emit({"command": "certify", "kind": "lb", "status": "no_witness", "D": a.D})
            return 1
        cert_mod.write(w, a.out)
        _emit({"command": "certify", "kind": "lb", "status": "ok", "vertex": w.vertex, "out": str(a.out)})
        return 0
    params = CertParams(a.k, a.D, a.epsilon)
    mode = Mode(a.mode)
    try:
        cert = cert_mod.generate_ub_certificate(g, params, mode, _builder_for(a), a.seed)
    except GenerationFailure as exc:
        _emit({"command": "certify", "kind": "ub", "status": "generation_failure", "reason": str(exc)})
        return 1
    cert_mod.write(cert, a.out)
    _emit({
        "command": "certify",
        "kind": "ub",
        "status": "ok",
        "variant": cert.variant.value,
        "D_prime": params.D_prime,
        "out": str(a.out),
    })
    return 0


def cmd_verify(a) -> int:
    g = read_graph(a.graph)
    obj = cert_mod.read(a.certificate)
    if isinstance(obj, LbWitness):
        if a.D is None:
            _warn("verifying a lower-bound witness needs --D")
            return 2
        verdict = cert_mod.verify_lb(g, obj, a.D)
        _emit({"command": "verify", "kind": "lb", "verdict": "ACCEPT" if verdict else "REJECT",
               "reason": verdict.reason, "D": a.D})
        return 0 if verdict else 1
    params = obj.params
    if a.D is not None or a.k is not None or a.epsilon is not None:
        params = CertParams(
            params.k if a.k is None else a.k,
            params.D if a.D is None else a.D,
            params.epsilon if a.epsilon is None else a.epsilon,
        )
    verdict = cert_mod.verify_ub(g, obj, params)
    _emit({
        "command": "verify",
        "kind": "ub",
        "verdict": "ACCEPT" if verdict else "REJECT",
        "reason": verdict.reason,
        "D_prime": params.D_prime,
    })
    return 0 if verdict else 1


def cmd_hopset_build(a) -> int:
    g = read_graph(a.graph)
    if a.exhaustive or g.directed:
        if g.directed and not a.exhaustive:
            _warn("directed input: using the exhaustive all-pairs hopset")
        h = exhaustive_hopset(g, a.size_budget)
    else:
        h = build_undirected_hopset(g, a.delta, a.epsilon, a.seed)
    write_hopset(h, a.out)
    _emit({"command": "hopset-build", "shortcuts": len(h), "beta": h.claimed_beta,
           "epsilon": h.claimed_epsilon, "out": str(a.out)})
    return 0


def cmd_hopset_verify(a) -> int:
    g = read_graph(a.graph)
    h = read_hopset(a.hopset)
    beta = h.claimed_beta if a.beta is None else a.beta
    eps = h.claimed_epsilon if a.epsilon is None else a.epsilon
    preserves = verify_distance_preservation(g, h)
    hopbound = verify_additive_hopbound(g, h, beta, eps)
    rec = {"command": "hopset-verify", "beta": beta, "epsilon": eps,
           "distance_preserving": preserves, "hopbound": hopbound}
    if a.minimal:
        rec["minimal_beta"] = minimal_hopbound(g, h, eps)
    _emit(rec)
    return 0 if preserves and hopbound else 1


def _gap_row(k: int, n: int, d: int, seed: int, planted: bool, variant: str, p_one: float, budget: int):
    inst = gen_random(n, d, p_one, seed)
    if planted:
        inst = plant(inst, 3 if variant == "undirected" else k, seed)
    if variant == "undirected":
        gg = build_undirected_gadget(inst, size_budget=budget)
        sol = brute_force(add_all_ones(inst), 3)
        low, high = 5, 3
    else:
        gg = build_directed_gadget(inst, k, size_budget=budget)
        sol = brute_force(inst, k)
        low, high = 2 * k - 1, k
    diam = exact_diameter(gg.graph)
    ok = diam >= low if sol is not None else diam <= high
    return {
        "k": gg.k,
        "n": n,
        "d": d,
        "seed": seed,
        "planted": "true" if planted else "false",
        "ov_solution": "none" if sol is None else "-".join(map(str, sol)),
        "diameter": "UNREACHABLE" if diam == UNREACHABLE else str(_num(diam)),
        "gap_ok": "true" if ok else "false",
    }


def cmd_experiment_gap(a) -> int:
    rows = []
    index = 0
    for k in a.k:
        for n in a.n:
            for d in a.d:
                for trial in range(a.trials):
                    seed = a.seed + index
                    index += 1
                    rows.append(_gap_row(k, n, d, seed, trial % 2 == 1, a.variant, a.p_one, a.size_budget))
    rows.sort(key=lambda r: (r["k"], r["n"], r["d"], r["seed"]))
    violations = sum(r["gap_ok"] != "true" for r in rows)
    with open(a.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=GAP_COLUMNS)
        w.writeheader()
        w.writerows(rows)
        w.writerow({
            "k": "summary", "n": len(rows), "d": "", "seed": "", "planted": "",
            "ov_solution": "", "diameter": f"violations={violations}",
            "gap_ok": "true" if violations == 0 else "false",
        })
    _emit({"command": "experiment-gap", "rows": len(rows), "violations": violations, "out": str(a.out)})
    return 0 if violations == 0 else 1


def cmd_experiment_cert(a) -> int:
    rows = []
    soundness_violations = 0
    for i in range(a.graphs):
        rng = np.random.default_rng(a.seed + i)
        n = int(rng.integers(max(2, a.n_max // 4), a.n_max + 1))
        order = rng.permutation(n)
        extra = int(n * a.density)
        src = np.concatenate([order, rng.integers(0, n, size=extra)])
        dst = np.concatenate([np.roll(order, -1), rng.integers(0, n, size=extra)])
        keep = src != dst
        g = Graph.from_arrays(n, src[keep], dst[keep])
        D = exact_diameter(g)
        for k in a.k:
            params = CertParams(k, D, a.epsilon)
            t0 = time.perf_counter()
            try:
                cert = cert_mod.generate_ub_certificate(g, params, Mode(a.mode), seed=a.seed + i)
                verdict = cert_mod.verify_ub(g, cert, params)
                variant, accepted, reason = cert.variant.value, bool(verdict), verdict.reason
            except GenerationFailure as exc:
                variant, accepted, reason = "", False, f"generation_failure: {exc}"
            if accepted and not D < params.D_prime:
                soundness_violations += 1
            rows.append({
                "graph": i, "n": n, "m": g.m, "k": k, "D": _num(D), "D_prime": params.D_prime,
                "mode": a.mode, "variant": variant, "accepted": "true" if accepted else "false",
                "reason": reason, "seconds": round(time.perf_counter() - t0, 4),
            })
    with open(a.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CERT_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    accepted = sum(r["accepted"] == "true" for r in rows)
    _emit({"command": "experiment-cert", "runs": len(rows), "accepted": accepted,
           "soundness_violations": soundness_violations, "out": str(a.out)})
    return 0 if soundness_violations == 0 else 1


# ---- parser -------------------------------------------------------------------


def _probability(text: str) -> float:
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return x


def _positive_int(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return x


def _positive_float(text: str) -> float:
    x = float(text)
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError("must be a positive real")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diamgap", description=__doc__.splitlines()[0])
    p.add_argument("--size-budget", type=_positive_int, default=None,
                   help="vertex+edge cap for gadgets and n^2 cap for exhaustive hopsets "
                        "(default: $DIAMGAP_SIZE_BUDGET or 2000000)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen-ov", help="write a random OV instance")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--d", type=_positive_int, required=True)
    s.add_argument("--p-one", type=_probability, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--plant", type=int, default=0, metavar="K", help="plant an orthogonal K-tuple")
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_gen_ov)

    s = sub.add_parser("solve-ov", help="brute-force k-OV")
    s.add_argument("instance", type=Path)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_solve_ov)

    s = sub.add_parser("reduce", help="build a hardness gadget from an OV instance")
    s.add_argument("instance", type=Path)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--variant", choices=["directed", "undirected"], default="directed")
    s.add_argument("--out-prefix", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("diameter", help="exact diameter or the 2-approximation")
    s.add_argument("graph", type=Path)
    s.add_argument("--mode", choices=["exact", "two-approx"], default="exact")
    s.add_argument("--probe", type=int, default=None)
    s.set_defaults(func=cmd_diameter)

    s = sub.add_parser("certify", help="generate an upper-bound certificate or lower-bound witness")
    s.add_argument("graph", type=Path)
    s.add_argument("--D", type=_positive_float, required=True)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--epsilon", type=_positive_float, default=0.5)
    s.add_argument("--mode", choices=[m.value for m in Mode], default="unweighted")
    s.add_argument("--kind", choices=["ub", "lb"], default="ub")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delta", type=float, default=0.5, help="hopset level parameter (undirected)")
    s.add_argument("--exhaustive", action="store_true", help="use the all-pairs hopset")
    s.add_argument("--hopset", type=Path, default=None, help="use a prebuilt hopset file")
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("verify", help="check a certificate or witness")
    s.add_argument("graph", type=Path)
    s.add_argument("certificate", type=Path)
    s.add_argument("--D", type=_positive_float, default=None)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--epsilon", type=_positive_float, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hopset-build", help="build a hopset")
    s.add_argument("graph", type=Path)
    s.add_argument("--delta", type=float, default=0.5)
    s.add_argument("--epsilon", type=float, default=0.3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_hopset_build)

    s = sub.add_parser("hopset-verify", help="check distance preservation and the hop bound")
    s.add_argument("graph", type=Path)
    s.add_argument("hopset", type=Path)
    s.add_argument("--beta", type=_positive_int, default=None)
    s.add_argument("--epsilon", type=float, default=None)
    s.add_argument("--minimal", action="store_true", help="also report the smallest working beta")
    s.set_defaults(func=cmd_hopset_verify)

    s = sub.add_parser("experiment-gap", help="sweep gadget gaps against the OV oracle")
    s.add_argument("--k", type=int, nargs="+", required=True)
    s.add_argument("--n", type=_positive_int, nargs="+", required=True)
    s.add_argument("--d", type=_positive_int, nargs="+", default=[6])
    s.add_argument("--trials", type=_positive_int, default=10)
    s.add_argument("--p-one", type=_probability, default=0.8)
    s.add_argument("--variant", choices=["directed", "undirected"], default="directed")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_experiment_gap)

    s = sub.add_parser("experiment-cert", help="certifier completeness sweep on random digraphs")
    s.add_argument("--graphs", type=_positive_int, default=20)
    s.add_argument("--n-max", type=_positive_int, default=100)
    s.add_argument("--density", type=float, default=1.0, help="extra random edges per vertex")
    s.add_argument("--k", type=int, nargs="+", default=[2, 3])
    s.add_argument("--epsilon", type=_positive_float, default=0.5)
    s.add_argument("--mode", choices=[m.value for m in Mode], default="unweighted")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_experiment_cert)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.size_budget is None:
        a.size_budget = default_size_budget()
    if getattr(a, "k", None) is not None and a.command == "experiment-gap":
        if a.variant == "directed" and any(k < 3 for k in a.k):
            parser.error("directed gadgets need every k >= 3")
    try:
        return a.func(a)
    except (DiamgapError, OSError) as exc:
        _emit({"command": a.command, "status": "error", "error": type(exc).__name__, "reason": str(exc)})
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
