"""Command-line driver: ``dynparam {run,gen,bench,oracle}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path

from . import adversary as adv
from .errors import DynParamError, IncompatibleSpec
from .graph import INF, DynamicGraph, EdgeUpdate, Param
from .grid import bounds, grid_init
from .oracle import oracle
from .stream import EstimateRecord, QueryMark, format_stream, parse_stream, write_report

GADGETS = ("diam32", "radius32", "ecc53", "2approx", "directed-ecc", "directed-radius",
           "kcycle")

BENCH_COLUMNS = ("event_index", "event", "seconds", "work_sample", "work_pivot", "work_set",
                 "work_centers", "work_select", "work_total", "cells", "reinit_count", "phase")


# -- run -------------------------------------------------------------------------
def _check(param, alg, eps, est, truth):
    """``(lower, upper, ok)`` for one estimate against the exact value."""
    if truth is INF:
        if param is Param.RADIUS:
            return None, INF, est is INF
        return None, INF, True
    lo, hi = bounds(param, alg, eps, truth)
    if est is INF:
        return lo, hi, False
    tol = 1e-9
    return lo, hi, lo - tol <= est <= hi + tol


def _records(state, param, alg, eps, g, event_index, verify):
    est = state.query()
    truth = None
    if verify:
        res = oracle(g)
        truth = (res.diameter if param is Param.DIAMETER else
                 res.radius if param is Param.RADIUS else res.ecc_out)
    if param is Param.ECCENTRICITIES:
        items = [(f"ecc[{v}]", e, truth[v] if verify else None) for v, e in enumerate(est)]
    else:
        items = [(param.value, est, truth)]
    out = []
    for name, e, t in items:
        rec = EstimateRecord(event_index, name, e, reinit_count=state.reinit_count,
                             phase=state.phase)
        if verify:
            rec.oracle = t
            rec.lower_bound, rec.upper_bound, rec.ok = _check(param, alg, eps, e, t)
        out.append(rec)
    return out


def replay(stream, alg, param, eps, seed=0, verify="query"):
    """Run a stream through a grid; returns the report records."""
    param = Param(param)
    g = stream.initial_graph()
    state = grid_init(g, param, eps, stream.mode, seed=seed, alg=alg)
    checking = verify != "none"
    records = []
    index = 0
    for ev in stream.events:
        if isinstance(ev, EdgeUpdate):
            g.apply(ev)
            state.apply(ev)
            index += 1
            if verify == "event":
                records += _records(state, param, alg, eps, g, index, True)
        elif isinstance(ev, QueryMark) and verify != "event":
            records += _records(state, param, alg, eps, g, index, checking)
    return records


def cmd_run(args):
    stream = parse_stream(Path(args.stream).read_text(encoding="utf-8"))
    records = replay(stream, args.alg, args.param, args.eps, args.seed, args.verify)
    _emit(args.output, write_report(records))
    failed = sum(1 for r in records if r.ok is False)
    if failed:
        print(f"{failed} of {len(records)} rows violate the guarantee", file=sys.stderr)
    return 1 if failed else 0


# -- gen ------------------------------------------------------------------------------
def _load_instance(path, problem):
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return adv.OvInstance(data["U"], data["V"], data.get("W"), problem=problem)


def build_gadget(kind, eps=None, seed=0, random_ov=None, instance=None, k=3, n=5, p=0.4,
                 polarity=adv.INCREMENTAL):
    rng = random.Random(seed)
    if kind == "kcycle":
        if instance:
            data = json.loads(Path(instance).read_text(encoding="utf-8"))
            g = DynamicGraph(data["n"], True, [tuple(e) for e in data["edges"]])
        else:
            g = DynamicGraph(n, True, [(u, v) for u in range(n) for v in range(n)
                                       if u != v and rng.random() < p])
        return adv.gen_kcycle(g, k, polarity)
    problem = {"radius32": "3hs", "directed-radius": "3hs", "2approx": "2ov"}.get(kind, "3ov")
    if instance:
        inst = _load_instance(instance, problem)
    else:
        sizes = random_ov or ([4, 4, 4, 3] if problem != "2ov" else [4, 4, 3])
        want = 3 if problem == "2ov" else 4
        if len(sizes) != want:
            raise IncompatibleSpec(f"--random-ov for {kind} takes {want} numbers")
        inst = adv.random_instance(rng, tuple(sizes[:-1]), sizes[-1], problem=problem)
    kw = {"polarity": polarity}
    if eps is not None:
        kw["eps"] = eps
    if kind == "diam32":
        return adv.gen_diam32(inst, **kw)
    if kind == "radius32":
        return adv.gen_radius32(inst, **kw)
    if kind == "ecc53":
        return adv.gen_ecc53(inst, **kw)
    if kind == "2approx":
        return adv.gen_2approx(inst, **kw)
    param = Param.ECCENTRICITIES if kind == "directed-ecc" else Param.RADIUS
    return adv.gen_directed(inst, param=param, **kw)


def cmd_gen(args):
    gi = build_gadget(args.kind, args.eps, args.seed, args.random_ov, args.instance, args.k,
                      args.n, args.p, args.polarity)
    if args.certify:
        adv.certify(gi)
    stream = adv.to_stream(gi, args.stage)
    prefix = Path(args.output)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.stream").write_text(format_stream(stream), encoding="utf-8")
    Path(f"{prefix}.jsonl").write_text(adv.sidecar(gi), encoding="utf-8")
    print(f"{gi.name}: n={gi.base_graph.n} m={gi.base_graph.m} stages={len(gi.stages)} "
          f"a={gi.a} -> {prefix}.stream, {prefix}.jsonl")
    return 0


# -- bench ----------------------------------------------------------------------------
def bench_rows(stream, alg, param, eps, seed=0):
    g = stream.initial_graph()
    state = grid_init(g, param, eps, stream.mode, seed=seed, alg=alg)
    rows = []
    index = 0
    for ev in stream.events:
        if not isinstance(ev, EdgeUpdate):
            continue
        t0 = time.perf_counter()
        state.apply(ev)
        dt = time.perf_counter() - t0
        index += 1
        work = state.work
        row = {"event_index": index, "event": f"{ev.kind.name.lower()} {ev.u} {ev.v}",
               "seconds": f"{dt:.6f}", "cells": len(state.cells),
               "reinit_count": state.reinit_count, "phase": state.phase}
        for key in ("sample", "pivot", "set", "centers", "select"):
            row[f"work_{key}"] = work.get(key, 0)
        row["work_total"] = sum(work.values())
        rows.append(row)
    return rows


def cmd_bench(args):
    stream = parse_stream(Path(args.stream).read_text(encoding="utf-8"))
    rows = bench_rows(stream, args.alg, args.param, args.eps, args.seed)
    buf = io.StringIO()
    w = csv.DictWriter(buf, BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(args.output, buf.getvalue())
    return 0


# -- oracle ---------------------------------------------------------------------------
def _json_value(x):
    return "inf" if x is INF else x


def cmd_oracle(args):
    stream = parse_stream(Path(args.stream).read_text(encoding="utf-8"))
    g = stream.initial_graph()
    lines = []
    index = 0

    def record():
        res = oracle(g)
        lines.append(json.dumps({"event_index": index,
                                 "diameter": _json_value(res.diameter),
                                 "radius": _json_value(res.radius),
                                 "ecc_out": [_json_value(x) for x in res.ecc_out]}))

    for ev in stream.events:
        if isinstance(ev, EdgeUpdate):
            g.apply(ev)
            index += 1
        elif isinstance(ev, QueryMark):
            record()
    _emit(args.output, "\n".join(lines) + ("\n" if lines else ""))
    return 0


# -- plumbing -------------------------------------------------------------------------
def _emit(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _estimator_args(p):
    p.add_argument("stream", help="update-stream file")
    p.add_argument("--alg", choices=("rand", "det"), default="rand")
    p.add_argument("--param", choices=[x.value for x in Param], default="diameter")
    p.add_argument("--eps", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")


def build_parser():
    ap = argparse.ArgumentParser(prog="dynparam",
                                 description="Dynamic diameter, radius and eccentricity estimation")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a stream and verify estimates")
    _estimator_args(run)
    run.add_argument("--verify", choices=("query", "event", "none"), default="query",
                     help="oracle check at query marks (default), after every update, or never")
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="generate a certified worst-case instance")
    gen.add_argument("kind", choices=GADGETS)
    gen.add_argument("--eps", type=float, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--random-ov", type=int, nargs="+", metavar="N",
                     help="set sizes then dimension, e.g. 4 4 4 3 (2approx: 4 4 3)")
    gen.add_argument("--instance", help="JSON seed instance (U, V, W or n, edges)")
    gen.add_argument("--k", type=int, default=3)
    gen.add_argument("--n", type=int, default=5)
    gen.add_argument("--p", type=float, default=0.4)
    gen.add_argument("--polarity", choices=(adv.INCREMENTAL, adv.DECREMENTAL),
                     default=adv.INCREMENTAL)
    gen.add_argument("--stage", type=int, default=None,
                     help="export one stage as a partially dynamic stream")
    gen.add_argument("--certify", action="store_true")
    gen.add_argument("-o", "--output", default="gadget")
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="per-event timing and work counters")
    _estimator_args(bench)
    bench.set_defaults(func=cmd_bench)

    orc = sub.add_parser("oracle", help="exact values at every query mark")
    orc.add_argument("stream")
    orc.add_argument("-o", "--output", default="-")
    orc.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DynParamError as exc:
        print(f"dynparam: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
