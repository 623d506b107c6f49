"""Acceptance criteria, each checked against the brute-force oracle.

Every test records one PASS/FAIL line that is printed in the terminal
summary (see conftest.py).  Sizes are desk scale; see the README.
"""
import functools
import random
import time

from conftest import ACCEPTANCE
from dynparam import adversary as adv
from dynparam.deterministic import DeterministicEstimator, top_scc
from dynparam.errors import CertificationError, DegenerateInstance
from dynparam.graph import INF, DynamicGraph, Direction, EdgeUpdate, Mode, Param, bfs_truncated
from dynparam.grid import grid_init
from dynparam.oracle import oracle
from dynparam.sssp import EsTree, set_source

from helpers import connected_stream, random_stream, rng_for

INC, DEC = Mode.INCREMENTAL, Mode.DECREMENTAL
TOL = 1e-9
SEEDS = 100


def record(num, title, ok, detail, started):
    line = f"criterion {num} ({title}): {'PASS' if ok else 'FAIL'} | {detail} | {time.time() - started:.1f}s"
    ACCEPTANCE[num] = line
    print(line)
    return ok


def updates(stream):
    return [e for e in stream.events if isinstance(e, EdgeUpdate)]


def truths(stream):
    """Oracle results at the start and after every update, computed once."""
    g = stream.initial_graph()
    out = [oracle(g)]
    for ev in updates(stream):
        g.apply(ev)
        out.append(oracle(g))
    for o in out:
        o.dist = None  # keep the cache small
    return out


# -- 1. SSSP oracle equivalence ---------------------------------------------------------

def test_criterion_1_sssp_oracle_equivalence():
    t0 = time.time()
    bad = 0
    checks = 0
    for i in range(200):
        r = rng_for("acc1", i)
        n = r.randint(2, 64)
        directed = i % 2 == 0
        mode = INC if i % 4 < 2 else DEC
        stream = random_stream(n, directed, mode, r.randint(1, 300), r,
                               p=min(0.5, 6 / n), query_every=0)
        g = stream.initial_graph()
        cap = r.choice([None, r.randint(0, n)])
        src = r.randrange(n)
        members = set(r.sample(range(n), r.randint(1, min(n, 4))))
        trees = [(EsTree(g, src, d, cap, mode), src, d) for d in Direction]
        trees += [(set_source(g, members, d, cap, mode), members, d) for d in Direction]
        for ev in [None] + updates(stream):
            if ev is not None:
                g.apply(ev)
                for t, _, _ in trees:
                    (t.insert if ev.kind.value == "+" else t.delete)(ev.u, ev.v)
            for t, s, d in trees:
                if isinstance(s, int):
                    want = bfs_truncated(g, s, d, cap)
                else:
                    cols = [bfs_truncated(g, m, d, cap) for m in s]
                    want = [min(c[v] for c in cols) for v in range(n)]
                checks += 1
                bad += t.levels() != want
    took = time.time() - t0
    ok = bad == 0 and took < 60
    assert record(1, "SSSP oracle equivalence", ok,
                  f"{checks} level vectors, {bad} mismatches, limit 60s", t0)


# -- 2, 3, 4, 8. randomized grids ------------------------------------------------------------

def _rand_streams(tag, count, directed_every=0, big=0):
    out = []
    for i in range(count):
        for mode in (DEC, INC):
            r = rng_for(tag, i, mode.value)
            # the first decremental stream runs at the largest allowed size
            n = big if big and i == 0 and mode is DEC else r.randint(6, 36)
            directed = bool(directed_every) and i % directed_every == directed_every - 1
            if i % 2:
                s = random_stream(n, directed, mode, r.randint(n // 2, n), r, p=0.3,
                                  query_every=0)
            else:
                s = connected_stream(n, directed, mode, r.randint(n // 2, min(n, 60)), r)
            out.append(s)
    return out


def _holds(param, eps, est, o):
    if param is Param.DIAMETER:
        D = o.diameter
        return est <= D and (D is INF or est >= 2 * (1 - eps) / 3 * D - 2 / 3 - TOL)
    if param is Param.RADIUS:
        R = o.radius
        if R is INF:
            return est is INF
        return est is not INF and R <= est <= (1 + eps) * (3 * R / 2 + 0.5) + TOL
    return all(x <= e and (e is INF or x >= 3 * (1 - eps) / 5 * e - 1 - TOL)
               for x, e in zip(est, o.ecc_out))


def _run_seed(stream, truth, param, eps, seed):
    g = stream.initial_graph()
    state = grid_init(g, param, eps, stream.mode, seed=seed)
    ok = _holds(param, eps, state.query(), truth[0])
    top_phase = state.phase
    for ev, o in zip(updates(stream), truth[1:]):
        state.apply(ev)
        ok = ok and _holds(param, eps, state.query(), o)
        top_phase = max(top_phase, state.phase)
    return ok, state.reinit_count, top_phase


@functools.lru_cache(maxsize=None)
def rand_campaign(param, n_streams, seeds, eps_choices):
    """Per stream: (mode, eps, passing seeds, seeds with no reinit, max phase)."""
    streams = _rand_streams(f"acc-{param.value}", n_streams,
                            directed_every=4 if param is Param.DIAMETER else 0,
                            big=0 if param is Param.ECCENTRICITIES else 120)
    rows = []
    for i, s in enumerate(streams):
        eps = eps_choices[(i // 2) % len(eps_choices)]
        truth = truths(s)
        passing = clean = 0
        top_phase = 0
        for seed in range(seeds):
            ok, reinits, ph = _run_seed(s, truth, param, eps, seed)
            passing += ok
            clean += reinits == 0
            top_phase = max(top_phase, ph)
        rows.append((s.mode, eps, passing, clean, top_phase))
    return rows


def _campaign_verdict(rows, seeds):
    need = seeds - seeds // 100
    worst = min(r[2] for r in rows)
    return worst >= need, f"{len(rows)} streams x {seeds} seeds, worst stream {worst}/{seeds} (need {need})"


def test_criterion_2_randomized_diameter():
    t0 = time.time()
    rows = rand_campaign(Param.DIAMETER, 20, SEEDS, (0.2, 0.4))
    ok, detail = _campaign_verdict(rows, SEEDS)
    assert record(2, "randomized diameter", ok, detail, t0)


def test_criterion_3_randomized_radius():
    t0 = time.time()
    rows = rand_campaign(Param.RADIUS, 20, SEEDS, (0.2, 0.4))
    ok, detail = _campaign_verdict(rows, SEEDS)
    assert record(3, "randomized radius", ok, detail, t0)


ECC_SEEDS = 20


def test_criterion_4_randomized_eccentricities():
    t0 = time.time()
    rows = rand_campaign(Param.ECCENTRICITIES, 10, ECC_SEEDS, (0.3,))
    ok, detail = _campaign_verdict(rows, ECC_SEEDS)
    assert record(4, "randomized eccentricities", ok, detail, t0)


def test_criterion_8_phases_and_reinit():
    t0 = time.time()
    rows = rand_campaign(Param.DIAMETER, 20, SEEDS, (0.2, 0.4))
    dec_phase = max(r[4] for r in rows if r[0] is DEC)
    runs = sum(SEEDS for _ in rows)
    clean = sum(r[3] for r in rows)
    ok = dec_phase <= 1 and clean >= 0.95 * runs
    assert record(8, "phases and reinitialisation", ok,
                  f"max decremental phase {dec_phase}, reinit-free runs {clean}/{runs} "
                  f"({100 * clean / runs:.1f}%, need 95%)", t0)


# -- 5. deterministic grids -------------------------------------------------------------

def _det_trace(stream, param, eps):
    g = stream.initial_graph()
    state = grid_init(g, param, eps, INC, alg="det")
    trace = [state.query()]
    for ev in updates(stream):
        state.apply(ev)
        trace.append(state.query())
    return trace


def _det_holds(param, eps, est, o):
    if param is Param.DIAMETER:
        return (1 - eps) * o.diameter - TOL <= est <= o.diameter
    if param is Param.RADIUS:
        return est is not INF and o.radius <= est <= (1 + eps) * o.radius + TOL
    return all((1 - eps) * e - TOL <= x <= e for x, e in zip(est, o.ecc_out))


def test_criterion_5_deterministic_incremental():
    t0 = time.time()
    checks = bad = unstable = 0
    for i in range(60):
        r = rng_for("acc5", i)
        n = r.randint(3, 40)
        s = connected_stream(n, True, INC, r.randint(n, 3 * n), r)
        truth = truths(s)
        eps = (0.4, 1.0)[i % 2]
        for param in Param:
            trace = _det_trace(s, param, eps)
            unstable += repr(trace) != repr(_det_trace(s, param, eps))
            for est, o in zip(trace, truth):
                checks += 1
                bad += not _det_holds(param, eps, est, o)
    ok = bad == 0 and unstable == 0
    assert record(5, "deterministic incremental", ok,
                  f"{checks} checkpoints, {bad} violations, {unstable} non-identical reruns", t0)


# -- 6. center coverage and count ---------------------------------------------------------

def test_criterion_6_center_coverage_and_count():
    t0 = time.time()
    checks = uncovered = too_many = 0
    for i in range(80):
        r = rng_for("acc6", i)
        n = r.randint(2, 40)
        param = (Param.DIAMETER, Param.RADIUS)[i % 2]
        if param is Param.RADIUS:
            # not strongly connected: the top component grows as edges arrive
            s = random_stream(n, True, INC, 2 * n, r, p=0.15, query_every=0)
        else:
            s = connected_stream(n, True, INC, 2 * n, r)
        g = s.initial_graph()
        guess = r.randint(1, n)
        eps = r.choice([0.2, 0.5, 1.0, 1.5])
        e = DeterministicEstimator(g.copy(), param, guess, eps)
        for ev in [None] + updates(s):
            if ev is not None:
                g.apply(ev)
                e.apply(ev)
            scope = e.H if param is Param.RADIUS else set(range(n))
            assert scope == (top_scc(g) if param is Param.RADIUS else scope)
            dist = oracle(g).dist
            cs = e.centers
            checks += 1
            uncovered += any(dist[cs.label[u]][u] > e.eps_prime * guess for u in scope)
            too_many += len(cs.centers) > 2 * n / (e.eps_prime * guess) + 1
    ok = uncovered == 0 and too_many == 0
    assert record(6, "center coverage and count", ok,
                  f"{checks} center sets, {uncovered} uncovered, {too_many} over the count bound", t0)


# -- 7. gadget certification ----------------------------------------------------------------

def test_criterion_7_gadget_certification():
    t0 = time.time()
    r = random.Random(7)
    kinds = ("diam32", "radius32", "ecc53", "2approx", "directed-ecc", "directed-radius")
    certified = stages = 0
    failures = []
    for trial in range(40):
        for kind in kinds:
            for polarity in (adv.INCREMENTAL, adv.DECREMENTAL):
                problem = {"radius32": "3hs", "directed-radius": "3hs",
                           "2approx": "2ov"}.get(kind, "3ov")
                d = r.randint(2, 5)
                sizes = tuple(r.randint(1, 6) for _ in range(2 if problem == "2ov" else 3))
                inst = adv.random_instance(r, sizes, d, p=r.choice([0.4, 0.6]), problem=problem)
                if trial % 2 and problem == "3ov":
                    planted = adv.plant_orthogonal(inst, r.randrange(len(inst.W)), r)
                    try:
                        adv.clean(planted)
                        inst = planted
                    except DegenerateInstance:
                        pass
                eps = {"diam32": 0.1, "radius32": 0.1, "ecc53": 0.1}.get(kind, 0.5)
                gi = _gadget(kind, inst, eps, polarity)
                try:
                    rep = adv.certify(gi)
                    certified += 1
                    stages += len(rep.rows)
                except CertificationError as exc:
                    failures.append(f"{kind}/{polarity}: {exc}")
        for polarity in (adv.INCREMENTAL, adv.DECREMENTAL):
            n = r.randint(2, 6)
            g = DynamicGraph(n, True, [(u, v) for u in range(n) for v in range(n)
                                       if u != v and r.random() < 0.4])
            try:
                rep = adv.certify(adv.gen_kcycle(g, r.randint(2, 4), polarity))
                certified += 1
                stages += len(rep.rows)
            except CertificationError as exc:
                failures.append(f"kcycle/{polarity}: {exc}")
    took = time.time() - t0
    ok = not failures and took < 120
    assert record(7, "gadget certification", ok,
                  f"{certified} instances, {stages} stages, {len(failures)} failures, limit 120s",
                  t0), failures[:3]


def _gadget(kind, inst, eps, polarity):
    if kind == "diam32":
        return adv.gen_diam32(inst, eps, polarity=polarity)
    if kind == "radius32":
        return adv.gen_radius32(inst, eps, polarity=polarity)
    if kind == "ecc53":
        return adv.gen_ecc53(inst, eps, polarity=polarity)
    if kind == "2approx":
        return adv.gen_2approx(inst, eps, polarity=polarity)
    param = Param.ECCENTRICITIES if kind == "directed-ecc" else Param.RADIUS
    return adv.gen_directed(inst, eps, param=param, polarity=polarity)


# -- 9. work scaling ---------------------------------------------------------------------------

def test_criterion_9_work_scaling():
    t0 = time.time()
    graphs = []
    for seed in range(8):
        r = rng_for("acc9", seed)
        n = 400
        edges = {tuple(sorted((r.randrange(n), r.randrange(n)))) for _ in range(3 * n)}
        edges = sorted(e for e in edges if e[0] != e[1])
        order = edges[:]
        r.shuffle(order)
        graphs.append((DynamicGraph(n, False, edges), order, r.randrange(n)))
    fitted = {}
    for cap in (4, 8, 16):
        work = scale = 0
        for g0, order, src in graphs:
            g = g0.copy()
            t = EsTree(g, src, cap=cap, mode=DEC)
            for u, v in order:
                g.remove_edge(u, v)
                t.delete(u, v)
            work += t.work
            scale += (g0.m + g0.n) * cap
        fitted[cap] = work / scale
    spread = max(fitted.values()) / min(fitted.values())
    ok = spread <= 2
    detail = ", ".join(f"c({k})={v:.3f}" for k, v in fitted.items())
    assert record(9, "work scaling", ok, f"{detail}, spread {spread:.2f} (limit 2)", t0)

