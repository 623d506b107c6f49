"""Delete random edges from a connected graph and watch the diameter estimate.

    python demos/decremental_diameter.py [n] [seed]
"""
import random
import sys

from dynparam import EdgeUpdate, DynamicGraph, Mode, Param, bounds, grid_init, oracle


def main(n=60, seed=1):
    rng = random.Random(seed)
    ring = [(i, (i + 1) % n) for i in range(n)]
    extra = {tuple(sorted(rng.sample(range(n), 2))) for _ in range(2 * n)} - {
        tuple(sorted(e)) for e in ring}
    g = DynamicGraph(n, False, ring + sorted(extra))
    state = grid_init(g, Param.DIAMETER, 0.3, Mode.DECREMENTAL, seed=seed)
    print(f"n={n} m={g.m} cells={state.guesses}")
    print(f"{'step':>4} {'m':>4} {'D':>3} {'est':>4}  bracket")
    doomed = sorted(extra)
    rng.shuffle(doomed)
    for step, (u, v) in enumerate(doomed, 1):
        up = EdgeUpdate.delete(u, v)
        g.apply(up)
        state.apply(up)
        if step % 10 == 0 or step == len(doomed):
            D = oracle(g).diameter
            lo, hi = bounds(Param.DIAMETER, "rand", 0.3, D)
            print(f"{step:>4} {g.m:>4} {D:>3} {state.query():>4}  [{lo:.2f}, {hi}]")
    print(f"cells now {state.guesses}, reinitialisations {state.reinit_count}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
