"""Grow a directed graph edge by edge; the deterministic grid tracks the radius.

The radius is infinite until some vertex reaches everything.
"""
import random

from dynparam import INF, DynamicGraph, EdgeUpdate, Mode, Param, grid_init, oracle


def main(n=30, seed=5, eps=0.4):
    rng = random.Random(seed)
    g = DynamicGraph(n, True)
    state = grid_init(g, Param.RADIUS, eps, Mode.INCREMENTAL, alg="det")
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    for step, (u, v) in enumerate(pairs[:4 * n], 1):
        up = EdgeUpdate.insert(u, v)
        g.apply(up)
        state.apply(up)
        R, est = oracle(g).radius, state.query()
        if step % 10 == 0:
            ratio = "" if R is INF else f"  ratio {est / R:.2f} (at most {1 + eps})"
            print(f"{step:>4} edges  R={R}  estimate={est}{ratio}")


if __name__ == "__main__":
    main()
