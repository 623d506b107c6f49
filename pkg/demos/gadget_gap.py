"""Build the diameter 3/2 gadget from a small 3-OV instance and show the gap.

Stages whose vector w is in an orthogonal triple push the diameter up to
at least 6a+1; the rest stay at or below 4a+1.
"""
import random

from dynparam import adversary as adv
from dynparam.oracle import oracle


def main(seed=11):
    rng = random.Random(seed)
    inst = adv.random_instance(rng, (4, 4, 4), 3, p=0.8)
    inst = adv.plant_orthogonal(inst, 0, rng)
    gi = adv.gen_diam32(inst, eps=0.1)
    print(f"a={gi.a}  n={gi.base_graph.n}  m={gi.base_graph.m}")
    g = gi.base_graph.copy()
    for stage, yes in zip(gi.stages, gi.decisions()):
        for up in stage.batch:
            g.apply(up)
        D = oracle(g).diameter
        for up in stage.inverse():
            g.apply(up)
        print(f"stage {stage.label}: orthogonal={yes!s:5}  diameter={D}")
    rep = adv.certify(gi)
    print("certified" if rep.ok else "NOT certified")


if __name__ == "__main__":
    main()
