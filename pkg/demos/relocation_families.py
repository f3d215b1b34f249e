"""One-round total relocation, three symmetry regimes.

The no-chirality relocation rule picks its move differently depending
on what the configuration offers: central symmetry gives everyone an
antipodal partner, an axis-free configuration admits an agreed sweep,
and a fully mirror-symmetric configuration pairs robots across axes.
Each regime is shown on a small instance, with the recovered
permutation and its cycle structure printed per round.
"""

import random

from swarmperm import (
    IDENTITY_FRAME,
    Point,
    extract_permutation,
    make_protocol,
    run,
)


def show(title, pts, rounds=2):
    print(f"\n== {title} (n={len(pts)})")
    proto = make_protocol("MoveAllNoChirality")
    trace = run(pts, [IDENTITY_FRAME] * len(pts), proto, rounds)
    for a, b in zip(trace.records, trace.records[1:]):
        sp = extract_permutation(a.positions, b.positions)
        kind = "n-cycle" if sp.is_n_cycle else "shorter cycles"
        print(f"  round {b.round_index}: pi={list(sp.pi)}  "
              f"fixed-point-free={sp.fixed_point_free}  ({kind})")


rng = random.Random(11)

pairs = []
for _ in range(3):
    v = Point(rng.uniform(0.5, 2.5), rng.uniform(-2.0, 2.0))
    pairs += [v, Point(-v.x, -v.y)]
show("centrally symmetric: swap with your antipode", pairs)

scatter = [Point(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(5)]
show("no symmetry at all: everyone slides one slot along the sweep", scatter)

rect = [Point(2, 1), Point(-2, 1), Point(-2, -1), Point(2, -1)]
show("rectangle, two empty axes: antipodal swap again", rect)
