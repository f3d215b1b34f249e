"""A single bit of memory against a centered configuration.

A configuration with one robot at the circle center and a rotationally
symmetric rest defeats every memoryless rule.  With one bit each, the
swarm runs a two-round cadence: centered rounds broadcast a pivot
through two tiny displacements, off-center rounds invert them and step
everyone along the recovered order.  Frames here are adversarial, all
pairwise different.
"""

from swarmperm import (
    Point,
    VISIT_ALL,
    adversary_frames,
    check_k_step_spec,
    make_protocol,
    run,
    visit_matrix,
)

# center + two nested squares = residual symmetry of order 4
inner = [Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)]
outer = [Point(p.x * 2.4, p.y * 2.4).rotated(0.6) for p in inner]
pts = [Point(0, 0)] + inner + outer
n = len(pts)

frames = adversary_frames("pairwise_distinct", pts, seed=3)
proto = make_protocol("OneBitVisitAll")
trace = run(pts, frames, proto, rounds=2 * n)

print(f"n={n}, {2 * n} rounds, pairwise distinct frames")
print("round  bits            moved")
for rec in trace.records:
    bits = "".join(map(str, rec.bits))
    moved = sum(rec.moved)
    print(f"{rec.round_index:>5}  {bits}  {moved}")

verdict = check_k_step_spec(trace, VISIT_ALL, k=2)
print(f"\ntwo-step visiting contract: {verdict.to_json()}")
mat = visit_matrix(trace, stride=2)
full = all(v >= 1 for row in mat for v in row)
print(f"every robot visited every start location: {full}")
