"""Trace-level contract checking.

A relocation protocol promises that after every k rounds the swarm
occupies exactly the starting locations, permuted by one fixed
permutation of the required class: fixed-point-free for total
relocation, a single n-cycle for full visiting.  These checkers recover
that permutation from a recorded trace and hold every later round to it,
without trusting the protocol that produced the trace.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import NotAPermutation
from .geometry import DEFAULT_TOL, Point, Tolerance

MOVE_ALL = "MoveAll"
VISIT_ALL = "VisitAll"
SPECS = (MOVE_ALL, VISIT_ALL)


@dataclass(frozen=True)
class StepPermutation:
    """Index permutation pi with C_next[i] = C[pi[i]]."""

    pi: tuple[int, ...]
    fixed_point_free: bool
    is_n_cycle: bool


@dataclass(frozen=True)
class SpecVerdict:
    spec: str
    k: int
    passed: bool
    first_violation: tuple[int, str] | None = None
    provisional: bool = False

    def to_dict(self) -> dict:
        violation = None
        if self.first_violation is not None:
            violation = {"round": self.first_violation[0],
                         "reason": self.first_violation[1]}
        out = {"spec": self.spec, "k": self.k, "pass": self.passed,
               "violation": violation}
        if self.provisional:
            out["provisional"] = True
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _match_index(p: Point, pts: Sequence[Point], tol: Tolerance) -> int:
    hits = [j for j, q in enumerate(pts) if tol.same_point(p, q)]
    if len(hits) != 1:
        raise NotAPermutation(
            f"point ({p.x:.6g}, {p.y:.6g}) matches {len(hits)} points")
    return hits[0]


def _cycle_flags(pi: Sequence[int]) -> tuple[bool, bool]:
    n = len(pi)
    fpf = all(pi[i] != i for i in range(n))
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = pi[i]
            length += 1
        lengths.append(length)
    single = len(lengths) == 1 and lengths[0] == n
    assert sum(lengths) == n
    # independent check: one cycle iff the orbit of 0 covers everything
    orbit = 1
    i = pi[0]
    while i != 0:
        i = pi[i]
        orbit += 1
    assert single == (orbit == n), "cycle structure disagrees with orbit size"
    return fpf, single


def extract_permutation(c_a: Sequence[Point], c_b: Sequence[Point],
                        tol: Tolerance = DEFAULT_TOL) -> StepPermutation:
    """The unique pi with c_b[i] = c_a[pi[i]]; anything ambiguous or
    unmatched is a violation, not something to repair."""
    if len(c_a) != len(c_b):
        raise NotAPermutation(f"sizes differ: {len(c_a)} vs {len(c_b)}")
    pi = tuple(_match_index(p, c_a, tol) for p in c_b)
    if len(set(pi)) != len(pi):
        raise NotAPermutation("matching is not a bijection")
    fpf, single = _cycle_flags(pi)
    return StepPermutation(pi, fpf, single)


def apply_permutation(pi: Sequence[int], pts: Sequence[Point]) -> tuple[Point, ...]:
    return tuple(pts[pi[i]] for i in range(len(pi)))


def check_k_step_spec(trace, spec: str, k: int,
                      tol: Tolerance = DEFAULT_TOL) -> SpecVerdict:
    """Hold a trace to the k-round relocation contract.

    Checks, in order: no embedded errors; one permutation pi of the
    required class between rounds 0 and k; every round i*k equal to
    pi^i of round 0; and the restart property that each round j + k is a
    permutation of round j.  Traces with memory bits set only promise
    the restart property at multiples of k (the in-between rounds carry
    signalling displacements); all-zero-bit traces are held to it at
    every j.  A visiting verdict from fewer than k*n + 1 rounds is
    flagged provisional.
    """
    if spec not in SPECS:
        raise ValueError(f"unknown spec {spec!r}; choose from {SPECS}")
    if k < 1:
        raise ValueError("k must be >= 1")
    records = trace.records
    last = len(records) - 1
    for rec in records:
        if rec.error is not None:
            return SpecVerdict(spec, k, False, (rec.round_index, rec.error))
    if last < k:
        return SpecVerdict(spec, k, False,
                           (last, f"trace has {last} rounds, needs at least {k}"))
    configs = [rec.positions for rec in records]
    n = len(configs[0])
    try:
        step = extract_permutation(configs[0], configs[k], tol)
    except NotAPermutation as exc:
        return SpecVerdict(spec, k, False, (k, f"NotAPermutation: {exc}"))
    if spec == MOVE_ALL and not step.fixed_point_free:
        return SpecVerdict(spec, k, False, (k, "permutation has a fixed point"))
    if spec == VISIT_ALL and not step.is_n_cycle:
        return SpecVerdict(spec, k, False, (k, f"permutation is not a {n}-cycle"))
    power = list(range(n))
    i = 0
    while (i + 1) * k <= last:
        i += 1
        power = [step.pi[x] for x in power]
        expected = apply_permutation(power, configs[0])
        got = configs[i * k]
        bad = next((r for r in range(n) if not tol.same_point(expected[r], got[r])), None)
        if bad is not None:
            return SpecVerdict(spec, k, False,
                               (i * k, f"robot {bad} deviates from the fixed "
                                       f"permutation power at round {i * k}"))
    memoryless = all(not any(rec.bits) for rec in records)
    shift_js = range(0, last - k + 1) if memoryless else range(0, last - k + 1, k)
    for j in shift_js:
        try:
            extract_permutation(configs[j], configs[j + k], tol)
        except NotAPermutation as exc:
            return SpecVerdict(spec, k, False,
                               (j + k, f"round {j + k} is not a permutation of "
                                       f"round {j}: {exc}"))
    provisional = spec == VISIT_ALL and last < k * n
    return SpecVerdict(spec, k, True, None, provisional)


def visit_matrix(trace, stride: int = 1,
                 tol: Tolerance = DEFAULT_TOL) -> list[list[int]]:
    """count[i][l] = rounds (sampled every `stride`, final round dropped
    as the cycle closer) in which robot i stands on initial location l."""
    records = trace.records
    base = records[0].positions
    n = len(base)
    counts = [[0] * n for _ in range(n)]
    sampled = records[:-1] if len(records) > 1 else records
    for rec in sampled[::stride]:
        for i, p in enumerate(rec.positions):
            for l, q in enumerate(base):
                if tol.same_point(p, q):
                    counts[i][l] += 1
    return counts
