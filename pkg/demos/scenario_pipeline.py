"""Scenario file -> trace -> verdict -> picture, via the command line.

Everything the package does is reachable from the `swarmperm` command.
This script writes a scenario JSON, simulates it to a JSONL trace,
checks the trace against the visiting contract, and renders an SVG of
the trajectories, all in a temp directory it prints at the end.
"""

import json
import tempfile
from pathlib import Path

from swarmperm.cli import main

workdir = Path(tempfile.mkdtemp(prefix="swarmperm_demo_"))

scenario = {
    "points": [[0, 0], [2.1, 0.4], [1.7, 2.2], [-0.6, 1.9], [-1.8, -0.7]],
    "protocol": "VisitAllChirality",
    "rounds": 5,
    "frames": {"kind": "pairwise_distinct", "seed": 12},
}
scn = workdir / "scenario.json"
scn.write_text(json.dumps(scenario, indent=2))

trace = workdir / "trace.jsonl"
svg = workdir / "trajectories.svg"

for argv in (
    ["classify", "--scenario", str(scn)],
    ["simulate", "--scenario", str(scn), "--trace", str(trace)],
    ["verify", "--trace", str(trace), "--spec", "visit-all", "--k", "1"],
    ["render", "--trace", str(trace), "--svg", str(svg)],
):
    print(f"\n$ swarmperm {' '.join(argv)}")
    code = main(argv)
    print(f"(exit {code})")

print(f"\nartifacts in {workdir}")
