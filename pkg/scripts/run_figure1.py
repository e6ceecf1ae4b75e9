#!/usr/bin/env python3
"""End-to-end demo on the bundled two-class fixture.

Runs the full pipeline with the lexicon backend and prints the inferred
aliasing specifications, the per-method operation summaries and the pruning
statistics. Writes the three output files under out/figure1/.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from specinfer.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "tests" / "fixtures" / "figure1.json"
OUT = ROOT / "out" / "figure1"


def main() -> int:
    code = cli_main(["infer", "--docs", str(FIXTURE), "--backend", "lexicon", "-o", str(OUT)])
    if code != 0:
        return code
    specs = json.loads((OUT / "specs.json").read_text())["specs"]
    print(f"{len(specs)} aliasing specifications:")
    for s in specs:
        pairs = ", ".join(f"({a},{b})" for a, b in s["paramPairs"]) or "none"
        print(f"  {s['class']}: {s['store']} -> {s['load']}  target={s['target']}  requires {pairs}")
    stats = json.loads((OUT / "stats.json").read_text())
    print(
        f"pairs={stats['pairsTotal']} pruned(type/units/memop)="
        f"{stats['prunedType']}/{stats['prunedUnits']}/{stats['prunedMemop']} "
        f"backendItems={stats['backendItems']} tagging={stats['taggingInvocations']}"
    )
    print(f"outputs in {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
