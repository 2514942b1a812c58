#!/usr/bin/env python3
"""Run every structural check on the example corpus via the CLI machinery.

Equivalent to `sheaflat verify --gen <g> --checks all` for each generator,
but collected into one summary table with per-arrangement timing.
"""

import time

from sheaflat.cli import main as cli_main

GENERATORS = [
    "braid:3",
    "braid:4",
    "coordinate:3",
    "coordinate:4",
    "full:2,3",
]


def main() -> int:
    worst = 0
    for gen in GENERATORS:
        start = time.monotonic()
        code = cli_main(["verify", "--gen", gen, "--checks", "all"])
        print(f"--- {gen}: exit {code} in {time.monotonic() - start:.2f}s\n")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
