#!/usr/bin/env python3
"""Run every bundled config through every applicable subcommand.

Writes one output directory per (config, subcommand) pair and stops with a
nonzero exit if any run reports a failed check.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from sqcodes import cli

CONFIG_DIR = Path(__file__).resolve().parent / "configs"

RUNS = [
    ("z8_rep2", ["build", "spectrum", "code", "oracles", "montecarlo", "decode"]),
    ("z12_par3_rep2", ["build", "spectrum", "code", "montecarlo", "decode"]),
    ("z16_par4", ["build", "code", "montecarlo", "decode"]),
    ("z18_ldpc", ["build", "code", "montecarlo", "decode"]),
    ("psl16_morgenstern", ["build", "spectrum", "code", "montecarlo", "decode"]),
    ("oracles_small", ["oracles"]),
    ("plan_r05", ["plan"]),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="runs", help="output root directory")
    parser.add_argument("--only", help="run a single config by name")
    args = parser.parse_args()

    worst = 0
    for name, subcommands in RUNS:
        if args.only and args.only != name:
            continue
        config = CONFIG_DIR / f"{name}.json"
        for sub in subcommands:
            outdir = Path(args.out) / name / sub
            print(f"--- {name} {sub} -> {outdir}")
            rc = cli.main([sub, "--config", str(config), "--out", str(outdir)])
            worst = max(worst, rc)
    print(f"run_all exit {worst}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
