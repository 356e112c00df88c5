#!/usr/bin/env python3
"""Empirical tester and decoder profile for one instance config.

Sweeps the corruption weight and reports, per weight: mean rejection
fraction, the fraction of runs the decoder resolved, and mean iterations.
All values over exact per-trial rationals; output is a CSV.
"""

from __future__ import annotations

import argparse
import csv
import sys
from fractions import Fraction
from pathlib import Path

from sqcodes import cli as sqcli
from sqcodes import decoder, ltc


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", required=True)
    parser.add_argument("--out", default="tester_profile.csv")
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--max-weight", type=int, default=12)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    cfg = sqcli.load_config(args.config)
    inst, _, _ = sqcli.build_instance(cfg)
    print(f"{inst.name}: {inst.n_bits} bits, dim {inst.code.dim}")

    rows = []
    for weight in range(args.max_weight + 1):
        zetas, resolved, iters = [], 0, 0
        for t in range(args.trials):
            seed = sqcli._trial_seed(args.seed, weight * args.trials + t)
            f, _ = sqcli._corrupted_word(inst, seed, weight)
            zetas.append(ltc.zeta(inst, f))
            out = decoder.run(inst, f)
            resolved += out.verdict == "codeword"
            iters += out.iterations
        mean_zeta = sum(zetas, Fraction(0)) / len(zetas)
        rows.append({
            "weight": weight,
            "mean_zeta": sqcli.fmt(mean_zeta),
            "reject_rate": sqcli.fmt(Fraction(sum(z > 0 for z in zetas), args.trials)),
            "resolved_rate": sqcli.fmt(Fraction(resolved, args.trials)),
            "mean_iters": sqcli.fmt_float(iters / args.trials),
        })
        print(f"  w={weight:3d} mean_zeta={float(mean_zeta):.4f} "
              f"resolved={resolved}/{args.trials}")

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {Path(args.out).resolve()}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
