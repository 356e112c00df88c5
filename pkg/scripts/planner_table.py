#!/usr/bin/env python3
"""Tabulate the asymptotic parameter chain over a range of target rates,
plus the log-log scaling of the designed base distance."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from mpmath import mp

from sqcodes import planner


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rates", nargs="*", default=["1/4", "1/2", "3/4"])
    args = parser.parse_args()

    print(f"{'r':>6} {'r0':>8} {'d0':>5} {'delta0':>12} {'q digits':>9} "
          f"{'lam target':>12} {'final delta':>12}")
    for rate in args.rates:
        plan = planner.plan_c3(Fraction(rate))
        print(f"{rate:>6} {str(plan.base.r0):>8} {plan.base.d0:>5} "
              f"{mp.nstr(plan.base.delta0, 4):>12} "
              f"{len(planner.int_digits(plan.q)):>9} "
              f"{mp.nstr(plan.lam_target, 4):>12} "
              f"{mp.nstr(plan.delta_with_4, 4):>12}")
        bad = [k for k, ok in plan.chain.items() if not ok]
        if bad:
            print(f"       chain violations: {bad}")

    sweep = planner.delta0_scaling_sweep(
        [Fraction(1, 10 ** k) for k in range(1, 7)])
    print(f"\ndistance scaling: log delta0 vs log eps slope = "
          f"{sweep['slope']:.6f} (power law, degree ceiling aside)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
