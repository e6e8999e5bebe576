#!/usr/bin/env python3
"""Tabulate how the host-graph degree compares to log2(N) across side lengths.

Usage: python scripts/degree_growth.py [t ...]

For each side length t the ratio degree/log2(N) is constant in the dimension
n, so a single row per t tells the whole story. t=18 is the smallest side
length the routing guarantee covers; its ratio is the headline constant.
"""

from __future__ import annotations

import sys

from gridpair import GridSpec, degree_ratio


def main() -> int:
    sides = [int(a) for a in sys.argv[1:]] or [18, 20, 24, 30, 36, 48, 64]
    print(f"{'t':>4} {'exact n(t-1)/log2 N':>21} {'t*n/log2 N':>12} {'guaranteed':>11}")
    for t in sides:
        exact, tn_convention = degree_ratio(GridSpec(t, 1))
        guaranteed = "yes" if t >= 18 else "no"
        print(f"{t:>4} {exact:>21.4f} {tn_convention:>12.4f} {guaranteed:>11}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
