"""Field-size exponents of the construction against the known bounds.

    python scripts/field_size_table.py --g 2 --a 1 2 --h 2 4 6 8 --r 16
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from mrlrc.bounds import compare


@dataclass
class SweepConfig:
    g: list[int] = field(default_factory=lambda: [2, 3])
    a: list[int] = field(default_factory=lambda: [1, 2])
    h: list[int] = field(default_factory=lambda: [2, 3, 4, 6, 8])
    r: list[int] = field(default_factory=lambda: [16])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    cfg = SweepConfig()
    for name in ("g", "a", "h", "r"):
        ap.add_argument(f"--{name}", type=int, nargs="+", default=getattr(cfg, name))
    args = ap.parse_args()
    cfg = SweepConfig(g=args.g, a=args.a, h=args.h, r=args.r)

    print(f"{'(n,r,h,a,g)':<20}{'ours':>6}{'GG22':>6}{'best other':>24}  winner")
    for g in cfg.g:
        for a in cfg.a:
            for h in cfg.h:
                for r in cfg.r:
                    if r < a + -(-h // g):
                        continue
                    c = compare((g * r, r, h, a, g))
                    others = sorted(c.upper, key=lambda b: b.exponent)
                    best = others[0]
                    mark = "construction" if c.construction_wins else ("tie" if c.construction.exponent == best.exponent
                                                                       else best.name)
                    print(f"{str(c.params):<20}{str(c.construction.exponent):>6}{str(c.upper[0].exponent):>6}"
                          f"{best.name + ' ' + str(best.exponent):>24}  {mark}")


if __name__ == "__main__":
    main()
