"""Encode/decode throughput as the extension degree m grows at fixed n.

Only reported, never asserted: larger m means wider symbols and more
work per field multiplication.

    python scripts/bench_field_growth.py --n 12 --iterations 200
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

import numpy as np

from mrlrc.code import make_code
from mrlrc.construction import InvalidParams, construct
from mrlrc.verify import sample_maximal_patterns


@dataclass
class BenchConfig:
    n: int = 12
    iterations: int = 200
    seed: int = 0


def shapes_for(n: int) -> list[tuple[int, int, int, int, int]]:
    out = []
    for g in (2, 3, 4):
        if n % g:
            continue
        r = n // g
        for a in (1, 2):
            for h in range(1, 6):
                try:
                    construct(n, r, h, a, g)
                except InvalidParams:
                    continue
                out.append((n, r, h, a, g))
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--iterations", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = BenchConfig(args.n, args.iterations, args.seed)

    rows = []
    for shape in shapes_for(cfg.n):
        code = make_code(construct(*shape))
        p, F = code.params, code.field
        rng = np.random.default_rng(cfg.seed)
        msgs = F.random(rng, (cfg.iterations, p.k))
        t0 = time.perf_counter()
        cws = code.encode(msgs)
        enc = time.perf_counter() - t0
        pats = sample_maximal_patterns(p, cfg.iterations, cfg.seed)
        t0 = time.perf_counter()
        for cw, E in zip(cws, pats):
            code.decode(cw, E.positions)
        dec = time.perf_counter() - t0
        rows.append((p.m, shape, cfg.iterations * p.n / enc, cfg.iterations * p.num_checks / dec))
    print(f"{'m':>3} {'(n,r,h,a,g)':<18}{'encode sym/s':>14}{'decode sym/s':>14}")
    for m, shape, e, d in sorted(rows):
        print(f"{m:>3} {str(shape):<18}{e:>14.0f}{d:>14.0f}")


if __name__ == "__main__":
    main()
