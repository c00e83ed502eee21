"""Command-line front end.

Exit codes: 0 success/PASS, 1 verification FAIL, 2 bad parameters or
pattern budget exceeded, 3 descriptor integrity error, 4 uncorrectable or
inconsistent word.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import descriptor as dsc
from .bounds import compare
from .code import (InconsistentWord, LengthMismatch, TooManyLocalErasures, UncorrectablePattern,
                   CountingWord, make_code)
from .construction import InvalidParams, count_maximal_patterns, derive_params, evaluation_points, assemble_H
from .verify import (BudgetExceeded, sample_maximal_patterns, verify_mr_exhaustive, verify_mr_sampled,
                     verify_structured, check_patterns)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_DESCRIPTOR, EXIT_DECODE = 0, 1, 2, 3, 4


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load(args):
    loaded = dsc.load_descriptor(args.descriptor, force=getattr(args, "force", False))
    for w in loaded.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return loaded


# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    params = derive_params(args.n, args.r, args.h, args.a, args.g)
    parity = assemble_H(params, evaluation_points(params, args.shuffle_seed))
    code = make_code(parity)
    desc = dsc.build_descriptor(code, emit_H=args.emit_H, shuffle_seed=args.shuffle_seed)
    out = args.output or f"mrlrc-{params.n}-{params.r}-{params.h}-{params.a}-{params.g}.json"
    _write(out, dsc.dumps(desc))
    summary = (f"t={params.t} m={params.m} q={params.q} k={params.k} "
               f"field_size={params.q}^{params.m}={params.field_size} "
               f"patterns={count_maximal_patterns(params)}")
    print(summary, file=sys.stderr if out == "-" else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    loaded = _load(args)
    parity = loaded.parity
    try:
        if args.mode == "exhaustive":
            rep = verify_mr_exhaustive(parity, budget=args.budget, jobs=args.jobs)
        elif args.mode == "sampled":
            rep = verify_mr_sampled(parity, args.trials, args.seed, jobs=args.jobs)
        else:
            rep = verify_structured(parity, budget=args.budget, jobs=args.jobs)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.report:
        Path(args.report).write_text(rep.to_json() + "\n")
    print(f"{rep.verdict} mode={rep.mode} checked={rep.checked}/{rep.total_patterns} "
          f"local_mds={rep.local_mds} elapsed_ms={rep.elapsed * 1000:.1f}")
    if not rep.passed:
        if rep.failures:
            print(f"witness: {list(rep.failures[0])}")
        for c in rep.contradictions[:5]:
            print(f"contradiction: {c}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_encode(args) -> int:
    loaded = _load(args)
    code = loaded.code()
    p, m = code.params, code.field.m
    if args.message:
        msg, _ = dsc.parse_word(Path(args.message).read_text(), m)
    else:
        msg = code.field.random(np.random.default_rng(args.random), p.k)
    cw = code.encode(msg)
    _write(args.output, dsc.format_word(cw, loaded.sha256))
    return EXIT_OK


def _word_and_mask(args, loaded):
    m = loaded.parity.field.m
    word, mask = dsc.parse_word(Path(args.word).read_text(), m, loaded.sha256)
    if args.mask is not None:
        mask = args.mask
    erased = dsc.mask_to_positions(mask, loaded.params.n) if mask else []
    return word, erased


def cmd_erase(args) -> int:
    loaded = _load(args)
    word, _ = dsc.parse_word(Path(args.word).read_text(), loaded.parity.field.m, loaded.sha256)
    pos = [int(x) for x in args.positions.split(",") if x]
    word = word.copy()
    word[pos] = 0
    _write(args.output, dsc.format_word(word, loaded.sha256, dsc.positions_to_mask(pos, loaded.params.n)))
    return EXIT_OK


def cmd_decode(args) -> int:
    loaded = _load(args)
    code = loaded.code()
    word, erased = _word_and_mask(args, loaded)
    try:
        cw = code.decode(word, erased)
    except (UncorrectablePattern, InconsistentWord, LengthMismatch) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DECODE
    _write(args.output, dsc.format_word(cw, loaded.sha256))
    return EXIT_OK


def cmd_repair(args) -> int:
    loaded = _load(args)
    code = loaded.code()
    word, erased = _word_and_mask(args, loaded)
    p = code.params
    groups = sorted({e // p.r for e in erased}) if args.group is None else [args.group]
    out = word.copy()
    remaining = set(erased)
    for grp in groups:
        in_group = [e for e in erased if e // p.r == grp]
        view = CountingWord(word)
        try:
            fixed = code.local_repair(grp, view, in_group)
        except TooManyLocalErasures as exc:
            print(f"TooManyLocalErasures: {exc}", file=sys.stderr)
            return EXIT_DECODE
        for pos, val in fixed.items():
            out[pos] = val
            remaining.discard(pos)
        print(f"group {grp}: repaired {sorted(fixed)} reading {len(view.reads)} symbols "
              f"(limit r-a={p.r - p.a})", file=sys.stderr)
    mask = dsc.positions_to_mask(remaining, p.n) if remaining else None
    _write(args.output, dsc.format_word(out, loaded.sha256, mask))
    return EXIT_OK


def cmd_compare(args) -> int:
    cmp = compare((args.n, args.r, args.h, args.a, args.g))
    print(cmp.to_json() if args.json else cmp.table())
    return EXIT_OK


def _percentiles(samples: list[float]) -> dict:
    if not samples:
        return {}
    arr = np.array(samples) * 1e6
    return {f"p{q}": round(float(np.percentile(arr, q)), 2) for q in (50, 90, 99)}


def cmd_bench(args) -> int:
    loaded = _load(args)
    code = loaded.code()
    p, field = code.params, code.field
    rng = np.random.default_rng(args.seed)
    n_it = args.iterations
    msgs = field.random(rng, (n_it, p.k))
    patterns = [e.positions for e in sample_maximal_patterns(p, n_it, args.seed)] if n_it else []
    digest = hashlib.sha256(msgs.tobytes() + json.dumps(patterns).encode()).hexdigest()
    report = {"params": list(p.tuple()), "field_size": p.field_size, "iterations": n_it,
              "seed": args.seed, "workload_sha256": digest, "ops": {}}
    ops = [o for o in args.ops.split(",") if o] if n_it else []
    cws = code.encode(msgs) if n_it else None
    for op in ops:
        lat: list[float] = []
        for i in range(n_it):
            t0 = time.perf_counter()
            if op == "encode":
                code.encode(msgs[i])
            elif op == "decode":
                w = cws[i].copy()
                w[list(patterns[i])] = 0
                code.decode(w, patterns[i])
            elif op == "verify":
                check_patterns(loaded.parity, [patterns[i]])
            else:
                raise SystemExit(f"unknown op {op!r}")
            lat.append(time.perf_counter() - t0)
        symbols = {"encode": p.n, "decode": p.num_checks, "verify": p.num_checks}.get(op, 0) * n_it
        total = sum(lat)
        report["ops"][op] = {
            "symbols": symbols,
            "symbols_per_s": round(symbols / total, 1) if total else None,
            "latency_us": _percentiles(lat),
        }
    out = json.dumps(report, indent=2)
    _write(args.output, out + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mrlrc", description="Maximally recoverable LRC toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def shape(sp):
        for name in ("n", "r", "h", "a", "g"):
            sp.add_argument(name, type=int)

    sp = sub.add_parser("construct", help="build a code and write its descriptor")
    shape(sp)
    sp.add_argument("--shuffle-seed", type=int, default=None)
    sp.add_argument("--emit-H", dest="emit_H", action="store_true")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="certify maximal recoverability")
    sp.add_argument("descriptor")
    sp.add_argument("--mode", choices=("exhaustive", "sampled", "structured"), default="exhaustive")
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--report", default=None)
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("encode", help="encode a message file (or a random message)")
    sp.add_argument("descriptor")
    sp.add_argument("message", nargs="?")
    sp.add_argument("--random", type=int, default=0, help="seed for a random message")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("erase", help="zero positions of a word and record them in its mask")
    sp.add_argument("descriptor")
    sp.add_argument("word")
    sp.add_argument("positions", help="comma-separated positions")
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_erase)

    for name, func in (("decode", cmd_decode), ("repair", cmd_repair)):
        sp = sub.add_parser(name, help=f"{name} erased symbols of a word file")
        sp.add_argument("descriptor")
        sp.add_argument("word")
        sp.add_argument("--mask", default=None)
        sp.add_argument("-o", "--output", default="-")
        if name == "repair":
            sp.add_argument("--group", type=int, default=None)
        sp.set_defaults(func=func)

    sp = sub.add_parser("compare", help="compare field-size exponents")
    shape(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("bench", help="time encode/decode/verify")
    sp.add_argument("descriptor")
    sp.add_argument("--ops", default="encode,decode,verify")
    sp.add_argument("--iterations", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidParams as exc:
        print(f"InvalidParams: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except dsc.DescriptorError as exc:
        print(f"DescriptorError: {exc}", file=sys.stderr)
        return EXIT_DESCRIPTOR


if __name__ == "__main__":
    sys.exit(main())
