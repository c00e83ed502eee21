"""Certification of maximal recoverability.

Two independent routes decide whether a maximal erasure pattern ``E`` is
correctable:

* direct: ``rank(H(E)) == ga + h``, checked for many patterns at once with
  :func:`mrlrc.linalg.full_column_rank_batch`;
* structured: :func:`reduce_pattern` performs the column eliminations of
  the construction's correctness argument (local Schur steps, then the
  Vandermonde block ``W(X)``) and decides the rank of the leftover Moore
  block from the base-field rank of its generators.

Pattern streams can be split across worker processes; reports merge by
summing counts and concatenating failures.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from math import comb, prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .code import ErasurePattern
from .construction import CodeParams, ParityCheck, count_maximal_patterns
from .linalg import (Matrix, SingularBlock, full_column_rank_batch, invert, moore, rank,
                     schur_complement)

DEFAULT_BUDGET = 10 ** 7
BUDGET_ENV = "MRLRC_PATTERN_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


class InternalContradiction(AssertionError):
    """A step the correctness argument relies on failed for this parity-check matrix."""


@dataclass
class VerificationReport:
    mode: str
    total_patterns: int
    checked: int = 0
    failures: list[tuple[int, ...]] = dc_field(default_factory=list)
    contradictions: list[str] = dc_field(default_factory=list)
    elapsed: float = 0.0
    seed: int | None = None
    trials: int | None = None
    local_mds: bool | None = None

    @property
    def passed(self) -> bool:
        return not self.failures and self.local_mds is not False

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.contradictions.extend(other.contradictions)
        return self

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "verdict": self.verdict,
            "total_patterns": self.total_patterns,
            "checked": self.checked,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "failures": [list(f) for f in self.failures],
        }
        if self.local_mds is not None:
            out["local_mds"] = self.local_mds
        if self.contradictions:
            out["contradictions"] = self.contradictions
        if self.seed is not None:
            out["seed"] = self.seed
            out["trials"] = self.trials
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# Pattern streams
# ---------------------------------------------------------------------------

def enumerate_maximal_patterns(params: CodeParams) -> Iterator[ErasurePattern]:
    """Every maximal correctable pattern once, in lexicographic order."""
    p = params
    size = p.num_checks
    counts = [0] * p.g
    chosen: list[int] = []

    def rec(start: int) -> Iterator[ErasurePattern]:
        left = size - len(chosen)
        if left == 0:
            if all(c >= p.a for c in counts):
                yield ErasurePattern(tuple(chosen), tuple(counts))
            return
        for pos in range(start, p.n - left + 1):
            grp = pos // p.r
            # groups before grp are closed once pos is chosen
            if any(counts[i] < p.a for i in range(grp)):
                break
            deficit = max(0, p.a - counts[grp] - 1) + p.a * (p.g - grp - 1)
            if deficit > left - 1:
                continue
            chosen.append(pos)
            counts[grp] += 1
            yield from rec(pos + 1)
            counts[grp] -= 1
            chosen.pop()

    yield from rec(0)


def _compositions(params: CodeParams) -> tuple[list[tuple[int, ...]], np.ndarray]:
    p = params
    comps = [c for c in product(range(p.a, p.r + 1), repeat=p.g) if sum(c) == p.num_checks]
    weights = np.array([prod(comb(p.r, e) for e in c) for c in comps], dtype=float)
    return comps, weights / weights.sum()


def sample_maximal_patterns(params: CodeParams, trials: int, seed: int) -> list[ErasurePattern]:
    """Uniform samples: a composition weighted by its pattern count, then uniform subsets."""
    p = params
    rng = np.random.default_rng(seed)
    comps, probs = _compositions(p)
    picks = rng.choice(len(comps), size=trials, p=probs)
    out = []
    for idx in picks:
        counts = comps[idx]
        pos: list[int] = []
        for i, e in enumerate(counts):
            pos.extend(int(i * p.r + c) for c in rng.choice(p.r, size=e, replace=False))
        out.append(ErasurePattern(tuple(sorted(pos)), tuple(counts)))
    return out


# ---------------------------------------------------------------------------
# Direct rank checks
# ---------------------------------------------------------------------------

def verify_local_mds(parity: ParityCheck) -> bool:
    """Every ``a`` columns of every ``A_i`` are independent."""
    a = parity.params.a
    for A in parity.A:
        subsets = list(combinations(range(A.cols), a))
        mats = np.stack([A.data[:, list(s)] for s in subsets])
        if not full_column_rank_batch(A.field, mats).all():
            return False
    return True


def check_patterns(parity: ParityCheck, patterns: Sequence[Sequence[int]],
                   chunk: int = 2048) -> list[tuple[int, ...]]:
    """Patterns among ``patterns`` whose columns of ``H`` are dependent."""
    H = parity.H
    failures: list[tuple[int, ...]] = []
    for start in range(0, len(patterns), chunk):
        block = [tuple(p) for p in patterns[start:start + chunk]]
        idx = np.array(block, dtype=np.int64)
        mats = H.data[:, idx].transpose(1, 0, 2, 3)
        ok = full_column_rank_batch(H.field, mats)
        failures.extend(b for b, good in zip(block, ok) if not good)
    return failures


def _budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


def _split(items: list, parts: int) -> list[list]:
    size = -(-len(items) // parts)
    return [items[i:i + size] for i in range(0, len(items), size)] or [[]]


def _run(worker, parity: ParityCheck, patterns: list[tuple[int, ...]], jobs: int) -> VerificationReport:
    if jobs <= 1 or len(patterns) < 2 * jobs:
        return worker(parity, patterns)
    parts = _split(patterns, jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(worker, [parity] * len(parts), parts))
    merged = results[0]
    for r in results[1:]:
        merged.merge(r)
    return merged


def _direct_worker(parity: ParityCheck, patterns: list[tuple[int, ...]]) -> VerificationReport:
    rep = VerificationReport(mode="direct", total_patterns=len(patterns))
    rep.failures = check_patterns(parity, patterns)
    rep.checked = len(patterns)
    return rep


def verify_mr_exhaustive(parity: ParityCheck, budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """``rank(H(E)) = ga + h`` for every maximal pattern ``E``."""
    start = time.perf_counter()
    total = count_maximal_patterns(parity.params)
    limit = _budget(budget)
    if total > limit:
        raise BudgetExceeded(f"{total} patterns exceed the budget of {limit}; use sampled mode")
    patterns = [e.positions for e in enumerate_maximal_patterns(parity.params)]
    rep = _run(_direct_worker, parity, patterns, jobs)
    rep.mode = "exhaustive"
    rep.total_patterns = total
    rep.local_mds = verify_local_mds(parity)
    rep.elapsed = time.perf_counter() - start
    return rep


def verify_mr_sampled(parity: ParityCheck, trials: int, seed: int, jobs: int = 1) -> VerificationReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    start = time.perf_counter()
    patterns = [e.positions for e in sample_maximal_patterns(parity.params, trials, seed)]
    rep = _run(_direct_worker, parity, patterns, jobs)
    rep.mode = "sampled"
    rep.total_patterns = count_maximal_patterns(parity.params)
    rep.seed, rep.trials = seed, trials
    rep.local_mds = verify_local_mds(parity)
    rep.elapsed = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# Structured reduction
# ---------------------------------------------------------------------------

@dataclass
class ReductionTrace:
    """Intermediate matrices of one structured reduction."""

    pattern: tuple[int, ...]
    special_group: int
    X: list[int]
    Y: list[int]
    S: dict[int, list[int]]
    T: dict[int, list[int]]
    M1: Matrix
    M2: Matrix
    M3: Matrix
    M4: Matrix
    M5: Matrix                 # 1 x (h+a-t) row of Moore generators
    M5_coords: Matrix          # m x (h+a-t) over the base field
    F: Matrix
    F1: Matrix
    F2: Matrix
    verdict: bool


def _split_columns(cols: list[int], size: int, policy: str, rng: np.random.Generator | None) -> tuple[list[int], list[int]]:
    if policy == "first":
        head = cols[:size]
    elif policy == "last":
        head = cols[len(cols) - size:]
    elif policy == "random":
        head = sorted(rng.choice(cols, size=size, replace=False).tolist())
    else:
        raise ValueError(f"unknown split policy {policy!r}")
    return head, [c for c in cols if c not in head]


def reduce_pattern(parity: ParityCheck, E: ErasurePattern | Iterable[int],
                   policy: str = "first", seed: int | None = None) -> ReductionTrace:
    """Reduce ``H(E)`` to the Moore block ``M4`` and its generator row ``M5``.

    ``policy`` picks the arbitrary splits: ``"first"`` (default), ``"last"``
    or ``"random"`` (with ``seed``).  The group with the most erasures
    (lowest index on ties) plays the special group; it splits into ``X``
    (``t`` columns) and ``Y``; every other group splits into ``S_i`` (``a``
    columns) and ``T_i``.
    """
    p = parity.params
    if not isinstance(E, ErasurePattern):
        E = ErasurePattern.from_positions(p, E)
    if len(E) != p.num_checks or any(e < p.a for e in E.per_group):
        raise ValueError(f"{list(E.positions)} is not a maximal correctable pattern")
    ext, base = parity.field, parity.base
    H = parity.H
    rng = np.random.default_rng(seed) if policy == "random" else None
    a, t, h, g = p.a, p.t, p.h, p.g
    ga = g * a

    counts = list(E.per_group)
    gs = counts.index(max(counts))
    if counts[gs] < t:
        raise InternalContradiction(f"no group holds t={t} erasures in {list(E.positions)}")
    by_group = {i: [c for c in E.positions if c // p.r == i] for i in range(g)}
    X, Y = _split_columns(by_group[gs], t, policy, rng)
    others = [i for i in range(g) if i != gs]
    S, T = {}, {}
    for i in others:
        S[i], T[i] = _split_columns(by_group[i], a, policy, rng)

    order = [c for i in others for c in S[i] + T[i]] + Y + X
    M1 = H.columns(order).copy()

    # Step 1: clear A_i(T_i) with A_i(S_i), local rows of group i plus global rows.
    offset = 0
    K = {}
    for i in others:
        cols = list(range(offset, offset + a + len(T[i])))
        rows = list(range(i * a, (i + 1) * a)) + list(range(ga, ga + h))
        block = Matrix(ext, M1.data[np.ix_(rows, cols)])
        try:
            transformed, _ = schur_complement(block, a)
        except SingularBlock:
            raise InternalContradiction(f"A_{i}(S_{i}) is singular for S={S[i]}") from None
        M1.data[np.ix_(rows, cols)] = transformed.data
        offset += a + len(T[i])

    # Step 2: keep the local rows of the special group and the global rows,
    # and drop the S_i columns.
    keep_rows = list(range(gs * a, (gs + 1) * a)) + list(range(ga, ga + h))
    keep_cols = []
    offset = 0
    for i in others:
        keep_cols.extend(range(offset + a, offset + a + len(T[i])))
        offset += a + len(T[i])
    keep_cols.extend(range(offset, offset + len(Y) + len(X)))
    M2 = Matrix(ext, M1.data[np.ix_(keep_rows, keep_cols)])

    # Step 3: clear everything in the first t rows with W(X) = [A_g(X); V_g(X)].
    nx = len(X)
    ncols = M2.cols
    x_first = list(range(ncols - nx, ncols)) + list(range(ncols - nx))
    try:
        M3_perm, M4 = schur_complement(M2.columns(x_first), t)
    except SingularBlock:
        raise InternalContradiction(f"W(X) is singular for X={X}") from None
    back = list(range(nx, ncols)) + list(range(nx))
    M3 = M3_perm.columns(back)

    # Step 4: M4 must still be a Moore matrix in its first row.
    if M4.rows:
        M5 = M4.row_slice(0, 1)
        if M4 != moore(ext, M5.data[0], M4.rows):
            raise InternalContradiction("Moore structure lost: column operations left the base field")
    else:
        M5 = Matrix.zeros(ext, 1, 0)
    M5_coords = Matrix(base, base.embed(M5.data[0].T.reshape(ext.m, -1)))
    verdict = rank(M5_coords) == M4.cols

    F, F1, F2, formula = _vandermonde_replay(parity, gs, X, Y, S, T, others)
    if formula != M5_coords:
        raise InternalContradiction("generator row disagrees with the base-field formula")
    if rank(F) != F.rows:
        raise InternalContradiction("F is not invertible: evaluation points are not distinct")
    return ReductionTrace(pattern=E.positions, special_group=gs, X=X, Y=Y, S=S, T=T,
                          M1=M1, M2=M2, M3=M3, M4=M4, M5=M5, M5_coords=M5_coords,
                          F=F, F1=F1, F2=F2, verdict=verdict)


def _vandermonde_replay(parity: ParityCheck, gs, X, Y, S, T, others):
    """Same column operations on the base-field power matrix ``F``.

    Returns ``F``, ``F1``, ``F2`` and the coordinates of the generator row
    predicted from ``F2`` (rows below the first ``t``, columns ``T_i`` and ``Y``).
    """
    p = parity.params
    base = parity.base
    a, t, r = p.a, p.t, p.r

    def stack(cols: Sequence[int]) -> np.ndarray:
        return np.concatenate([parity.power_stack(c // r)[:, [c % r]] for c in cols], axis=1) if cols else \
            np.zeros((p.num_checks, 0), dtype=np.int64)

    order = [c for i in others for c in S[i] + T[i]] + Y + X
    F = Matrix(base, base.embed(stack(order)))
    F1 = F.copy()
    offset = 0
    zero_cols = []
    for i in others:
        s_idx = list(range(offset, offset + a))
        t_idx = list(range(offset + a, offset + a + len(T[i])))
        A_S = parity.A[i].columns([c % r for c in S[i]])
        A_T = parity.A[i].columns([c % r for c in T[i]])
        coef = invert(A_S) @ A_T
        F1.data[:, t_idx] = (F.columns(t_idx) - F.columns(s_idx) @ coef).data
        zero_cols.extend(t_idx)
        offset += a + len(T[i])
    y_idx = list(range(offset, offset + len(Y)))
    x_idx = list(range(offset + len(Y), offset + len(Y) + len(X)))
    zero_cols.extend(y_idx)

    F2 = F1.copy()
    W_X = F1[:t, x_idx]
    coef = invert(W_X) @ F1[:t, zero_cols]
    F2.data[:, zero_cols] = (F1.columns(zero_cols) - F1.columns(x_idx) @ coef).data
    if F2[:t, zero_cols].data.any():
        raise InternalContradiction("W(X) failed to clear the top rows of F")
    return F, F1, F2, F2[t:, zero_cols]


def structured_rank_reduction(parity: ParityCheck, E: ErasurePattern | Iterable[int],
                              policy: str = "first", seed: int | None = None) -> bool:
    return reduce_pattern(parity, E, policy, seed).verdict


def _structured_worker(parity: ParityCheck, patterns: list[tuple[int, ...]]) -> VerificationReport:
    rep = VerificationReport(mode="structured", total_patterns=len(patterns))
    for pat in patterns:
        try:
            ok = structured_rank_reduction(parity, pat)
        except InternalContradiction as exc:
            rep.contradictions.append(f"{list(pat)}: {exc}")
            ok = False
        if not ok:
            rep.failures.append(tuple(pat))
        rep.checked += 1
    return rep


def verify_structured(parity: ParityCheck, patterns: Iterable[Sequence[int]] | None = None,
                      budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """Structured verdict for every maximal pattern (or the given ones)."""
    start = time.perf_counter()
    total = count_maximal_patterns(parity.params)
    if patterns is None:
        limit = _budget(budget)
        if total > limit:
            raise BudgetExceeded(f"{total} patterns exceed the budget of {limit}; use sampled mode")
        patterns = (e.positions for e in enumerate_maximal_patterns(parity.params))
    pats = [tuple(p) for p in patterns]
    rep = _run(_structured_worker, parity, pats, jobs)
    rep.total_patterns = total
    rep.local_mds = verify_local_mds(parity)
    rep.elapsed = time.perf_counter() - start
    return rep
