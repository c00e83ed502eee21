"""Encoding, erasure decoding and local repair.

Symbols live in the field of ``H`` (F_{q^m}).  A word is an array of shape
``(n, m)``; decoding also accepts a stack ``(..., n, m)`` and solves all of
them with one cached recovery operator per erasure set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .construction import CodeParams, ParityCheck
from .linalg import Matrix, matmul_arrays, rank, row_reduce, solve


class UncorrectablePattern(ValueError):
    def __init__(self, positions: Iterable[int], detail: str = ""):
        self.positions = tuple(sorted(positions))
        msg = f"erasure pattern {list(self.positions)} is not correctable"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class InconsistentWord(ValueError):
    pass


class TooManyLocalErasures(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class RankDeficientParity(ValueError):
    pass


@dataclass(frozen=True)
class ErasurePattern:
    positions: tuple[int, ...]
    per_group: tuple[int, ...]

    @classmethod
    def from_positions(cls, params: CodeParams, positions: Iterable[int]) -> "ErasurePattern":
        pos = tuple(sorted(int(p) for p in positions))
        if len(set(pos)) != len(pos):
            raise ValueError(f"duplicate positions in {list(pos)}")
        if pos and (pos[0] < 0 or pos[-1] >= params.n):
            raise ValueError(f"positions out of range [0, {params.n}): {list(pos)}")
        counts = [0] * params.g
        for p in pos:
            counts[p // params.r] += 1
        return cls(pos, tuple(counts))

    def __len__(self) -> int:
        return len(self.positions)


def is_maximal_correctable(params: CodeParams, E: ErasurePattern | Iterable[int]) -> bool:
    """``a`` erasures in every group plus ``h`` more anywhere."""
    if not isinstance(E, ErasurePattern):
        E = ErasurePattern.from_positions(params, E)
    return (len(E) == params.num_checks
            and all(params.a <= e <= params.r for e in E.per_group))


def _info_positions(H: Matrix) -> tuple[int, ...]:
    # Greedy from the right gives the basis of H's columns that is largest in
    # Gale order; its complement is the lexicographically first information set.
    basis: list[int] = []
    for c in reversed(range(H.cols)):
        if rank(H.columns(basis + [c])) == len(basis) + 1:
            basis.append(c)
        if len(basis) == H.rows:
            break
    chosen = set(basis)
    return tuple(c for c in range(H.cols) if c not in chosen)


class CountingWord:
    """Read-only view of a word that records which positions were read."""

    def __init__(self, word):
        self._word = word
        self.reads: list[int] = []

    def __getitem__(self, i: int):
        self.reads.append(int(i))
        return self._word[i]

    def __len__(self) -> int:
        return len(self._word)


class MrLrcCode:
    """Systematic linear code with parity-check matrix ``parity.H``."""

    def __init__(self, parity: ParityCheck, info_positions: tuple[int, ...], generator: Matrix):
        self.parity = parity
        self.params = parity.params
        self.info_positions = info_positions
        self.generator = generator
        self._global_ops: dict[tuple[int, ...], tuple] = {}
        self._local_ops: dict[tuple[int, tuple[int, ...]], tuple] = {}

    @property
    def field(self):
        return self.parity.field

    @property
    def H(self) -> Matrix:
        return self.parity.H

    # -- encoding ---------------------------------------------------------------

    def encode(self, message) -> np.ndarray:
        msg = np.asarray(message, dtype=np.int64)
        if msg.ndim < 2 or msg.shape[-2:] != (self.params.k, self.field.m):
            raise LengthMismatch(f"message must have shape (..., {self.params.k}, {self.field.m}), got {msg.shape}")
        return matmul_arrays(self.field, msg[..., None, :, :], self.generator.data)[..., 0, :, :]

    def syndrome(self, word) -> np.ndarray:
        word = np.asarray(word, dtype=np.int64)
        return matmul_arrays(self.field, self.H.data, word[..., :, None, :])[..., 0, :]

    # -- local repair -----------------------------------------------------------

    def _local_operator(self, group: int, erased: tuple[int, ...]):
        key = (group, erased)
        op = self._local_ops.get(key)
        if op is None:
            p = self.params
            cols = list(p.group_columns(group))
            survivors = [c for c in cols if c not in erased]
            # Treat extra survivors as unknown so exactly r - a symbols are read.
            extra = survivors[len(survivors) - (p.a - len(erased)):] if len(erased) < p.a else []
            unknown = list(erased) + extra
            read = [c for c in survivors if c not in extra]
            A = self.parity.A[group]
            off = group * p.r
            A_u = A.columns([c - off for c in unknown])
            A_r = A.columns([c - off for c in read])
            K = solve(A_u, A_r).lift(self.field)      # x_unknown = -K y_read
            op = (tuple(read), K.data[: len(erased)])
            self._local_ops[key] = op
        return op

    def local_repair(self, group: int, word, erased: Iterable[int]) -> dict[int, np.ndarray]:
        """Recover erased symbols of one group from ``r - a`` of its survivors.

        ``word`` is indexed by absolute position only at the positions that are
        read, so a :class:`CountingWord` shows exactly what was touched.
        """
        p = self.params
        erased = tuple(sorted(int(e) for e in erased))
        if any(p.group_of(e) != group for e in erased):
            raise ValueError(f"positions {list(erased)} not all in group {group}")
        if len(erased) > p.a:
            raise TooManyLocalErasures(f"{len(erased)} erasures in group {group}, at most a={p.a} repairable")
        if not erased:
            return {}
        read, K = self._local_operator(group, erased)
        y = np.stack([np.asarray(word[c], dtype=np.int64) for c in read])
        x = self.field.neg(matmul_arrays(self.field, K, y[:, None, :])[:, 0, :])
        return {e: x[i] for i, e in enumerate(erased)}

    # -- global decoding --------------------------------------------------------

    def _global_operator(self, erased: tuple[int, ...]):
        op = self._global_ops.get(erased)
        if op is None:
            known = [c for c in range(self.params.n) if c not in set(erased)]
            He = self.H.columns(erased)
            if rank(He) < len(erased):
                raise UncorrectablePattern(erased, "erased columns of H are dependent")
            aug = Matrix(self.field, np.concatenate([He.data, self.H.columns(known).data], axis=1))
            red, _ = row_reduce(aug, len(erased))
            e = len(erased)
            op = (tuple(known), red.data[:e, e:])
            self._global_ops[erased] = op
        return op

    def decode(self, word, erased: Iterable[int]) -> np.ndarray:
        """Fill in erased symbols; ``word`` may be a stack ``(..., n, m)``.

        Groups with at most ``a`` erasures are repaired locally first, and
        the remaining erasures are solved from the full parity-check matrix.
        """
        p = self.params
        word = np.array(word, dtype=np.int64, copy=True)
        if word.shape[-2:] != (p.n, self.field.m):
            raise LengthMismatch(f"word must have shape (..., {p.n}, {self.field.m}), got {word.shape}")
        E = ErasurePattern.from_positions(p, erased)
        if not E.positions:
            return word
        remaining: list[int] = []
        for i in range(p.g):
            in_group = tuple(e for e in E.positions if p.group_of(e) == i)
            if not in_group:
                continue
            if len(in_group) <= p.a:
                read, K = self._local_operator(i, in_group)
                y = word[..., list(read), :]
                word[..., list(in_group), :] = self.field.neg(
                    matmul_arrays(self.field, K, y[..., :, None, :])[..., 0, :])
            else:
                remaining.extend(in_group)
        if remaining:
            try:
                known, K = self._global_operator(tuple(remaining))
            except UncorrectablePattern:
                raise UncorrectablePattern(E.positions, "erased columns of H are dependent") from None
            y = word[..., list(known), :]
            word[..., remaining, :] = self.field.neg(
                matmul_arrays(self.field, K, y[..., :, None, :])[..., 0, :])
        if self.syndrome(word).any():
            raise InconsistentWord("surviving symbols are not consistent with any codeword")
        return word


def erasure_decode(code: MrLrcCode, word, erased: Iterable[int]) -> np.ndarray:
    return code.decode(word, erased)


def local_repair(code: MrLrcCode, group: int, word, erased: Iterable[int]) -> dict[int, np.ndarray]:
    return code.local_repair(group, word, erased)


def encode(code: MrLrcCode, message) -> np.ndarray:
    return code.encode(message)


def make_code(parity: ParityCheck) -> MrLrcCode:
    """Systematic generator on the lexicographically first information set."""
    H = parity.H
    p = parity.params
    if rank(H) < p.num_checks:
        raise RankDeficientParity(f"rank(H) < {p.num_checks}")
    info = _info_positions(H)
    check = [c for c in range(p.n) if c not in set(info)]
    # H_check c_check = -H_info c_info
    X = solve(H.columns(check), H.columns(info))
    gen = parity.field.zeros((p.k, p.n))
    gen[:, list(info)] = parity.field.embed(np.eye(p.k, dtype=np.int64))
    gen[:, check] = parity.field.neg(X.data).transpose(1, 0, 2)
    return MrLrcCode(parity, info, Matrix(parity.field, gen))
