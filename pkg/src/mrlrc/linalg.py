"""Dense exact linear algebra over the fields of :mod:`mrlrc.gf`.

A :class:`Matrix` keeps its entries as one ``(rows, cols, m)`` integer
array, so row operations are single vectorized field calls.  Nothing here
uses floating point.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import Field, FieldElement


class SingularMatrix(ValueError):
    pass


class SingularBlock(SingularMatrix):
    pass


class Matrix:
    """Dense matrix over a single field."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data: np.ndarray):
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 3 or data.shape[2] != field.m:
            raise ValueError(f"expected array of shape (rows, cols, {field.m}), got {data.shape}")
        self.field = field
        self.data = data

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, field.embed(np.eye(n, dtype=np.int64)))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        """Build from nested rows of ints (base constants), coefficient lists or FieldElements."""
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        data = field.zeros((nrows, ncols))
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                if isinstance(x, FieldElement):
                    data[i, j] = field.element(x).array
                elif isinstance(x, (int, np.integer)):
                    data[i, j] = field.embed(int(x))
                else:
                    data[i, j] = field.uncoords(x)
        return cls(field, data)

    # -- shape and access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2 and all(isinstance(k, (int, np.integer)) for k in key):
            return FieldElement(self.field, tuple(int(c) for c in self.data[key]))
        if not isinstance(key, tuple):
            key = (key, slice(None))
        rk, ck = key
        if isinstance(rk, (int, np.integer)):
            rk = [rk]
        if isinstance(ck, (int, np.integer)):
            ck = [ck]
        sub = self.data[rk][:, ck]
        return Matrix(self.field, sub)

    def columns(self, idx: Iterable[int]) -> "Matrix":
        return Matrix(self.field, self.data[:, list(idx)])

    def row_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.data[start:stop])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.transpose(1, 0, 2).copy())

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.data.copy())

    def lift(self, field: Field) -> "Matrix":
        """Embed a base-field matrix into an extension with the same characteristic."""
        if field == self.field:
            return self
        if self.field.m != 1 or field.q != self.field.q:
            raise ValueError(f"cannot lift {self.field} into {field}")
        return Matrix(field, field.embed(self.data[..., 0]))

    def is_zero(self) -> bool:
        return not self.data.any()

    def in_base_field(self) -> bool:
        return not self.data[..., 1:].any()

    def tolist(self) -> list[list[list[int]]]:
        return self.data.tolist()

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.neg(self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, matmul_arrays(self.field, self.data, other.data))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.field, self.data.tobytes(), self.data.shape))

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(repr(self[i, j]) for j in range(self.cols)) + "]"
                         for i in range(self.rows))
        return f"Matrix over {self.field} {self.shape}:\n{body}"


def matmul_arrays(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``a @ b`` for element arrays of shape ``(..., R, K, m)`` and ``(..., K, C, m)``."""
    prod = field.mul(a[..., :, :, None, :], b[..., None, :, :, :])
    return prod.sum(axis=-3) % field.q


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    return Matrix(field, np.concatenate([b.data for b in blocks], axis=1))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    return Matrix(field, np.concatenate([b.data for b in blocks], axis=0))


# ---------------------------------------------------------------------------
# Rank and elimination
# ---------------------------------------------------------------------------

def rank(M: Matrix) -> int:
    """Rank by fraction-free elimination, pivoting on the first nonzero row.

    Row ``i`` below the pivot row ``p`` becomes ``piv * row_i - row_i[c] * p``,
    which needs no inverses.
    """
    field = M.field
    a = M.data.copy()
    nrows, ncols = M.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = a[r:, c].any(axis=-1)
        if not nz.any():
            continue
        p = r + int(np.argmax(nz))
        if p != r:
            a[[r, p]] = a[[p, r]]
        below = a[r + 1:, c:]
        if below.shape[0]:
            piv = a[r, c]
            factors = below[:, 0]
            a[r + 1:, c:] = field.sub(field.mul(piv, below),
                                      field.mul(factors[:, None, :], a[r, c:][None]))
        r += 1
    return r


def full_column_rank_batch(field: Field, mats: np.ndarray) -> np.ndarray:
    """Full-column-rank flags for a stack of matrices of shape ``(P, R, C, m)``.

    Same fraction-free rule as :func:`rank`, run on all ``P`` matrices at
    once.  A matrix stops being full rank the first time a column has no
    pivot at or below the diagonal.
    """
    a = np.array(mats, dtype=np.int64, copy=True)
    count, nrows, ncols = a.shape[:3]
    ok = np.ones(count, dtype=bool)
    if ncols > nrows:
        ok[:] = False
        return ok
    idx = np.arange(count)
    for c in range(ncols):
        nz = a[:, c:, c].any(axis=-1)
        has = nz.any(axis=1)
        ok &= has
        p = c + np.argmax(nz, axis=1)
        swap = p != c
        if swap.any():
            rows_c = a[idx[swap], c].copy()
            a[idx[swap], c] = a[idx[swap], p[swap]]
            a[idx[swap], p[swap]] = rows_c
        if c + 1 < nrows:
            piv = a[:, c, c][:, None, None, :]
            below = a[:, c + 1:, c:]
            factors = below[:, :, 0][:, :, None, :]
            a[:, c + 1:, c:] = field.sub(field.mul(piv, below),
                                         field.mul(factors, a[:, c, c:][:, None]))
    return ok


def _gauss_jordan(field: Field, a: np.ndarray, pivot_cols: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over the first ``pivot_cols`` columns (in place)."""
    nrows = a.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(pivot_cols):
        if r == nrows:
            break
        nz = a[r:, c].any(axis=-1)
        if not nz.any():
            continue
        p = r + int(np.argmax(nz))
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = field.mul(field.inv(a[r, c]), a[r])
        factors = a[:, c].copy()
        factors[r] = 0
        a[:] = field.sub(a, field.mul(factors[:, None, :], a[r][None]))
        pivots.append(c)
        r += 1
    return a, pivots


def row_reduce(M: Matrix, pivot_cols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    a, piv = _gauss_jordan(M.field, M.data.copy(), M.cols if pivot_cols is None else pivot_cols)
    return Matrix(M.field, a), piv


def invert(M: Matrix) -> Matrix:
    n, ncols = M.shape
    if n != ncols:
        raise ValueError(f"cannot invert non-square {M.shape} matrix")
    aug = np.concatenate([M.data, M.field.embed(np.eye(n, dtype=np.int64))], axis=1)
    red, piv = _gauss_jordan(M.field, aug, n)
    if len(piv) < n:
        raise SingularMatrix(f"matrix has rank {len(piv)} < {n}")
    return Matrix(M.field, red[:, n:])


def solve(M: Matrix, B: Matrix) -> Matrix:
    """``X`` with ``M @ X = B`` for square invertible ``M``."""
    n = M.rows
    if M.cols != n or B.rows != n:
        raise ValueError(f"incompatible shapes {M.shape}, {B.shape}")
    aug = np.concatenate([M.data, B.data], axis=1)
    red, piv = _gauss_jordan(M.field, aug, n)
    if len(piv) < n:
        raise SingularMatrix(f"matrix has rank {len(piv)} < {n}")
    return Matrix(M.field, red[:, n:])


def schur_complement(M: Matrix, split) -> tuple[Matrix, Matrix]:
    """Clear the top-right block with column operations from the top-left.

    ``split`` is the size ``s`` of the square top-left block ``A`` (an int,
    or an equal ``(s, s)`` pair).  With ``M = [A, B; C, D]`` returns the
    transformed matrix ``[A, 0; C, D - C A^-1 B]`` and the complement
    ``D - C A^-1 B``.
    """
    if isinstance(split, tuple):
        rs, cs = split
        if rs != cs:
            raise ValueError(f"top-left block must be square, got split {split}")
        s = rs
    else:
        s = split
    A = Matrix(M.field, M.data[:s, :s])
    B = Matrix(M.field, M.data[:s, s:])
    C = Matrix(M.field, M.data[s:, :s])
    D = Matrix(M.field, M.data[s:, s:])
    try:
        X = solve(A, B)
    except SingularMatrix as exc:
        raise SingularBlock(str(exc)) from None
    S = D - C @ X
    out = M.data.copy()
    out[:s, s:] = 0
    out[s:, s:] = S.data
    return Matrix(M.field, out), S


# ---------------------------------------------------------------------------
# Structured builders
# ---------------------------------------------------------------------------

def vandermonde(field: Field, points: Sequence[int], first_power: int, num_rows: int) -> Matrix:
    """Entry ``(u, v) = points[v] ** (first_power + u)`` for base-field points."""
    if num_rows < 0:
        raise ValueError("num_rows must be >= 0")
    q = field.q
    pts = [int(x) % q for x in points]
    rows = [[pow(x, first_power + u, q) for x in pts] for u in range(num_rows)]
    data = field.embed(np.array(rows, dtype=np.int64).reshape(num_rows, len(pts)))
    return Matrix(field, data)


def moore(field: Field, betas, num_rows: int) -> Matrix:
    """Entry ``(u, v) = betas[v] ** (q ** u)``."""
    if isinstance(betas, np.ndarray):
        arr = np.asarray(betas, dtype=np.int64).reshape(-1, field.m)
    else:
        arr = np.array([field.element(b).array for b in betas], dtype=np.int64).reshape(-1, field.m)
    data = field.zeros((num_rows, arr.shape[0]))
    cur = arr % field.q
    for u in range(num_rows):
        data[u] = cur
        cur = field.frobenius(cur)
    return Matrix(field, data)


def coords_matrix(row: Matrix) -> Matrix:
    """The ``m x k`` base-field matrix whose columns are the coordinates of a ``1 x k`` row."""
    if row.rows != 1:
        raise ValueError("expected a single row")
    base = row.field.base
    return Matrix(base, base.embed(row.data[0].T))
