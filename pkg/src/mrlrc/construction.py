"""Parameters and parity-check matrix of the MR-LRC.

Layout of ``H`` (``ga + h`` rows, ``n = g r`` columns)::

    [ A_1   0  ...  0  ]
    [  0   A_2 ...  0  ]
    [  .    .   .   .  ]
    [  0    0  ... A_g ]
    [ B_1  B_2 ... B_g ]      B_i = [V_i; G_i]

Column ``j`` of group ``i`` is built from one base-field point ``x``:
``A_i`` holds ``x^0 .. x^(a-1)``, ``V_i`` holds ``x^a .. x^(t-1)``, and the
first row of ``G_i`` is the extension element whose coordinates are
``x^t .. x^(t+m-1)``.  Further rows of ``G_i`` are its Frobenius powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import ceil, comb, prod
from itertools import product
from typing import Sequence

import numpy as np

from .gf import ExtField, FieldElement, PrimeField, smallest_prime_geq
from .linalg import Matrix, moore, vandermonde, vstack


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    n: int
    r: int
    h: int
    a: int
    g: int
    t: int
    m: int
    q: int
    k: int

    @property
    def field_size(self) -> int:
        return self.q ** self.m

    @property
    def num_checks(self) -> int:
        return self.g * self.a + self.h

    @property
    def gabidulin_rows(self) -> int:
        return self.h + self.a - self.t

    def group_of(self, position: int) -> int:
        return position // self.r

    def group_columns(self, i: int) -> range:
        return range(i * self.r, (i + 1) * self.r)

    def tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.r, self.h, self.a, self.g)


def derive_params(n: int, r: int, h: int, a: int, g: int, q: int | None = None,
                  require_data: bool = True) -> CodeParams:
    """Validate ``(n, r, h, a, g)`` and fill in ``t``, ``m``, ``q`` and ``k``.

    ``q`` defaults to the least prime ``>= n``.  ``require_data=False``
    admits ``k = 0`` (all symbols are parities), which is only useful for
    field-size arithmetic.
    """
    if g < 2:
        raise InvalidParams(f"need at least two local groups, got g={g}")
    if r < 1 or n != g * r:
        raise InvalidParams(f"n must equal g*r: n={n}, g={g}, r={r}")
    if a < 1:
        raise InvalidParams(f"need at least one local parity per group, got a={a}")
    if h < 1:
        raise InvalidParams(f"need at least one global parity, got h={h}")
    t = a + ceil(h / g)
    if t > r:
        raise InvalidParams(f"t = a + ceil(h/g) = {t} exceeds group size r={r}")
    k = n - g * a - h
    if k < (1 if require_data else 0):
        raise InvalidParams(f"no room for data: k = n - ga - h = {k}")
    m = h + g * a - t
    if q is None:
        q = smallest_prime_geq(n)
    elif q < n:
        raise InvalidParams(f"base field too small: q={q} < n={n}")
    return CodeParams(n=n, r=r, h=h, a=a, g=g, t=t, m=m, q=q, k=k)


def count_maximal_patterns(params: CodeParams) -> int:
    """Number of erasure sets with ``ga + h`` positions and ``>= a`` in every group."""
    p = params
    total = 0
    for counts in product(range(p.a, p.r + 1), repeat=p.g):
        if sum(counts) == p.num_checks:
            total += prod(comb(p.r, e) for e in counts)
    return total


def evaluation_points(params: CodeParams, shuffle_seed: int | None = None) -> np.ndarray:
    """``(g, r)`` grid of distinct base-field points.

    Canonical order by default: group ``i`` gets ``i*r .. i*r + r - 1``.  With a
    seed, ``n`` distinct points are drawn from all of F_q in random order.
    """
    if shuffle_seed is None:
        pts = np.arange(params.n, dtype=np.int64)
    else:
        rng = np.random.default_rng(shuffle_seed)
        pts = rng.permutation(params.q)[: params.n].astype(np.int64)
    return pts.reshape(params.g, params.r)


def build_local_parity(field, points: Sequence[int], a: int) -> Matrix:
    if a > len(points):
        raise InvalidParams(f"a={a} exceeds group size {len(points)}")
    return vandermonde(field, points, 0, a)


def build_beta(ext: ExtField, x: int, t: int, m: int | None = None) -> FieldElement:
    m = ext.m if m is None else m
    if m != ext.m:
        raise ValueError(f"beta needs {ext.m} coordinates, got m={m}")
    q = ext.q
    return ext.element([pow(int(x), t + l, q) for l in range(m)])


def _beta_array(ext: ExtField, points: Sequence[int], t: int) -> np.ndarray:
    return np.array([build_beta(ext, x, t).coeffs for x in points], dtype=np.int64).reshape(-1, ext.m)


def build_global_parity(ext: ExtField, points: Sequence[int], params: CodeParams,
                        betas: np.ndarray | None = None) -> tuple[Matrix, Matrix]:
    """``(V_i, G_i)`` for one group; ``betas`` overrides the Moore generators."""
    V = vandermonde(ext, points, params.a, params.t - params.a)
    if betas is None:
        betas = _beta_array(ext, points, params.t)
    G = moore(ext, betas, params.gabidulin_rows)
    return V, G


@dataclass(frozen=True, eq=False)
class ParityCheck:
    params: CodeParams
    field: ExtField
    points: np.ndarray                  # (g, r) base-field points
    betas: np.ndarray                   # (g, r, m) coordinates of the Moore generators
    A: tuple[Matrix, ...]               # a x r, base field
    V: tuple[Matrix, ...]               # (t-a) x r, base field
    G: tuple[Matrix, ...]               # (h+a-t) x r, extension
    H: Matrix = dc_field(repr=False)    # (ga+h) x n, extension

    @property
    def base(self) -> PrimeField:
        return self.field.base

    def B(self, i: int) -> Matrix:
        return vstack([self.V[i].lift(self.field), self.G[i]])

    def power_stack(self, i: int) -> np.ndarray:
        """Base-field ``(ga+h) x r`` stack of ``A_i``, ``V_i`` and ``coords(beta_i)``."""
        parts = [self.A[i].data[..., 0], self.V[i].data[..., 0], self.betas[i].T]
        return np.concatenate(parts, axis=0)


def assemble_H(params: CodeParams, points: np.ndarray | None = None,
               field: ExtField | None = None, beta_mode: str = "exact") -> ParityCheck:
    """Assemble the parity-check matrix.

    ``beta_mode`` is ``"exact"`` for the construction.  ``"first-point"`` (every
    generator in a group built from that group's first point) and ``"zero"``
    exist only as sabotage controls.
    """
    p = params
    if points is None:
        points = evaluation_points(p)
    points = np.asarray(points, dtype=np.int64).reshape(p.g, p.r)
    if field is None:
        field = ExtField(PrimeField(p.q), p.m)
    if field.q != p.q or field.m != p.m:
        raise ValueError(f"field {field} does not match params q={p.q}, m={p.m}")
    base = field.base

    A, V, G, betas = [], [], [], []
    for i in range(p.g):
        pts = points[i].tolist()
        if beta_mode == "exact":
            b = _beta_array(field, pts, p.t)
        elif beta_mode == "first-point":
            b = np.repeat(_beta_array(field, pts[:1], p.t), p.r, axis=0)
        elif beta_mode == "zero":
            b = field.zeros(p.r)
        else:
            raise ValueError(f"unknown beta_mode {beta_mode!r}")
        A.append(build_local_parity(base, pts, p.a))
        _, Gi = build_global_parity(field, pts, p, betas=b)
        V.append(vandermonde(base, pts, p.a, p.t - p.a))
        G.append(Gi)
        betas.append(b)

    H = _stack_H(p, field, A, V, G)
    return ParityCheck(params=p, field=field, points=points, betas=np.stack(betas),
                       A=tuple(A), V=tuple(V), G=tuple(G), H=H)


def _stack_H(p: CodeParams, field: ExtField, A, V, G) -> Matrix:
    H = Matrix.zeros(field, p.num_checks, p.n)
    for i in range(p.g):
        cols = slice(i * p.r, (i + 1) * p.r)
        H.data[i * p.a:(i + 1) * p.a, cols] = A[i].lift(field).data
        B = vstack([V[i].lift(field), G[i]])
        H.data[p.g * p.a:, cols] = B.data
    return H


def construct(n: int, r: int, h: int, a: int, g: int, shuffle_seed: int | None = None) -> ParityCheck:
    params = derive_params(n, r, h, a, g)
    return assemble_H(params, evaluation_points(params, shuffle_seed))


SABOTAGE_MODES = ("duplicate-point", "first-point-beta", "swap-g-rows")


def sabotage(params: CodeParams, mode: str) -> ParityCheck:
    """Deliberately broken variants of the construction, for negative controls.

    * ``duplicate-point``: the second point of group 1 repeats its first point.
    * ``first-point-beta``: ``beta_{i,j}`` built from ``x_{i,1}`` for every ``j``.
    * ``swap-g-rows``: the Moore entries of the second column of group 1 and
      the second column of group 2 trade places.  Exchanging the whole
      ``G_1``/``G_2`` blocks is not a useful control: it only relabels which
      point feeds the Moore rows, and the result can still be MR.
    """
    if mode == "duplicate-point":
        pts = evaluation_points(params).copy()
        pts[0, 1] = pts[0, 0]
        return assemble_H(params, pts)
    if mode == "first-point-beta":
        return assemble_H(params, beta_mode="first-point")
    if mode == "swap-g-rows":
        good = assemble_H(params)
        G = [Gi.copy() for Gi in good.G]
        betas = good.betas.copy()
        G[0].data[:, 1], G[1].data[:, 1] = good.G[1].data[:, 1], good.G[0].data[:, 1]
        betas[0, 1], betas[1, 1] = good.betas[1, 1], good.betas[0, 1]
        H = _stack_H(params, good.field, good.A, good.V, G)
        return ParityCheck(params=params, field=good.field, points=good.points, betas=betas,
                           A=good.A, V=good.V, G=tuple(G), H=H)
    raise ValueError(f"unknown sabotage mode {mode!r}; choose from {SABOTAGE_MODES}")


def from_points(params: CodeParams, field: ExtField, points) -> ParityCheck:
    return assemble_H(params, np.asarray(points, dtype=np.int64), field)


def desk_grid(max_r: int = 5) -> list[tuple[int, int, int, int, int]]:
    """Small ``(n, r, h, a, g)`` tuples with g in {2, 3}, a in {1, 2}, h in 1..4, r <= max_r."""
    out = []
    for g in (2, 3):
        for a in (1, 2):
            for h in range(1, 5):
                for r in range(max(a + ceil(h / g), a + 1), max_r + 1):
                    n = g * r
                    if n - g * a - h >= 1:
                        out.append((n, r, h, a, g))
    return out
