"""Prime fields F_q and their extensions F_{q^m}.

Elements are stored as integer coefficient vectors over F_q in the
polynomial basis 1, y, ..., y^{m-1}: an array of shape ``(..., m)`` with
entries in ``[0, q)``.  Every arithmetic method is vectorized over the
leading axes, so a whole matrix row (or a batch of matrices) is multiplied
in one call.  A prime field is the degree-1 case and shares the same
interface, which lets the linear algebra stay field-agnostic.

:class:`FieldElement` is a small immutable wrapper for scalar work and for
tests; hot loops use the array methods directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# m^2 * q^2 must fit in int64 during multiplication.
MAX_CHARACTERISTIC = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def smallest_prime_geq(n: int) -> int:
    """Least prime ``q >= n`` (Bertrand guarantees ``q < 2n``)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    q = n
    while not is_prime(q):
        q += 1
    return q


# ---------------------------------------------------------------------------
# Polynomials over F_q as coefficient lists, lowest degree first.
# ---------------------------------------------------------------------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_divmod(f: Sequence[int], d: Sequence[int], q: int) -> tuple[list[int], list[int]]:
    f = _trim([c % q for c in f])
    d = _trim([c % q for c in d])
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(d[-1], q - 2, q)
    quot = [0] * max(len(f) - len(d) + 1, 0)
    while len(f) >= len(d):
        coef = f[-1] * inv_lead % q
        shift = len(f) - len(d)
        quot[shift] = coef
        for i, c in enumerate(d):
            f[shift + i] = (f[shift + i] - coef * c) % q
        _trim(f)
    return quot, f


def poly_mulmod(f: Sequence[int], g: Sequence[int], mod: Sequence[int], q: int) -> list[int]:
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % q
    return poly_divmod(out, mod, q)[1]


def poly_powmod(f: Sequence[int], e: int, mod: Sequence[int], q: int) -> list[int]:
    result = [1]
    base = poly_divmod(f, mod, q)[1]
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod, q)
        base = poly_mulmod(base, base, mod, q)
        e >>= 1
    return poly_divmod(result, mod, q)[1]


def poly_gcd(f: Sequence[int], g: Sequence[int], q: int) -> list[int]:
    f = _trim([c % q for c in f])
    g = _trim([c % q for c in g])
    while g:
        f, g = g, poly_divmod(f, g, q)[1]
    if f:
        inv = pow(f[-1], q - 2, q)
        f = [c * inv % q for c in f]
    return f


def is_irreducible(modulus: Sequence[int], q: int) -> bool:
    """Ben-Or test: ``gcd(f, X^{q^i} - X) = 1`` for ``i = 1 .. deg f // 2``."""
    f = _trim([c % q for c in modulus])
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(deg // 2):
        power = poly_powmod(power, q, f, q)
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % q
        if len(poly_gcd(f, diff, q)) != 1:
            return False
    return True


def find_irreducible(q: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``m`` over F_q.

    Candidates are scanned by the integer ``sum(c_i * q**i)`` of their
    lower coefficients, so ``c_0`` varies fastest.  Returns ``m + 1``
    coefficients, lowest degree first.  For ``m == 1`` this is ``y``.
    """
    if m < 1:
        raise ValueError(f"degree must be >= 1, got {m}")
    for index in range(q ** m):
        coeffs = [(index // q ** i) % q for i in range(m)] + [1]
        if is_irreducible(coeffs, q):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class Field:
    """Common array arithmetic; see :class:`PrimeField` and :class:`ExtField`."""

    q: int
    m: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.q ** self.m

    @property
    def degree(self) -> int:
        return self.m

    @property
    def base(self) -> "PrimeField":
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Field) and self.q == other.q and self.m == other.m
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.modulus))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.q})"
        return f"GF({self.q}^{self.m}, modulus={list(self.modulus)})"

    # -- construction of element arrays -----------------------------------

    def zeros(self, shape: tuple[int, ...] | int = ()) -> np.ndarray:
        if isinstance(shape, int):
            shape = (shape,)
        return np.zeros(tuple(shape) + (self.m,), dtype=np.int64)

    def ones(self, shape: tuple[int, ...] | int = ()) -> np.ndarray:
        out = self.zeros(shape)
        out[..., 0] = 1
        return out

    def embed(self, values) -> np.ndarray:
        """Embed base-field integers (any shape) as constants."""
        values = np.asarray(values, dtype=np.int64) % self.q
        out = self.zeros(values.shape)
        out[..., 0] = values
        return out

    def random(self, rng: np.random.Generator, shape: tuple[int, ...] | int = ()) -> np.ndarray:
        if isinstance(shape, int):
            shape = (shape,)
        return rng.integers(0, self.q, size=tuple(shape) + (self.m,), dtype=np.int64)

    def from_int(self, index) -> np.ndarray:
        """Element whose base-``q`` digits (little-endian) are its coefficients."""
        index = np.asarray(index, dtype=np.int64)
        powers = self.q ** np.arange(self.m, dtype=np.int64)
        return (index[..., None] // powers) % self.q

    def to_int(self, a: np.ndarray) -> np.ndarray:
        powers = self.q ** np.arange(self.m, dtype=np.int64)
        return (np.asarray(a, dtype=np.int64) * powers).sum(axis=-1)

    def all_elements(self) -> np.ndarray:
        return self.from_int(np.arange(self.order, dtype=np.int64))

    def element(self, value) -> "FieldElement":
        """Scalar from an int (packed index) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            arr = self.from_int(int(value) % self.order)
        else:
            arr = self.uncoords(value)
        return FieldElement(self, tuple(int(c) for c in arr))

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b) -> np.ndarray:
        return (np.add(a, b)) % self.q

    def sub(self, a, b) -> np.ndarray:
        return (np.subtract(a, b)) % self.q

    def neg(self, a) -> np.ndarray:
        return (-np.asarray(a)) % self.q

    def scale(self, c, a) -> np.ndarray:
        """Multiply by base-field scalars ``c`` (shape broadcasting against ``a[..., 0]``)."""
        return (np.asarray(c, dtype=np.int64)[..., None] * a) % self.q

    def mul(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def pow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.ones(a.shape[:-1])
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a) -> np.ndarray:
        raise NotImplementedError

    def is_zero(self, a) -> np.ndarray:
        return ~np.asarray(a).any(axis=-1)

    # -- coordinates over the base field ------------------------------------

    def coords(self, a) -> np.ndarray:
        return np.array(a, dtype=np.int64, copy=True)

    def uncoords(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if v.ndim == 0 or v.shape[-1] != self.m:
            raise ValueError(f"expected coordinate vectors of length {self.m}, got shape {v.shape}")
        return v % self.q

    def frobenius(self, a, times: int = 1) -> np.ndarray:
        raise NotImplementedError

    # -- serialization --------------------------------------------------------

    def descriptor(self) -> dict:
        return {"q": self.q, "m": self.m, "modulus": list(self.modulus)}


class PrimeField(Field):
    """F_q for prime ``q`` (primality certified by trial division)."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        if q >= MAX_CHARACTERISTIC:
            raise ValueError(f"q={q} too large for int64 coefficient arithmetic")
        self.q = q
        self.m = 1
        self.modulus = (0, 1)

    @property
    def base(self) -> "PrimeField":
        return self

    def mul(self, a, b) -> np.ndarray:
        return (np.multiply(a, b)) % self.q

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.is_zero(a).any():
            raise ZeroDivisionError("inverse of zero")
        out = np.ones_like(a)
        base = a.copy()
        e = self.q - 2
        while e:
            if e & 1:
                out = out * base % self.q
            base = base * base % self.q
            e >>= 1
        return out

    def frobenius(self, a, times: int = 1) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) % self.q


class ExtField(Field):
    """F_{q^m} = F_q[y] / (modulus) with the polynomial basis.

    ``modulus`` defaults to :func:`find_irreducible` and is certified
    irreducible either way.
    """

    def __init__(self, base: PrimeField | int, m: int, modulus: Sequence[int] | None = None):
        if isinstance(base, int):
            base = PrimeField(base)
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        q = base.q
        if modulus is None:
            modulus = find_irreducible(q, m)
        modulus = tuple(int(c) % q for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}: {list(modulus)}")
        if not is_irreducible(modulus, q):
            raise ValueError(f"modulus {list(modulus)} is reducible over GF({q})")
        self._base = base
        self.q = q
        self.m = m
        self.modulus = modulus

    @property
    def base(self) -> PrimeField:
        return self._base

    @cached_property
    def _structure(self) -> np.ndarray:
        # T[i, j] = coords of y^(i+j) mod modulus
        m, q = self.m, self.q
        powers = np.zeros((2 * m - 1, m), dtype=np.int64)
        cur = [1]
        for s in range(2 * m - 1):
            cur = poly_divmod(cur, self.modulus, q)[1]
            powers[s, : len(cur)] = cur
            cur = [0] + cur
        idx = np.add.outer(np.arange(m), np.arange(m))
        return powers[idx]

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.q
        outer = a[..., :, None] * b[..., None, :] % self.q
        return np.tensordot(outer, self._structure, axes=([-2, -1], [0, 1])) % self.q

    def _inv_scalar(self, coeffs: Sequence[int]) -> list[int]:
        # extended Euclid in F_q[y]
        q = self.q
        r0, r1 = list(self.modulus), _trim([int(c) % q for c in coeffs])
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        s0, s1 = [], [1]
        while len(r1) > 1:
            quot, rem = poly_divmod(r0, r1, q)
            prod = [0] * (len(quot) + len(s1))
            for i, x in enumerate(quot):
                for j, y in enumerate(s1):
                    prod[i + j] = (prod[i + j] + x * y) % q
            nxt = [((s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)) % q
                   for i in range(max(len(s0), len(prod)))]
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(nxt)
        c = pow(r1[0], q - 2, q)
        out = [x * c % q for x in s1] + [0] * self.m
        return out[: self.m]

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            if self.is_zero(a).any():
                raise ZeroDivisionError("inverse of zero")
            return self.base.inv(a)
        out = np.empty_like(a)
        flat_in = a.reshape(-1, self.m)
        flat_out = out.reshape(-1, self.m)
        for i, row in enumerate(flat_in):
            flat_out[i] = self._inv_scalar(row.tolist())
        return out

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Matrix ``F`` over F_q with ``coords(x^q) = coords(x) @ F``.

        Row ``i`` is ``(y^i)^q``, computed by square-and-multiply.
        """
        basis = np.eye(self.m, dtype=np.int64)
        return self.pow(basis, self.q)

    def frobenius(self, a, times: int = 1) -> np.ndarray:
        """``a^(q^times)``; an F_q-linear automorphism, applied as a matrix."""
        out = np.asarray(a, dtype=np.int64) % self.q
        times %= self.m
        for _ in range(times):
            out = out @ self.frobenius_matrix % self.q
        return out


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Immutable scalar of a :class:`Field`."""

    field: Field
    coeffs: tuple[int, ...]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _other(self, other) -> np.ndarray:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                # allow base-field constants against an extension
                if other.field.m == 1 and other.field.q == self.field.q:
                    return self.field.embed(other.coeffs[0])
                raise ValueError("mixed fields")
            return other.array
        if isinstance(other, (int, np.integer)):
            return self.field.embed(int(other))
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def _wrap(self, arr: np.ndarray) -> "FieldElement":
        return FieldElement(self.field, tuple(int(c) for c in arr))

    def __add__(self, other):
        o = self._other(other)
        return self._wrap(self.field.add(self.array, o))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.array, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.array))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.array, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.array))

    def __truediv__(self, other):
        return self * self._wrap(self.field.inv(self._other(other)))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.array, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.array))

    def frobenius(self, times: int = 1) -> "FieldElement":
        return self._wrap(self.field.frobenius(self.array, times))

    def coords(self) -> tuple[int, ...]:
        return self.coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            return self.coeffs == tuple(int(c) for c in self.field.embed(int(other)))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __int__(self) -> int:
        return int(self.field.to_int(self.array))

    def __repr__(self) -> str:
        if self.field.m == 1:
            return f"{self.coeffs[0]}"
        terms = [f"{c}" if i == 0 else f"{c}*y^{i}" if i > 1 else f"{c}*y"
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def elements(field: Field, values: Iterable) -> list[FieldElement]:
    return [field.element(v) for v in values]
