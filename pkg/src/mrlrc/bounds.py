"""Field-size exponents of MR-LRC constructions and lower bounds.

Bounds are compared as ``(base, exponent)`` pairs with hidden constants
ignored.  With ``g`` treated as a constant, ``r = n/g`` and ``max(n/r, r)``
are both ``Theta(n)``, so exponents over the bases ``n``, ``r`` and
``max(n/r, r)`` are compared directly.  Nothing here claims a concrete
field-size win for a particular ``n``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from math import ceil

from .gf import is_prime


class HNotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class BoundValue:
    name: str
    base: str                  # "n", "r" or "max(n/r,r)"
    exponent: Fraction
    source: str
    kind: str = "upper"        # "upper", "lower" or "this"
    note: str = ""

    def formula(self) -> str:
        exp = self.exponent
        exp_s = str(exp) if exp.denominator == 1 else f"({exp})"
        if self.kind == "lower":
            return f"Omega(n * r^{exp_s})"
        soft = "~" if "soft" in self.note else ""
        return f"{soft}O({self.base})^{exp_s}"


def _shape(params) -> tuple[int, int, int, int, int]:
    if isinstance(params, tuple):
        n, r, h, a, g = params
    else:
        n, r, h, a, g = params.n, params.r, params.h, params.a, params.g
    if g < 1 or r < 1 or n != g * r:
        raise ValueError(f"need n = g*r, got n={n}, r={r}, g={g}")
    if a < 1 or h < 0:
        raise ValueError(f"need a >= 1 and h >= 0, got a={a}, h={h}")
    return n, r, h, a, g


def _cdiv(x: int, y: int) -> int:
    return -(-x // y)


def is_prime_power(x: int) -> bool:
    if x < 2:
        return False
    p = next(d for d in range(2, x + 1) if x % d == 0)
    while x % p == 0:
        x //= p
    return x == 1 and is_prime(p)


def exponent_construction(params) -> int:
    """``h + (g-1)a - ceil(h/g)``."""
    n, r, h, a, g = _shape(params)
    return h + (g - 1) * a - _cdiv(h, g)


def exponent_gg22(params) -> tuple[int, int]:
    """``(max(n/r, r), min(h, r - a))``."""
    n, r, h, a, g = _shape(params)
    return max(n // r, r), min(h, r - a)


def hu_yekhanin_alt_exponent(params) -> int:
    """``h - ceil(h/g) + 1``, the other published form of the ``a = 1`` exponent."""
    n, r, h, a, g = _shape(params)
    return h - _cdiv(h, g) + 1


def table1_bounds(params) -> list[BoundValue]:
    """Rows of the table of constrained-setting upper bounds that apply."""
    n, r, h, a, g = _shape(params)
    rows: list[BoundValue] = []
    if h <= 1:
        rows.append(BoundValue("BHH12 (h<=1)", "r", Fraction(1), "Blaum-Hafner-Hetzler 2012"))
    if a == 1:
        rows.append(BoundValue("HY16 (a=1)", "n", Fraction(h - _cdiv(h, g) + g - 1), "Hu-Yekhanin 2016"))
    if a == 1 and g == 2 and h % 4 == 0:
        rows.append(BoundValue("HY16 (a=1,g=2,4|h)", "n", Fraction(h, 2), "Hu-Yekhanin 2016"))
    if h == 2:
        rows.append(BoundValue("GGY20 (h=2)", "n", Fraction(1), "Gopi-Guruswami-Yekhanin 2020"))
    if h == 3:
        rows.append(BoundValue("GGY20 (h=3)", "n", Fraction(3), "Gopi-Guruswami-Yekhanin 2020"))
    if h == 3 and a == 1 and r == 3:
        rows.append(BoundValue("GGY20 (h=3,a=1,r=3)", "n", Fraction(1), "Gopi-Guruswami-Yekhanin 2020",
                               note="soft-O"))
    if a == 1:
        q0 = g + 1
        while not is_prime_power(q0):
            q0 += 1
        exp = ceil(Fraction(min(h, r - 1)) * (1 - Fraction(1, q0)))
        rows.append(BoundValue(f"GG22 (a=1,q0={q0})", "n", Fraction(exp), "Gopi-Guruswami 2022",
                               note=f"q0 = {q0}, least prime power >= g+1"))
    return rows


def lower_bound_exponent(params) -> tuple[str, Fraction, Fraction | None]:
    """Exponent of ``r`` in the ``Omega(n r^alpha)`` lower bound (``h >= 2``).

    Returns the base description, ``alpha`` (clamped at 0) and, when ``g``
    divides ``h``, the simplified exponent ``min(ag/h, g-2)``.
    """
    n, r, h, a, g = _shape(params)
    if h < 2:
        raise HNotApplicable(f"lower bound needs h >= 2, got h={h}")
    c = _cdiv(h, g)
    alpha = max(Fraction(min(a, h - 2 * c), c), Fraction(0))
    simplified = None
    if h % g == 0:
        simplified = max(min(Fraction(a * g, h), Fraction(g - 2)), Fraction(0))
    return "n * r^alpha", alpha, simplified


@dataclass
class Comparison:
    params: tuple[int, int, int, int, int]
    construction: BoundValue
    upper: list[BoundValue]
    lower: BoundValue | None
    best: list[str]
    construction_wins: bool
    beats_gg22: bool
    footnotes: list[str] = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        def bv(b: BoundValue) -> dict:
            d = asdict(b)
            d["exponent"] = str(b.exponent)
            d["formula"] = b.formula()
            return d

        return {
            "params": dict(zip("nrhag", self.params)),
            "construction": bv(self.construction),
            "upper": [bv(b) for b in self.upper],
            "lower": bv(self.lower) if self.lower else None,
            "best": self.best,
            "construction_wins": self.construction_wins,
            "beats_gg22": self.beats_gg22,
            "footnotes": self.footnotes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def table(self) -> str:
        n, r, h, a, g = self.params
        lines = [f"field-size bounds for (n,r,h,a,g) = ({n},{r},{h},{a},{g})",
                 f"{'bound':<24} {'field size':<22} {'exponent':>8}  mark"]
        for b in [self.construction] + self.upper:
            mark = "best" if b.name in self.best else ""
            if b is self.construction and self.construction_wins:
                mark = "best (winner)"
            lines.append(f"{b.name:<24} {b.formula():<22} {str(b.exponent):>8}  {mark}")
        if self.lower is not None:
            lines.append(f"{self.lower.name:<24} {self.lower.formula():<22} {str(self.lower.exponent):>8}  lower")
        for i, note in enumerate(self.footnotes, 1):
            lines.append(f"[{i}] {note}")
        return "\n".join(lines)


def compare(params) -> Comparison:
    shape = _shape(params)
    n, r, h, a, g = shape
    this = BoundValue("this construction", "n", Fraction(exponent_construction(shape)),
                      "explicit construction", kind="this")
    gg_base, gg_exp = exponent_gg22(shape)
    upper = [BoundValue("GG22 / CSYZ21", "max(n/r,r)", Fraction(gg_exp), "Gopi-Guruswami 2022",
                        note=f"max(n/r,r) = {gg_base}")]
    upper += table1_bounds(shape)

    candidates = [this] + upper
    low = min(b.exponent for b in candidates)
    best = [b.name for b in candidates if b.exponent == low]
    wins = this.exponent < min(b.exponent for b in upper)

    lower = None
    footnotes = []
    if h >= 2:
        _, alpha, simplified = lower_bound_exponent(shape)
        note = f"simplified (g | h): r^{simplified}" if simplified is not None else ""
        lower = BoundValue("GGY20 lower", "n", alpha, "Gopi-Guruswami-Yekhanin 2020", kind="lower", note=note)
    if a == 1:
        footnotes.append(
            f"Hu-Yekhanin a=1 exponent has two published forms: h-ceil(h/g)+1 = "
            f"{hu_yekhanin_alt_exponent(shape)} and h-ceil(h/g)+g-1 = "
            f"{h - _cdiv(h, g) + g - 1}; they differ when g > 2.")
    return Comparison(params=shape, construction=this, upper=upper, lower=lower, best=best,
                      construction_wins=wins, beats_gg22=this.exponent < gg_exp, footnotes=footnotes)
