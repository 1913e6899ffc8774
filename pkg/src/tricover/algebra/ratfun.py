"""Reduced quotients of polynomials and their composition."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .gcd import divide_exact, poly_gcd
from .poly import Poly
from .scalar import scalar


class RatFun:
    """``num / den`` with ``gcd(num, den) == 1`` and ``den`` primitive with
    positive leading coefficient (a unique representative)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduced: bool = False):
        if den is None:
            den = Poly.one(num.gens)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.one(p.gens), reduced=True)

    @classmethod
    def const(cls, c, gens=("x", "y")) -> "RatFun":
        return cls.from_poly(Poly.const(c, gens))

    @property
    def gens(self):
        return self.num.gens

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> "RatFun":
        other = _as_ratfun(other, self.gens)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFun":
        return self + (-_as_ratfun(other, self.gens))

    def __rsub__(self, other) -> "RatFun":
        return _as_ratfun(other, self.gens) - self

    def __mul__(self, other) -> "RatFun":
        other = _as_ratfun(other, self.gens)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = _as_ratfun(other, self.gens)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFun":
        return _as_ratfun(other, self.gens) / self

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return RatFun(self.den, self.num) ** (-k)
        return RatFun(self.num ** k, self.den ** k, reduced=True) if k else RatFun.const(1, self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFun):
            other = _as_ratfun(other, self.gens)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, point: Sequence):
        """Exact value, or ``None`` where the reduced denominator vanishes."""
        d = self.den.evaluate(point)
        if not d:
            return None
        return self.num.evaluate(point) / d

    def diff(self, i: int) -> "RatFun":
        return RatFun(self.num.diff(i) * self.den - self.num * self.den.diff(i), self.den * self.den)

    def to_str(self, names=None) -> str:
        n = self.num.to_str(names)
        if self.den.is_constant():
            c = self.den.constant_value()
            if c == 1:
                return n
            return f"({n})/{c.numerator}" if c.denominator == 1 else f"({n})/({c})"
        return f"({n})/({self.den.to_str(names)})"

    def __repr__(self) -> str:
        return f"RatFun({self.to_str()!r})"


def _as_ratfun(v, gens) -> RatFun:
    if isinstance(v, RatFun):
        return v
    if isinstance(v, Poly):
        return RatFun.from_poly(v)
    return RatFun.const(scalar(v), gens)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.one(num.gens)
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = divide_exact(num, g)
            den = divide_exact(den, g)
    # normalize: den primitive with positive leading coefficient
    pden = den.primitive()
    ratio = den.leading_coefficient() / pden.leading_coefficient()
    if ratio != 1:
        num = num * (1 / ratio)
    return num, pden


def ratfun_compose(f: RatFun, subs: Sequence[RatFun]) -> RatFun:
    """``f(subs[0], subs[1], ...)`` as a reduced quotient.

    Raises ``ZeroDivisionError`` when the denominator vanishes identically
    after substitution.
    """
    if len(subs) != f.num.nvars:
        raise ValueError("substitution arity mismatch")
    subs = [_as_ratfun(s, subs[0].gens if isinstance(subs[0], (RatFun, Poly)) else ("x", "y"))
            for s in subs]
    target = subs[0].gens
    n = len(subs)
    # homogenize each variable separately so the common power of the
    # substituted denominators cancels between numerator and denominator
    top = [max(f.num.degree_in(i), f.den.degree_in(i)) for i in range(n)]
    num_pows = [_powers(s.num, top[i]) for i, s in enumerate(subs)]
    den_pows = [_powers(s.den, top[i]) for i, s in enumerate(subs)]

    # blocks[i][e] = num_i^e * den_i^(top_i - e), shared by every term
    blocks = [[num_pows[i][e] * den_pows[i][top[i] - e] for e in range(top[i] + 1)]
              for i in range(n)]

    def combine(rows: dict, i: int) -> Poly:
        """``sum_m c_m * prod_{k <= i} blocks[k][m_k]`` for ``rows = {m[:i + 1]: c}``."""
        if i == 0:
            acc: dict = {}
            for (e,), c in rows.items():
                for mm, v in blocks[0][e].terms.items():
                    w = acc.get(mm, 0) + c * v
                    if w:
                        acc[mm] = w
                    else:
                        acc.pop(mm, None)
            return Poly._raw(acc, target)
        groups: dict = {}
        for m, c in rows.items():
            groups.setdefault(m[i], {})[m[:i]] = c
        out = Poly.zero(target)
        for e, sub in groups.items():
            out = out + combine(sub, i - 1) * blocks[i][e]
        return out

    def lift(p: Poly) -> Poly:
        if p.is_zero():
            return Poly.zero(target)
        return combine(dict(p.terms), n - 1)

    num = lift(f.num)
    den = lift(f.den)
    if den.is_zero():
        raise ZeroDivisionError("composition has an identically vanishing denominator")
    return RatFun(num, den)


def _powers(p: Poly, k: int) -> list[Poly]:
    out = [Poly.one(p.gens)]
    for _ in range(k):
        out.append(out[-1] * p)
    return out


def ratfun_value(f: RatFun, point) -> mpq | None:
    return f.evaluate(point)
