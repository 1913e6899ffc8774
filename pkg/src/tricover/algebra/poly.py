"""Sparse multivariate polynomials over the rationals."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .scalar import ONE, ZERO, format_scalar, scalar

DEFAULT_GENS = ("x", "y")
KRON_MUL_THRESHOLD = 4000  # term pairs above which products go through big integers


def monomial_key(m: tuple[int, ...]) -> tuple:
    """Graded lexicographic key with x1 < x2 < ... (the last generator is largest)."""
    return (sum(m), m[::-1])


class Poly:
    """A polynomial stored as ``{exponent tuple: nonzero mpq}``.

    Instances are treated as immutable once built; every operation returns
    a new polynomial.
    """

    __slots__ = ("terms", "gens", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], object] | None = None,
                 gens: Sequence[str] = DEFAULT_GENS):
        self.gens = tuple(gens)
        n = len(self.gens)
        clean = {}
        if terms:
            for m, c in terms.items():
                c = scalar(c)
                if c:
                    if len(m) != n:
                        raise ValueError(f"exponent {m} does not match gens {self.gens}")
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, gens: tuple[str, ...]) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p.gens = gens
        p._hash = None
        return p

    @classmethod
    def const(cls, c, gens: Sequence[str] = DEFAULT_GENS) -> "Poly":
        c = scalar(c)
        gens = tuple(gens)
        return cls._raw({(0,) * len(gens): c} if c else {}, gens)

    @classmethod
    def zero(cls, gens: Sequence[str] = DEFAULT_GENS) -> "Poly":
        return cls._raw({}, tuple(gens))

    @classmethod
    def one(cls, gens: Sequence[str] = DEFAULT_GENS) -> "Poly":
        return cls.const(1, gens)

    @classmethod
    def var(cls, i: int | str, gens: Sequence[str] = DEFAULT_GENS) -> "Poly":
        gens = tuple(gens)
        if isinstance(i, str):
            i = gens.index(i)
        m = [0] * len(gens)
        m[i] = 1
        return cls._raw({tuple(m): ONE}, gens)

    @classmethod
    def gens_of(cls, gens: Sequence[str] = DEFAULT_GENS) -> tuple["Poly", ...]:
        return tuple(cls.var(i, gens) for i in range(len(gens)))

    @classmethod
    def linear(cls, coeffs: Sequence, const=0, gens: Sequence[str] = DEFAULT_GENS) -> "Poly":
        """``sum(coeffs[i] * x_i) + const``."""
        gens = tuple(gens)
        n = len(gens)
        terms = {}
        for i, c in enumerate(coeffs):
            m = [0] * n
            m[i] = 1
            terms[tuple(m)] = c
        terms[(0,) * n] = const
        return cls(terms, gens)

    # basic queries ----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.gens)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> mpq:
        return self.terms.get((0,) * self.nvars, ZERO)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def leading_monomial(self) -> tuple[int, ...]:
        return max(self.terms, key=monomial_key)

    def leading_coefficient(self) -> mpq:
        if not self.terms:
            return ZERO
        return self.terms[self.leading_monomial()]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], mpq]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    # arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.gens != other.gens:
            raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(other, self.gens)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m)
            if v is None:
                terms[m] = c
            else:
                v = v + c
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return Poly._raw(terms, self.gens)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.gens)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = scalar(other)
            if not c:
                return Poly._raw({}, self.gens)
            return Poly._raw({m: v * c for m, v in self.terms.items()}, self.gens)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) * len(b) > KRON_MUL_THRESHOLD:
            from .kron import kron_mul
            fi, sf = self.integer_terms()
            gi, sg = other.integer_terms()
            scale = sf * sg
            return Poly._raw({m: mpq(c) * scale for m, c in kron_mul(fi, gi).items()}, self.gens)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        if len(self.gens) == 2:
            for (i1, j1), c1 in b.items():
                for (i2, j2), c2 in a.items():
                    k = (i1 + i2, j1 + j2)
                    out[k] = get(k, ZERO) + c1 * c2
        else:
            for m1, c1 in b.items():
                for m2, c2 in a.items():
                    k = tuple(x + y for x, y in zip(m1, m2))
                    out[k] = get(k, ZERO) + c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c}, self.gens)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.gens)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    def monic(self) -> "Poly":
        lc = self.leading_coefficient()
        if not lc or lc == 1:
            return self
        inv = 1 / lc
        return Poly._raw({m: c * inv for m, c in self.terms.items()}, self.gens)

    def mul_monomial(self, mono: tuple[int, ...], c=ONE) -> "Poly":
        return Poly._raw({tuple(x + y for x, y in zip(m, mono)): v * c
                          for m, v in self.terms.items()}, self.gens)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        try:
            return self == Poly.const(other, self.gens)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution ---------------------------------------
    def diff(self, i: int) -> "Poly":
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                terms[tuple(mm)] = c * e
        return Poly._raw(terms, self.gens)

    def __call__(self, *point) -> mpq:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> mpq:
        if len(point) != self.nvars:
            raise ValueError(f"point of arity {len(point)} for a polynomial in {self.nvars} variables")
        pt = [scalar(v) for v in point]
        powers = [dict() for _ in pt]
        total = ZERO
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    pw = cache.get(e)
                    if pw is None:
                        pw = pt[i] ** e
                        cache[e] = pw
                    t = t * pw
            total += t
        return total

    def subs_value(self, i: int, value) -> "Poly":
        """Substitute ``x_i = value`` keeping the generator tuple."""
        value = scalar(value)
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            out[mm] = out.get(mm, ZERO) + c * (value ** e if e else ONE)
        return Poly._raw({m: c for m, c in out.items() if c}, self.gens)

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: replace generator ``i`` by the polynomial ``images[i]``.

        The images may live in a different ring; the result lives there.
        """
        if len(images) != self.nvars:
            raise ValueError("substitution arity mismatch")
        target = images[0].gens
        pw_cache: list[dict[int, Poly]] = [{0: Poly.one(target), 1: img} for img in images]

        def power(i: int, e: int) -> Poly:
            cache = pw_cache[i]
            if e not in cache:
                k = max(k for k in cache if k <= e)
                p = cache[k]
                while k < e:
                    p = p * images[i]
                    k += 1
                    cache[k] = p
            return cache[e]

        def accumulate(dst: dict, p: "Poly", c):
            for m, v in p.terms.items():
                dst[m] = dst.get(m, ZERO) + v * c

        out: dict = {}
        if self.nvars == 2:
            # group by the power of the first generator: one product per row
            rows: dict[int, dict] = {}
            for (e0, e1), c in self.terms.items():
                accumulate(rows.setdefault(e0, {}), power(1, e1), c)
            for e0, row in rows.items():
                inner = Poly._raw({m: v for m, v in row.items() if v}, target)
                accumulate(out, power(0, e0) * inner if e0 else inner, ONE)
        else:
            for m, c in self.terms.items():
                t = Poly.const(c, target)
                for i, e in enumerate(m):
                    if e:
                        t = t * power(i, e)
                accumulate(out, t, ONE)
        return Poly._raw({m: v for m, v in out.items() if v}, target)

    def rename(self, gens: Sequence[str]) -> "Poly":
        gens = tuple(gens)
        if len(gens) != self.nvars:
            raise ValueError("rename must keep the number of generators")
        return Poly._raw(dict(self.terms), gens)

    def extend(self, gens: Sequence[str]) -> "Poly":
        """Embed into a ring with extra trailing generators."""
        gens = tuple(gens)
        pad = (0,) * (len(gens) - self.nvars)
        return Poly._raw({m + pad: c for m, c in self.terms.items()}, gens)

    def coefficients_in(self, i: int) -> list["Poly"]:
        """Coefficients of ``x_i^k`` (k = 0..deg), each free of ``x_i``."""
        d = self.degree_in(i)
        out = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            out[m[i]][m[:i] + (0,) + m[i + 1:]] = c
        return [Poly._raw(t, self.gens) for t in out]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence["Poly"], i: int) -> "Poly":
        gens = coeffs[0].gens
        terms = {}
        for k, cf in enumerate(coeffs):
            for m, c in cf.terms.items():
                mm = list(m)
                mm[i] += k
                terms[tuple(mm)] = c
        return cls._raw(terms, gens)

    # integer views ----------------------------------------------------
    def denominator_lcm(self) -> int:
        from math import lcm
        d = 1
        for c in self.terms.values():
            d = lcm(d, int(c.denominator))
        return d

    def integer_terms(self) -> tuple[dict, mpq]:
        """Return ``(int terms, scale)`` with ``self == scale * int_poly`` and content 1."""
        from math import gcd
        if not self.terms:
            return {}, ONE
        d = self.denominator_lcm()
        ints = {m: int(c * d) for m, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        ints = {m: v // g for m, v in ints.items()}
        return ints, mpq(g, d)

    def primitive(self) -> "Poly":
        """Integer content 1 and positive grlex leading coefficient."""
        if not self.terms:
            return self
        ints, _ = self.integer_terms()
        lm = max(ints, key=monomial_key)
        sign = -1 if ints[lm] < 0 else 1
        return Poly._raw({m: mpq(sign * v) for m, v in ints.items()}, self.gens)

    # printing ---------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = tuple(names) if names is not None else self.gens
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}") for i, e in enumerate(m) if e)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{format_scalar(a)}*{mono}"
            else:
                body = format_scalar(a)
            parts.append(("-" if neg else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r}, gens={self.gens})"


def poly_eval(p: Poly, point: Sequence) -> mpq:
    """Exact value of ``p`` at ``point``; raises ``ValueError`` on arity mismatch."""
    return p.evaluate(point)


def parse_poly(text: str, gens: Sequence[str] = DEFAULT_GENS) -> Poly:
    """Parse a polynomial written with ``+ - * ^ **`` and parentheses."""
    gens = tuple(gens)
    fast = _parse_canonical(text, gens)
    return fast if fast is not None else _Parser(text, gens).parse()


_TERM = re.compile(r"(\d+(?:/\d+)?)?\*?((?:[A-Za-z_]\w*(?:\^\d+)?\*?)*)")


def _parse_canonical(text: str, gens: tuple[str, ...]) -> Poly | None:
    """Fast path for the output of ``to_str`` (a flat signed sum of monomials)."""
    if "(" in text or "**" in text:
        return None
    body = text.strip()
    sign = 1
    if body.startswith("-"):
        sign, body = -1, body[1:]
    terms: dict = {}
    index = {g: i for i, g in enumerate(gens)}
    for chunk in re.split(r" ([+-]) ", body):
        if chunk in ("+", "-"):
            sign = 1 if chunk == "+" else -1
            continue
        m = _TERM.fullmatch(chunk)
        if not m or not chunk or chunk.endswith("*") or chunk.startswith("*"):
            return None
        coef = mpq(m.group(1)) if m.group(1) else ONE
        exps = [0] * len(gens)
        if m.group(2):
            if m.group(1) and "*" not in chunk[len(m.group(1)):len(m.group(1)) + 1]:
                return None
            for factor in m.group(2).split("*"):
                name, _, e = factor.partition("^")
                if name not in index:
                    return None
                exps[index[name]] += int(e) if e else 1
        key = tuple(exps)
        v = terms.get(key, ZERO) + sign * coef
        if v:
            terms[key] = v
        else:
            terms.pop(key, None)
    return Poly._raw(terms, gens)


class _Parser:
    def __init__(self, text: str, gens: tuple[str, ...]):
        self.s = text.replace("**", "^")
        self.gens = gens
        self.i = 0

    def parse(self) -> Poly:
        p = self._expr()
        self._ws()
        if self.i != len(self.s):
            raise ValueError(f"unexpected {self.s[self.i:]!r} at column {self.i + 1}")
        return p

    def _ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def _peek(self) -> str:
        self._ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def _expr(self) -> Poly:
        sign = 1
        if self._peek() in "+-":
            sign = -1 if self.s[self.i] == "-" else 1
            self.i += 1
        acc = self._term() * sign
        while self._peek() in ("+", "-") and self._peek():
            op = self.s[self.i]
            self.i += 1
            t = self._term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _term(self) -> Poly:
        acc = self._factor()
        while self._peek() in ("*", "/") and self._peek():
            op = self.s[self.i]
            self.i += 1
            f = self._factor()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or f.is_zero():
                    raise ValueError("division only by nonzero constants")
                acc = acc * (1 / f.constant_value())
        return acc

    def _factor(self) -> Poly:
        base = self._atom()
        if self._peek() == "^":
            self.i += 1
            self._ws()
            j = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            if j == self.i:
                raise ValueError(f"expected exponent at column {j + 1}")
            base = base ** int(self.s[j:self.i])
        return base

    def _atom(self) -> Poly:
        ch = self._peek()
        if ch == "(":
            self.i += 1
            p = self._expr()
            if self._peek() != ")":
                raise ValueError(f"expected ')' at column {self.i + 1}")
            self.i += 1
            return p
        if ch == "-":
            self.i += 1
            return -self._factor()
        if ch.isdigit():
            j = self.i
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            return Poly.const(int(self.s[j:self.i]), self.gens)
        if ch.isalpha() or ch == "_":
            j = self.i
            while self.i < len(self.s) and (self.s[self.i].isalnum() or self.s[self.i] == "_"):
                self.i += 1
            name = self.s[j:self.i]
            if name not in self.gens:
                raise ValueError(f"unknown variable {name!r} at column {j + 1}")
            return Poly.var(name, self.gens)
        raise ValueError(f"unexpected {ch!r} at column {self.i + 1}")


def polys_from(gens: Iterable[str]) -> tuple[Poly, ...]:
    return Poly.gens_of(tuple(gens))
