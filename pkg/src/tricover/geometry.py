"""Charts, birational maps between them, lines, Moebius maps and finite point sets.

Every chart is an open subset of the surface identified with (an open part
of) the affine plane. Polynomials on a chart always use the internal
generators ``("x", "y")``; a chart's ``coords`` only affect printing.
Charts form a tree: each one except the root knows a map ``down`` to its
parent chart and the inverse ``up``. Transitions between arbitrary charts
are composed along that tree and cached, always reduced, so that the
denominator of a transition vanishes exactly where the transition fails to
be regular.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq, mpz

from .algebra import Ideal, Poly, RatFun, ideal_is_trivial, poly_gcd, ratfun_compose, scalar
from .algebra.gcd import divide_exact

GENS = ("x", "y")
X, Y = Poly.gens_of(GENS)

Point = tuple  # (mpq, mpq)


def point(a, b) -> Point:
    return (scalar(a), scalar(b))


# -- rational maps -------------------------------------------------------------

@dataclass(frozen=True)
class RationalMap2:
    """A rational map between two affine charts, given by reduced components."""

    source: str
    target: str
    components: tuple[RatFun, RatFun]

    @classmethod
    def identity(cls, chart: str) -> "RationalMap2":
        return cls(chart, chart, (RatFun.from_poly(X), RatFun.from_poly(Y)))

    @classmethod
    def from_polys(cls, source: str, target: str, f: Poly, g: Poly) -> "RationalMap2":
        return cls(source, target, (RatFun.from_poly(f), RatFun.from_poly(g)))

    def evaluate(self, p: Sequence) -> Point | None:
        """Exact image, or ``None`` (the indeterminacy marker) at a pole."""
        out = []
        for c in self.components:
            v = c.evaluate(p)
            if v is None:
                return None
            out.append(v)
        return tuple(out)

    def is_regular_at(self, p: Sequence) -> bool:
        return all(c.den.evaluate(p) != 0 for c in self.components)

    def denominators(self) -> list[Poly]:
        return [c.den for c in self.components]

    def pullback(self, f: Poly | RatFun) -> RatFun:
        """``f`` (a function on the target) composed with this map."""
        if isinstance(f, Poly):
            f = RatFun.from_poly(f)
        return ratfun_compose(f, self.components)

    def jacobian(self, p: Sequence) -> list[list[mpq]] | None:
        rows = []
        for c in self.components:
            row = []
            for i in range(2):
                v = c.diff(i).evaluate(p)
                if v is None:
                    return None
                row.append(v)
            rows.append(row)
        return rows

    def push_direction(self, p: Sequence, d: Sequence) -> tuple[mpq, mpq] | None:
        j = self.jacobian(p)
        if j is None:
            return None
        return normalize_direction((j[0][0] * d[0] + j[0][1] * d[1], j[1][0] * d[0] + j[1][1] * d[1]))

    def to_strs(self, names=None) -> list[str]:
        return [c.to_str(names) for c in self.components]


def ratmap_eval(f: RationalMap2, p: Sequence) -> Point | None:
    return f.evaluate(p)


def ratmap_compose(g: RationalMap2, f: RationalMap2) -> RationalMap2:
    """``g ∘ f``; raises ``ZeroDivisionError`` if the composite is nowhere defined."""
    if f.target != g.source:
        raise ValueError(f"cannot compose: {f.source}->{f.target} then {g.source}->{g.target}")
    comps = tuple(ratfun_compose(c, f.components) for c in g.components)
    return RationalMap2(f.source, g.target, comps)


# -- directions and lines -----------------------------------------------------

def normalize_direction(d: Sequence) -> tuple[mpq, mpq]:
    """Canonical representative of a projective direction: ``(1, s)`` or ``(0, 1)``."""
    a, b = scalar(d[0]), scalar(d[1])
    if a:
        return (mpq(1), b / a)
    if b:
        return (mpq(0), mpq(1))
    raise ValueError("the zero vector is not a direction")


def same_direction(d1: Sequence, d2: Sequence) -> bool:
    return scalar(d1[0]) * scalar(d2[1]) - scalar(d1[1]) * scalar(d2[0]) == 0


@dataclass(frozen=True)
class AffLine:
    """An affine line in a chart; ``equation`` has total degree exactly one."""

    chart: str
    equation: Poly

    def __post_init__(self):
        if self.equation.degree() != 1:
            raise ValueError(f"not a line: {self.equation}")

    @classmethod
    def through(cls, chart: str, p: Sequence, d: Sequence) -> "AffLine":
        """The line through ``p`` with direction ``d``: ``d_y (x - p_x) - d_x (y - p_y)``."""
        d = normalize_direction(d)
        eq = (X - p[0]) * d[1] - (Y - p[1]) * d[0]
        return cls(chart, eq.primitive())

    @property
    def direction(self) -> tuple[mpq, mpq]:
        a = self.equation.terms.get((1, 0), mpq(0))
        b = self.equation.terms.get((0, 1), mpq(0))
        return normalize_direction((-b, a))

    def contains(self, p: Sequence) -> bool:
        return self.equation.evaluate(p) == 0


def tangent_direction(curve: Poly, p: Sequence) -> tuple[mpq, mpq]:
    """Tangent direction ``(-df/dy, df/dx)`` of a curve at a smooth point."""
    if curve.evaluate(p) != 0:
        raise ValueError("the point is not on the curve")
    fx = curve.diff(0).evaluate(p)
    fy = curve.diff(1).evaluate(p)
    if not fx and not fy:
        raise ValueError("singular point: both partial derivatives vanish")
    return normalize_direction((-fy, fx))


def line_parametrization(p: Sequence, d: Sequence) -> tuple[Poly, Poly]:
    """``(p_x + t d_x, p_y + t d_y)`` as polynomials in ``t``."""
    t = Poly.var(0, ("t",))
    return (t * d[0] + p[0], t * d[1] + p[1])


def _linear_times(acc: list, a, b) -> list:
    """Coefficients of ``acc(t) * (a + b t)``."""
    out = [a * c for c in acc] + [0]
    for k, c in enumerate(acc):
        out[k + 1] += b * c
    return out


def _add_const(acc: list, c) -> list:
    if acc:
        acc[0] += c
        return acc
    return [c]


def restrict_to_line(f: Poly, p: Sequence, d: Sequence) -> Poly:
    """``f(p + t d)`` as a polynomial in ``t``, up to a nonzero constant.

    Evaluated by Horner's rule in each variable after clearing denominators,
    so no intermediate bivariate polynomial is formed.
    """
    if f.is_zero():
        return Poly.zero(("t",))
    ints, _ = f.integer_terms()
    # x = (ax + bx t) / mx and y = (ay + by t) / my with integers
    px, py, dx, dy = (scalar(v) for v in (p[0], p[1], d[0], d[1]))
    mx = mpz(lcm(int(px.denominator), int(dx.denominator)))
    my = mpz(lcm(int(py.denominator), int(dy.denominator)))
    ax, bx = mpz(px * mx), mpz(dx * mx)
    ay, by = mpz(py * my), mpz(dy * my)
    degx, degy = f.degree_in(0), f.degree_in(1)
    rows: dict[int, dict[int, int]] = {}
    for (i, j), c in ints.items():
        rows.setdefault(i, {})[j] = c
    mypow = [mpz(1)]
    for _ in range(degy):
        mypow.append(mypow[-1] * my)
    mxpow = [mpz(1)]
    for _ in range(degx):
        mxpow.append(mxpow[-1] * mx)

    def row_value(row: dict[int, int]) -> list:
        # sum_j c_j (ay + by t)^j my^(degy - j)
        acc: list = []
        for j in range(degy, -1, -1):
            if acc:
                acc = _linear_times(acc, ay, by)
            c = row.get(j)
            if c:
                acc = _add_const(acc, c * mypow[degy - j])
        return acc

    acc: list = []
    for i in range(degx, -1, -1):
        if acc:
            acc = _linear_times(acc, ax, bx)
        row = rows.get(i)
        if row:
            r = row_value(row)
            scale = mxpow[degx - i]
            for k, c in enumerate(r):
                if k < len(acc):
                    acc[k] += c * scale
                else:
                    acc.append(c * scale)
    return Poly({(k,): int(c) for k, c in enumerate(acc) if c}, ("t",))


def line_meets(generators: Iterable[Poly], p: Sequence, d: Sequence, except_base: bool = False) -> bool:
    """Does the line ``p + t d`` meet the common zero set of ``generators`` (over C)?

    With ``except_base`` the base point ``p`` itself is ignored.
    """
    g = Poly.zero(("t",))
    for f in generators:
        g = poly_gcd(g, restrict_to_line(f, p, d))
        if g.is_constant() and not g.is_zero():
            return False
    if g.is_zero():
        return True
    if except_base:
        t = Poly.var(0, ("t",))
        while g.constant_value() == 0:
            g = divide_exact(g, t)
    return not g.is_constant()


# -- Moebius maps -----------------------------------------------------------

INF = None  # the point at infinity of P^1


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)`` on P^1; ``None`` stands for infinity."""

    a: mpq
    b: mpq
    c: mpq
    d: mpq

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("singular Moebius map")

    def __call__(self, z):
        if z is INF:
            return self.a / self.c if self.c else INF
        den = self.c * z + self.d
        if not den:
            return INF
        return (self.a * z + self.b) / den

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def as_ratfun(self, var: Poly) -> RatFun:
        return RatFun(var * self.a + self.b, var * self.c + self.d)


def mobius_to_infinity(P) -> MobiusMap:
    """A Moebius map sending ``P`` to infinity.

    ``P`` is ``None`` (infinity), a finite value, or a homogeneous pair ``(a, b)``
    meaning ``a/b``.
    """
    if isinstance(P, tuple):
        a, b = scalar(P[0]), scalar(P[1])
        if not a and not b:
            raise ValueError("invalid homogeneous pair (0, 0)")
        P = INF if not b else a / b
    if P is INF:
        return MobiusMap(mpq(1), mpq(0), mpq(0), mpq(1))
    P = scalar(P)
    return MobiusMap(mpq(0), mpq(1), mpq(1), -P)


# -- blowup charts -----------------------------------------------------------

def complementary_vector(d: Sequence) -> tuple[mpq, mpq]:
    """First standard basis vector unless it is parallel to ``d``."""
    return (mpq(1), mpq(0)) if d[0] == 0 or d[1] != 0 else (mpq(0), mpq(1))


def blowup_maps(chart: str, new_chart: str, p: Sequence, d: Sequence,
                e: Sequence | None = None) -> tuple[RationalMap2, RationalMap2]:
    """Chart of the blowup at ``p`` missing the direction ``d``.

    Returns ``(down, up)`` with ``down(u, v) = p + u e + u v d``; the
    exceptional curve is ``u = 0`` and its point ``(0, v)`` is the direction
    ``e + v d``.
    """
    d = normalize_direction(d)
    e = tuple(scalar(c) for c in (e if e is not None else complementary_vector(d)))
    det = e[0] * d[1] - e[1] * d[0]
    if not det:
        raise ValueError("basis vectors are parallel")
    u, v = X, Y
    down = RationalMap2.from_polys(new_chart, chart,
                                   u * e[0] + u * v * d[0] + p[0],
                                   u * e[1] + u * v * d[1] + p[1])
    # solve (x, y) - p = A e + B d
    dx, dy = X - p[0], Y - p[1]
    A = (dx * d[1] - dy * d[0]) * (1 / det)
    B = (dy * e[0] - dx * e[1]) * (1 / det)
    up = RationalMap2(chart, new_chart, (RatFun.from_poly(A), RatFun(B, A)))
    return down, up


def exceptional_direction(down: RationalMap2, q: Sequence) -> tuple[mpq, mpq]:
    """Direction at the center represented by a point ``(0, v)`` of a blowup chart."""
    if q[0] != 0:
        raise ValueError("point is not on the exceptional curve")
    # d/du of down at (0, v) is e + v d
    j = down.jacobian(q)
    return normalize_direction((j[0][0], j[1][0]))


def proper_transform(curve: Poly, blowup: RationalMap2, center: Sequence | None = None) -> tuple[Poly, int]:
    """Pull ``curve`` back along a blowup chart map and divide out ``u^m``.

    Returns ``(transform, m)`` where ``m`` is the multiplicity of the curve at
    the center.
    """
    if curve.is_zero():
        raise ValueError("the zero polynomial has no proper transform")
    pulled = blowup.pullback(curve)
    if not pulled.is_polynomial():
        raise ValueError("proper_transform expects a polynomial blowup chart map")
    p = pulled.num * (1 / pulled.den.constant_value())
    m = min(mono[0] for mono in p.terms)
    if m:
        p = Poly._raw({(a - m, b): c for (a, b), c in p.terms.items()}, p.gens)
    return p, m


# -- finite point sets -------------------------------------------------------

@dataclass
class ZeroDimSet:
    """A finite set of points: ideals per chart plus optional explicit rational points."""

    components: list[tuple[str, Ideal]] = field(default_factory=list)
    points: list[tuple[str, Point]] = field(default_factory=list)
    label: str = ""

    def is_empty_by_construction(self) -> bool:
        return not self.components and not self.points

    def add_point(self, chart: str, p: Sequence):
        self.points.append((chart, (scalar(p[0]), scalar(p[1]))))

    def add_ideal(self, chart: str, generators: Sequence[Poly]):
        self.components.append((chart, Ideal(chart, tuple(generators))))

    def charts(self) -> set[str]:
        return {c for c, _ in self.components} | {c for c, _ in self.points}


def ideal_is_finite(ideal: Ideal) -> bool:
    """Finite zero set: two coprime generators, or univariate members in each variable."""
    gens = [g for g in ideal.generators if not g.is_zero()]
    if any(g.is_constant() for g in gens):
        return True
    for i in range(len(gens)):
        for j in range(i):
            if poly_gcd(gens[i], gens[j]).is_constant():
                return True
    from .algebra import groebner_basis, standard_monomials
    basis = groebner_basis(ideal)
    if basis[0].is_constant():
        return not basis[0].is_zero()
    return standard_monomials(basis) is not None


def zerodim_meets_curve(S: ZeroDimSet, c: Poly, chart: str,
                        transport: Callable[[str, Point], Point | None] | None = None) -> bool:
    """True iff some point of ``S`` lies on ``c = 0`` in ``chart``.

    Explicit points born elsewhere are moved with ``transport`` (returning
    ``None`` for points outside ``chart``, which are skipped). Ideal
    components must live in ``chart``.
    """
    for ch, ideal in S.components:
        if ch != chart:
            raise ValueError(f"component in chart {ch} cannot be transported to {chart}")
        if not ideal_is_trivial(ideal.with_generators([c])):
            return True
    for ch, p in S.points:
        if ch != chart:
            if transport is None:
                raise ValueError(f"point in chart {ch} cannot be transported to {chart}")
            p = transport(ch, p)
            if p is None:
                continue
        if c.evaluate(p) == 0:
            return True
    return False


# -- the chart tree -------------------------------------------------------------

@dataclass(eq=False)
class ChartNode:
    name: str
    level: int
    coords: tuple[str, str]
    parent: "ChartNode | None" = None
    down: RationalMap2 | None = None
    up: RationalMap2 | None = None
    kind: str = "standard"
    removed: list[tuple[int, Point]] = field(default_factory=list)
    blowup: dict | None = None

    @property
    def depth(self) -> int:
        return 0 if self.parent is None else self.parent.depth + 1

    def removed_at(self, level: int) -> list[Point]:
        return [p for lv, p in self.removed if lv <= level]

    def __repr__(self) -> str:
        return f"ChartNode({self.name!r}, level={self.level}, kind={self.kind!r})"


class ChartGraph:
    """All charts of one run with memoized, reduced transitions."""

    def __init__(self):
        self.nodes: dict[str, ChartNode] = {}
        self._cache: dict[tuple[str, str], RationalMap2] = {}

    def add(self, node: ChartNode) -> ChartNode:
        if node.name in self.nodes:
            raise ValueError(f"duplicate chart name {node.name}")
        self.nodes[node.name] = node
        return node

    def __getitem__(self, name: str) -> ChartNode:
        return self.nodes[name]

    def __contains__(self, name: str) -> bool:
        return name in self.nodes

    def transition(self, a: str | ChartNode, b: str | ChartNode) -> RationalMap2:
        A = self.nodes[a] if isinstance(a, str) else a
        B = self.nodes[b] if isinstance(b, str) else b
        key = (A.name, B.name)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if A is B:
            out = RationalMap2.identity(A.name)
        elif A.parent is not None and (A.depth >= B.depth or B.parent is None):
            out = ratmap_compose(self.transition(A.parent, B), A.down)
        else:
            out = ratmap_compose(B.up, self.transition(A, B.parent))
        self._cache[key] = out
        return out

    def path(self, a: str | ChartNode, b: str | ChartNode) -> list[RationalMap2]:
        """Maps to apply, in order, to go from chart ``a`` to chart ``b`` through the tree."""
        A = self.nodes[a] if isinstance(a, str) else a
        B = self.nodes[b] if isinstance(b, str) else b
        up_chain = []
        n = A
        while n is not None:
            up_chain.append(n)
            n = n.parent
        seen = {id(n) for n in up_chain}
        down_chain = []
        n = B
        while id(n) not in seen:
            down_chain.append(n)
            n = n.parent
        lca = n
        maps = []
        for node in up_chain:
            if node is lca:
                break
            maps.append(node.down)
        for node in reversed(down_chain):
            maps.append(node.up)
        return maps

    def contains(self, chart: str, level: int, where: str, p: Sequence) -> bool:
        """Is the point ``p`` of chart ``where`` inside chart ``chart`` at ``level``?"""
        q = self.locate(chart, level, where, p)
        return q is not None

    def locate(self, chart: str, level: int, where: str, p: Sequence) -> Point | None:
        """Coordinates of the point in ``chart``, or ``None`` if it lies outside."""
        q = self.transition(where, chart).evaluate(p)
        if q is None:
            return None
        if q in self.nodes[chart].removed_at(level):
            return None
        return q

    def evaluate_along(self, a: str, b: str, p: Sequence) -> Point | None:
        """Image of ``p`` under the transition ``a -> b``, computed step by step.

        Much cheaper than the composed map on points of large height. Falls
        back to the composed map where some intermediate step is undefined.
        """
        q = tuple(p)
        for m in self.path(a, b):
            q = m.evaluate(q)
            if q is None:
                return self.transition(a, b).evaluate(p)
        return q

    def complement_trace(self, chart: str, of: str) -> Poly:
        """Square-free polynomial cutting out (surface - ``of``) inside ``chart``.

        A point of a chart lies in a constructed chart exactly where the
        reduced transition is regular, so the trace is the product of the
        transition's denominators.
        """
        from .algebra import poly_lcm, squarefree_part
        t = self.transition(chart, of)
        d0, d1 = (c.den.primitive() for c in t.components)
        # the radical of a product is the lcm of the radicals, which is much cheaper
        s0 = squarefree_part(d0)
        if d1 == d0:
            return s0
        s1 = squarefree_part(d1)
        return poly_lcm(s0, s1) if not s0.is_constant() else s1
