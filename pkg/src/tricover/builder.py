"""Construction of three affine-plane charts covering a blown-up rational surface.

The base cover of the minimal model is built first with every blowup
center kept inside all three charts. Each blowup is then absorbed by
replacing every chart ``U_j`` with the chart of ``Bl_P(U_j)`` that misses
the direction of a well-chosen line ``l_j`` through the center. All generic
choices come from a seeded deterministic candidate stream and are checked by
exact predicates; every accepted choice is logged so it can be replayed.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

from gmpy2 import mpq

from .algebra import Poly, RatFun, divides, squarefree_part, strip_factors
from .algebra.scalar import format_scalar, scalar
from .geometry import (GENS, INF, AffLine, ChartGraph, ChartNode, Point, RationalMap2, X, Y,
                       blowup_maps, line_meets, mobius_to_infinity, proper_transform,
                       ratmap_compose, same_direction, tangent_direction)
from .surface import (FutureCenters, SurfacePresentation, Tower, all_centers_at_level0,
                      base_coordinate, build_standard_atlas, future_center_sets,
                      homogeneous_point, pushforward_point)

log = logging.getLogger(__name__)


class ChoiceError(RuntimeError):
    """No candidate passed every predicate within the retry budget."""


class PreconditionError(ValueError):
    """An inductive step was asked to blow up a point it cannot handle."""


@dataclass(frozen=True)
class ChoiceConfig:
    seed: int = 0
    max_retries: int = 64
    search_radius: int = 1

    def __post_init__(self):
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")
        if self.search_radius < 1:
            raise ValueError("search_radius must be >= 1")


# -- candidate streams -------------------------------------------------------

def _rationals_by_height() -> Iterator[Fraction]:
    yield Fraction(0)
    h = 1
    while True:
        batch = []
        for q in range(1, h + 1):
            for p in range(-h, h + 1):
                if p and max(abs(p), q) == h and gcd(p, q) == 1:
                    batch.append(Fraction(p, q))
        batch.sort(key=lambda f: (f.denominator, abs(f), f < 0))
        yield from batch
        h += 1


def _height(f: Fraction | None) -> int:
    return 0 if f is None else max(abs(f.numerator), f.denominator)


def _seeded(stream: Iterable, height, cfg: ChoiceConfig, salt: str) -> Iterator:
    """Shuffle the candidates of height <= search_radius when the seed is nonzero."""
    it = iter(stream)
    head, rest_first = [], None
    for c in it:
        if height(c) > cfg.search_radius:
            rest_first = c
            break
        head.append(c)
    if cfg.seed:
        random.Random(f"{cfg.seed}/{salt}").shuffle(head)
    yield from head
    if rest_first is not None:
        yield rest_first
        yield from it


def direction_stream(cfg: ChoiceConfig, salt: str) -> Iterator[tuple[mpq, mpq]]:
    """Directions by slope: 0, vertical, 1, -1, 2, -2, 1/2, ..."""
    def raw():
        rats = _rationals_by_height()
        yield next(rats)
        yield None
        yield from rats
    for s in _seeded(raw(), _height, cfg, salt):
        yield (mpq(0), mpq(1)) if s is None else (mpq(1), mpq(s.numerator, s.denominator))


def p1_stream(cfg: ChoiceConfig, salt: str) -> Iterator:
    """Points of P^1: infinity (``None``), 0, 1, -1, 2, ..."""
    def raw():
        yield None
        yield from _rationals_by_height()
    for s in _seeded(raw(), _height, cfg, salt):
        yield None if s is None else mpq(s.numerator, s.denominator)


def p2_line_stream(cfg: ChoiceConfig, salt: str) -> Iterator[tuple[int, int, int]]:
    """Lines ``aX + bY + cZ``: coordinate lines first, then by height."""
    def raw():
        yield (0, 0, 1)
        yield (1, 0, 0)
        yield (0, 1, 0)
        h = 1
        while True:
            batch = []
            rng = range(-h, h + 1)
            for a in rng:
                for b in rng:
                    for c in rng:
                        v = (a, b, c)
                        if max(map(abs, v)) != h or gcd(gcd(a, b), c) != 1:
                            continue
                        first = next(x for x in v if x)
                        if first < 0 or sum(1 for x in v if x) == 1:
                            continue
                        batch.append(v)
            batch.sort(key=lambda v: (sum(1 for x in v if x), [abs(x) for x in v[::-1]], v))
            yield from batch
            h += 1
    yield from _seeded(raw(), lambda v: max(map(abs, v)), cfg, salt)


# -- generic choice ----------------------------------------------------------

Predicate = tuple[str, Callable[[object], bool]]


@dataclass
class AuditEntry:
    label: str
    candidate: object
    predicates: list[str]
    rejected: list[tuple[object, str]]
    checks: list[Predicate] = field(default_factory=list, repr=False)

    def replay(self) -> bool:
        return all(fn(self.candidate) for _, fn in self.checks)

    def to_dict(self) -> dict:
        return {"label": self.label, "choice": describe_candidate(self.candidate),
                "predicates": list(self.predicates),
                "rejected": [{"candidate": describe_candidate(c), "failed": why}
                             for c, why in self.rejected]}


def describe_candidate(c) -> str:
    if c is None:
        return "inf"
    if isinstance(c, tuple):
        return "(" + ", ".join(describe_candidate(v) for v in c) + ")"
    if isinstance(c, int):
        return str(c)
    return format_scalar(scalar(c))


def choose_generic(candidates: Iterable, predicates: Sequence[Predicate], cfg: ChoiceConfig,
                   label: str = "choice", audit: list | None = None):
    """First candidate of the stream passing every predicate (checked in order)."""
    rejected = []
    for n, cand in enumerate(candidates):
        if n >= cfg.max_retries:
            break
        failed = next((name for name, fn in predicates if not fn(cand)), None)
        if failed is None:
            if audit is not None:
                audit.append(AuditEntry(label, cand, [name for name, _ in predicates], rejected,
                                        list(predicates)))
            log.debug("%s: chose %s after %d rejections", label, describe_candidate(cand), len(rejected))
            return cand
        rejected.append((cand, failed))
    raise ChoiceError(f"{label}: no candidate among the first {cfg.max_retries} passed "
                      f"(last failures: {[w for _, w in rejected[-5:]]})")


# -- charts and covers -------------------------------------------------------

T_GENS = ("t",)
T = Poly.var(0, T_GENS)


@dataclass(frozen=True)
class Component:
    """An irreducible curve of the complement of a constructed chart.

    Every such curve is rational; ``param`` maps the affine line (variable
    ``t``) birationally onto it, in the coordinates of chart ``home``.
    """

    cid: str
    home: str
    param: tuple[RatFun, RatFun]
    origin: str


def line_param(p: Sequence, d: Sequence) -> tuple[RatFun, RatFun]:
    return (RatFun.from_poly(T * d[0] + p[0]), RatFun.from_poly(T * d[1] + p[1]))


@dataclass
class Chart:
    """One of the three constructed affine planes.

    ``factors[W][cid]`` is the equation in standard chart ``W`` of the
    complement component ``cid``; components missing from ``W`` are omitted.
    """

    node: ChartNode
    reference: str
    factors: dict[str, dict[str, Poly]]
    components: dict[str, Component]
    graph: ChartGraph = field(repr=False)
    line: AffLine | None = None

    @property
    def name(self) -> str:
        return self.node.name

    @property
    def complement(self) -> dict[str, Poly]:
        """Trace of the complement in each standard chart (product of the factors)."""
        out = {}
        for w, fs in self.factors.items():
            prod = Poly.one(GENS)
            for f in fs.values():
                prod = prod * f
            out[w] = prod if prod.is_constant() else prod.primitive()
        return out

    @property
    def to_reference(self) -> RationalMap2:
        return self.graph.transition(self.node, self.reference)

    @property
    def from_reference(self) -> RationalMap2:
        return self.graph.transition(self.reference, self.node)


def _keep(fs: dict[str, Poly]) -> dict[str, Poly]:
    return {k: f.primitive() for k, f in fs.items() if not f.is_constant()}


@dataclass
class TriCover:
    level: int
    charts: list[Chart]
    tower: Tower
    audit: list[AuditEntry] = field(default_factory=list)
    base_data: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.charts) != 3:
            raise ValueError("a tri-cover has exactly three charts")

    @property
    def graph(self) -> ChartGraph:
        return self.tower.graph

    def standard_charts(self) -> list[str]:
        return self.tower.atlas(self.level).names

    def contains(self, j: int, chart: str, p: Point) -> bool:
        return self.graph.locate(self.charts[j].name, self.level, chart, p) is not None


def _line_trace_p2(c: Sequence[int], chart: str) -> Poly:
    a, b, cz = (mpq(v) for v in c)
    if chart == "Pz":
        t = X * a + Y * b + cz
    elif chart == "Px":
        t = X * b + Y * cz + a
    else:
        t = X * a + Y * cz + b
    return Poly.one(GENS) if t.is_constant() else t.primitive()


def base_cover_p2(tower: Tower, avoid: Sequence[tuple[str, Point]], cfg: ChoiceConfig,
                  audit: list | None = None) -> TriCover:
    """Complements of three lines in general position missing every avoid point."""
    audit = audit if audit is not None else []
    graph = tower.graph
    homs = [homogeneous_point(ch, p) for ch, p in avoid]

    def avoids(c):
        return all(c[0] * h[0] + c[1] * h[1] + c[2] * h[2] != 0 for h in homs)

    lines: list[tuple[int, int, int]] = []
    for j in range(3):
        preds: list[Predicate] = [("line avoids pi(E)", avoids)]
        if j >= 1:
            first = lines[0]
            preds.append(("distinct from L1", lambda c, f=first: _cross(c, f) != (0, 0, 0)))
        if j == 2:
            l1, l2 = lines[0], lines[1]
            preds.append(("L1, L2, L3 have no common point", lambda c, a=l1, b=l2: _det3(a, b, c) != 0))
        lines.append(choose_generic(p2_line_stream(cfg, f"P2/L{j + 1}"), preds, cfg,
                                    f"base/L{j + 1}", audit))

    charts = []
    for j, c in enumerate(lines):
        node = _p2_line_complement(graph, c, f"U{j}@0")
        factors = {ch: _keep({"L": _line_trace_p2(c, ch)}) for ch in ("Pz", "Px", "Py")}
        comp = Component("L", *_p2_line_param(c), "base")
        charts.append(Chart(node, tower.base.root, factors, {"L": comp}, graph))
    return TriCover(0, charts, tower, audit, {"lines": lines})


def _p2_line_param(c: Sequence[int]) -> tuple[str, tuple[RatFun, RatFun]]:
    a, b, cz = (mpq(v) for v in c)
    if b:
        return "Pz", (RatFun.from_poly(T), RatFun.from_poly(T * (-a / b) - cz / b))
    if a:
        return "Pz", (RatFun.const(-cz / a, T_GENS), RatFun.from_poly(T))
    return "Px", (RatFun.from_poly(T), RatFun.const(0, T_GENS))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _det3(a, b, c) -> int:
    x = _cross(b, c)
    return a[0] * x[0] + a[1] * x[1] + a[2] * x[2]


def _p2_line_complement(graph: ChartGraph, c: Sequence[int], name: str) -> ChartNode:
    """``P^2 - {c . (X, Y, Z) = 0}`` with coordinates ``(f1/c, f2/c)`` for the first
    two standard covectors completing ``c`` to a basis."""
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    f1, f2 = next((f, g) for k, f in enumerate(basis) for g in basis[k + 1:] if _det3(c, f, g) != 0)
    m = [[mpq(v) for v in c], [mpq(v) for v in f1], [mpq(v) for v in f2]]
    hom = (X, Y, Poly.one(GENS))  # the root chart Pz is {Z != 0}

    def form(row):
        return hom[0] * row[0] + hom[1] * row[1] + hom[2] * row[2]

    lc = form(m[0])
    up = RationalMap2("Pz", name, (RatFun(form(m[1]), lc), RatFun(form(m[2]), lc)))
    inv = _inverse3(m)
    s, t = X, Y
    vec = (Poly.one(GENS), s, t)
    hx = [vec[0] * inv[r][0] + vec[1] * inv[r][1] + vec[2] * inv[r][2] for r in range(3)]
    down = RationalMap2(name, "Pz", (RatFun(hx[0], hx[2]), RatFun(hx[1], hx[2])))
    node = ChartNode(name, 0, ("s", "t"), parent=graph["Pz"], down=down, up=up, kind="constructed")
    graph.add(node)
    return node


def _inverse3(m):
    a = m
    det = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
           - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    cof = [[(a[(j + 1) % 3][(i + 1) % 3] * a[(j + 2) % 3][(i + 2) % 3]
             - a[(j + 1) % 3][(i + 2) % 3] * a[(j + 2) % 3][(i + 1) % 3]) / det
            for j in range(3)] for i in range(3)]
    return cof


# -- Hirzebruch base case ----------------------------------------------------------

class _Hirz:
    """Coordinate formulas on Sigma_n for trivializations over P^1 - {P}."""

    def __init__(self, n: int):
        self.n = n
        one = Poly.one(GENS)
        x, y = RatFun.from_poly(X), RatFun.from_poly(Y)
        inv_x = RatFun(one, X)
        # base coordinate z and fiber coordinate w of the root chart, per chart
        self.z = {"H00": x, "H01": x, "H10": inv_x, "H11": inv_x}
        self.w = {"H00": y, "H01": RatFun(one, Y), "H10": RatFun(X ** n * Y),
                  "H11": RatFun(X ** n, Y)}

    def gauge(self, chart: str, P) -> RatFun:
        """Trivializing fiber coordinate omega over P^1 - {P}."""
        w = self.w[chart]
        if P is INF:
            return w
        return (self.z[chart] - P) ** self.n * w if self.n else w

    def fiber_trace(self, chart: str, P) -> Poly:
        if chart in ("H00", "H01"):
            return Poly.one(GENS) if P is INF else (X - P).primitive()
        if P is INF:
            return X
        t = X * P - 1
        return Poly.one(GENS) if t.is_constant() else t.primitive()

    def section_trace(self, chart: str, P, Q) -> Poly:
        om = self.gauge(chart, P)
        t = om.den if Q is INF else (om.num - om.den * Q)
        return Poly.one(GENS) if t.is_constant() else t

    def complement_trace(self, chart: str, P, Q) -> Poly:
        return squarefree_part(self.fiber_trace(chart, P) * self.section_trace(chart, P, Q))

    def component_factors(self, chart: str, P, Q) -> dict[str, Poly]:
        fib = self.fiber_trace(chart, P)
        sec = self.section_trace(chart, P, Q)
        if not fib.is_constant() and not sec.is_constant():
            sec = strip_factors(sec, fib)
        if not sec.is_constant():
            sec = squarefree_part(sec)
        return _keep({"fiber": fib, "section": sec})

    def components(self, P, Q) -> dict[str, Component]:
        n = self.n
        if P is INF:
            fiber = Component("fiber", "H10", (RatFun.const(0, T_GENS), RatFun.from_poly(T)), "base")
        else:
            fiber = Component("fiber", "H00", (RatFun.const(P, T_GENS), RatFun.from_poly(T)), "base")
        if Q is INF:
            sec = Component("section", "H01", (RatFun.from_poly(T), RatFun.const(0, T_GENS)), "base")
        elif P is INF or n == 0:
            sec = Component("section", "H00", (RatFun.from_poly(T), RatFun.const(Q, T_GENS)), "base")
        else:
            sec = Component("section", "H00",
                            (RatFun.from_poly(T), RatFun(Poly.const(Q, T_GENS), (T - P) ** n)), "base")
        return {"fiber": fiber, "section": sec}

    def chart_maps(self, name: str, P, Q, fiber_chart: str = "eta") -> tuple[RationalMap2, RationalMap2]:
        """Maps between the root ``H00`` and ``(zeta, eta)``.

        ``fiber_chart`` is ``"eta"`` (the complement of the section omega = Q),
        ``"omega"`` (omega finite) or ``"omega_inv"`` (omega != 0).
        """
        n = self.n
        one = Poly.one(GENS)
        z, w = RatFun.from_poly(X), RatFun.from_poly(Y)
        m = mobius_to_infinity(P)
        zeta = m.as_ratfun(X)
        omega = w if P is INF else (z - P) ** n * w if n else w
        if fiber_chart == "omega":
            second = omega
        elif fiber_chart == "omega_inv":
            second = RatFun(one) / omega
        elif Q is INF:
            second = omega
        else:
            second = RatFun(one) / (omega - Q)
        up = RationalMap2("H00", name, (zeta, second))
        # inverse
        zz = RatFun.from_poly(X) if P is INF else RatFun(one, X) + P
        s = RatFun.from_poly(Y)
        if fiber_chart == "omega":
            om = s
        elif fiber_chart == "omega_inv":
            om = RatFun(one) / s
        elif Q is INF:
            om = s
        else:
            om = RatFun(one) / s + Q
        ww = om if P is INF or n == 0 else om * RatFun.from_poly(X) ** n
        down = RationalMap2(name, "H00", (zz, ww))
        return up, down


def _node(graph: ChartGraph, name: str, up: RationalMap2, down: RationalMap2, kind: str,
          coords=("zeta", "eta")) -> ChartNode:
    return ChartNode(name, 0, coords, parent=graph["H00"], down=down, up=up, kind=kind)


def _transition_to(graph: ChartGraph, chart: str, node: ChartNode) -> RationalMap2:
    """Transition from a standard chart to a node hanging off the root (not cached)."""
    return ratmap_compose(node.up, graph.transition(chart, "H00"))


def _transition_between(graph: ChartGraph, a: ChartNode, b: ChartNode) -> RationalMap2:
    return ratmap_compose(b.up, a.down)


def _trace_between(graph: ChartGraph, a: ChartNode, b: ChartNode) -> Poly:
    t = _transition_between(graph, a, b)
    return squarefree_part(t.components[0].den * t.components[1].den)


def base_cover_hirzebruch(tower: Tower, avoid: Sequence[tuple[str, Point]], cfg: ChoiceConfig,
                          audit: list | None = None) -> TriCover:
    """Three trivialization charts ``q_j^{-1}(A^1 x (P^1 - Q_j))`` of Sigma_n."""
    audit = audit if audit is not None else []
    graph = tower.graph
    n = tower.base.n
    H = _Hirz(n)
    std = ("H00", "H01", "H10", "H11")
    base_pts = [base_coordinate(ch, p) for ch, p in avoid]

    def fresh_base(excluded):
        return lambda P: all(P != b for b in base_pts) and all(P != e for e in excluded)

    def candidate_node(name, P, Q, fiber_chart="eta"):
        up, down = H.chart_maps(name, P, Q, fiber_chart)
        coords = ("zeta", "eta") if fiber_chart == "eta" else ("zeta", "omega")
        return _node(graph, name, up, down, "auxiliary" if fiber_chart != "eta" else "constructed", coords)

    def contains_avoid(node):
        for ch, p in avoid:
            if not _transition_to(graph, ch, node).is_regular_at(p):
                return False
        return True

    # U0
    P0 = choose_generic(p1_stream(cfg, "H/P0"), [("P0 not in p(pi(E))", fresh_base([]))],
                        cfg, "base/P0", audit)
    Q0 = choose_generic(p1_stream(cfg, "H/Q0"),
                        [("Q0 off the fiber coordinates of q0(pi(E))",
                          lambda Q: contains_avoid(candidate_node("tmp", P0, Q)))],
                        cfg, "base/Q0", audit)
    U0 = candidate_node("U0@0", P0, Q0)

    # U1
    P1 = choose_generic(p1_stream(cfg, "H/P1"),
                        [("P1 not in p(pi(E)) and P1 != P0", fresh_base([P0]))],
                        cfg, "base/P1", audit)
    V1 = candidate_node("V1", P1, None, "omega")
    V1i = candidate_node("V1'", P1, None, "omega_inv")
    c_v1 = _trace_between(graph, V1, U0)
    c_v1i = _trace_between(graph, V1i, U0)

    def not_q1_of_c2(Q):
        if Q is INF:
            return not divides(Y, c_v1i)
        return not divides(Y - Q, c_v1)

    Q1 = choose_generic(p1_stream(cfg, "H/Q1"),
                        [("Q1 off the second projection of q1(pi(E))",
                          lambda Q: contains_avoid(candidate_node("tmp", P1, Q))),
                         ("L1 != q1(C2)", not_q1_of_c2)],
                        cfg, "base/Q1", audit)
    U1 = candidate_node("U1@0", P1, Q1)

    # A = M - (U0 u U1), per standard chart
    t0 = {ch: H.complement_trace(ch, P0, Q0) for ch in std}
    t1 = {ch: H.complement_trace(ch, P1, Q1) for ch in std}

    def fiber_misses_A(P):
        for ch in std:
            if ch in ("H00", "H01"):
                if P is INF:
                    continue
                base_pt = (P, mpq(0))
            else:
                if P == 0:
                    continue
                base_pt = (mpq(0) if P is INF else 1 / P, mpq(0))
            if line_meets([t0[ch], t1[ch]], base_pt, (0, 1)):
                return False
        return True

    P2 = choose_generic(p1_stream(cfg, "H/P2"),
                        [("P2 not in p(pi(E)) u {P0, P1}", fresh_base([P0, P1])),
                         ("P2 not in p(A)", fiber_misses_A)],
                        cfg, "base/P2", audit)
    V2 = candidate_node("V2", P2, None, "omega")
    V2i = candidate_node("V2'", P2, None, "omega_inv")
    a_v2 = [_trace_between(graph, V2, U0), _trace_between(graph, V2, U1)]
    a_v2i = [_trace_between(graph, V2i, U0), _trace_between(graph, V2i, U1)]

    def q2_misses_A(Q):
        if Q is INF:
            return not line_meets(a_v2i, (0, 0), (1, 0))
        return not line_meets(a_v2, (0, Q), (1, 0))

    Q2 = choose_generic(p1_stream(cfg, "H/Q2"),
                        [("Q2 off the second projection of q2(pi(E))",
                          lambda Q: contains_avoid(candidate_node("tmp", P2, Q))),
                         ("Q2 off the second projection of q2(A)", q2_misses_A)],
                        cfg, "base/Q2", audit)
    U2 = candidate_node("U2@0", P2, Q2)

    charts = []
    for node, (P, Q) in zip((U0, U1, U2), ((P0, Q0), (P1, Q1), (P2, Q2))):
        graph.add(node)
        factors = {ch: H.component_factors(ch, P, Q) for ch in std}
        charts.append(Chart(node, "H00", factors, H.components(P, Q), graph))
    return TriCover(0, charts, tower, audit, {"P": (P0, P1, P2), "Q": (Q0, Q1, Q2)})


# -- blowup charts through a line ---------------------------------------------------

def blowup_chart(graph: ChartGraph, ambient: ChartNode, p: Point, line: AffLine,
                 name: str, level: int) -> ChartNode:
    """The chart ``U_l`` of ``Bl_p(ambient)`` whose exceptional curve misses only
    the direction of ``line``."""
    if not line.contains(p):
        raise ValueError("the line does not pass through the center")
    down, up = blowup_maps(ambient.name, name, p, line.direction)
    node = ChartNode(name, level, ("u", "v"), parent=ambient, down=down, up=up, kind="constructed",
                     blowup={"center": tuple(p), "d": line.direction, "level": level})
    graph.add(node)
    return node


# -- the inductive step ------------------------------------------------------------

def line_closure_trace(graph: ChartGraph, chart: str, line: AffLine, complement: Poly) -> Poly:
    """Equation of the closure of ``line`` (a line of a constructed chart) in ``chart``.

    ``complement`` cuts out the part of ``chart`` outside the line's chart;
    factors supported there are spurious and get stripped. What remains is
    the closure itself with multiplicity one, since the transition is an
    isomorphism on a dense open set.
    """
    pulled = graph.transition(chart, line.chart).pullback(line.equation)
    num = pulled.num
    if num.is_constant():
        return Poly.one(GENS)
    if not complement.is_constant():
        num = strip_factors(num, complement)
    return Poly.one(GENS) if num.is_constant() else num.primitive()


def _mult(a: Poly, b: Poly) -> Poly:
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    # coprime square-free factors
    return (a * b).primitive()


def inductive_step(cover: TriCover, i: int, fc: FutureCenters | None = None,
                   cfg: ChoiceConfig = ChoiceConfig()) -> TriCover:
    """Blow up the ``i``-th center and rebuild the three charts."""
    tower, graph = cover.tower, cover.graph
    if cover.level != i - 1:
        raise ValueError(f"cover is at level {cover.level}, step {i} needs level {i - 1}")
    fc = fc if fc is not None else future_center_sets(tower, i)
    center = tower.center(i)
    lvl = i - 1
    audit = cover.audit
    names = [c.name for c in cover.charts]

    for ch, q in fc.a1:
        if graph.locate(ch, lvl, center.chart, center.coords) == tuple(q):
            raise PreconditionError("P in A1: the center is listed among the points to avoid")
    P = []
    for c in cover.charts:
        q = graph.locate(c.name, lvl, center.chart, center.coords)
        if q is None:
            raise PreconditionError(f"center {i} lies outside chart {c.name}")
        P.append(q)
    A1 = []
    for c in cover.charts:
        pts = []
        for ch, q in fc.a1:
            loc = graph.locate(c.name, lvl, ch, q)
            if loc is None:
                raise AssertionError(f"future center {ch}{tuple(map(str, q))} is outside {c.name}")
            pts.append(loc)
        A1.append(pts)
    D = []
    for j, c in enumerate(cover.charts):
        t = graph.transition(center.chart, c.name)
        D.append([t.push_direction(center.coords, d) for d in fc.a2_directions])

    tau = [[None if j == k else graph.complement_trace(names[j], names[k]) for k in range(3)]
           for j in range(3)]

    def avoid_a1(j):
        return lambda d: all(AffLine.through(names[j], P[j], d).equation.evaluate(a) != 0 for a in A1[j])

    def avoid_a2(j):
        return lambda d: not any(same_direction(d, e) for e in D[j])

    def avoid_pair(j, k, m):
        gens = [tau[j][k], tau[j][m]]
        return lambda d: not line_meets(gens, P[j], d)

    # l0
    d0 = choose_generic(direction_stream(cfg, f"{i}/l0"), [
        ("l0 misses X-(U1 u U2)", avoid_pair(0, 1, 2)),
        ("l0 misses A1", avoid_a1(0)),
        ("l0 meets E outside A2", avoid_a2(0)),
    ], cfg, f"step{i}/l0", audit)
    l0 = AffLine.through(names[0], P[0], d0)

    # l1
    lam10 = line_closure_trace(graph, names[1], l0, tau[1][0])
    tan10 = tangent_direction(lam10, P[1])
    d1 = choose_generic(direction_stream(cfg, f"{i}/l1"), [
        ("l1 misses X-(U0 u U2)", avoid_pair(1, 0, 2)),
        ("l1 transversal to l0 at P", lambda d: not same_direction(d, tan10)),
        ("l1 misses l0 n (X-U2)", lambda d: not line_meets([lam10, tau[1][2]], P[1], d)),
        ("l1 misses A1", avoid_a1(1)),
        ("l1 meets E outside A2", avoid_a2(1)),
    ], cfg, f"step{i}/l1", audit)
    l1 = AffLine.through(names[1], P[1], d1)

    # l2
    lam20 = line_closure_trace(graph, names[2], l0, tau[2][0])
    lam21 = line_closure_trace(graph, names[2], l1, tau[2][1])
    b1 = [_mult(lam20, tau[2][0]), lam21]
    d2 = choose_generic(direction_stream(cfg, f"{i}/l2"), [
        ("l2 misses X-(U0 u U1)", avoid_pair(2, 0, 1)),
        ("l2 misses A1", avoid_a1(2)),
        ("l2 misses B1", lambda d: not line_meets(b1, P[2], d, except_base=True)),
        ("l2 misses B2", avoid_pair(2, 0, 1)),
        ("l2 misses l0 n (X-U1)", lambda d: not line_meets([lam20, tau[2][1]], P[2], d)),
        ("l2 misses (X-U0) n l1", lambda d: not line_meets([tau[2][0], lam21], P[2], d)),
        ("l2 meets E outside A2", avoid_a2(2)),
    ], cfg, f"step{i}/l2", audit)
    l2 = AffLine.through(names[2], P[2], d2)

    lines = [l0, l1, l2]
    atlas_new = tower.atlas(i)
    e_charts = set(tower.exceptional_charts(i))
    new_charts = []
    for j, (c, line) in enumerate(zip(cover.charts, lines)):
        cid = f"l{i}"
        comp_old = c.complement
        lam = {ch: line_closure_trace(graph, ch, line, comp_old[ch]) for ch in tower.atlas(lvl).names}
        factors = {}
        for node in atlas_new.charts:
            if node.name in e_charts:
                src = dict(c.factors[center.chart])
                src[cid] = lam[center.chart]
                fs = {}
                for k, f in src.items():
                    if f.is_constant():
                        continue
                    pt, _ = proper_transform(f, node.down, center.coords)
                    fs[k] = pt
                factors[node.name] = _keep(fs)
            else:
                fs = dict(c.factors[node.name])
                fs[cid] = lam[node.name]
                factors[node.name] = _keep(fs)
        new_node = blowup_chart(graph, c.node, P[j], line, f"U{j}@{i}", i)
        comps = dict(c.components)
        comps[cid] = Component(cid, c.name, line_param(P[j], line.direction), f"step {i}")
        new_charts.append(Chart(new_node, c.reference, factors, comps, graph, line))

    new = TriCover(i, new_charts, tower, audit, cover.base_data)
    _assert_future_inside(new)
    return new


def _assert_future_inside(cover: TriCover):
    tower, i = cover.tower, cover.level
    for c in tower.presentation.centers[i:]:
        ch, q = pushforward_point(tower, c.chart, c.coords, c.level - 1, i)
        for j in range(3):
            if not cover.contains(j, ch, q):
                raise AssertionError(f"center {c.level} is not inside chart U{j} at level {i}")


def construct_cover(sp: SurfacePresentation, cfg: ChoiceConfig = ChoiceConfig(),
                    tower: Tower | None = None) -> TriCover:
    """Three affine planes covering the surface presented by ``sp``."""
    tower = tower if tower is not None else build_standard_atlas(sp)
    avoid = all_centers_at_level0(tower)
    if sp.base.kind == "P2":
        cover = base_cover_p2(tower, avoid, cfg)
    else:
        cover = base_cover_hirzebruch(tower, avoid, cfg)
    _assert_future_inside(cover)
    for i in range(1, sp.r + 1):
        cover = inductive_step(cover, i, future_center_sets(tower, i), cfg)
    return cover
