"""Independent certification that three constructed charts cover the surface.

Everything is checked against the standard atlas of the top level.

* Trace consistency: in every standard chart, the complement of each
  constructed chart, as accumulated by the builder (a product of component
  equations), must equal the one read off the transition denominators.
* Component matching: each factor is exactly the closure of its declared
  rational curve (the curve's parametrization kills the factor, and the
  partial degrees agree with the degrees of the parametrization).
* Emptiness: a point missed by all three charts lies on some component C of
  the first complement. Pulling the other two charts back along the
  parametrization of C turns the question into univariate gcds over P^1.
  Standard charts with small traces additionally get a Groebner basis
  certificate (trivial ideal, or zeros only at points the chart has lost to
  later blowups).
* Pairwise finiteness, transition round trips and random point sampling.
"""

from __future__ import annotations

import random
from math import lcm
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq, mpz

from .algebra import (Poly, RatFun, groebner_basis, normal_form, parse_poly, parse_scalar, poly_gcd,
                      ratfun_compose, squarefree_part, standard_monomials)
from .algebra.scalar import format_scalar
from .builder import T_GENS, Component, TriCover
from .geometry import GENS, ChartGraph, X, Y, Point, RationalMap2, proper_transform

ONE = Poly.one(GENS)
GROEBNER_DEGREE_LIMIT = 18  # sum of the trace degrees in a chart


def _canon(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return Poly.one(p.gens) if p.is_constant() else p.primitive()


def _pstr(p: Poly) -> str:
    return p.to_str()


def _rstr(f: RatFun) -> list[str]:
    return [f.num.to_str(), f.den.to_str()]


def _rparse(pair: Sequence[str], gens=T_GENS) -> RatFun:
    return RatFun(parse_poly(pair[0], gens), parse_poly(pair[1], gens))


def _pt(p: Point) -> list[str]:
    return [format_scalar(c) for c in p]


def _rdeg(f: RatFun) -> int:
    return max(f.num.degree(), f.den.degree())


# -- trace tables -------------------------------------------------------------

def complement_traces(cover: TriCover, atlas=None) -> dict[str, list[Poly]]:
    """Per standard chart, the accumulated traces of ``X - U_j`` for j = 0, 1, 2."""
    atlas = atlas if atlas is not None else cover.tower.atlas(cover.level)
    if atlas.level != cover.level:
        raise ValueError("cover and atlas are at different levels")
    comps = [c.complement for c in cover.charts]
    table = {name: [_canon(comps[j].get(name, ONE)) for j in range(3)] for name in atlas.names}
    for j in range(3):
        if all(table[n][j].is_constant() for n in atlas.names):
            raise AssertionError(f"the complement of chart {j} is invisible in every standard chart")
    return table


def transition_traces(cover: TriCover, atlas=None) -> dict[str, list[Poly]]:
    """The same table, read off the denominators of the reduced transitions."""
    atlas = atlas if atlas is not None else cover.tower.atlas(cover.level)
    return {name: [_canon(cover.graph.complement_trace(name, c.name)) for c in cover.charts]
            for name in atlas.names}


# -- curves through the chart tree --------------------------------------------

def param_into(graph: ChartGraph, home: str, param: Sequence[RatFun], target: str) -> tuple[RatFun, RatFun] | None:
    """A parametrized curve of chart ``home`` written in the coordinates of ``target``.

    Returns ``None`` when the curve does not meet ``target``. The result is a
    pair of reduced univariate functions, so it is regular exactly at the
    parameters whose point lies in ``target``.
    """
    cur = tuple(param)
    try:
        for m in graph.path(home, target):
            nxt = tuple(ratfun_compose(c, cur) for c in m.components)
            if all(c.num.is_constant() and c.den.is_constant() for c in nxt):
                raise ZeroDivisionError("curve contracted on the way")
            cur = nxt
        return cur
    except ZeroDivisionError:
        pass
    try:
        return tuple(ratfun_compose(c, param) for c in graph.transition(home, target).components)
    except ZeroDivisionError:
        return None


def pole_data(m: tuple[RatFun, RatFun] | None) -> tuple[Poly, bool]:
    """(polynomial whose roots are the finite poles, pole at infinity?)."""
    if m is None:
        return Poly.zero(T_GENS), True
    den = _canon(m[0].den * m[1].den)
    inf = any(c.num.degree() > c.den.degree() for c in m)
    return den, inf


def check_component(graph: ChartGraph, comp: Component, targets: Sequence[str]) -> dict:
    """Is every point of the curve inside at least one of the ``targets``?"""
    maps = {}
    g = None
    inf_all = True
    for t in targets:
        m = param_into(graph, comp.home, comp.param, t)
        maps[t] = None if m is None else [_rstr(c) for c in m]
        den, inf = pole_data(m)
        g = den if g is None else poly_gcd(g, den)
        inf_all = inf_all and inf
    g = _canon(g)
    ok = not g.is_zero() and g.is_constant() and not inf_all
    return {"component": comp.cid, "home": comp.home,
            "param": [_rstr(c) for c in comp.param], "maps": maps,
            "uncovered": _pstr(g), "uncovered_at_infinity": inf_all, "ok": ok}


def vanishes_on(f: Poly, nu: tuple[RatFun, RatFun]) -> bool:
    """``f(nu(t)) == 0`` identically.

    After clearing denominators the composite has degree at most ``bound``,
    so vanishing at ``bound + 1`` parameters where ``nu`` is defined decides
    it. Values are computed in integers with homogenized Horner steps.
    """
    ints, _ = f.integer_terms()
    degx, degy = f.degree_in(0), f.degree_in(1)
    rows: dict[int, dict[int, int]] = {}
    for (i, j), c in ints.items():
        rows.setdefault(i, {})[j] = mpz(c)
    ix, iy = _int_pair(nu[0]), _int_pair(nu[1])
    bound = degx * _rdeg(nu[0]) + degy * _rdeg(nu[1])
    hits = 0
    t = 0
    while hits <= bound:
        xn, xd = (_horner(c, t) for c in ix)
        yn, yd = (_horner(c, t) for c in iy)
        t = -t if t > 0 else 1 - t
        if not xd or not yd:
            continue
        if _hom_eval(rows, degx, degy, (xn, xd), (yn, yd)):
            return False
        hits += 1
    return True


def _horner(cs: list, t: int):
    v = mpz(0)
    for c in reversed(cs):
        v = v * t + c
    return v


def _hom_eval(rows: dict, degx: int, degy: int, x: tuple, y: tuple):
    """``sum c_ij xn^i xd^(degx-i) yn^j yd^(degy-j)``, zero iff ``f`` vanishes at the point."""
    xn, xd = x
    yn, yd = y
    xdp, ydp = _powers(xd, degx), _powers(yd, degy)
    total = mpz(0)
    for i in range(degx, -1, -1):
        total *= xn
        row = rows.get(i)
        if row:
            r = mpz(0)
            for j in range(degy, -1, -1):
                r *= yn
                c = row.get(j)
                if c:
                    r += c * ydp[degy - j]
            total += r * xdp[degx - i]
    return total


def _int_pair(f: RatFun) -> tuple[list, list]:
    """Integer coefficient lists of ``(num, den)`` scaled by one common factor."""
    m = mpz(lcm(f.num.denominator_lcm(), f.den.denominator_lcm()))

    def coeffs(p: Poly) -> list:
        out = [mpz(0)] * (max(p.degree(), 0) + 1)
        for (k,), c in p.terms.items():
            out[k] = mpz(c * m)
        return out

    return coeffs(f.num), coeffs(f.den)


def _powers(v, k: int) -> list:
    out = [mpz(1)]
    for _ in range(k):
        out.append(out[-1] * v)
    return out


def match_factor(f: Poly, nu: tuple[RatFun, RatFun] | None) -> bool:
    """``f`` is exactly the closure of the curve parametrized by ``nu``."""
    if nu is None or f.is_constant():
        return False
    if f.degree_in(1) != _rdeg(nu[0]) or f.degree_in(0) != _rdeg(nu[1]):
        return False
    return vanishes_on(f, nu)


# -- certificate --------------------------------------------------------------

@dataclass
class ChartRecord:
    chart: str
    traces: list[str]
    removed: list[list[str]]
    status: str  # "trivial", "removed-only", "parametric" or "fail"
    method: str = "groebner"
    basis: list[str] | None = None
    saturation: dict | None = None
    witness: dict | None = None
    factors: list[dict] = field(default_factory=list)
    consistent: bool = True
    matched: bool = True

    @property
    def ok(self) -> bool:
        return self.status != "fail" and self.consistent and self.matched

    def to_dict(self) -> dict:
        d = {"chart": self.chart, "method": self.method, "status": self.status,
             "consistent": self.consistent, "matched": self.matched,
             "traces": self.traces, "removed": self.removed}
        for key in ("basis", "saturation", "witness"):
            v = getattr(self, key)
            if v is not None:
                d[key] = v
        if self.factors:
            d["factors"] = self.factors
        return d


@dataclass
class PairRecord:
    chart: str
    i: int
    j: int
    gcd: str

    @property
    def ok(self) -> bool:
        return parse_poly(self.gcd, GENS).is_constant()

    def to_dict(self) -> dict:
        return {"chart": self.chart, "pair": [self.i, self.j], "gcd": self.gcd}


@dataclass
class CoverageCertificate:
    surface: str
    level: int
    charts: list[str]
    emptiness: list[ChartRecord]
    components: list[dict] = field(default_factory=list)
    pairwise: list[PairRecord] = field(default_factory=list)
    sampling: dict | None = None

    @property
    def emptiness_ok(self) -> bool:
        return all(r.ok for r in self.emptiness) and all(c["ok"] for c in self.components)

    @property
    def pairwise_ok(self) -> bool:
        return all(r.ok for r in self.pairwise)

    @property
    def consistency_ok(self) -> bool:
        return all(r.consistent and r.matched for r in self.emptiness)

    @property
    def sampling_ok(self) -> bool:
        return self.sampling is None or not self.sampling["failures"]

    @property
    def ok(self) -> bool:
        return self.emptiness_ok and self.pairwise_ok and self.sampling_ok

    def failures(self) -> list[ChartRecord]:
        return [r for r in self.emptiness if not r.ok]

    def to_dict(self) -> dict:
        return {"surface": self.surface, "level": self.level, "charts": self.charts,
                "ok": self.ok,
                "emptiness": [r.to_dict() for r in self.emptiness],
                "components": self.components,
                "pairwise": [r.to_dict() for r in self.pairwise],
                "sampling": self.sampling}


# -- Groebner route -------------------------------------------------------------

def _separating_form(points: Sequence[Point]) -> mpq:
    c = 0
    while len({p[0] + c * p[1] for p in points}) != len(points):
        c += 1
    return mpq(c)


def point_ideal(points: Sequence[Point], c: mpq) -> tuple[Poly, Poly]:
    """Generators ``h1(l), y - L(l)`` of the radical ideal of ``points`` with ``l = x + c y``."""
    ell = X + Y * c
    vals = [p[0] + c * p[1] for p in points]
    h1 = ONE
    for v in vals:
        h1 = h1 * (ell - v)
    h2 = Y
    for k, p in enumerate(points):
        lag = ONE * p[1]
        for m in range(len(points)):
            if m != k:
                lag = lag * (ell - vals[m]) * (1 / (vals[k] - vals[m]))
        h2 = h2 - lag
    return h1, h2


def _nilpotent_power(h: Poly, basis: list[Poly], bound: int) -> int | None:
    """Least ``k <= bound`` with ``h^k`` in the ideal, or ``None``."""
    r = normal_form(h, basis)
    k = 1
    while not r.is_zero():
        if k >= bound:
            return None
        r = normal_form(r * h, basis)
        k += 1
    return k


def _witness(basis: list[Poly]) -> dict:
    std = standard_monomials(basis)
    out = {"ideal": [_pstr(g) for g in basis], "finite": std is not None}
    if std == [(0, 0)]:
        # the basis is {x - a, y - b}
        vals = {}
        for g in basis:
            vals[0 if g.leading_monomial() == (1, 0) else 1] = -g.terms.get((0, 0), mpq(0))
        out["point"] = [format_scalar(vals[0]), format_scalar(vals[1])]
    return out


def check_chart(chart: str, traces: Sequence[Poly], removed: Sequence[Point]) -> ChartRecord:
    """Decide with a Groebner basis whether the traces have no common zero
    outside ``removed`` (over C)."""
    basis = groebner_basis(list(traces))
    rec = ChartRecord(chart, [_pstr(t) for t in traces], [_pt(p) for p in removed], "fail",
                      basis=[_pstr(g) for g in basis])
    if basis[0].is_constant() and not basis[0].is_zero():
        rec.status = "trivial"
        return rec
    std = standard_monomials(basis)
    if removed and std is not None:
        c = _separating_form(removed)
        h1, h2 = point_ideal(removed, c)
        k1 = _nilpotent_power(h1, basis, len(std))
        k2 = _nilpotent_power(h2, basis, len(std)) if k1 is not None else None
        if k1 is not None and k2 is not None:
            rec.status = "removed-only"
            rec.saturation = {"c": format_scalar(c), "powers": [k1, k2]}
            return rec
    rec.witness = _witness(basis)
    return rec


# -- emptiness ------------------------------------------------------------------

def transform_matches(f: Poly, parent_factor: Poly, down: RationalMap2) -> bool:
    """``f`` is the proper transform of ``parent_factor`` under a blowup chart map."""
    pt, _ = proper_transform(parent_factor, down)
    return _canon(pt) == _canon(f)


def _factor_records(cover: TriCover, name: str, sel: Sequence[int], direct: list[Poly]) -> tuple[list[dict], bool, bool]:
    """Tie every factor of the trace table to its component curve.

    In a blowup chart whose center chart carries the same component, the
    factor must be the proper transform of that (separately matched) factor;
    this is much cheaper than composing the curve into the chart. Otherwise
    the curve is composed into the chart and substituted.
    """
    graph = cover.graph
    node = graph[name]
    parent = node.parent.name if node.blowup is not None else None
    records, consistent, matched = [], True, True
    for j in sel:
        chart = cover.charts[j]
        fs = chart.factors.get(name, {})
        prod = ONE
        for cid, f in sorted(fs.items()):
            pf = chart.factors.get(parent, {}).get(cid) if parent else None
            if pf is not None:
                ok = transform_matches(f, pf, node.down)
                rec = {"chart": j, "component": cid, "factor": _pstr(f), "from": parent,
                       "down": [_rstr(c) for c in node.down.components], "ok": ok}
            else:
                comp = chart.components.get(cid)
                nu = None if comp is None else param_into(graph, comp.home, comp.param, name)
                ok = match_factor(f, nu)
                rec = {"chart": j, "component": cid, "factor": _pstr(f),
                       "curve": None if nu is None else [_rstr(c) for c in nu], "ok": ok}
            matched = matched and ok
            records.append(rec)
            prod = prod * f
        same = _canon(prod) == direct[j]
        consistent = consistent and same
        records.append({"chart": j, "product_matches": same, "direct": _pstr(direct[j])})
    return records, consistent, matched


def verify_emptiness(cover: TriCover, atlas=None, charts: Sequence[int] | None = None,
                     traces: dict[str, list[Poly]] | None = None) -> CoverageCertificate:
    """Emptiness of the common complement.

    ``charts`` selects a subset of the three constructed charts (for negative
    controls); ``traces`` overrides the trace table (then only the Groebner
    route is used).
    """
    atlas = atlas if atlas is not None else cover.tower.atlas(cover.level)
    sel = list(charts) if charts is not None else [0, 1, 2]
    if not 2 <= len(sel) <= 3:
        raise ValueError("select two or three charts")
    graph = cover.graph
    table = traces if traces is not None else complement_traces(cover, atlas)

    # parametric route: components of the first selected complement
    owner = cover.charts[sel[0]]
    targets = [cover.charts[j].name for j in sel[1:]]
    comp_records = []
    if traces is None:
        for cid in sorted(owner.components):
            rec = check_component(graph, owner.components[cid], targets)
            rec["owner"] = sel[0]
            comp_records.append(rec)
    bad = {r["component"] for r in comp_records if not r["ok"]}

    records = []
    for name in atlas.names:
        tr = [table[name][j] for j in sel]
        removed = atlas.removed(name)
        if sum(t.degree() for t in tr) <= GROEBNER_DEGREE_LIMIT or traces is not None:
            rec = check_chart(name, tr, removed)
        else:
            visible = set(owner.factors.get(name, {}))
            status = "fail" if visible & bad else "parametric"
            rec = ChartRecord(name, [_pstr(t) for t in tr], [_pt(p) for p in removed], status,
                              method="parametric")
            if status == "fail":
                rec.witness = {"components": sorted(visible & bad)}
        if traces is None:
            direct = [_canon(graph.complement_trace(name, c.name)) for c in cover.charts]
            rec.factors, rec.consistent, rec.matched = _factor_records(cover, name, sel, direct)
        records.append(rec)
    return CoverageCertificate(cover.tower.base.label(), cover.level, [cover.charts[j].name for j in sel],
                               records, comp_records)


def verify_pairwise_finite(cover: TriCover, atlas=None,
                           traces: dict[str, list[Poly]] | None = None) -> list[PairRecord]:
    """Any two complements share no curve in any standard chart."""
    atlas = atlas if atlas is not None else cover.tower.atlas(cover.level)
    table = traces if traces is not None else complement_traces(cover, atlas)
    out = []
    for name in atlas.names:
        row = table[name]
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                out.append(PairRecord(name, i, j, _pstr(_canon(poly_gcd(row[i], row[j])))))
    return out


# -- sampling -----------------------------------------------------------------------

def _random_rational(rng: random.Random) -> mpq:
    return mpq(rng.randint(-30, 30), rng.randint(1, 7))


def random_point(cover: TriCover, rng: random.Random) -> tuple[str, Point]:
    atlas = cover.tower.atlas(cover.level)
    while True:
        name = rng.choice(atlas.names)
        p = (_random_rational(rng), _random_rational(rng))
        if p not in atlas.removed(name):
            return name, p


def covering_charts(cover: TriCover, where: str, p: Point, charts: Sequence[int] = (0, 1, 2)) -> list[int]:
    return [j for j in charts if cover.graph.locate(cover.charts[j].name, cover.level, where, p) is not None]


def sample_coverage(cover: TriCover, n: int = 1000, seed: int = 0,
                    points: Sequence[tuple[str, Point]] | None = None,
                    charts: Sequence[int] = (0, 1, 2)) -> dict:
    """Test ``n`` seeded random points (or the given ``points``) for membership."""
    rng = random.Random(f"sample/{seed}")
    pts = list(points) if points is not None else [random_point(cover, rng) for _ in range(n)]
    failures = []
    for where, p in pts:
        if not any(cover.graph.locate(cover.charts[j].name, cover.level, where, p) is not None
                   for j in charts):
            failures.append({"chart": where, "point": _pt(p)})
    return {"seed": seed, "count": len(pts), "failures": failures}


def stored_transitions(cover: TriCover) -> dict[tuple[str, str], RationalMap2]:
    """The maps a cover carries: each chart to and from its reference chart."""
    out = {}
    for c in cover.charts:
        out[(c.name, c.reference)] = c.to_reference
        out[(c.reference, c.name)] = c.from_reference
    return out


def _chain(maps: dict, a: str, b: str, ref: str) -> list[RationalMap2]:
    if (a, b) in maps:
        return [maps[(a, b)]]
    return [maps[(a, ref)], maps[(ref, b)]]


def verify_transitions(cover: TriCover, samples: int = 100, seed: int = 0,
                       transitions: dict[tuple[str, str], RationalMap2] | None = None) -> dict:
    """Round trips through the transition maps are the identity wherever defined.

    Transitions between two constructed charts are taken in factored form
    through the reference chart (the expanded maps have very high degree).
    Each ordered pair is exercised forward through the stored maps; the
    return leg runs through the tree of blowup maps, which is independent of
    the stored maps and cheap at points of large height.
    """
    rng = random.Random(f"transitions/{seed}")
    graph = cover.graph
    ref = cover.charts[0].reference
    names = [c.name for c in cover.charts] + [ref]
    pairs = [(a, b) for a in names for b in names if a != b]
    maps = stored_transitions(cover)
    if transitions:
        maps.update(transitions)
    failures = []
    checked = 0
    for a, b in pairs:
        chain = _chain(maps, a, b, ref)
        removed = graph[a].removed_at(cover.level)
        for _ in range(samples):
            p = (_random_rational(rng), _random_rational(rng))
            if p in removed:
                continue
            q = p
            for m in chain:
                q = m.evaluate(q)
                if q is None:
                    break
            if q is None or q in graph[b].removed_at(cover.level):
                continue
            checked += 1
            r = graph.evaluate_along(b, a, q)
            if r != p:
                failures.append({"pair": [a, b], "point": _pt(p),
                                 "image": _pt(q), "back": None if r is None else _pt(r)})
    return {"seed": seed, "samples": samples, "checked": checked, "failures": failures,
            "ok": not failures}


def certify(cover: TriCover, samples: int = 1000, seed: int = 0) -> CoverageCertificate:
    """Full certificate: emptiness, pairwise finiteness and sampling."""
    cert = verify_emptiness(cover)
    cert.pairwise = verify_pairwise_finite(cover)
    cert.sampling = sample_coverage(cover, samples, seed)
    return cert


# -- replay ---------------------------------------------------------------------------

def replay_certificate(data: dict) -> tuple[bool, list[str]]:
    """Re-check a serialized certificate with the algebra kernel only."""
    problems = []
    factor_table = {(rec["chart"], fr["chart"], fr["component"]): parse_poly(fr["factor"], GENS)
                    for rec in data.get("emptiness", []) for fr in rec.get("factors", [])
                    if "product_matches" not in fr}
    for rec in data.get("emptiness", []):
        chart = rec["chart"]
        if not rec.get("consistent", True) or not rec.get("matched", True):
            problems.append(f"{chart}: complement factors do not match the transitions")
        for fr in rec.get("factors", []):
            if "product_matches" in fr:
                continue
            f = parse_poly(fr["factor"], GENS)
            if "from" in fr:
                pf = factor_table.get((fr["from"], fr["chart"], fr["component"]))
                down = RationalMap2(chart, fr["from"], tuple(_rparse(c, GENS) for c in fr["down"]))
                if pf is None or not transform_matches(f, pf, down):
                    problems.append(f"{chart}: factor of component {fr['component']} is not the "
                                    f"proper transform of its factor in {fr['from']}")
                continue
            nu = None if fr["curve"] is None else tuple(_rparse(c) for c in fr["curve"])
            if not match_factor(f, nu):
                problems.append(f"{chart}: factor of component {fr['component']} is not its closure")
        products: dict[int, Poly] = {}
        for fr in rec.get("factors", []):
            if "product_matches" not in fr:
                products[fr["chart"]] = products.get(fr["chart"], ONE) * parse_poly(fr["factor"], GENS)
            elif _pstr(_canon(products.get(fr["chart"], ONE))) != fr["direct"]:
                problems.append(f"{chart}: product of factors differs from the transition trace")
        status = rec["status"]
        if rec["method"] == "groebner":
            traces = [parse_poly(t, GENS) for t in rec["traces"]]
            basis = groebner_basis(traces)
            if [_pstr(g) for g in basis] != rec["basis"]:
                problems.append(f"{chart}: Groebner basis does not match")
                continue
            if status == "trivial":
                if not (basis[0].is_constant() and not basis[0].is_zero()):
                    problems.append(f"{chart}: ideal is not trivial")
            elif status == "removed-only":
                pts = [tuple(parse_scalar(c) for c in p) for p in rec["removed"]]
                sat = rec.get("saturation") or {}
                c = parse_scalar(sat.get("c", "0"))
                if len({p[0] + c * p[1] for p in pts}) != len(pts):
                    problems.append(f"{chart}: linear form does not separate the removed points")
                    continue
                h1, h2 = point_ideal(pts, c)
                for h, k in zip((h1, h2), sat.get("powers", [])):
                    if not normal_form(h ** k, basis).is_zero():
                        problems.append(f"{chart}: saturation power check failed")
            else:
                problems.append(f"{chart}: recorded as failing")
        elif status != "parametric":
            problems.append(f"{chart}: recorded as failing")
    for rec in data.get("components", []):
        g = None
        inf_all = True
        for m in rec["maps"].values():
            den, inf = pole_data(None if m is None else tuple(_rparse(c) for c in m))
            g = den if g is None else poly_gcd(g, den)
            inf_all = inf_all and inf
        g = _canon(g)
        if g.is_zero() or not g.is_constant() or inf_all:
            problems.append(f"component {rec['component']} of chart {rec['owner']} has uncovered points")
    for rec in data.get("pairwise", []):
        i, j = rec["pair"]
        traces = next(r["traces"] for r in data["emptiness"] if r["chart"] == rec["chart"])
        g = _canon(poly_gcd(parse_poly(traces[i], GENS), parse_poly(traces[j], GENS)))
        if _pstr(g) != rec["gcd"] or not g.is_constant():
            problems.append(f"{rec['chart']}: pair {i},{j} shares a component")
    if data.get("sampling") and data["sampling"]["failures"]:
        problems.append("sampling found uncovered points")
    return not problems, problems
