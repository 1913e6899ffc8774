"""Buchberger's algorithm under graded lexicographic order."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .poly import Poly, monomial_key
from .scalar import ONE


@dataclass(frozen=True)
class Ideal:
    """Generators of a polynomial ideal, tagged with the chart they live in."""

    chart: str
    generators: tuple[Poly, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        ring = gens[0].gens
        if any(g.gens != ring for g in gens):
            raise ValueError("generators live in different rings")
        object.__setattr__(self, "generators", gens)

    @property
    def ring(self) -> tuple[str, ...]:
        return self.generators[0].gens

    def with_generators(self, extra: Sequence[Poly]) -> "Ideal":
        return Ideal(self.chart, self.generators + tuple(extra))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Basis:
    """Working polynomials as (leading monomial, monic term dict)."""

    def __init__(self):
        self.lms: list[tuple] = []
        self.polys: list[dict] = []

    def add(self, lm, terms):
        self.lms.append(lm)
        self.polys.append(terms)


def _monic(terms: dict) -> tuple[tuple, dict]:
    lm = max(terms, key=monomial_key)
    lc = terms[lm]
    if lc != 1:
        inv = ONE / lc
        terms = {m: c * inv for m, c in terms.items()}
    return lm, terms


def _reduce(terms: dict, lms: list, polys: list, full: bool = True) -> dict:
    """Normal form of ``terms`` modulo monic ``polys`` (full tail reduction by default)."""
    rem: dict = {}
    work = dict(terms)
    while work:
        lm = max(work, key=monomial_key)
        c = work[lm]
        for glm, g in zip(lms, polys):
            if _divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                for m, v in g.items():
                    k = tuple(a + b for a, b in zip(m, shift))
                    nv = work.get(k, 0) - c * v
                    if nv:
                        work[k] = nv
                    else:
                        work.pop(k, None)
                break
        else:
            rem[lm] = c
            del work[lm]
            if not full:
                rem.update(work)
                return rem
    return rem


def _spoly(f: dict, flm: tuple, g: dict, glm: tuple) -> dict:
    lcm = _lcm(flm, glm)
    sf = tuple(a - b for a, b in zip(lcm, flm))
    sg = tuple(a - b for a, b in zip(lcm, glm))
    out: dict = {}
    for m, c in f.items():
        k = tuple(a + b for a, b in zip(m, sf))
        out[k] = out.get(k, 0) + c
    for m, c in g.items():
        k = tuple(a + b for a, b in zip(m, sg))
        nv = out.get(k, 0) - c
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return {m: c for m, c in out.items() if c}


@dataclass
class GroebnerStats:
    pairs_considered: int = 0
    product_skips: int = 0
    chain_skips: int = 0
    reductions_to_zero: int = 0
    notes: list = field(default_factory=list)


def groebner_basis(ideal: Ideal | Sequence[Poly], chain_criterion: bool = True,
                   stats: GroebnerStats | None = None) -> list[Poly]:
    """Reduced Groebner basis (monic, sorted by descending leading monomial).

    Pairs are discarded by the product criterion and, unless disabled, by the
    chain criterion. An inconsistent system returns ``[1]``.
    """
    gens_in = ideal.generators if isinstance(ideal, Ideal) else tuple(ideal)
    ring = gens_in[0].gens
    n = len(ring)
    one = (0,) * n
    stats = stats if stats is not None else GroebnerStats()

    basis = _Basis()
    for p in gens_in:
        if p.is_zero():
            continue
        terms = _reduce(p.terms, basis.lms, basis.polys)
        if not terms:
            continue
        lm, terms = _monic(terms)
        if lm == one:
            return [Poly.one(ring)]
        basis.add(lm, terms)
    if not basis.polys:
        return [Poly.zero(ring)]

    active = set(range(len(basis.polys)))
    pairs = {(i, j) for i in range(len(basis.polys)) for j in range(i)}

    def pair_key(pr):
        i, j = pr
        lcm = _lcm(basis.lms[i], basis.lms[j])
        return (monomial_key(lcm), pr)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        i, j = pr
        if i not in active or j not in active:
            continue
        stats.pairs_considered += 1
        lmi, lmj = basis.lms[i], basis.lms[j]
        lcm = _lcm(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            stats.product_skips += 1
            continue
        if chain_criterion:
            skip = False
            for k in active:
                if k in (i, j):
                    continue
                if _divides(basis.lms[k], lcm) and \
                        (max(i, k), min(i, k)) not in pairs and (max(j, k), min(j, k)) not in pairs:
                    skip = True
                    break
            if skip:
                stats.chain_skips += 1
                continue
        s = _spoly(basis.polys[i], lmi, basis.polys[j], lmj)
        act = sorted(active)
        r = _reduce(s, [basis.lms[k] for k in act], [basis.polys[k] for k in act])
        if not r:
            stats.reductions_to_zero += 1
            continue
        lm, r = _monic(r)
        if lm == one:
            return [Poly.one(ring)]
        idx = len(basis.polys)
        basis.add(lm, r)
        for k in active:
            pairs.add((idx, k))
        active.add(idx)

    # minimalize and inter-reduce
    keep = []
    for i in sorted(active, key=lambda k: monomial_key(basis.lms[k])):
        if not any(_divides(basis.lms[k], basis.lms[i]) for k in keep):
            keep.append(i)
    reduced = []
    for i in keep:
        others = [k for k in keep if k != i]
        tail = {m: c for m, c in basis.polys[i].items() if m != basis.lms[i]}
        tail = _reduce(tail, [basis.lms[k] for k in others], [basis.polys[k] for k in others])
        tail[basis.lms[i]] = mpq(1)
        reduced.append(Poly._raw(tail, ring))
    reduced.sort(key=lambda p: monomial_key(p.leading_monomial()), reverse=True)
    return reduced


def normal_form(p: Poly, basis: Sequence[Poly]) -> Poly:
    """Full remainder of ``p`` modulo a Groebner basis."""
    lms, polys = [], []
    for g in basis:
        if g.is_zero():
            continue
        lm, t = _monic(dict(g.terms))
        lms.append(lm)
        polys.append(t)
    return Poly._raw(_reduce(p.terms, lms, polys), p.gens)


def ideal_is_trivial(ideal: Ideal | Sequence[Poly]) -> bool:
    """True iff the generators have no common zero over the complex numbers."""
    basis = groebner_basis(ideal)
    return len(basis) == 1 and basis[0].is_constant() and not basis[0].is_zero()


def is_member(p: Poly, basis: Sequence[Poly]) -> bool:
    return normal_form(p, basis).is_zero()


def standard_monomials(basis: Sequence[Poly], limit: int = 100000) -> list[tuple] | None:
    """Monomials outside the leading-term ideal, or ``None`` if infinitely many."""
    if not basis or basis[0].is_zero():
        return None
    n = basis[0].nvars
    lms = [g.leading_monomial() for g in basis]
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if all(e == 0 for k, e in enumerate(m) if k != i) and m[i] > 0]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(prefix):
        if len(prefix) == n:
            m = tuple(prefix)
            if not any(_divides(l, m) for l in lms):
                out.append(m)
            return
        for e in range(bounds[len(prefix)]):
            rec(prefix + [e])
            if len(out) > limit:
                raise ValueError("quotient too large")

    rec([])
    return out
