"""GCD, exact division and square-free parts.

The gcd works on integer primitive forms. The fast path is the heuristic
GCDHEU scheme (evaluate one variable at a large integer, recurse, rebuild the
result by symmetric xi-adic interpolation, accept only after trial division).
When the heuristic gives up, a primitive pseudo-remainder sequence with
content recursion takes over.
"""

from __future__ import annotations

from math import isqrt

from gmpy2 import gcd as _mpz_gcd, mpq, mpz

from .kron import kron_divexact
from .poly import Poly, monomial_key

IntPoly = dict  # {exponent tuple: int}


# -- integer polynomial helpers -------------------------------------------

def igcd(a: int, b: int) -> int:
    # GMP's subquadratic gcd; math.gcd is quadratic on the huge evaluations below
    return int(_mpz_gcd(a, b))


def _content(f: IntPoly) -> int:
    g = 0
    for v in f.values():
        g = igcd(g, v)
        if g == 1:
            break
    return g


def _maxnorm(f: IntPoly) -> int:
    return max(abs(v) for v in f.values())


def _lead(f: IntPoly):
    return max(f, key=monomial_key)


def _mul(f: IntPoly, g: IntPoly) -> IntPoly:
    out: dict = {}
    get = out.get
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            k = tuple(a + b for a, b in zip(m1, m2))
            out[k] = get(k, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


KRON_THRESHOLD = 64  # len(f) * len(g) above which Kronecker division is used


def _divexact(f: IntPoly, g: IntPoly) -> IntPoly | None:
    """Quotient ``f / g`` if ``g`` divides ``f`` over Z; ``None`` otherwise."""
    if len(f) * len(g) > KRON_THRESHOLD:
        return kron_divexact(f, g)
    return _divexact_terms(f, g)


def _divexact_terms(f: IntPoly, g: IntPoly, exact_int: bool = True) -> IntPoly | None:
    """Schoolbook division; over Q when ``exact_int`` is false."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = dict(f)
    lm_g = _lead(g)
    lc_g = g[lm_g]
    q: dict = {}
    while rem:
        lm = max(rem, key=monomial_key)
        diff = tuple(a - b for a, b in zip(lm, lm_g))
        if any(d < 0 for d in diff):
            return None
        c = rem[lm]
        if exact_int:
            if c % lc_g:
                return None
            t = c // lc_g
        else:
            t = mpq(c) / lc_g
        q[diff] = t
        for m, v in g.items():
            k = tuple(a + b for a, b in zip(m, diff))
            nv = rem.get(k, 0) - t * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return q


def _eval_row(cs: list, pw2: list, lo: int, n: int):
    """``sum cs[lo + j] * xi^j`` for ``j < n`` by binary splitting (``pw2[i] = xi^(2^i)``)."""
    if n <= 8:
        acc = mpz(0)
        for j in range(lo + n - 1, lo - 1, -1):
            acc = acc * pw2[0] + cs[j]
        return acc
    i = (n - 1).bit_length() - 1
    h = 1 << i
    return _eval_row(cs, pw2, lo, h) + _eval_row(cs, pw2, lo + h, n - h) * pw2[i]


def _eval_var(f: IntPoly, k: int, xi: int) -> IntPoly:
    rows: dict = {}
    d = 0
    for m, c in f.items():
        mm = m[:k] + (0,) + m[k + 1:]
        rows.setdefault(mm, {})[m[k]] = c
        d = max(d, m[k])
    pw2 = [mpz(xi)]
    while (1 << len(pw2)) <= d:
        pw2.append(pw2[-1] * pw2[-1])
    out = {}
    for mm, row in rows.items():
        top = max(row)
        cs = [row.get(j, 0) for j in range(top + 1)]
        v = _eval_row(cs, pw2, 0, top + 1)
        if v:
            out[mm] = int(v)
    return out


def _interpolate(h: IntPoly, xi: int, k: int) -> IntPoly:
    out: dict = {}
    half = xi // 2
    for m, c in h.items():
        j = 0
        while c:
            d = c % xi
            if d > half:
                d -= xi
            c = (c - d) // xi
            if d:
                out[m[:k] + (j,) + m[k + 1:]] = d
            j += 1
    return out


def _top_var(f: IntPoly) -> int:
    top = -1
    for m in f:
        for i in range(len(m) - 1, top, -1):
            if m[i]:
                top = i
                break
    return top


def _normalize_sign(h: IntPoly) -> IntPoly:
    if h and h[_lead(h)] < 0:
        return {m: -c for m, c in h.items()}
    return h


def _heu_gcd(f: IntPoly, g: IntPoly, depth: int = 0) -> IntPoly | None:
    """gcd over Z of nonzero ``f`` and ``g`` (positive leading coefficient), or ``None``."""
    k = max(_top_var(f), _top_var(g))
    cf, cg = _content(f), _content(g)
    c = igcd(cf, cg)
    if k < 0:
        zero = next(iter(f))
        return {zero: c}
    fp = {m: v // cf for m, v in f.items()}
    gp = {m: v // cg for m, v in g.items()}
    if _top_var(fp) < k or _top_var(gp) < k:
        # one side is free of x_k: reduce against the other's coefficients
        if _top_var(fp) < k:
            fp, gp = gp, fp
        h = gp
        for cf_k in _coeffs_in(fp, k):
            if cf_k:
                h = _heu_gcd(h, cf_k, depth + 1)
                if h is None:
                    return None
        return {m: v * c for m, v in _normalize_sign(h).items()}
    bound = 2 * min(_maxnorm(fp), _maxnorm(gp)) + 29
    xi = max(min(bound, 99 * isqrt(bound)), 2) + 2
    for _ in range(6):
        ff = _eval_var(fp, k, xi)
        gg = _eval_var(gp, k, xi)
        if ff and gg:
            hev = _heu_gcd(ff, gg, depth + 1)
            if hev is not None:
                h = _interpolate(hev, xi, k)
                if h:
                    ch = _content(h)
                    h = _normalize_sign({m: v // ch for m, v in h.items()})
                    if _divexact(fp, h) is not None and _divexact(gp, h) is not None:
                        return {m: v * c for m, v in h.items()}
                # try the cofactor route
                cff_ev = _divexact(ff, hev)
                if cff_ev:
                    cff = _interpolate(cff_ev, xi, k)
                    if cff:
                        h2 = _divexact(fp, cff)
                        if h2:
                            ch = _content(h2)
                            h2 = _normalize_sign({m: v // ch for m, v in h2.items()})
                            if _divexact(gp, h2) is not None:
                                return {m: v * c for m, v in h2.items()}
        xi = xi * 73794 * isqrt(isqrt(xi)) // 27011
    return None


# -- primitive PRS fallback ----------------------------------------------

def _coeffs_in(f: IntPoly, k: int) -> list[IntPoly]:
    d = max(m[k] for m in f)
    out = [dict() for _ in range(d + 1)]
    for m, c in f.items():
        out[m[k]][m[:k] + (0,) + m[k + 1:]] = c
    return out


def _from_coeffs(cs: list[IntPoly], k: int) -> IntPoly:
    out = {}
    for j, cf in enumerate(cs):
        for m, c in cf.items():
            out[m[:k] + (j,) + m[k + 1:]] = c
    return out


def _prs_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Recursive gcd over Z by primitive pseudo-remainder sequences."""
    if not f:
        return _normalize_sign(g)
    if not g:
        return _normalize_sign(f)
    k = max(_top_var(f), _top_var(g))
    if k < 0:
        zero = next(iter(f))
        return {zero: igcd(f[zero], g[zero])}
    cf = _content_in(f, k)
    cg = _content_in(g, k)
    c = _prs_gcd(cf, cg)
    a = _divexact(f, cf)
    b = _divexact(g, cg)
    if max(m[k] for m in a) < max(m[k] for m in b):
        a, b = b, a
    while b and max(m[k] for m in b) > 0:
        r = _prem(a, b, k)
        a = b
        if not r:
            b = {}
            break
        b = _divexact(r, _content_in(r, k))
    if b:  # constant in x_k: primitive gcd is 1
        return _normalize_sign(c)
    prim = _divexact(a, _content_in(a, k))
    return _normalize_sign(_mul(c, prim))


def _content_in(f: IntPoly, k: int) -> IntPoly:
    """gcd of the coefficients of ``f`` viewed in Z[x_0..x_{k-1}][x_k]."""
    cs = [c for c in _coeffs_in(f, k) if c]
    g = cs[0]
    for c in cs[1:]:
        g = _prs_gcd(g, c)
        if len(g) == 1 and not any(next(iter(g))) and abs(next(iter(g.values()))) == 1:
            break
    return _normalize_sign(g)


def _prem(a: IntPoly, b: IntPoly, k: int) -> IntPoly:
    """Pseudo-remainder of ``a`` by ``b`` in the variable ``x_k``."""
    ca = _coeffs_in(a, k)
    cb = _coeffs_in(b, k)
    da, db = len(ca) - 1, len(cb) - 1
    lcb = cb[-1]
    r = ca
    for _ in range(da - db + 1):
        if len(r) - 1 < db:
            break
        lr = r[-1]
        shift = len(r) - 1 - db
        new = [_mul(c, lcb) for c in r[:-1]]
        for j in range(db):
            t = _mul(cb[j], lr)
            idx = j + shift
            acc = dict(new[idx])
            for m, v in t.items():
                nv = acc.get(m, 0) - v
                if nv:
                    acc[m] = nv
                else:
                    acc.pop(m, None)
            new[idx] = acc
        while new and not new[-1]:
            new.pop()
        r = new
    return _from_coeffs(r, k) if r else {}


# -- public API -----------------------------------------------------------

def _int_gcd_dict(fi: IntPoly, gi: IntPoly) -> IntPoly:
    h = _heu_gcd(_normalize_sign(fi), _normalize_sign(gi))
    if h is None:
        h = _prs_gcd(fi, gi)
    return _normalize_sign(h)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Greatest common divisor with content 1 and positive grlex leading coefficient.

    ``gcd(0, 0) == 0``.
    """
    p._check(q)
    if p.is_zero():
        return q.primitive()
    if q.is_zero():
        return p.primitive()
    if p.is_constant() or q.is_constant():
        return Poly.one(p.gens)
    fi, _ = p.integer_terms()
    gi, _ = q.integer_terms()
    h = _int_gcd_dict(fi, gi)
    return Poly._raw({m: mpq(c) for m, c in h.items()}, p.gens).primitive()


def poly_gcd_many(polys) -> Poly:
    polys = list(polys)
    g = Poly.zero(polys[0].gens)
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            break
    return g


def _quotient(p: Poly, q: Poly) -> Poly | None:
    # over Q, a primitive integer polynomial divides exactly when it does over Z
    fi, sf = p.integer_terms()
    gi, sg = q.integer_terms()
    quo = _divexact(fi, gi)
    if quo is None:
        return None
    scale = sf / sg
    return Poly._raw({m: mpq(c) * scale for m, c in quo.items() if c}, p.gens)


def divide_exact(p: Poly, q: Poly) -> Poly:
    """``p / q`` when ``q`` divides ``p`` exactly; ``ValueError`` otherwise."""
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    quo = _quotient(p, q)
    if quo is None:
        raise ValueError(f"{q} does not divide {p}")
    return quo


def divides(q: Poly, p: Poly) -> bool:
    p._check(q)
    if q.is_zero():
        return p.is_zero()
    return p.is_zero() or _quotient(p, q) is not None


def squarefree_part(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of ``p``, as ``p / gcd(p, dp/dx_i ...)``."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.is_constant():
        return Poly.one(p.gens)
    g = p
    for i in range(p.nvars):
        if p.degree_in(i) > 0:
            g = poly_gcd(g, p.diff(i))
    return divide_exact(p.primitive(), g).primitive()


def strip_factors(p: Poly, q: Poly) -> Poly:
    """Remove from ``p`` every irreducible factor it shares with ``q``."""
    if q.is_zero():
        raise ValueError("cannot strip against the zero polynomial")
    while True:
        g = poly_gcd(p, q)
        if g.is_constant():
            return p
        p = divide_exact(p, g)


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly.zero(p.gens)
    return divide_exact(p * q, poly_gcd(p, q)).primitive()
