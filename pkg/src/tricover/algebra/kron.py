"""Kronecker substitution for integer polynomials.

A polynomial with integer coefficients is packed into one big integer by
sending ``x_0^e0 x_1^e1 ...`` to ``2^(B * (e0 + s1 e1 + ...))``. Products and
exact quotients of packed integers are then done by GMP, which is much faster
than term-by-term loops once the polynomials have a few hundred terms.
"""

from __future__ import annotations

from gmpy2 import mpz

IntPoly = dict  # {exponent tuple: int}


def _strides(degs) -> list[int]:
    out, s = [], 1
    for d in degs:
        out.append(s)
        s *= d + 1
    return out


def _pack(f: IntPoly, strides, nbytes: int, size: int) -> mpz:
    """``sum c * 2^(8 nbytes idx)``; coefficients must fit in ``8 nbytes - 1`` bits."""
    pos = bytearray(size * nbytes)
    neg = bytearray(size * nbytes)
    any_neg = False
    for m, c in f.items():
        idx = sum(e * s for e, s in zip(m, strides)) * nbytes
        if c >= 0:
            pos[idx:idx + nbytes] = int(c).to_bytes(nbytes, "little")
        else:
            neg[idx:idx + nbytes] = int(-c).to_bytes(nbytes, "little")
            any_neg = True
    out = mpz(int.from_bytes(pos, "little"))
    if any_neg:
        out -= mpz(int.from_bytes(neg, "little"))
    return out


def _unpack(n: mpz, strides, degs, nbytes: int, size: int) -> IntPoly:
    """Inverse of ``_pack`` with balanced digits in ``(-2^(B-1), 2^(B-1))``."""
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * size, "little")
    v = int(n) + bias
    if v < 0 or v.bit_length() > 8 * nbytes * size:
        raise OverflowError("packed value out of range")
    raw = v.to_bytes(size * nbytes, "little")
    out = {}
    nv = len(degs)
    for idx in range(size):
        c = int.from_bytes(raw[idx * nbytes:(idx + 1) * nbytes], "little") - half
        if c:
            m, r = [], idx
            for k in range(nv - 1, -1, -1):
                e, r = divmod(r, strides[k])
                m.append(e)
            m.reverse()
            if any(e > d for e, d in zip(m, degs)):
                raise OverflowError("exponent out of range")
            out[tuple(m)] = c
    return out


def _bytes_for(bits: int) -> int:
    return (bits + 2) // 8 + 1


def _maxbits(f: IntPoly) -> int:
    return max(abs(c) for c in f.values()).bit_length()


def _degs(f: IntPoly) -> list[int]:
    n = len(next(iter(f)))
    return [max(m[k] for m in f) for k in range(n)]


def kron_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    if not f or not g:
        return {}
    df, dg = _degs(f), _degs(g)
    degs = [a + b for a, b in zip(df, dg)]
    strides = _strides(degs)
    size = strides[-1] * (degs[-1] + 1)
    nbytes = _bytes_for(_maxbits(f) + _maxbits(g) + min(len(f), len(g)).bit_length())
    prod = _pack(f, strides, nbytes, size) * _pack(g, strides, nbytes, size)
    return _unpack(prod, strides, degs, nbytes, size)


def kron_divexact(f: IntPoly, g: IntPoly) -> IntPoly | None:
    """``f / g`` over Z if ``g`` divides ``f`` exactly, otherwise ``None``."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f:
        return {}
    df, dg = _degs(f), _degs(g)
    if any(a < b for a, b in zip(df, dg)):
        return None
    dq = [a - b for a, b in zip(df, dg)]
    strides = _strides(df)
    size = strides[-1] * (df[-1] + 1)
    bits = _maxbits(f) + 8
    for _ in range(6):
        nbytes = _bytes_for(max(bits, _maxbits(g)))
        q, r = divmod(_pack(f, strides, nbytes, size), _pack(g, strides, nbytes, size))
        if r:
            # packing is a ring map, so a remainder rules out divisibility
            return None
        try:
            cand = _unpack(q, strides, df, nbytes, size)
        except OverflowError:
            cand = None
        if cand is not None and all(all(e <= d for e, d in zip(m, dq)) for m in cand) \
                and kron_mul(cand, g) == {m: c for m, c in f.items() if c}:
            return cand
        bits *= 2
    return _slow_divexact(f, g)


def _slow_divexact(f: IntPoly, g: IntPoly) -> IntPoly | None:
    from .gcd import _divexact_terms
    return _divexact_terms(f, g)
