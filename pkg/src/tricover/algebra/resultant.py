"""Sylvester resultants."""

from __future__ import annotations

from .gcd import divide_exact
from .poly import Poly


def sylvester_matrix(p: Poly, q: Poly, i: int) -> list[list[Poly]]:
    cp = p.coefficients_in(i)[::-1]  # leading coefficient first
    cq = q.coefficients_in(i)[::-1]
    m, n = len(cp) - 1, len(cq) - 1
    zero = Poly.zero(p.gens)
    size = m + n
    rows = []
    for r in range(n):
        rows.append([zero] * r + cp + [zero] * (size - r - m - 1))
    for r in range(m):
        rows.append([zero] * r + cq + [zero] * (size - r - n - 1))
    return rows


def bareiss_determinant(mat: list[list[Poly]]) -> Poly:
    """Fraction-free determinant; every division is exact."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    gens = a[0][0].gens
    sign = 1
    prev = Poly.one(gens)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(gens)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = akk * row_i[j] - aik * row_k[j]
                row_i[j] = divide_exact(num, prev) if not prev.is_constant() else num * (1 / prev.constant_value())
            row_i[k] = Poly.zero(gens)
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(p: Poly, q: Poly, i: int | str) -> Poly:
    """Res of ``p`` and ``q`` with respect to generator ``i`` (index or name).

    Both inputs must have positive degree in the eliminated variable.
    """
    p._check(q)
    if isinstance(i, str):
        i = p.gens.index(i)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if p.degree_in(i) < 1 or q.degree_in(i) < 1:
        raise ValueError(f"degenerate degrees in {p.gens[i]}: {p.degree_in(i)}, {q.degree_in(i)}")
    return bareiss_determinant(sylvester_matrix(p, q, i))
