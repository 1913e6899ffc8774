"""Rational maps, lines, blowup charts, Moebius maps and finite point sets."""

import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from tricover.algebra import Ideal, Poly, RatFun, divides, ideal_is_trivial, parse_poly, resultant
from tricover.geometry import (AffLine, INF, RationalMap2, ZeroDimSet, blowup_maps, exceptional_direction,
                               ideal_is_finite, line_meets, mobius_to_infinity, proper_transform,
                               ratmap_compose, ratmap_eval, tangent_direction, zerodim_meets_curve)
from tricover.surface import build_standard_atlas, hirzebruch, plane, SurfacePresentation

P = parse_poly
x, y = Poly.gens_of()
BLOWDOWN = RationalMap2.from_polys("U", "A", x, x * y)
BLOWUP_INV = RationalMap2("A", "U", (RatFun.from_poly(x), RatFun(y, x)))


def rand_q(rng, lo=-9, hi=9, den=5):
    return mpq(rng.randint(lo, hi), rng.randint(1, den))


# -- evaluation and composition ---------------------------------------------------

def test_eval_blowdown():
    assert ratmap_eval(BLOWDOWN, (2, 3)) == (2, 6)


def test_eval_pole_is_indeterminate():
    f = RationalMap2("A", "B", (RatFun(Poly.one(), x), RatFun.from_poly(y)))
    assert ratmap_eval(f, (0, 1)) is None


def test_eval_identity():
    assert ratmap_eval(RationalMap2.identity("A"), (mpq(3, 7), -2)) == (mpq(3, 7), -2)


def test_eval_reduces_before_testing_poles():
    # (x^2 - x)/(x - 1) is x after reduction, so (1, 0) is not a pole
    f = RationalMap2("A", "B", (RatFun(x * x - x, x - 1), RatFun.from_poly(y)))
    assert ratmap_eval(f, (1, 0)) == (1, 0)


def test_compose_blowdown_with_inverse():
    assert ratmap_compose(BLOWDOWN, BLOWUP_INV) == RationalMap2.identity("A")
    assert ratmap_compose(BLOWUP_INV, BLOWDOWN) == RationalMap2.identity("U")


def test_compose_identity_left():
    assert ratmap_compose(RationalMap2.identity("A"), BLOWDOWN) == BLOWDOWN


def test_compose_mismatched_charts():
    with pytest.raises(ValueError):
        ratmap_compose(BLOWDOWN, BLOWDOWN)


def _fiber_mobius(src, dst, a, b, c, d):
    return RationalMap2(src, dst, (RatFun.from_poly(x), RatFun(y * a + b, y * c + d)))


def test_compose_mobius_fiber_maps_pointwise():
    f = _fiber_mobius("A", "B", 2, 1, 1, 3)
    g = _fiber_mobius("B", "C", 1, -4, 5, 1)
    h = ratmap_compose(g, f)
    # oracle: the matrix product [[1,-4],[5,1]] [[2,1],[1,3]] = [[-2,-11],[11,8]]
    assert h == _fiber_mobius("A", "C", -2, -11, 11, 8)
    rng = random.Random(3)
    checked = 0
    while checked < 5:
        p = (rand_q(rng), rand_q(rng))
        q = ratmap_eval(f, p)
        if q is None or ratmap_eval(g, q) is None:
            continue
        assert ratmap_eval(h, p) == ratmap_eval(g, q)
        checked += 1


# -- proper transforms and tangents -----------------------------------------------------

def test_proper_transform_smooth_line():
    down, _ = blowup_maps("A", "U", (0, 0), (0, 1), (1, 0))
    assert down.components == BLOWDOWN.components
    assert proper_transform(y, down) == (y, 1)


def test_proper_transform_missing_center():
    down, _ = blowup_maps("A", "U", (0, 0), (0, 1), (1, 0))
    assert proper_transform(y - 1, down) == (x * y - 1, 0)


def test_proper_transform_nodal_cubic():
    down, _ = blowup_maps("A", "U", (0, 0), (0, 1), (1, 0))
    # by hand: (u v)^2 - u^2 (u + 1) = u^2 (v^2 - u - 1)
    assert proper_transform(P("y^2 - x^2*(x + 1)"), down) == (P("y^2 - x - 1"), 2)


def test_proper_transform_zero_curve():
    with pytest.raises(ValueError):
        proper_transform(Poly.zero(), BLOWDOWN)


@pytest.mark.parametrize("curve, p, d", [
    ("y - x^2", (0, 0), (1, 0)),
    ("x", (0, 0), (0, 1)),
    ("y^2 - x", (1, 1), (2, 1)),
])
def test_tangent_direction(curve, p, d):
    got = tangent_direction(P(curve), p)
    assert got[0] * d[1] == got[1] * d[0]


def test_tangent_direction_singular():
    with pytest.raises(ValueError):
        tangent_direction(P("y^2 - x^3"), (0, 0))


# -- Moebius maps -----------------------------------------------------------------

def test_mobius_infinity_is_identity():
    m = mobius_to_infinity(INF)
    assert m(mpq(5)) == 5 and m(INF) is INF


def test_mobius_zero():
    m = mobius_to_infinity(0)
    assert m(0) is INF and m(mpq(2)) == mpq(1, 2)


def test_mobius_three():
    m = mobius_to_infinity((6, 2))
    assert m(3) is INF
    assert m.a * m.d - m.b * m.c != 0
    assert m.inverse()(m(mpq(7))) == 7


def test_mobius_invalid_pair():
    with pytest.raises(ValueError):
        mobius_to_infinity((0, 0))


# -- finite point sets ------------------------------------------------------------------

def test_zerodim_explicit_point_on_line():
    S = ZeroDimSet()
    S.add_point("A", (1, 2))
    assert zerodim_meets_curve(S, x + y - 3, "A")


def test_zerodim_irrational_points_miss_line():
    S = ZeroDimSet()
    S.add_ideal("A", [P("x^2 - 2"), y])
    assert not zerodim_meets_curve(S, y - 1, "A")
    # oracle: the generator y and the curve y - 1 have no common root in y
    r = resultant(y, y - 1, "y")
    assert r.is_constant() and not r.is_zero()
    assert zerodim_meets_curve(S, x * x + y - 2, "A")


def test_zerodim_empty():
    assert not zerodim_meets_curve(ZeroDimSet(), x, "A")


def test_zerodim_foreign_component_is_reported():
    S = ZeroDimSet()
    S.add_ideal("B", [x, y])
    with pytest.raises(ValueError):
        zerodim_meets_curve(S, x, "A")


def test_ideal_finiteness():
    assert ideal_is_finite(Ideal("A", (P("x^2 - 2"), y)))
    assert not ideal_is_finite(Ideal("A", (x * y, x * x)))


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), max_size=4),
       st.integers(-3, 3), st.integers(-3, 3), st.integers(-6, 6))
def test_zerodim_matches_enumeration(pts, a, b, c):
    if a == 0 and b == 0:
        return
    line = x * a + y * b + c
    as_ideals, as_points = ZeroDimSet(), ZeroDimSet()
    for p in pts:
        as_ideals.add_ideal("A", [x - p[0], y - p[1]])
        as_points.add_point("A", p)
    expected = any(line.evaluate(p) == 0 for p in pts)
    assert zerodim_meets_curve(as_ideals, line, "A") is expected
    assert zerodim_meets_curve(as_points, line, "A") is expected


def test_line_meets_point_set():
    assert line_meets([P("x^2 - 2"), y], (0, 0), (1, 0))
    assert not line_meets([P("x^2 - 2"), y], (0, 1), (1, 0))
    assert not line_meets([x, y], (0, 0), (1, 1), except_base=True)


# -- blowup charts ---------------------------------------------------------------------

def _random_blowups(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = (rand_q(rng), rand_q(rng))
        d = (rand_q(rng), rand_q(rng))
        if d == (0, 0):
            continue
        out.append((p, d) + blowup_maps("A", "U", p, d))
    return out


def test_blowup_round_trips():
    rng = random.Random(8)
    for p, d, down, up in _random_blowups(10, 1):
        good = 0
        while good < 100:
            q = (rand_q(rng), rand_q(rng))
            a = ratmap_eval(down, q)
            back = ratmap_eval(up, a)
            if back is None:
                continue
            assert back == q
            good += 1


def test_blowup_exceptional_points_are_directions():
    for p, d, down, up in _random_blowups(10, 2):
        assert ratmap_eval(down, (0, mpq(4))) == tuple(p)
        e = exceptional_direction(down, (0, mpq(4)))
        assert e[0] * d[1] != e[1] * d[0] or d == (0, 0)


def test_line_pullback_is_exceptional_times_unit():
    rng = random.Random(4)
    for p, d, down, up in _random_blowups(20, 3):
        line = AffLine.through("A", p, d)
        pt, m = proper_transform(line.equation, down)
        assert m == 1
        # the cofactor has empty zero set in the chart: together with any point it is trivial
        q = (rand_q(rng), rand_q(rng))
        assert ideal_is_trivial([pt, x - q[0], y - q[1]])
        assert pt.is_constant()


def test_proper_transform_not_divisible_by_exceptional():
    rng = random.Random(6)
    for p, d, down, up in _random_blowups(15, 5):
        curve = Poly({(rng.randint(0, 3), rng.randint(0, 3)): rng.randint(-4, 4) for _ in range(4)})
        curve = curve + (x - p[0]) * (y - p[1])
        pt, m = proper_transform(curve, down)
        assert any(mono[0] == 0 for mono in pt.terms)
        assert not divides(x, pt)


# -- standard atlas transitions -----------------------------------------------------------

@pytest.mark.parametrize("base", [plane(), hirzebruch(0), hirzebruch(2), hirzebruch(3)])
def test_standard_transitions_round_trip(base):
    tower = build_standard_atlas(SurfacePresentation(base))
    g = tower.graph
    rng = random.Random(9)
    names = tower.atlas(0).names
    for a in names:
        for b in names:
            if a == b:
                continue
            fwd, back = g.transition(a, b), g.transition(b, a)
            good = 0
            while good < 100:
                q = (rand_q(rng), rand_q(rng))
                r = ratmap_eval(fwd, q)
                if r is None:
                    continue
                assert ratmap_eval(back, r) == q
                good += 1
