"""Presentations, standard atlases, blowdown bookkeeping and future centers."""

import random

import pytest
from gmpy2 import mpq

from tricover.fixtures import fixture_matrix
from tricover.surface import (BlowupCenter, PresentationError, SurfacePresentation, build_standard_atlas,
                              future_center_sets, hirzebruch, plane, pushforward_point, validate_presentation)


def C(level, chart, a, b):
    return BlowupCenter.make(level, chart, (a, b))


def rand_q(rng):
    return mpq(rng.randint(-12, 12), rng.randint(1, 6))


def test_plane_without_centers_is_valid():
    tower = validate_presentation(SurfacePresentation(plane()))
    assert tower.atlas(0).names == ["Pz", "Px", "Py"]


def test_duplicate_center_rejected():
    # [1:2:1] in Pz is (2, 1) in Px... level 2 names the same point through another chart
    sp = SurfacePresentation(plane(), (C(1, "Pz", 1, 2), C(2, "Px", 2, 1)))
    with pytest.raises(PresentationError, match="duplicate center"):
        validate_presentation(sp)
    sp = SurfacePresentation(plane(), (C(1, "Pz", 1, 2), C(2, "Pz", 1, 2)))
    with pytest.raises(PresentationError, match="duplicate center"):
        validate_presentation(sp)


def test_dangling_chart_and_level_order():
    with pytest.raises(PresentationError, match="dangling"):
        validate_presentation(SurfacePresentation(plane(), (C(1, "H00", 0, 0),)))
    with pytest.raises(PresentationError, match="dangling"):
        validate_presentation(SurfacePresentation(plane(), (C(1, "E1a", 0, 0),)))
    with pytest.raises(PresentationError, match="levels"):
        validate_presentation(SurfacePresentation(plane(), (C(2, "Pz", 0, 0),)))


def test_negative_hirzebruch_rejected():
    with pytest.raises(PresentationError, match="n must be ≥ 0"):
        hirzebruch(-1)


def test_sigma_one_accepted_with_warning(caplog):
    with caplog.at_level("WARNING"):
        hirzebruch(1)
    assert "not minimal" in caplog.text


def test_infinitely_near_center_is_valid():
    sp = SurfacePresentation(hirzebruch(2), (C(1, "H00", 1, 1), C(2, "E1a", 0, 3)))
    tower = validate_presentation(sp)
    # the second center sits on E_1 and is a point of the new blowup chart
    assert tower.graph["E1a"].level == 1
    ch, q = pushforward_point(tower, "E1a", (0, mpq(3)), 1, 0)
    assert (ch, q) == ("H00", (1, 1))


@pytest.mark.parametrize("key, count", [("P2-0", 3), ("P2-3", 9), ("S0-0", 4), ("S3-5", 14)])
def test_atlas_chart_counts(key, count):
    sp = fixture_matrix()[key]
    tower = build_standard_atlas(sp)
    assert len(tower.atlas(sp.r).names) == count


def test_plane_transitions():
    tower = build_standard_atlas(SurfacePresentation(plane()))
    ts = tower.atlas(0).transitions()
    assert len(ts) == 6
    # Pz -> Px is (x, y) -> (y/x, 1/x)
    assert ts[("Pz", "Px")].evaluate((2, 6)) == (3, mpq(1, 2))


def test_sigma0_cocycles_trivial():
    tower = build_standard_atlas(SurfacePresentation(hirzebruch(0)))
    g = tower.graph
    assert g.transition("H00", "H10").evaluate((2, 5)) == (mpq(1, 2), 5)
    assert g.transition("H00", "H11").evaluate((2, 5)) == (mpq(1, 2), mpq(1, 5))


def test_sigma2_section_cocycle():
    tower = build_standard_atlas(SurfacePresentation(hirzebruch(2)))
    g = tower.graph
    c = mpq(7, 3)
    for z in (mpq(1), mpq(-2), mpq(5, 4)):
        s, w2 = g.transition("H00", "H10").evaluate((z, c))
        assert s == 1 / z and w2 == c * z ** 2


@pytest.mark.parametrize("n", [0, 2, 3])
def test_hirzebruch_cycle_is_identity(n):
    tower = build_standard_atlas(SurfacePresentation(hirzebruch(n)))
    g = tower.graph
    rng = random.Random(n)
    cycle = ["H00", "H10", "H11", "H01", "H00"]
    done = 0
    while done < 50:
        p = (rand_q(rng), rand_q(rng))
        q = p
        for a, b in zip(cycle, cycle[1:]):
            q = g.transition(a, b).evaluate(q)
            if q is None:
                break
        if q is None:
            continue
        assert q == p
        done += 1


@pytest.mark.parametrize("key", ["P2-3", "S2-3", "S3-5"])
def test_atlas_cocycle_on_random_points(key):
    sp = fixture_matrix()[key]
    tower = build_standard_atlas(sp)
    atlas = tower.atlas(sp.r)
    rng = random.Random(1)
    for _ in range(1000 // len(atlas.names)):
        home = rng.choice(atlas.names)
        p = (rand_q(rng), rand_q(rng))
        if p in atlas.removed(home):
            continue
        inside = tower.charts_containing(sp.r, home, p)
        assert home in inside
        names = list(inside)
        for a in names[:3]:
            for b in names[:3]:
                if a != b:
                    assert tower.graph.transition(a, b).evaluate(inside[a]) == inside[b]


def test_pushforward_exceptional_collapses():
    tower = build_standard_atlas(SurfacePresentation(plane(), (C(1, "Pz", 0, 0),)))
    assert pushforward_point(tower, "E1a", (0, 5), 1, 0) == ("Pz", (0, 0))
    assert pushforward_point(tower, "E1a", (0, -2), 1, 0) == ("Pz", (0, 0))
    assert pushforward_point(tower, "E1a", (2, 3), 1, 0) == ("Pz", (2, 6))
    assert pushforward_point(tower, "Px", (2, 3), 1, 0) == ("Px", (2, 3))
    with pytest.raises(ValueError):
        pushforward_point(tower, "Pz", (0, 0), 0, 1)


def test_pushforward_respects_composition():
    sp = SurfacePresentation(plane(), (C(1, "Pz", 0, 0), C(2, "E1a", 0, 1), C(3, "E2b", 1, 0)))
    tower = build_standard_atlas(sp)
    rng = random.Random(2)
    for _ in range(50):
        p = (rand_q(rng), rand_q(rng))
        mid = pushforward_point(tower, "E3a", p, 3, 1)
        two_step = pushforward_point(tower, mid[0], mid[1], 1, 0)
        assert two_step == pushforward_point(tower, "E3a", p, 3, 0)


def test_future_centers_single():
    tower = build_standard_atlas(SurfacePresentation(plane(), (C(1, "Pz", 0, 0),)))
    fc = future_center_sets(tower, 1)
    assert fc.a1 == [] and fc.a2 == []


def test_future_centers_distinct_points():
    tower = build_standard_atlas(SurfacePresentation(plane(), (C(1, "Pz", 0, 0), C(2, "Pz", 1, 1))))
    fc = future_center_sets(tower, 1)
    assert fc.a1 == [("Pz", (1, 1))] and fc.a2 == []


def test_future_centers_infinitely_near():
    tower = build_standard_atlas(SurfacePresentation(plane(), (C(1, "Pz", 0, 0), C(2, "E1a", 0, 1))))
    fc = future_center_sets(tower, 1)
    assert fc.a1 == [] and fc.a2 == [("E1a", (0, 1))]
    assert fc.sources == {2: "A2"}


@pytest.mark.parametrize("key", sorted(fixture_matrix()))
def test_future_centers_account_for_every_later_center(key):
    sp = fixture_matrix()[key]
    tower = build_standard_atlas(sp)
    for i in range(1, sp.r + 1):
        fc = future_center_sets(tower, i)
        assert sorted(fc.sources) == list(range(i + 1, sp.r + 1))
        assert len(fc.a1) <= sum(1 for v in fc.sources.values() if v == "A1")
        assert len(fc.a2) == len(fc.a2_directions)
