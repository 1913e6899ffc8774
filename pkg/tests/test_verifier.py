"""Coverage certificates, negative controls and certificate replay."""

import copy
import json

import pytest
from gmpy2 import mpq

from tricover.algebra import Poly, parse_poly
from tricover.builder import construct_cover
from tricover.geometry import GENS, RationalMap2, proper_transform
from tricover.surface import BlowupCenter, SurfacePresentation, plane
from tricover.verifier import (certify, complement_traces, replay_certificate, sample_coverage,
                               stored_transitions, verify_emptiness, verify_pairwise_finite,
                               verify_transitions)

P = parse_poly
x, y = Poly.gens_of()


@pytest.fixture(scope="module")
def p2(covers):
    return covers("P2-0")


def test_p2_traces_are_the_lines(p2):
    table = complement_traces(p2)
    # U0 misses Z = 0, U1 misses X = 0, U2 misses Y = 0
    assert [str(t) for t in table["Pz"]] == ["1", "x", "y"]
    assert [str(t) for t in table["Px"]] == ["y", "1", "x"]
    assert [str(t) for t in table["Py"]] == ["y", "x", "1"]


def test_p2_coordinate_cover_trivial(p2):
    cert = verify_emptiness(p2)
    assert cert.ok and [r.status for r in cert.emptiness] == ["trivial"] * 3


def test_two_chart_control_witness(p2):
    # drop U1 = {X != 0}: the lines Z = 0 and Y = 0 meet at [1:0:0]
    cert = verify_emptiness(p2, charts=[0, 2])
    assert not cert.ok
    bad = {r.chart: r for r in cert.failures()}
    assert set(bad) == {"Px"}
    assert bad["Px"].witness["point"] == ["0", "0"]  # (Y/X, Z/X) = (0, 0)


def test_two_chart_control_sampling(p2):
    near = [("Px", (mpq(0), mpq(0))), ("Px", (mpq(1, 1000), mpq(0)))]
    rep = sample_coverage(p2, points=near, charts=(0, 2))
    assert rep["failures"] == [{"chart": "Px", "point": ["0", "0"]}]
    assert sample_coverage(p2, points=near)["failures"] == []


def test_sampling_edge_cases(p2):
    assert sample_coverage(p2, 0)["failures"] == [] and sample_coverage(p2, 0)["count"] == 0
    assert sample_coverage(p2, 1000, seed=4)["failures"] == []


def test_tampered_trace_fails(p2):
    table = complement_traces(p2)
    table["Pz"][0] = table["Pz"][0] * (x - y)
    cert = verify_emptiness(p2, traces=table)
    assert not cert.ok
    assert [r.chart for r in cert.failures()] == ["Pz"]


def test_tampered_factor_table_fails(covers):
    cover = copy.copy(covers("P2-2"))
    cover.charts = list(cover.charts)
    c0 = copy.copy(cover.charts[0])
    c0.factors = {w: dict(fs) for w, fs in c0.factors.items()}
    c0.factors["Pz"]["extra"] = x + y - 7
    cover.charts[0] = c0
    cert = verify_emptiness(cover)
    assert not cert.ok and not cert.consistency_ok


def test_one_blowup_certifies_in_five_charts():
    cover = construct_cover(SurfacePresentation(plane(), (BlowupCenter.make(1, "Pz", (1, 1)),)))
    cert = certify(cover, 1000, 0)
    assert cert.ok and len(cert.emptiness) == 5
    assert not cert.sampling["failures"]


def test_exceptional_factors_are_proper_transforms(covers):
    cover = covers("P2-1")
    g = cover.graph
    seen = 0
    for c in cover.charts:
        for w in ("E1a", "E1b"):
            node = g[w]
            for cid, f in c.factors[w].items():
                parent = c.factors[node.parent.name].get(cid)
                if parent is None:
                    continue
                seen += 1
                # oracle: substitute by hand, then divide by the largest power of u
                pulled = node.down.pullback(parent)
                num = pulled.num
                m = min(mono[0] for mono in num.terms)
                by_hand = Poly({(a - m, b): v for (a, b), v in num.terms.items()})
                assert by_hand.primitive() == f.primitive()
                assert proper_transform(parent, node.down)[0].primitive() == f.primitive()
                assert any(mono[0] == 0 for mono in f.terms)
    assert seen >= 4


def test_pairwise_p2(p2):
    recs = verify_pairwise_finite(p2)
    assert len(recs) == 9 and all(r.ok for r in recs)


def test_pairwise_degenerate_cover(p2):
    table = complement_traces(p2)
    for w in table:
        table[w][1] = table[w][0]
    recs = verify_pairwise_finite(p2, traces=table)
    assert any(not r.ok for r in recs)
    bad = [r for r in recs if not r.ok]
    assert all((r.i, r.j) == (0, 1) for r in bad)


@pytest.mark.parametrize("key", ["S0-0", "S2-1", "S3-2"])
def test_pairwise_hirzebruch(covers, key):
    assert all(r.ok for r in verify_pairwise_finite(covers(key)))


def test_transitions_pass(p2):
    rep = verify_transitions(p2, 100)
    assert rep["ok"] and rep["checked"] > 0


@pytest.mark.parametrize("key", ["P2-0", "S2-2"])
def test_swapped_transition_is_caught(covers, key):
    cover = covers(key)
    c = cover.charts[1]
    good = stored_transitions(cover)[(c.name, c.reference)]
    swapped = RationalMap2(good.source, good.target, good.components[::-1])
    rep = verify_transitions(cover, 50, transitions={(c.name, c.reference): swapped})
    assert not rep["ok"]
    assert all(w["back"] != w["point"] for w in rep["failures"])
    assert all(c.name in w["pair"] for w in rep["failures"])


@pytest.mark.parametrize("key", ["P2-0", "P2-2", "S0-1", "S2-3", "S3-2"])
def test_dropping_any_chart_fails(covers, key):
    cover = covers(key)
    for keep in ([1, 2], [0, 2], [0, 1]):
        assert not verify_emptiness(cover, charts=keep).ok


def test_replay_roundtrip_and_tamper(covers):
    cover = covers("P2-2")
    data = json.loads(json.dumps(certify(cover, 200, 0).to_dict()))
    ok, problems = replay_certificate(data)
    assert ok, problems
    bad = copy.deepcopy(data)
    rec = next(r for r in bad["emptiness"] if r.get("basis"))
    rec["basis"] = ["x"]
    assert not replay_certificate(bad)[0]
    bad = copy.deepcopy(data)
    rec = next(r for r in bad["emptiness"] if r.get("factors"))
    fr = next(f for f in rec["factors"] if "factor" in f)
    fr["factor"] = str(parse_poly(fr["factor"], GENS) * (x + 3))
    assert not replay_certificate(bad)[0]


def test_replay_of_parametric_certificate(covers):
    cover = covers("P2-5")
    cert = certify(cover, 100, 0)
    assert cert.ok
    ok, problems = replay_certificate(json.loads(json.dumps(cert.to_dict())))
    assert ok, problems


def test_replay_rejects_tampered_transform_record(covers):
    data = json.loads(json.dumps(certify(covers("S2-2"), 100, 0).to_dict()))
    assert replay_certificate(data)[0]
    rec = next(r for r in data["emptiness"] if any("from" in f for f in r.get("factors", [])))
    fr = next(f for f in rec["factors"] if "from" in f)
    fr["factor"] = str(parse_poly(fr["factor"], GENS) + 1)
    ok, problems = replay_certificate(data)
    assert not ok and any("proper transform" in p for p in problems)


@pytest.mark.parametrize("key", ["P2-2", "S2-2"])
def test_complement_trace_is_radical_of_denominator_product(covers, key):
    from tricover.algebra import squarefree_part
    cover = covers(key)
    g = cover.graph
    for w in cover.standard_charts():
        for c in cover.charts:
            t = g.transition(w, c.name)
            oracle = squarefree_part(t.components[0].den * t.components[1].den)
            assert g.complement_trace(w, c.name) == oracle
