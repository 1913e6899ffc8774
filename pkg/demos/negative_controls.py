"""What a failing certificate looks like.

Two of the three coordinate charts of the projective plane leave a point
uncovered; the verifier finds it and reports it as a witness. Replacing a
transition map by a wrong one is caught by the round-trip check.
"""

from tricover.builder import construct_cover
from tricover.fixtures import fixture
from tricover.geometry import RationalMap2
from tricover.surface import homogeneous_point
from tricover.verifier import stored_transitions, verify_emptiness, verify_transitions

cover = construct_cover(fixture("P2", 0))
for keep in ([0, 1], [0, 2], [1, 2]):
    cert = verify_emptiness(cover, charts=keep)
    for r in cert.failures():
        pt = tuple(int(v) for v in r.witness["point"])
        hom = ":".join(str(int(v)) for v in homogeneous_point(r.chart, pt))
        print(f"charts {keep}: uncovered point {pt} of {r.chart}, that is [{hom}]")

c = cover.charts[1]
good = stored_transitions(cover)[(c.name, c.reference)]
bad = RationalMap2(good.source, good.target, good.components[::-1])
rep = verify_transitions(cover, 20, transitions={(c.name, c.reference): bad})
w = rep["failures"][0]
print(f"\nswapped transition {c.name} -> {c.reference}: {len(rep['failures'])} failed round trips, "
      f"e.g. {w['point']} came back as {w['back']}")
