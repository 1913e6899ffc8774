"""A fixed matrix of surface presentations used by the tests and the demos.

Every base model ({P2, Sigma_0, Sigma_2, Sigma_3}) is paired with towers of
0, 1, 2, 3 and 5 blowups. Several towers blow up points on an earlier
exceptional curve (charts ``E{i}a``/``E{i}b`` with first coordinate 0).
"""

from __future__ import annotations

from .surface import BlowupCenter, MinimalModel, SurfacePresentation, hirzebruch, plane


def _c(level: int, chart: str, a, b) -> BlowupCenter:
    return BlowupCenter.make(level, chart, (a, b))


_TOWERS = {
    "P2": {
        1: [("Pz", 0, 0)],
        2: [("Pz", 0, 0), ("E1a", 0, 2)],
        3: [("Pz", 1, 2), ("Px", 3, -1), ("E2b", 0, "1/2")],
        5: [("Pz", 0, 0), ("Px", 1, 2), ("Py", "3/7", -1), ("E1a", 0, 5), ("Pz", 2, 2)],
    },
    "S0": {
        1: [("H00", 1, 1)],
        2: [("H00", 0, 0), ("H11", 2, -3)],
        3: [("H00", 1, 1), ("E1b", 0, 0), ("H10", 2, 3)],
        5: [("H00", 0, 0), ("H00", 1, 2), ("H11", 3, -1), ("E1a", 0, 5), ("E4b", 0, 0)],
    },
    "S2": {
        1: [("H01", 0, 1)],
        2: [("H00", 1, 1), ("H11", 0, 0)],
        3: [("H10", 1, 0), ("E1a", 0, -1), ("E2a", 0, 3)],
        5: [("H00", 2, 1), ("H01", -1, 0), ("E2b", 0, 2), ("H11", 1, 1), ("H10", 0, "5/2")],
    },
    "S3": {
        1: [("H11", 2, 0)],
        2: [("H00", 0, 1), ("E1b", 0, 1)],
        3: [("H00", 1, 1), ("E1b", 0, 0), ("H10", 2, 3)],
        5: [("H00", 1, -1), ("H01", 2, 2), ("E1a", 0, 1), ("H11", -2, 3), ("E3b", 0, -1)],
    },
}

BASES = {"P2": plane, "S0": lambda: hirzebruch(0), "S2": lambda: hirzebruch(2),
         "S3": lambda: hirzebruch(3)}
SIZES = (0, 1, 2, 3, 5)


def fixture(base: str, r: int) -> SurfacePresentation:
    model: MinimalModel = BASES[base]()
    steps = [] if r == 0 else _TOWERS[base][r]
    return SurfacePresentation(model, [_c(k, ch, a, b) for k, (ch, a, b) in enumerate(steps, start=1)])


def fixture_matrix() -> dict[str, SurfacePresentation]:
    """``{"P2-3": presentation, ...}`` in a fixed order."""
    return {f"{b}-{r}": fixture(b, r) for b in BASES for r in SIZES}
