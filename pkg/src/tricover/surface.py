"""Surface presentations: a minimal model plus an ordered list of blowup centers.

The standard atlas of the minimal model is

* P^2 with homogeneous coordinates ``[X:Y:Z]``: charts ``Pz`` (root,
  ``x = X/Z, y = Y/Z``), ``Px`` (``Y/X, Z/X``) and ``Py`` (``X/Y, Z/Y``);
* the Hirzebruch surface Sigma_n: charts ``H00`` (root, base ``z`` and
  fiber ``w``), ``H01`` (``z, 1/w``), ``H10`` (``1/z, z^n w``) and ``H11``
  (``1/z, 1/(z^n w)``).

Blowing up the ``i``-th center adds the charts ``E{i}a`` and ``E{i}b`` (the
two standard blowup charts, exceptional curve ``u = 0``) and removes the
center from every older chart containing it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .algebra import Poly, RatFun
from .algebra.scalar import scalar
from .geometry import (GENS, ChartGraph, ChartNode, Point, RationalMap2, X, Y,
                       blowup_maps, exceptional_direction, same_direction)

log = logging.getLogger(__name__)


class PresentationError(ValueError):
    """Invalid surface presentation."""


@dataclass(frozen=True)
class MinimalModel:
    kind: str  # "P2" or "hirzebruch"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("P2", "hirzebruch"):
            raise PresentationError(f"unknown minimal model {self.kind!r}")
        if self.kind == "hirzebruch":
            if self.n < 0:
                raise PresentationError("n must be ≥ 0")
            if self.n == 1:
                log.warning("Sigma_1 is not minimal; building the cover anyway")

    @property
    def root(self) -> str:
        return "Pz" if self.kind == "P2" else "H00"

    @property
    def chart_names(self) -> tuple[str, ...]:
        return ("Pz", "Px", "Py") if self.kind == "P2" else ("H00", "H01", "H10", "H11")

    def label(self) -> str:
        return "P2" if self.kind == "P2" else f"Sigma_{self.n}"


@dataclass(frozen=True)
class BlowupCenter:
    level: int
    chart: str
    coords: Point

    @classmethod
    def make(cls, level: int, chart: str, coords: Sequence) -> "BlowupCenter":
        return cls(level, chart, (scalar(coords[0]), scalar(coords[1])))


@dataclass(frozen=True)
class SurfacePresentation:
    base: MinimalModel
    centers: tuple[BlowupCenter, ...] = ()

    @property
    def r(self) -> int:
        return len(self.centers)


def plane() -> MinimalModel:
    return MinimalModel("P2")


def hirzebruch(n: int) -> MinimalModel:
    return MinimalModel("hirzebruch", n)


# -- level-zero atlases -------------------------------------------------------

def _rf(num: Poly, den: Poly | None = None) -> RatFun:
    return RatFun(num, den)


def _p2_charts() -> list[ChartNode]:
    root = ChartNode("Pz", 0, ("x", "y"))
    one = Poly.one(GENS)
    # Px: (a, b) = (Y/X, Z/X)  ->  (X/Z, Y/Z) = (1/b, a/b)
    px = ChartNode("Px", 0, ("y/x", "z/x"), parent=root,
                   down=RationalMap2("Px", "Pz", (_rf(one, Y), _rf(X, Y))),
                   up=RationalMap2("Pz", "Px", (_rf(Y, X), _rf(one, X))))
    # Py: (a, b) = (X/Y, Z/Y)  ->  (a/b, 1/b)
    py = ChartNode("Py", 0, ("x/y", "z/y"), parent=root,
                   down=RationalMap2("Py", "Pz", (_rf(X, Y), _rf(one, Y))),
                   up=RationalMap2("Pz", "Py", (_rf(X, Y), _rf(one, Y))))
    return [root, px, py]


def _hirzebruch_charts(n: int) -> list[ChartNode]:
    one = Poly.one(GENS)
    root = ChartNode("H00", 0, ("z", "w"))
    h01 = ChartNode("H01", 0, ("z", "t"), parent=root,
                    down=RationalMap2("H01", "H00", (_rf(X), _rf(one, Y))),
                    up=RationalMap2("H00", "H01", (_rf(X), _rf(one, Y))))
    h10 = ChartNode("H10", 0, ("s", "y"), parent=root,
                    down=RationalMap2("H10", "H00", (_rf(one, X), _rf(X ** n * Y))),
                    up=RationalMap2("H00", "H10", (_rf(one, X), _rf(X ** n * Y))))
    h11 = ChartNode("H11", 0, ("s", "r"), parent=root,
                    down=RationalMap2("H11", "H00", (_rf(one, X), _rf(X ** n, Y))),
                    up=RationalMap2("H00", "H11", (_rf(one, X), _rf(one, X ** n * Y))))
    return [root, h01, h10, h11]


def homogeneous_point(chart: str, p: Point) -> tuple[mpq, mpq, mpq]:
    """``[X:Y:Z]`` of a point of a P^2 chart."""
    a, b = p
    if chart == "Pz":
        return (a, b, mpq(1))
    if chart == "Px":
        return (mpq(1), a, b)
    if chart == "Py":
        return (a, mpq(1), b)
    raise ValueError(f"{chart} is not a P^2 chart")


def base_coordinate(chart: str, p: Point):
    """Image of a point of a Hirzebruch chart under the bundle projection (``None`` = infinity)."""
    if chart in ("H00", "H01"):
        return p[0]
    if chart in ("H10", "H11"):
        return None if p[0] == 0 else 1 / p[0]
    raise ValueError(f"{chart} is not a Hirzebruch chart")


# -- the tower --------------------------------------------------------------

@dataclass
class StandardAtlas:
    """The standard charts of one level of the tower."""

    level: int
    charts: list[ChartNode]
    graph: ChartGraph

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.charts]

    def removed(self, name: str) -> list[Point]:
        return self.graph[name].removed_at(self.level)

    def transitions(self) -> dict[tuple[str, str], RationalMap2]:
        return {(a.name, b.name): self.graph.transition(a, b)
                for a in self.charts for b in self.charts if a is not b}


@dataclass
class Tower:
    """Standard atlases of ``X_0, ..., X_r`` sharing one chart graph."""

    presentation: SurfacePresentation
    graph: ChartGraph
    charts: list[ChartNode] = field(default_factory=list)

    @property
    def r(self) -> int:
        return self.presentation.r

    @property
    def base(self) -> MinimalModel:
        return self.presentation.base

    def atlas(self, level: int) -> StandardAtlas:
        return StandardAtlas(level, [c for c in self.charts if c.level <= level], self.graph)

    def center(self, i: int) -> BlowupCenter:
        return self.presentation.centers[i - 1]

    def exceptional_charts(self, i: int) -> tuple[str, str]:
        return (f"E{i}a", f"E{i}b")

    def charts_containing(self, level: int, where: str, p: Point) -> dict[str, Point]:
        out = {}
        for c in self.atlas(level).charts:
            q = self.graph.locate(c.name, level, where, p)
            if q is not None:
                out[c.name] = q
        return out


def build_standard_atlas(sp: SurfacePresentation) -> Tower:
    """Build the standard atlas of every level, validating the centers on the way."""
    graph = ChartGraph()
    level0 = _p2_charts() if sp.base.kind == "P2" else _hirzebruch_charts(sp.base.n)
    tower = Tower(sp, graph)
    for node in level0:
        graph.add(node)
        tower.charts.append(node)
    for idx, c in enumerate(sp.centers, start=1):
        if c.level != idx:
            raise PresentationError(f"center {idx} has level {c.level}; levels must be 1..r in order")
        if c.chart not in graph or graph[c.chart].level > idx - 1 or graph[c.chart].kind != "standard":
            raise PresentationError(f"center {idx}: dangling chart reference {c.chart!r}")
        node = graph[c.chart]
        if c.coords in node.removed_at(idx - 1):
            raise PresentationError(f"center {idx}: duplicate center (the point was already blown up)")
        for other in tower.atlas(idx - 1).charts:
            q = graph.locate(other.name, idx - 1, c.chart, c.coords)
            if q is not None:
                other.removed.append((idx, q))
        for suffix, e, d in (("a", (1, 0), (0, 1)), ("b", (0, 1), (1, 0))):
            name = f"E{idx}{suffix}"
            down, up = blowup_maps(c.chart, name, c.coords, d, e)
            e_node = ChartNode(name, idx, ("u", "v"), parent=node, down=down, up=up,
                               blowup={"center": c.coords, "e": e, "d": d, "level": idx})
            # points already missing from the parent stay missing upstairs
            for lv, q in node.removed:
                if lv <= idx - 1:
                    pre = up.evaluate(q)
                    if pre is not None:
                        e_node.removed.append((idx, pre))
            graph.add(e_node)
            tower.charts.append(e_node)
    return tower


def validate_presentation(sp: SurfacePresentation) -> Tower:
    """Check chart references, level order and distinctness; return the tower."""
    return build_standard_atlas(sp)


# -- pushing points down the tower -----------------------------------------

def pushforward_point(tower: Tower, chart: str, p: Point, level: int, target_level: int) -> tuple[str, Point]:
    """Image of a point of ``X_level`` (given in a standard chart) on ``X_target_level``.

    Charts born after ``target_level`` are peeled off through their blowdown
    maps; exceptional points land on their center.
    """
    if target_level > level:
        raise ValueError("can only push down the tower")
    node = tower.graph[chart]
    q = tuple(p)
    while node.level > target_level:
        q = node.down.evaluate(q)
        node = node.parent
    return node.name, q


def on_exceptional(tower: Tower, chart: str, p: Point, i: int) -> bool:
    """Is a point of ``X_i`` (standard chart) on the exceptional curve ``E_i``?"""
    node = tower.graph[chart]
    return node.level == i and node.blowup is not None and p[0] == 0


def same_surface_point(tower: Tower, level: int, a: tuple[str, Point], b: tuple[str, Point]) -> bool:
    q = tower.graph.locate(b[0], level, a[0], a[1])
    return q is not None and q == tuple(b[1])


@dataclass
class FutureCenters:
    """Points that must stay inside all three charts during step ``i``."""

    step: int
    a1: list[tuple[str, Point]]  # on X_{i-1}, away from P_i
    a2: list[tuple[str, Point]]  # on E_i, in the charts E{i}a / E{i}b
    a2_directions: list[tuple[mpq, mpq]]  # the same points as directions at P_i
    sources: dict = field(default_factory=dict)  # center level -> "A1" | "A2"


def future_center_sets(tower: Tower, i: int) -> FutureCenters:
    """A1: images on ``X_{i-1}`` of later centers other than ``P_i``;
    A2: images on ``X_i`` of later centers lying on ``E_i``."""
    if not 1 <= i <= tower.r:
        raise ValueError(f"step {i} outside 1..{tower.r}")
    pi = tower.center(i)
    a1: list[tuple[str, Point]] = []
    a2: list[tuple[str, Point]] = []
    dirs: list[tuple[mpq, mpq]] = []
    sources = {}
    for c in tower.presentation.centers[i:]:
        ch, q = pushforward_point(tower, c.chart, c.coords, c.level - 1, i)
        if on_exceptional(tower, ch, q, i):
            node = tower.graph[ch]
            d = exceptional_direction(node.down, q)
            sources[c.level] = "A2"
            if not any(same_direction(d, d2) for d2 in dirs):
                dirs.append(d)
                a2.append((ch, q))
            continue
        ch0, q0 = pushforward_point(tower, c.chart, c.coords, c.level - 1, i - 1)
        if same_surface_point(tower, i - 1, (ch0, q0), (pi.chart, pi.coords)):
            raise AssertionError("a later center maps onto P_i without lying on E_i")
        sources[c.level] = "A1"
        if not any(same_surface_point(tower, i - 1, (ch0, q0), other) for other in a1):
            a1.append((ch0, q0))
    return FutureCenters(i, a1, a2, dirs, sources)


def all_centers_at_level0(tower: Tower) -> list[tuple[str, Point]]:
    """pi(E): every center pushed down to the minimal model, without repeats."""
    out: list[tuple[str, Point]] = []
    for c in tower.presentation.centers:
        q = pushforward_point(tower, c.chart, c.coords, c.level - 1, 0)
        if not any(same_surface_point(tower, 0, q, o) for o in out):
            out.append(q)
    return out
