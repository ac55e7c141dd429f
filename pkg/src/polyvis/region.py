"""Visibility-region output records and canonical comparison form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .geom_core import COLLINEAR, Pt, orient

TAG_VERTEX = "vertex"
TAG_WINDOW = "window"
TAG_PORTION_END = "portion_end"


@dataclass(frozen=True)
class RegionPoint:
    point: Pt
    tag: str = TAG_VERTEX
    index: Optional[int] = None  # original polygon index for vertex points

    def record(self) -> Tuple[float, float, str]:
        return (self.point.fx, self.point.fy, self.tag)


class VisRegion:
    """Ordered CCW boundary of a visibility / weak-visibility region."""

    def __init__(self, points: Iterable[RegionPoint] = ()):
        self._pts: List[RegionPoint] = list(points)

    def append(self, point: Pt, tag: str = TAG_VERTEX, index: Optional[int] = None):
        self._pts.append(RegionPoint(point, tag, index))

    def points(self) -> List[Pt]:
        return [rp.point for rp in self._pts]

    def records(self) -> List[RegionPoint]:
        return list(self._pts)

    def __len__(self):
        return len(self._pts)

    def __iter__(self):
        return iter(self._pts)

    def canonical(self) -> Tuple[Pt, ...]:
        return canonicalize(self.points())

    def __repr__(self):
        inner = ", ".join(f"({p.point.x},{p.point.y})" for p in self._pts)
        return f"VisRegion[{inner}]"


class RegionSink:
    """Streaming sink; algorithms emit here so output never counts as workspace."""

    def __init__(self):
        self.region = VisRegion()

    def emit(self, point: Pt, tag: str = TAG_VERTEX, index: Optional[int] = None):
        self.region.append(point, tag, index)


def canonicalize(points: Sequence[Pt]) -> Tuple[Pt, ...]:
    """Canonical form of a closed boundary point list.

    Drops consecutive duplicates and collinear middle points (cyclically,
    until stable), then rotates so the lexicographically smallest point
    leads.  Two regions are geometrically equal iff their canonical forms
    are equal.
    """
    pts = list(points)
    # adjacent duplicates (cyclic)
    out: List[Pt] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    # collinear middles, repeated until stable since drops create new triples
    changed = True
    while changed and len(out) > 2:
        changed = False
        kept: List[Pt] = []
        n = len(out)
        for i in range(n):
            prv = out[(i - 1) % n]
            nxt = out[(i + 1) % n]
            if orient(prv, out[i], nxt) == COLLINEAR:
                changed = True
            else:
                kept.append(out[i])
        out = kept
    if not out:
        return ()
    start = min(range(len(out)), key=lambda i: out[i].key())
    return tuple(out[start:] + out[:start])


def regions_equal(a: Sequence[Pt], b: Sequence[Pt]) -> bool:
    return canonicalize(a) == canonicalize(b)
