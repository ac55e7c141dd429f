"""Instrumented memory model enforcing the workspace budgets.

Cell model: one scalar (index, angle, flag) is one cell, a point is two.
Auxiliary state is registered on an AuxMeter; the input array itself and
the emitted output stream are free.  PolygonView offers read-only indexed
access, PolygonBuffer adds writes and swaps so the in-place algorithm can
keep its stack inside the input array.
"""

from __future__ import annotations

import json
from typing import List, Optional, Sequence, Tuple

from .geom_core import (CCW, COLLINEAR, DegenerateInput, Pt, Seg, orient,
                        point_on_segment, seg_intersect)


class BudgetExceeded(RuntimeError):
    """An allocation would push live auxiliary cells past the armed budget."""


class AllocToken:
    """Handle for a block of auxiliary cells; releases them when closed."""

    def __init__(self, meter: "AuxMeter", cells: int):
        self.meter = meter
        self.cells = cells
        self.released = False

    def release(self):
        if not self.released:
            self.meter._release(self.cells)
            self.released = True

    def resize(self, new_cells: int):
        """Adjust for slot-type transitions (index slot <-> point slot)."""
        delta = new_cells - self.cells
        if delta > 0:
            self.meter._acquire(delta)
        elif delta < 0:
            self.meter._release(-delta)
        self.cells = new_cells

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.release()
        return False


class AuxMeter:
    """Tracks live and peak auxiliary cells for one algorithm run."""

    def __init__(self):
        self.live_cells = 0
        self.peak_cells = 0
        self.budget: Optional[int] = None

    def arm_budget(self, max_cells: int):
        self.budget = max_cells

    def alloc(self, cells: int) -> AllocToken:
        if cells < 1:
            raise ValueError("allocation must be at least one cell")
        self._acquire(cells)
        return AllocToken(self, cells)

    def _acquire(self, cells: int):
        if self.budget is not None and self.live_cells + cells > self.budget:
            raise BudgetExceeded(
                f"allocation of {cells} cells exceeds budget "
                f"{self.budget} (live {self.live_cells})")
        self.live_cells += cells
        if self.live_cells > self.peak_cells:
            self.peak_cells = self.live_cells

    def _release(self, cells: int):
        self.live_cells -= cells
        if self.live_cells < 0:
            raise RuntimeError("meter release underflow")

    def report(self, n: int, reads: int = 0, writes: int = 0) -> dict:
        return {"peak_cells": self.peak_cells, "reads": reads,
                "writes": writes, "n": n}

    def report_json(self, n: int, reads: int = 0, writes: int = 0) -> str:
        return json.dumps(self.report(n, reads, writes))


def validate_polygon(vertices: Sequence[Pt], check_simple: bool = True) -> None:
    """Reject non-simple, clockwise or under-sized vertex lists."""
    n = len(vertices)
    if n < 3:
        raise DegenerateInput("polygon needs at least 3 vertices")
    for i in range(n):
        if vertices[i] == vertices[(i + 1) % n]:
            raise DegenerateInput("repeated consecutive vertex")
    area2 = 0
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        area2 += a.x * b.y - a.y * b.x
    if area2 == 0:
        raise DegenerateInput("degenerate (zero-area) polygon")
    if area2 < 0:
        raise DegenerateInput("polygon vertices must be in CCW order")
    if check_simple and not _is_simple(vertices):
        raise DegenerateInput("polygon is not simple")


def _is_simple(vertices: Sequence[Pt]) -> bool:
    n = len(vertices)
    boxes = []
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        boxes.append((min(a.fx, b.fx), max(a.fx, b.fx),
                      min(a.fy, b.fy), max(a.fy, b.fy)))
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        bi = boxes[i]
        for j in range(i + 1, n):
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            c, d = vertices[j], vertices[(j + 1) % n]
            if adjacent:
                # sharing one endpoint: only a collinear overlap can break simplicity
                shared = b if j == i + 1 else a
                e1 = a if shared is b else b
                e2 = d if j == i + 1 else c
                if orient(shared, e1, e2) == COLLINEAR:
                    # backtracking spike
                    if (e1.x - shared.x) * (e2.x - shared.x) + \
                       (e1.y - shared.y) * (e2.y - shared.y) > 0:
                        return False
                continue
            try:
                if seg_intersect(Seg(a, b), Seg(c, d)) is not None:
                    return False
            except DegenerateInput:
                return False
            # non-proper contact between non-adjacent edges also breaks simplicity
            if point_on_segment(c, a, b) or point_on_segment(d, a, b) or \
               point_on_segment(a, c, d) or point_on_segment(b, c, d):
                return False
    return True


class PolygonView:
    """Read-only CCW simple polygon with counted indexed reads."""

    def __init__(self, vertices: Sequence[Pt], validate: bool = True,
                 check_simple: bool = True):
        self._verts: Tuple[Pt, ...] = tuple(vertices)
        if validate:
            validate_polygon(self._verts, check_simple=check_simple)
        self.read_count = 0

    def __len__(self):
        return len(self._verts)

    def vertex(self, i: int) -> Pt:
        self.read_count += 1
        return self._verts[i % len(self._verts)]

    def edge(self, i: int) -> Seg:
        return Seg(self.vertex(i), self.vertex(i + 1))

    def vertices(self) -> List[Pt]:
        # bulk access for validation/oracles; not charged as algorithm reads
        return list(self._verts)


class MirroredView:
    """Lazy x-negated, order-reversed view of a PolygonView (stays CCW).

    Lets RightNonVisible run as LeftNonVisible on the mirror in O(1) extra
    space.  Original edge j appears as mirrored edge (n-2-j) mod n.
    """

    def __init__(self, base: PolygonView):
        self.base = base

    def __len__(self):
        return len(self.base)

    def vertex(self, i: int) -> Pt:
        n = len(self.base)
        p = self.base.vertex((n - 1 - i) % n)
        return Pt(-p.x, p.y)

    def edge(self, i: int) -> Seg:
        return Seg(self.vertex(i), self.vertex(i + 1))

    def vertices(self) -> List[Pt]:
        return [Pt(-p.x, p.y) for p in reversed(self.base.vertices())]

    @staticmethod
    def map_edge_index(n: int, j: int) -> int:
        return (n - 2 - j) % n

    @staticmethod
    def reflect(p: Pt) -> Pt:
        return Pt(-p.x, p.y)


class PolygonBuffer:
    """Mutable vertex array for the in-place algorithm.

    Slots carry emission metadata (original index or window marker) that is
    moved around by swap/write; the algorithm's decisions never read it.
    After a run the original contents are not recoverable.
    """

    def __init__(self, vertices: Sequence[Pt], validate: bool = True,
                 check_simple: bool = True):
        verts = list(vertices)
        if validate:
            validate_polygon(verts, check_simple=check_simple)
        self._slots: List[Pt] = verts
        self._meta: List[Optional[int]] = list(range(len(verts)))
        self.read_count = 0
        self.write_count = 0

    def __len__(self):
        return len(self._slots)

    def read(self, i: int) -> Pt:
        self.read_count += 1
        return self._slots[i % len(self._slots)]

    def meta(self, i: int) -> Optional[int]:
        return self._meta[i % len(self._slots)]

    def write(self, i: int, p: Pt, meta: Optional[int] = None):
        self.write_count += 1
        self._slots[i % len(self._slots)] = p
        self._meta[i % len(self._slots)] = meta

    def swap(self, i: int, j: int):
        n = len(self._slots)
        i %= n
        j %= n
        self.write_count += 2
        self._slots[i], self._slots[j] = self._slots[j], self._slots[i]
        self._meta[i], self._meta[j] = self._meta[j], self._meta[i]

    def vertices(self) -> List[Pt]:
        return list(self._slots)
