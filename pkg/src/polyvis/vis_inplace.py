"""In-place visibility polygon of an interior point.

The visible-boundary stack lives inside the input array between indices k
and ell; three index variables plus the cumulative angles Phi (stack top)
and Psi (current vertex) drive the case dispatch.  Runs in O(n) time with a
constant number of auxiliary cells; the input contents are destroyed.

Case structure per vertex, after updating Psi by the signed turn:
  Case 1   Psi >= Phi                  push, advance
  Case 2   Psi < Phi, chain bends away behind the frontier: skip until the
           chain re-crosses the ray through the stack top, insert the
           window point there
  Case 3   Psi < Phi, chain bends in front: pop until the stack empties
           (3.1), the top drops below Psi (3.2, window on the popped edge),
           or the current edge pierces the popped region edge (3.3, skip
           like Case 2)
A crossing of the initial horizontal ray beyond q caps the sweep at one
full turn: the crossing point is pushed and the chain is skipped until it
returns below the ray.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .geom_core import (CCW, COLLINEAR, CW, DegenerateInput,
                        InvariantViolation, Pt, Seg, angle_gt, dist2,
                        first_hit_horizontal, h_cross_point, orient,
                        point_in_polygon, ray_hit, seg_intersect, signed_turn,
                        unsigned_angle, winding_delta)
from .region import TAG_VERTEX, TAG_WINDOW, VisRegion
from .workspace import AuxMeter, PolygonBuffer

_NORMAL = 0
_SCAN = 1
_CEIL = 2

# auxiliary cells registered with the meter: q, start vertex, saved p_theta
# and previous_vertex are points (2 each); theta, k, ell, size, pos, Phi,
# Psi, mode and the angle cap are scalars
_AUX_CELLS = 4 * 2 + 9


@dataclass
class InplaceStats:
    case1: int = 0
    case2: int = 0
    case31: int = 0
    case32: int = 0
    case33: int = 0
    pushes: int = 0
    pops: int = 0
    window_points: int = 0
    skips: int = 0
    ceiling_hits: int = 0
    i_advances: int = 0
    neg_psi_seen: bool = False
    min_psi: float = 0.0

    def ell_changes(self) -> int:
        return self.pushes + self.window_points + self.pops


class InplaceVisibility:
    """One run of the in-place algorithm over a PolygonBuffer."""

    def __init__(self, buf: PolygonBuffer, pi: Pt, meter: Optional[AuxMeter] = None,
                 sink=None, windows: bool = True):
        self.buf = buf
        self.pi = pi
        self.meter = meter if meter is not None else AuxMeter()
        self.sink = sink
        self.windows = windows
        self.stats = InplaceStats()
        self.n = len(buf)

    # -- stack helpers ------------------------------------------------------

    def _pos(self, idx: int) -> int:
        return (idx - (self.theta + 1)) % self.n

    def _check_stack_cell(self, cell: int):
        # Lemma 1: the stack never overwrites an unprocessed vertex.  The
        # theta cell (position n-1) is exempt because p_theta is kept in a
        # scalar from the start.
        p = self._pos(cell)
        if p > self.cur_pos and p != self.n - 1:
            raise InvariantViolation("stack would overwrite an unprocessed vertex")
        if self.size >= self.n:
            raise InvariantViolation("stack overflow")

    def top_point(self) -> Pt:
        return self.buf.read(self.ell)

    def push_and_proceed(self, v: Pt, idx: int):
        """Push the current vertex and step past it (paper: PUSH_and_PROCEED).

        Implemented as a targeted write instead of a swap: the displaced
        slot content is always dead, and a swap would corrupt the stack in
        the wrapped Case 3.1 layout.
        """
        ell_new = (self.ell + 1) % self.n
        self._check_stack_cell(ell_new)
        self.buf.write(ell_new, v, idx)
        self.ell = ell_new
        self.size += 1
        self.stats.pushes += 1
        self.prev = v
        self.phi = self.psi

    def only_proceed(self, v: Pt):
        self.prev = v
        self.stats.skips += 1

    def push_phi(self, p: Pt):
        ell_new = (self.ell + 1) % self.n
        self._check_stack_cell(ell_new)
        self.buf.write(ell_new, p, None)
        self.ell = ell_new
        self.size += 1
        self.stats.window_points += 1

    # -- case dispatch ------------------------------------------------------

    def dispatch_case(self, v: Pt) -> int:
        """Classify the current vertex: 1, 2 or 3."""
        top = self.top_point()
        if angle_gt(self.psi, self.phi, self.pi, top, v):
            return 1
        below = self.q if self.size == 1 else self.buf.read((self.ell - 1) % self.n)
        o = orient(self.pi, below, top)
        if o == COLLINEAR:
            # radial region edge into the top: inward pairs always continue
            # in front; an outward pair below a vertex top cannot occur
            if dist2(top, self.pi) < dist2(below, self.pi):
                return 3
            raise InvariantViolation("outward radial edge below the stack top")
        s = orient(below, top, v)
        if s == COLLINEAR:
            raise DegenerateInput("straight junction at the stack top")
        return 3 if s == CCW else 2

    def handle_case2(self, v: Pt):
        """The chain dives behind the frontier: start skipping (scan)."""
        self.stats.case2 += 1
        self.mode = _SCAN
        self.only_proceed(v)

    def handle_case3(self, v: Pt, idx: int):
        """Pop until sub-case 3.1, 3.2 or 3.3 resolves the current vertex."""
        pops = 0
        last_popped: Optional[Pt] = None
        last_pop_pos: Optional[int] = None
        while True:
            if self.size == 0:
                self._case31(v, idx)
                return
            top = self.top_point()
            if pops > 0 and angle_gt(self.psi, self.phi, self.pi, top, v):
                self._case32(v, idx, top, last_popped)
                return
            if pops > 0:
                hit = seg_intersect(Seg(self.prev, v), Seg(top, last_popped))
                if hit is not None:
                    self.stats.case33 += 1
                    self.mode = _SCAN
                    self.only_proceed(v)
                    return
            meta = self.buf.meta(self.ell)
            if meta is not None:
                ppos = self._pos(meta)
                if last_pop_pos is not None and ppos >= last_pop_pos:
                    raise InvariantViolation("pop order violates the visibility observation")
                last_pop_pos = ppos
            popped = top
            self.ell = (self.ell - 1) % self.n
            self.size -= 1
            self.stats.pops += 1
            if self.size > 0:
                self.phi -= unsigned_angle(popped, self.pi, self.top_point())
            last_popped = popped
            pops += 1

    def _case31(self, v: Pt, idx: int):
        """Stack emptied: restart it at q (plus the window onto the q piece)."""
        self.stats.case31 += 1
        if self.stats.case31 > 1:
            raise InvariantViolation("Case 3.1 fired more than once")
        # cumulative 0 is the start vertex, so the ray through q sits at
        # -delta; an emptying chain must be strictly above that ray
        if self.psi <= -self.delta - 1e-9:
            raise InvariantViolation("stack emptied below the ray through q")
        if self.windows:
            hit = ray_hit(self.pi, v, Seg(self.q, self.start_vertex))
            if hit is None or hit[1] <= 1:
                raise InvariantViolation("Case 3.1 window on the start piece not found")
            kk = (idx - 2) % self.n
            self._check_stack_cell(kk)
            self._check_stack_cell((idx - 1) % self.n)
            self.buf.write(kk, self.q, None)
            self.buf.write((idx - 1) % self.n, hit[0], None)
            self.buf.write(idx, v, idx)
            self.k = kk
            self.ell = idx
            self.size = 3
            self.stats.window_points += 2
            self.has_q_bottom = True
        else:
            self.buf.write(idx, v, idx)
            self.k = self.ell = idx
            self.size = 1
        self.stats.pushes += 1
        self.prev = v
        self.phi = self.psi

    def _case32(self, v: Pt, idx: int, top: Pt, last_popped: Pt):
        """Top dropped below the current angle: window on the popped edge."""
        self.stats.case32 += 1
        if self.windows:
            hit = ray_hit(self.pi, v, Seg(top, last_popped))
            if hit is None:
                raise InvariantViolation("Case 3.2 window not found on the popped edge")
            w = hit[0]
            if w == top or w == last_popped:
                raise DegenerateInput("Case 3.2 window degenerates to a stack point")
            self.push_phi(w)
        self.push_and_proceed(v, idx)

    # -- main loop ----------------------------------------------------------

    def run(self) -> VisRegion:
        buf, pi, n = self.buf, self.pi, self.n
        snapshot = buf.vertices()
        if point_in_polygon(snapshot, pi) <= 0:
            raise DegenerateInput("query point not strictly inside the polygon")
        self.theta, self.q = first_hit_horizontal(snapshot, pi)
        theta = self.theta

        with self.meter.alloc(_AUX_CELLS):
            self.p_theta = buf.read(theta)
            self.start_vertex = buf.read((theta + 1) % n)
            self.k = self.ell = (theta + 1) % n
            self.size = 1
            self.prev = self.start_vertex
            self.phi = 0.0
            self.psi = 0.0
            self.mode = _NORMAL
            self.has_q_bottom = False
            self.cur_pos = 1
            # angle subtended between q and the start vertex; the ray
            # direction sits at -delta, the sweep cap at 2*pi - delta
            self.delta = unsigned_angle(self.q, pi, self.start_vertex)
            self.ceil_angle = 2.0 * math.pi - self.delta

            pos = 1
            while pos <= n - 1:
                self.cur_pos = pos
                idx = (theta + 1 + pos) % n
                v = self.p_theta if idx == theta else buf.read(idx)
                self.psi += signed_turn(pi, self.prev, v)
                if self.psi < self.stats.min_psi:
                    self.stats.min_psi = self.psi
                    if self.psi < -1e-12:
                        self.stats.neg_psi_seen = True
                self.stats.i_advances += 1

                if self.mode == _NORMAL and winding_delta(pi, self.prev, v) == 1:
                    c = h_cross_point(pi, self.prev, v)
                    if c is None or c.x <= self.q.x:
                        raise DegenerateInput("boundary re-crosses the ray at q")
                    self.stats.ceiling_hits += 1
                    if self.windows:
                        self.push_phi(c)
                    self.phi = self.ceil_angle
                    self.mode = _CEIL
                    self.only_proceed(v)
                    pos += 1
                    continue

                if self.mode == _CEIL:
                    if winding_delta(pi, self.prev, v) == -1:
                        self.mode = _NORMAL  # dropped back below the ray
                    else:
                        self.only_proceed(v)
                        pos += 1
                        continue

                if self.mode == _SCAN:
                    top = self.top_point()
                    if angle_gt(self.psi, self.phi, pi, top, v):
                        hit = ray_hit(pi, top, Seg(self.prev, v))
                        if hit is None or hit[1] <= 1:
                            raise InvariantViolation(
                                "scan exit without a portal crossing beyond the top")
                        if self.windows:
                            self.push_phi(hit[0])
                        self.push_and_proceed(v, idx)
                        self.stats.case1 += 1  # re-entry vertex handled as Case 1
                        self.mode = _NORMAL
                    else:
                        self.only_proceed(v)
                    pos += 1
                    continue

                case = self.dispatch_case(v)
                if case == 1:
                    self.stats.case1 += 1
                    self.push_and_proceed(v, idx)
                elif case == 2:
                    self.handle_case2(v)
                else:
                    self.handle_case3(v, idx)
                pos += 1

            if self.mode == _CEIL:
                raise InvariantViolation("traversal ended above the ray")
            if self.mode == _SCAN:
                # closing edge p_theta -> q seals the hidden tail
                top = self.top_point()
                hit = ray_hit(pi, top, Seg(self.prev, self.q))
                if hit is None or hit[1] <= 1:
                    raise InvariantViolation("hidden tail never re-crosses toward q")
                if self.windows:
                    self.push_phi(hit[0])

            return self._emit()

    def _emit(self) -> VisRegion:
        region = VisRegion()

        def emit(p: Pt, tag: str, index: Optional[int]):
            region.append(p, tag, index)
            if self.sink is not None:
                self.sink.emit(p, tag, index)

        if self.windows and not self.has_q_bottom:
            emit(self.q, TAG_WINDOW, None)
        for s in range(self.size):
            cell = (self.k + s) % self.n
            p = self.buf.read(cell)
            m = self.buf.meta(cell)
            emit(p, TAG_VERTEX if m is not None else TAG_WINDOW, m)
        return region


def run(buf: PolygonBuffer, pi: Pt, meter: Optional[AuxMeter] = None, sink=None,
        windows: bool = True) -> VisRegion:
    """Compute the visibility polygon of pi, destroying the buffer contents."""
    return InplaceVisibility(buf, pi, meter=meter, sink=sink, windows=windows).run()


def run_with_stats(buf: PolygonBuffer, pi: Pt, meter: Optional[AuxMeter] = None,
                   sink=None, windows: bool = True):
    algo = InplaceVisibility(buf, pi, meter=meter, sink=sink, windows=windows)
    region = algo.run()
    return region, algo.stats
