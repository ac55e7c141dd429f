"""Brute-force reference implementations and test-instance generation.

The oracles are deliberately unconstrained in workspace and use interval
subtraction over exact rationals rather than the production algorithms'
angular sweep, so they share no case logic with them beyond the geometric
predicates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .geom_core import (CCW, COLLINEAR, CW, DegenerateInput,
                        InvariantViolation, Pt, Seg, first_hit_horizontal,
                        orient, point_in_polygon, point_on_segment,
                        segment_inside)
from .region import TAG_VERTEX, TAG_WINDOW, RegionPoint, VisRegion, canonicalize
from .workspace import PolygonView


class GenerationFailure(Exception):
    """The generator could not produce a valid polygon within its retry budget."""


# ---------------------------------------------------------------------------
# point visibility


def _shadow_candidates(pi: Pt, a: Pt, b: Pt, c: Pt) -> Optional[Fraction]:
    """Param on segment ab where the forward ray pi->c crosses its line."""
    r_x, r_y = c.x - pi.x, c.y - pi.y
    s_x, s_y = b.x - a.x, b.y - a.y
    den = r_x * s_y - r_y * s_x
    if den == 0:
        return None
    t = ((a.x - pi.x) * s_y - (a.y - pi.y) * s_x) / den
    if t < 0:
        return None
    u = ((a.x - pi.x) * r_y - (a.y - pi.y) * r_x) / den
    return u


def _blocked(pi: Pt, x: Pt, c: Pt, d: Pt) -> bool:
    """Does segment pi->x properly cross segment cd?"""
    d1 = orient(pi, x, c)
    d2 = orient(pi, x, d)
    if d1 * d2 >= 0:
        return False
    d3 = orient(c, d, pi)
    d4 = orient(c, d, x)
    return d3 * d4 < 0


def _subtract(intervals: List[Tuple[Fraction, Fraction]],
              lo: Fraction, hi: Fraction) -> List[Tuple[Fraction, Fraction]]:
    out = []
    for (a, b) in intervals:
        if hi <= a or b <= lo:
            out.append((a, b))
            continue
        if a < lo:
            out.append((a, lo))
        if hi < b:
            out.append((hi, b))
    return out


def _visible_pieces(pi: Pt, a: Pt, b: Pt,
                    occluders: Sequence[Tuple[Pt, Pt]]) -> List[Tuple[Fraction, Fraction]]:
    """Visible parameter intervals of target segment ab from pi.

    Subtracts the shadow each occluder casts on ab.  Shadow bounds come from
    the rays through the occluder endpoints; every candidate sub-interval is
    verified by an exact midpoint blocking test, which keeps the logic
    independent of orientation case analysis.
    """
    o_ab = orient(pi, a, b)
    if o_ab == COLLINEAR:
        raise DegenerateInput("viewpoint collinear with a target edge")
    intervals: List[Tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1))]
    for (c, d) in occluders:
        if not intervals:
            break
        if (c == a and d == b) or (c == b and d == a):
            continue
        # cheap exact cone rejection: both occluder endpoints strictly outside
        # the wedge spanned by pi->a and pi->b on the same side
        lo_pt, hi_pt = (a, b) if o_ab == CCW else (b, a)
        if orient(pi, lo_pt, c) == CW and orient(pi, lo_pt, d) == CW:
            continue
        if orient(pi, hi_pt, c) == CCW and orient(pi, hi_pt, d) == CCW:
            continue
        cand = {Fraction(0), Fraction(1)}
        for p in (c, d):
            if p == pi:
                raise DegenerateInput("viewpoint on the boundary")
            u = _shadow_candidates(pi, a, b, p)
            if u is not None and 0 < u < 1:
                cand.add(u)
        cuts = sorted(cand)
        for k in range(len(cuts) - 1):
            mid = (cuts[k] + cuts[k + 1]) / 2
            x = Pt(a.x + mid * (b.x - a.x), a.y + mid * (b.y - a.y))
            if _blocked(pi, x, c, d):
                intervals = _subtract(intervals, cuts[k], cuts[k + 1])
                if not intervals:
                    break
    return intervals


def naive_visibility_polygon(poly, pi: Pt, sink=None) -> VisRegion:
    """Exact visibility polygon of an interior point, assembled edge by edge.

    The boundary is cut at the first horizontal-ray hit q and walked once;
    every edge contributes its visible sub-segments in order.
    """
    verts = poly.vertices() if hasattr(poly, "vertices") else list(poly)
    n = len(verts)
    if point_in_polygon(verts, pi) <= 0:
        raise DegenerateInput("query point not strictly inside the polygon")
    theta, q = first_hit_horizontal(verts, pi)

    occluders = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    # universe cut at q: q, p_{theta+1}, ..., p_theta, q
    chain: List[Tuple[Pt, Optional[int]]] = [(q, None)]
    for s in range(1, n + 1):
        idx = (theta + s) % n
        chain.append((verts[idx], idx))
    chain.append((q, None))

    region = VisRegion()

    def emit(point: Pt, tag: str, index: Optional[int]):
        if len(region) and region.records()[-1].point == point:
            return
        region.append(point, tag, index)
        if sink is not None:
            sink.emit(point, tag, index)

    for e in range(len(chain) - 1):
        a, ai = chain[e]
        b, bi = chain[e + 1]
        pieces = _visible_pieces(pi, a, b, occluders)
        for (lo, hi) in pieces:
            if lo == hi:
                continue
            for (u, u_end) in ((lo, False), (hi, True)):
                if u == 0:
                    emit(a, TAG_VERTEX if ai is not None else TAG_WINDOW, ai)
                elif u == 1:
                    emit(b, TAG_VERTEX if bi is not None else TAG_WINDOW, bi)
                else:
                    p = Pt(a.x + u * (b.x - a.x), a.y + u * (b.y - a.y))
                    emit(p, TAG_WINDOW, None)
    return region


def naive_weak_visible(poly, e: Seg, x: Pt, m: int = 1024) -> bool:
    """Sampled weak visibility: is x seen from at least one of m+1 points on e?

    One-sided error: visibility through a window thinner than the sample
    spacing can be missed, so callers keep test points away from computed
    boundaries.
    """
    a, b = e
    for i in range(m + 1):
        t = Fraction(i, m)
        y = Pt(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        if y == x:
            return True
        if segment_inside(poly, Seg(y, x)):
            return True
    return False


# ---------------------------------------------------------------------------
# minimum link path (classic way)


def _boundary_arc(verts: Sequence[Pt], u: Pt, v: Pt) -> List[Pt]:
    """CCW arc of the polygon boundary from u to v (both on the boundary)."""
    n = len(verts)

    def locate(p: Pt) -> int:
        for i in range(n):
            if point_on_segment(p, verts[i], verts[(i + 1) % n]) and p != verts[(i + 1) % n]:
                return i
        raise InvariantViolation("arc endpoint not on the boundary")

    ia = locate(u)
    ib = locate(v)
    arc = [u]
    j = (ia + 1) % n
    if ia != ib:
        while True:
            arc.append(verts[j])
            if j == ib:
                break
            j = (j + 1) % n
    if arc[-1] != v:
        arc.append(v)
    return arc


def _region_windows(verts: Sequence[Pt], region_pts: Sequence[Pt]) -> List[Tuple[Pt, Pt]]:
    """Boundary edges of a region that do not lie on the polygon boundary."""
    n = len(verts)
    wins = []
    m = len(region_pts)
    for i in range(m):
        u = region_pts[i]
        w = region_pts[(i + 1) % m]
        on_poly = False
        for j in range(n):
            a, b = verts[j], verts[(j + 1) % n]
            if point_on_segment(u, a, b) and point_on_segment(w, a, b):
                on_poly = True
                break
        if not on_poly:
            wins.append((u, w))
    return wins


def _see_point_from_edge(verts: Sequence[Pt], a: Pt, b: Pt, x: Pt) -> Optional[Pt]:
    """A point of segment ab that sees x inside the polygon, None if blocked.

    Exact: computes the visible pieces of ab from x and returns a midpoint.
    """
    n = len(verts)
    occ = [(verts[i], verts[(i + 1) % n]) for i in range(n)]
    try:
        pieces = _visible_pieces(x, a, b, occ)
    except DegenerateInput:
        pieces = []
        # fall back to a dense scan when x is collinear with the chord
        for i in range(257):
            t = Fraction(i, 256)
            y = Pt(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
            if y != x and segment_inside(verts, Seg(y, x)):
                return y
        return None
    for (lo, hi) in pieces:
        if lo < hi:
            mid = (lo + hi) / 2
            y = Pt(a.x + mid * (b.x - a.x), a.y + mid * (b.y - a.y))
            if segment_inside(verts, Seg(y, x)):
                return y
    return None


@dataclass
class LinkPath:
    points: List[Pt]

    @property
    def k(self) -> int:
        return len(self.points) - 1


def classic_min_link(poly, s: Pt, t: Pt, max_links: Optional[int] = None) -> LinkPath:
    """Minimum link path by iterated weak-visibility expansion.

    Region 1 is the visibility polygon of s; each further region is the weak
    visibility polygon of the window chord that separates t's pocket,
    computed inside that pocket.  Unconstrained workspace.
    """
    from .weak_vis import weak_visibility_polygon  # deferred: oracle <-> algo split

    verts = poly.vertices() if hasattr(poly, "vertices") else list(poly)
    if s == t:
        raise DegenerateInput("coincident endpoints")
    if segment_inside(verts, Seg(s, t)):
        return LinkPath([s, t])

    cap = max_links if max_links is not None else len(verts)
    region = canonicalize(naive_visibility_polygon(verts, s).points())
    sub_verts: Sequence[Pt] = verts
    chords: List[Tuple[Pt, Pt, Sequence[Pt]]] = []  # (u, w, pocket containing them)
    k = 1
    while point_in_polygon(region, t) < 0:
        k += 1
        if k > cap:
            raise InvariantViolation("link iteration cap exceeded")
        pocket = None
        chord = None
        for (u, w) in _region_windows(sub_verts, region):
            cand = _boundary_arc(sub_verts, w, u)
            if len(cand) < 3:
                continue
            if point_in_polygon(cand, t) > 0:
                pocket = cand
                chord = (u, w)
                break
        if pocket is None:
            raise InvariantViolation("no pocket contains the target")
        chords.append((chord[0], chord[1], pocket))
        pview = PolygonView(pocket, validate=False)
        chord_edge = len(pocket) - 1  # closing edge pocket[-1] -> pocket[0]
        wr = weak_visibility_polygon(pview, chord_edge)
        region = canonicalize(wr.points())
        sub_verts = pocket

    # backward path construction through the recorded chords
    bends: List[Pt] = []
    target = t
    for (u, w, pocket) in reversed(chords):
        y = _see_point_from_edge(pocket, u, w, target)
        if y is None:
            raise InvariantViolation("chord lost sight of the target")
        bends.append(y)
        target = y
    path = [s] + list(reversed(bends)) + [t]
    return LinkPath(path)


# ---------------------------------------------------------------------------
# instance generation

MODE_RANDOM_2OPT = "RANDOM_2OPT"
MODE_STAIRCASE = "STAIRCASE"
MODE_SPIRAL = "SPIRAL"
MODE_COMB = "COMB"


@dataclass
class GeneratorConfig:
    n: int
    seed: int = 0
    mode: str = MODE_RANDOM_2OPT


def generate(config: GeneratorConfig) -> PolygonView:
    if config.n < 4:
        raise GenerationFailure("need n >= 4")
    builders = {
        MODE_RANDOM_2OPT: _gen_random_2opt,
        MODE_STAIRCASE: _gen_staircase,
        MODE_SPIRAL: _gen_spiral,
        MODE_COMB: _gen_comb,
    }
    if config.mode not in builders:
        raise GenerationFailure(f"unknown mode {config.mode!r}")
    rng = random.Random((config.seed, config.mode, config.n).__repr__())
    for attempt in range(24):
        try:
            verts = builders[config.mode](config.n, rng)
            view = PolygonView(verts)
        except DegenerateInput:
            continue
        if _general_position_ok(verts):
            return view
    raise GenerationFailure(
        f"no valid polygon after retries (mode={config.mode}, n={config.n}, seed={config.seed})")


def _general_position_ok(verts: Sequence[Pt]) -> bool:
    n = len(verts)
    if len({v.key() for v in verts}) != n:
        return False
    for i in range(n):
        if orient(verts[i], verts[(i + 1) % n], verts[(i + 2) % n]) == COLLINEAR:
            return False
    return True


def _gen_random_2opt(n: int, rng: random.Random) -> List[Pt]:
    """Untangle a random vertex permutation by repeated crossing-edge swaps."""
    grid = 10**6
    pts = set()
    while len(pts) < n:
        pts.add((rng.randrange(grid), rng.randrange(grid)))
    verts = [Pt(x, y) for (x, y) in pts]
    rng.shuffle(verts)

    swaps = 0
    limit = 24 * n * n
    while swaps < limit:
        crossing = _find_crossing(verts)
        if crossing is None:
            break
        i, j = crossing
        verts[i + 1:j + 1] = reversed(verts[i + 1:j + 1])
        swaps += 1
    else:
        raise DegenerateInput("2-opt did not converge")
    if _find_crossing(verts) is not None:
        raise DegenerateInput("2-opt did not converge")
    area2 = sum(verts[i].x * verts[(i + 1) % n].y - verts[i].y * verts[(i + 1) % n].x
                for i in range(n))
    if area2 < 0:
        verts.reverse()
    return verts


def _find_crossing(verts: Sequence[Pt]) -> Optional[Tuple[int, int]]:
    n = len(verts)
    boxes = []
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        boxes.append((min(a.fx, b.fx), max(a.fx, b.fx), min(a.fy, b.fy), max(a.fy, b.fy)))
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        bi = boxes[i]
        for j in range(i + 1, n):
            if (j == i + 1) or (i == 0 and j == n - 1):
                continue
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            c, d = verts[j], verts[(j + 1) % n]
            d1 = orient(a, b, c)
            d2 = orient(a, b, d)
            d3 = orient(c, d, a)
            d4 = orient(c, d, b)
            if d1 * d2 < 0 and d3 * d4 < 0:
                return (i, j)
            if d1 == 0 and d2 == 0:
                return (i, j)  # collinear overlap: also needs a swap
            if (d1 == 0 and point_on_segment(c, a, b)) or \
               (d2 == 0 and point_on_segment(d, a, b)) or \
               (d3 == 0 and point_on_segment(a, c, d)) or \
               (d4 == 0 and point_on_segment(b, c, d)):
                return (i, j)
    return None


def _jitter_fill(verts: List[Pt], n: int, rng: random.Random) -> List[Pt]:
    """Pad a polygon to exactly n vertices with tiny non-collinear notches."""
    while len(verts) < n:
        m = len(verts)
        lengths = [(float(abs(verts[(i + 1) % m].x - verts[i].x)) +
                    float(abs(verts[(i + 1) % m].y - verts[i].y)), i) for i in range(m)]
        _, i = max(lengths)
        a, b = verts[i], verts[(i + 1) % m]
        t = Fraction(rng.randint(40, 60), 100)
        mid = Pt(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        dx, dy = b.x - a.x, b.y - a.y
        # inward normal for a CCW boundary is the left normal
        eps = Fraction(1, 50 + rng.randint(0, 50))
        notch = Pt(mid.x - dy * eps / 8, mid.y + dx * eps / 8)
        verts = verts[:i + 1] + [notch] + verts[i + 1:]
    return verts


def _gen_staircase(n: int, rng: random.Random) -> List[Pt]:
    """Staircase corridor with alternating horizontal and vertical arms."""
    turns = max(1, min((n - 4) // 2, 9))
    w = 2  # corridor width
    run = 5
    lower = [Pt(0, 0)]
    upper = [Pt(0, w)]
    x, y = 0, 0
    horizontal = True
    for arm in range(turns + 1):
        if horizontal:
            x += run
            lower.append(Pt(x, y))
            upper.append(Pt(x - run + w, y + w) if arm < turns else Pt(x, y + w))
        else:
            y += run
            lower.append(Pt(x, y))
            upper.append(Pt(x - w, y - run + w + w) if arm < turns else Pt(x, y))
        horizontal = not horizontal
    # build the boundary: lower chain out, upper chain back
    verts = lower + list(reversed(upper))
    area2 = sum(verts[i].x * verts[(i + 1) % len(verts)].y -
                verts[i].y * verts[(i + 1) % len(verts)].x for i in range(len(verts)))
    if area2 < 0:
        verts.reverse()
    verts = _jitter_fill(verts, n, rng)
    return verts


def _gen_spiral(n: int, rng: random.Random) -> List[Pt]:
    """Rectilinear spiral corridor; the boundary winds past the ray twice."""
    loops = 2
    gap = 4
    outer = 12 * gap
    inner_wall: List[Pt] = []
    outer_wall: List[Pt] = []
    r = outer
    # inward wall: right, top, left, bottom per loop with shrinking radius
    x0, y0, x1, y1 = -r, -r, r, r
    for k in range(loops):
        outer_wall += [Pt(x1, y0), Pt(x1, y1), Pt(x0, y1), Pt(x0, y0 + gap)]
        x1 -= gap
        y0 += 2 * gap
        y1 -= gap
        x0 += gap
    # connect inward end to the return wall
    cx = (x0 + x1) // 2
    outer_wall.append(Pt(x1, y0))
    inner = [Pt(p.x + (gap // 2 if p.x < cx else -(gap // 2)),
                p.y + (gap // 2 if p.y < 0 else -(gap // 2)))
             for p in reversed(outer_wall[:-1])]
    verts = outer_wall + inner
    area2 = sum(verts[i].x * verts[(i + 1) % len(verts)].y -
                verts[i].y * verts[(i + 1) % len(verts)].x for i in range(len(verts)))
    if area2 < 0:
        verts.reverse()
    verts = _jitter_fill(verts, max(n, len(verts)), rng)
    return verts


def _gen_comb(n: int, rng: random.Random) -> List[Pt]:
    """Rectangle with teeth hanging from the top edge; forces Case 2 skips."""
    teeth = max(1, n // 4)
    w_tot = 4 * teeth + 4
    h = 6
    low = 1
    verts = [Pt(0, 0), Pt(w_tot, 0), Pt(w_tot, h)]
    x = w_tot - 2
    for _ in range(teeth):
        verts.append(Pt(x, low + Fraction(rng.randint(0, 20), 41)))
        verts.append(Pt(x - 2, h))
        x -= 4
    verts.append(Pt(0, h))
    verts = _jitter_fill(verts, n, rng)
    return verts


def comb_center(view: PolygonView) -> Pt:
    """Interior query point below the teeth of a comb polygon."""
    verts = view.vertices()
    xs = [v.fx for v in verts]
    return Pt(Fraction(int(round((min(xs) + max(xs)) / 2 * 64)) * 2 + 1, 128), Fraction(1, 2))


def generic_interior_point(poly, rng: random.Random, max_tries: int = 400) -> Pt:
    """Random interior point in general position w.r.t. the vertices.

    Rejects points on a vertex-vertex line or with a vertex on the rightward
    horizontal ray, so every algorithm dispatch is tie-free.
    """
    verts = poly.vertices() if hasattr(poly, "vertices") else list(poly)
    xs = [v.x for v in verts]
    ys = [v.y for v in verts]
    lox, hix = min(xs), max(xs)
    loy, hiy = min(ys), max(ys)
    for _ in range(max_tries):
        px = lox + Fraction(rng.randint(1, 4095), 4096) * (hix - lox)
        py = loy + Fraction(rng.randint(1, 4095), 4096) * (hiy - loy)
        p = Pt(px, py)
        if point_in_polygon(verts, p) <= 0:
            continue
        if not _generic_for(verts, p):
            continue
        return p
    raise GenerationFailure("no generic interior point found")


def _generic_for(verts: Sequence[Pt], p: Pt) -> bool:
    n = len(verts)
    for v in verts:
        if v.y == p.y and v.x >= p.x:
            return False
    for i in range(n):
        for j in range(i + 1, n):
            if orient(p, verts[i], verts[j]) == COLLINEAR:
                return False
    return True
