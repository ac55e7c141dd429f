"""Exact planar predicates and constructions shared by all algorithms.

Coordinates are exact rationals (``fractions.Fraction``).  Every predicate
that feeds a branch decision (orientation, intersection, containment) is
evaluated exactly; a floating filter is used first so the exact path only
runs near degeneracy.  Constructed points (ray hits, window points) stay
rational, so chained predicates remain exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Tuple, Union

Coord = Union[int, float, str, Fraction]

CCW = 1
COLLINEAR = 0
CW = -1


class DegenerateInput(Exception):
    """Input violates the general-position assumptions of an operation."""


class InvariantViolation(Exception):
    """A structural invariant the algorithms rely on was broken (internal bug)."""


def _frac(v: Coord) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DegenerateInput("non-finite coordinate")
        return Fraction(v)  # exact binary value of the float
    raise TypeError(f"bad coordinate type: {type(v)!r}")


class Pt:
    """Immutable exact point.  Floating mirrors fx/fy back the fast filters."""

    __slots__ = ("x", "y", "fx", "fy")

    def __init__(self, x: Coord, y: Coord):
        fx = _frac(x)
        fy = _frac(y)
        object.__setattr__(self, "x", fx)
        object.__setattr__(self, "y", fy)
        object.__setattr__(self, "fx", float(fx))
        object.__setattr__(self, "fy", float(fy))

    def __setattr__(self, *a):
        raise AttributeError("Pt is immutable")

    def __eq__(self, other):
        return isinstance(other, Pt) and self.x == other.x and self.y == other.y

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.x, self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"Pt({self.x}, {self.y})"

    def key(self) -> Tuple[Fraction, Fraction]:
        return (self.x, self.y)


class Seg(NamedTuple):
    a: Pt
    b: Pt


# Relative float filter.  Rounding Fraction->float costs <= 2^-53 per value;
# 1e-10 leaves orders of magnitude of slack, so the exact branch only runs
# genuinely close to zero.
_FILTER = 1e-10


def orient(a: Pt, b: Pt, c: Pt) -> int:
    """Sign of the doubled signed area of triangle abc: CCW, CW or COLLINEAR."""
    detl = (a.fx - c.fx) * (b.fy - c.fy)
    detr = (a.fy - c.fy) * (b.fx - c.fx)
    det = detl - detr
    scale = abs(detl) + abs(detr)
    if abs(det) > _FILTER * scale:
        return CCW if det > 0.0 else CW
    d = (a.x - c.x) * (b.y - c.y) - (a.y - c.y) * (b.x - c.x)
    if d > 0:
        return CCW
    if d < 0:
        return CW
    return COLLINEAR


def dist2(a: Pt, b: Pt) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def signed_turn(pivot: Pt, frm: Pt, to: Pt) -> float:
    """Signed angle swept at `pivot` going from direction `frm` to `to`.

    Magnitude is the unsigned angle in [0, pi]; the sign is + for an
    anticlockwise sweep about the pivot.  Exact orientation decides the sign
    so accumulated comparisons can be re-resolved exactly at ties.
    """
    if frm == pivot or to == pivot:
        raise DegenerateInput("angle endpoint coincides with pivot")
    o = orient(pivot, frm, to)
    ux, uy = frm.fx - pivot.fx, frm.fy - pivot.fy
    vx, vy = to.fx - pivot.fx, to.fy - pivot.fy
    dot = ux * vx + uy * vy
    cross = ux * vy - uy * vx
    ang = math.atan2(abs(cross), dot)
    if o == COLLINEAR:
        if dot > 0:
            return 0.0
        raise DegenerateInput("turn through exactly pi (pivot on segment line)")
    return ang if o == CCW else -ang


def unsigned_angle(a: Pt, pivot: Pt, b: Pt) -> float:
    """Unsigned angle a-pivot-b in [0, pi]."""
    if a == pivot or b == pivot:
        raise DegenerateInput("angle endpoint coincides with pivot")
    ux, uy = a.fx - pivot.fx, a.fy - pivot.fy
    vx, vy = b.fx - pivot.fx, b.fy - pivot.fy
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


ANGLE_TIE = 1e-9


def angle_gt(psi: float, phi: float, pivot: Pt, top: Pt, v: Pt) -> bool:
    """Compare cumulative angles psi > phi with exact tie resolution.

    Within the tie tolerance the comparison falls back to the exact
    orientation of v against the ray pivot->top; exact collinearity there is
    a genuine degeneracy.
    """
    if abs(psi - phi) >= ANGLE_TIE:
        return psi > phi
    o = orient(pivot, top, v)
    if o == CCW:
        return True
    if o == CW:
        return False
    raise DegenerateInput("vertex exactly on the ray through the stack top")


def point_on_segment(p: Pt, a: Pt, b: Pt) -> bool:
    """Closed containment of p in segment ab."""
    if orient(a, b, p) != COLLINEAR:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def line_intersect(a: Pt, b: Pt, c: Pt, d: Pt) -> Optional[Pt]:
    """Intersection of lines ab and cd, None if parallel."""
    r_x, r_y = b.x - a.x, b.y - a.y
    s_x, s_y = d.x - c.x, d.y - c.y
    den = r_x * s_y - r_y * s_x
    if den == 0:
        return None
    t = ((c.x - a.x) * s_y - (c.y - a.y) * s_x) / den
    return Pt(a.x + t * r_x, a.y + t * r_y)


def seg_intersect(s1: Seg, s2: Seg) -> Optional[Pt]:
    """Proper interior intersection point of two segments, None otherwise.

    Endpoint touching returns None; overlapping collinear segments raise.
    """
    a, b = s1
    c, d = s2
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    if d1 == 0 and d2 == 0:
        # collinear: error only on a real 1-d overlap
        lo1, hi1 = sorted((a.key(), b.key()))
        lo2, hi2 = sorted((c.key(), d.key()))
        if max(lo1, lo2) < min(hi1, hi2):
            raise DegenerateInput("overlapping collinear segments")
        return None
    if d1 * d2 < 0 and d3 * d4 < 0:
        p = line_intersect(a, b, c, d)
        if p is None:  # pragma: no cover - guarded by orientation signs
            raise InvariantViolation("crossing segments with parallel lines")
        return p
    return None


def seg_touch(s1: Seg, s2: Seg) -> bool:
    """True when the closed segments share at least one point."""
    a, b = s1
    c, d = s2
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    for p, u, v in ((c, a, b), (d, a, b), (a, c, d), (b, c, d)):
        if point_on_segment(p, u, v):
            return True
    return False


def seg_param(a: Pt, b: Pt, p: Pt) -> Fraction:
    """Parameter of collinear point p on line ab (0 at a, 1 at b)."""
    dx = b.x - a.x
    if dx != 0:
        return (p.x - a.x) / dx
    dy = b.y - a.y
    if dy == 0:
        raise DegenerateInput("degenerate segment for parameterization")
    return (p.y - a.y) / dy


def ray_hit(origin: Pt, through: Pt, edge: Seg) -> Optional[Tuple[Pt, Fraction]]:
    """First intersection of the ray origin->through (t >= 0) with an edge.

    Returns (point, t) where t is the ray parameter in units of
    |through - origin|.  The points beyond `through` (t > 1) are included.
    Collinearity of the ray with the edge raises.
    """
    if origin == through:
        raise DegenerateInput("ray with coincident defining points")
    a, b = edge
    oa = orient(origin, through, a)
    ob = orient(origin, through, b)
    if oa == COLLINEAR and ob == COLLINEAR:
        raise DegenerateInput("ray collinear with edge")
    if oa == ob:
        return None
    r_x, r_y = through.x - origin.x, through.y - origin.y
    s_x, s_y = b.x - a.x, b.y - a.y
    den = r_x * s_y - r_y * s_x
    if den == 0:
        return None
    t = ((a.x - origin.x) * s_y - (a.y - origin.y) * s_x) / den
    u = ((a.x - origin.x) * r_y - (a.y - origin.y) * r_x) / den
    if t < 0 or u < 0 or u > 1:
        return None
    return Pt(origin.x + t * r_x, origin.y + t * r_y), t


def winding_delta(pi: Pt, a: Pt, b: Pt) -> int:
    """Signed crossing of directed edge ab with the open rightward ray from pi.

    +1 for an upward crossing at x > pi.x, -1 downward, 0 otherwise.  Uses
    the half-open rule so a vertex exactly on the ray is counted once.
    """
    if a.y <= pi.y < b.y and orient(a, b, pi) == CCW:
        return 1
    if b.y <= pi.y < a.y and orient(a, b, pi) == CW:
        return -1
    return 0


def h_cross_point(pi: Pt, a: Pt, b: Pt) -> Optional[Pt]:
    """Crossing point of edge ab with the horizontal line through pi, right of pi."""
    if (a.y - pi.y) * (b.y - pi.y) > 0 or a.y == b.y:
        return None
    t = (pi.y - a.y) / (b.y - a.y)
    x = a.x + t * (b.x - a.x)
    if x <= pi.x:
        return None
    return Pt(x, pi.y)


def point_in_polygon(vertices, p: Pt) -> int:
    """Exact location of p: 1 inside, 0 on the boundary, -1 outside."""
    n = len(vertices)
    inside = False
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if point_on_segment(p, a, b):
            return 0
        if winding_delta(p, a, b) != 0:
            inside = not inside
    return 1 if inside else -1


def segment_inside(poly, s: Seg) -> bool:
    """True iff segment s stays in the closed polygon.

    s must cross no edge properly and its midpoint must not be outside; both
    endpoints are expected inside or on the boundary.  O(n) scan.
    """
    a, b = s
    verts = _polygon_vertices(poly)
    n = len(verts)
    for i in range(n):
        c = verts[i]
        d = verts[(i + 1) % n]
        d1 = orient(a, b, c)
        d2 = orient(a, b, d)
        d3 = orient(c, d, a)
        d4 = orient(c, d, b)
        if d1 * d2 < 0 and d3 * d4 < 0:
            return False
    mid = Pt((a.x + b.x) / 2, (a.y + b.y) / 2)
    return point_in_polygon(verts, mid) >= 0


def first_hit_horizontal(poly, origin: Pt) -> Tuple[int, Pt]:
    """First boundary hit of the rightward horizontal ray from an interior point.

    Returns (edge index, hit point) where the hit lies strictly inside the
    edge.  Raises DegenerateInput when any vertex lies on the closed ray or a
    horizontal edge overlaps it, since the dispatch machinery downstream
    would face unresolvable ties.
    """
    verts = _polygon_vertices(poly)
    n = len(verts)
    for v in verts:
        if v.y == origin.y and v.x >= origin.x:
            raise DegenerateInput("horizontal ray through a polygon vertex")
    best = None
    best_edge = -1
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        hit = h_cross_point(origin, a, b)
        if hit is None:
            continue
        if best is None or hit.x < best.x:
            best = hit
            best_edge = i
    if best is None:
        raise DegenerateInput("horizontal ray escapes the polygon (origin outside?)")
    return best_edge, best


def _polygon_vertices(poly):
    """Accept either a PolygonView-like object or a plain vertex sequence."""
    if hasattr(poly, "vertices"):
        return poly.vertices()
    return list(poly)
