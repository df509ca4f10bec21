"""Exact planar primitives and straight-line drawings.

All coordinates are Fractions; nothing is ever rounded.  Points are
plain (x, y) tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Point = tuple[Fraction, Fraction]


class DegenerateConfiguration(ValueError):
    """A forbidden coincidence: tangency, triple point, vertex on an edge."""


def pt(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc."""
    d = cross(sub(b, a), sub(c, a))
    return (d > 0) - (d < 0)


def on_segment(a: Point, b: Point, q: Point) -> bool:
    """q lies on the closed segment ab (collinearity assumed checked)."""
    if orient(a, b, q) != 0:
        return False
    return (min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]))


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper interior crossing; shared endpoints do not count."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Point | None:
    """The proper crossing point of ab and cd, if there is one."""
    if not segments_cross(a, b, c, d):
        return None
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    t = cross(sub(c, a), s) / denom
    return (a[0] + t * r[0], a[1] + t * r[1])


def touching(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Any contact between ab and cd that is not a proper crossing."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return False
    if o1 == o2 == 0:  # collinear
        return (on_segment(a, b, c) or on_segment(a, b, d)
                or on_segment(c, d, a) or on_segment(c, d, b))
    for p, hits in ((c, o1), (d, o2)):
        if hits == 0 and on_segment(a, b, p):
            return True
    for p, hits in ((a, o3), (b, o4)):
        if hits == 0 and on_segment(c, d, p):
            return True
    return False


def angle_key(v: Point):
    """Sortable key giving counterclockwise order from the +x axis."""
    if v == (0, 0):
        raise DegenerateConfiguration("zero direction vector")
    upper = v[1] > 0 or (v[1] == 0 and v[0] > 0)
    return (0 if upper else 1, Fraction(0) if v[0] == 0 else Fraction(v[1], v[0]))


def ccw_sorted(vectors):
    return sorted(vectors, key=angle_key)


def ccw_between(a: Point, t: Point, b: Point) -> bool:
    """Rotating counterclockwise from a, is t met strictly before b?"""
    ka, kt, kb = angle_key(a), angle_key(t), angle_key(b)
    if ka == kt or kt == kb:
        return False
    if ka < kb:
        return ka < kt < kb
    return kt > ka or kt < kb


@dataclass(frozen=True)
class SLDrawing:
    """Straight-line drawing: exact points and index-pair edges."""

    points: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise DegenerateConfiguration("duplicate points")
        for (u, v) in self.edges:
            if u == v:
                raise DegenerateConfiguration("loop edge")

    def segment(self, e: int) -> tuple[Point, Point]:
        u, v = self.edges[e]
        return self.points[u], self.points[v]

    def check_general_position(self):
        """No vertex inside an edge, no collinear overlap, no triple point."""
        for i, (a, b) in enumerate(map(self.segment, range(len(self.edges)))):
            for q, qi in zip(self.points, range(len(self.points))):
                if qi in self.edges[i]:
                    continue
                if on_segment(a, b, q):
                    raise DegenerateConfiguration(
                        f"point {qi} lies on edge {self.edges[i]}")
        hits: dict[Point, set[int]] = {}
        for i in range(len(self.edges)):
            a, b = self.segment(i)
            for j in range(i + 1, len(self.edges)):
                c, d = self.segment(j)
                shared = set(self.edges[i]) & set(self.edges[j])
                if shared:
                    if orient(a, b, c) == 0 and orient(a, b, d) == 0:
                        raise DegenerateConfiguration(
                            f"edges {self.edges[i]} and {self.edges[j]} overlap")
                    continue
                z = segment_intersection(a, b, c, d)
                if z is None:
                    if touching(a, b, c, d):
                        raise DegenerateConfiguration(
                            f"edges {self.edges[i]} and {self.edges[j]} touch")
                    continue
                hits.setdefault(z, set()).update((i, j))
        for z, eids in hits.items():
            if len(eids) > 2:
                raise DegenerateConfiguration(f"three edges meet at {z}")

    def crossing_count(self, e: int) -> int:
        a, b = self.segment(e)
        n = 0
        for j in range(len(self.edges)):
            if j == e or set(self.edges[e]) & set(self.edges[j]):
                continue
            c, d = self.segment(j)
            if segments_cross(a, b, c, d):
                n += 1
        return n

    def to_dict(self) -> dict:
        return {
            "points": [[p[0].numerator, p[0].denominator,
                        p[1].numerator, p[1].denominator] for p in self.points],
            "edges": [list(e) for e in self.edges],
        }

    @staticmethod
    def from_dict(data: dict) -> "SLDrawing":
        pts = tuple((Fraction(a, b), Fraction(c, d))
                    for a, b, c, d in data["points"])
        return SLDrawing(pts, tuple((int(u), int(v)) for u, v in data["edges"]))


def sl_can_insert(d: SLDrawing, k: int, u: int, v: int) -> bool:
    """Can the straight segment uv be added while staying k-plane?"""
    if u == v:
        raise DegenerateConfiguration("loop candidate")
    a, b = d.points[u], d.points[v]
    for qi, q in enumerate(d.points):
        if qi not in (u, v) and on_segment(a, b, q):
            raise DegenerateConfiguration(
                f"candidate ({u},{v}) passes through point {qi}")
    crossings = 0
    for e, (p, q) in enumerate(d.edges):
        if {u, v} & {p, q}:
            continue
        c, dd = d.segment(e)
        if segments_cross(a, b, c, dd):
            if d.crossing_count(e) >= k:
                return False
            crossings += 1
            if crossings > k:
                return False
    return True


def sl_is_saturated(d: SLDrawing, k: int):
    """No admissible segment between non-adjacent points exists."""
    present = {frozenset(e) for e in d.edges}
    for e in range(len(d.edges)):
        if d.crossing_count(e) > k:
            return False, ("not-k-plane", e)
    npts = len(d.points)
    for u in range(npts):
        for v in range(u + 1, npts):
            if frozenset((u, v)) in present:
                continue
            if sl_can_insert(d, k, u, v):
                return False, (u, v)
    return True, None
