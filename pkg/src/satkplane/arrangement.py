"""From exact polyline drawings to validated planarizations.

Edges are polylines with Fraction coordinates.  All pairwise
intersections are computed exactly; crossings become degree-4 nodes,
rotations come from exact direction vectors, and for disconnected
drawings the outward cycle and host face of every component are found
by ray casting.  A drawing on a cylinder is handled through its
universal cover: the input lives in a vertical strip and every edge is
intersected against all integer translates of the others.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import (DegenerateConfiguration, Point, angle_key, cross,
                       on_segment, orient, segment_intersection, sub,
                       touching)
from .planar import (CROSSING, OUTER, VERTEX, Edge, Node, Planarization,
                     Segment, build_planarization, dart, dart_end,
                     dart_segment, reverse)


def _shift(p: Point, delta: Fraction) -> Point:
    return (p[0] + delta, p[1])


def _param_on(a: Point, b: Point, z: Point) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx != 0:
        return (z[0] - a[0]) / dx
    return (z[1] - a[1]) / dy


class _EdgePath:
    def __init__(self, eid, u, v, pts):
        self.eid = eid
        self.u = u
        self.v = v
        self.pts = [(_frac(p[0]), _frac(p[1])) for p in pts]
        if len(self.pts) < 2:
            raise ValueError(f"edge {eid}: polyline needs two points")
        for a, b in zip(self.pts, self.pts[1:]):
            if a == b:
                raise DegenerateConfiguration(f"edge {eid}: repeated point {a}")
        for a, b, c in zip(self.pts, self.pts[1:], self.pts[2:]):
            if orient(a, b, c) == 0 and (c[0] - b[0]) * (b[0] - a[0]) \
                    + (c[1] - b[1]) * (b[1] - a[1]) < 0:
                raise DegenerateConfiguration(f"edge {eid}: backtracking at {b}")

    def subsegs(self):
        for i, (a, b) in enumerate(zip(self.pts, self.pts[1:])):
            yield i, a, b


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def arrange(vertices: dict[int, Point], paths: dict, period=None) -> Planarization:
    """Build the planarization of a polyline drawing.

    vertices: vertex id -> point.  paths: edge id -> (u, v, [points]),
    the first and last point being the endpoint positions.  With a
    period the drawing lives on a cylinder of that circumference.
    """
    vpos = {vid: (_frac(p[0]), _frac(p[1])) for vid, p in vertices.items()}
    if len(set(vpos.values())) != len(vpos):
        raise DegenerateConfiguration("two vertices share a point")
    edges = {}
    for eid, (u, v, pts) in paths.items():
        ep = _EdgePath(eid, u, v, pts)
        if period is None:
            if ep.pts[0] != vpos[u] or ep.pts[-1] != vpos[v]:
                raise DegenerateConfiguration(f"edge {eid}: endpoints off vertices")
        else:
            if ep.pts[0] != vpos[u]:
                raise DegenerateConfiguration(f"edge {eid}: start off vertex")
            lift = ep.pts[-1][0] - vpos[v][0]
            if ep.pts[-1][1] != vpos[v][1] or lift % period != 0:
                raise DegenerateConfiguration(f"edge {eid}: end off vertex lift")
        edges[eid] = ep

    subs = []
    for eid in sorted(edges):
        for i, a, b in edges[eid].subsegs():
            subs.append((eid, i, a, b))

    if period is None:
        _check_vertices_clear(vpos, edges, subs)
        records = _intersect_plane(edges, subs, vpos)
    else:
        records = _intersect_cylinder(edges, subs, period)

    return _assemble(vpos, edges, records, period)


def _check_vertices_clear(vpos, edges, subs):
    for vid, p in vpos.items():
        for eid, i, a, b in subs:
            if not on_segment(a, b, p):
                continue
            ep = edges[eid]
            ok = (p == a and i == 0 and ep.u == vid) or \
                 (p == b and i == len(ep.pts) - 2 and ep.v == vid)
            if not ok:
                raise DegenerateConfiguration(
                    f"vertex {vid} touches the interior of edge {eid}")


def _allowed_contact(edges, s1, s2, p) -> bool:
    e1, i1, a1, b1 = s1
    e2, i2, a2, b2 = s2
    if p not in (a1, b1) or p not in (a2, b2):
        return False
    if e1 == e2 and abs(i1 - i2) == 1:
        return True  # common polyline corner
    ep1, ep2 = edges[e1], edges[e2]
    ends1 = {ep1.pts[0]: ep1.u, ep1.pts[-1]: ep1.v}
    ends2 = {ep2.pts[0]: ep2.u, ep2.pts[-1]: ep2.v}
    return p in ends1 and p in ends2 and ends1[p] == ends2[p]


def _intersect_plane(edges, subs, vpos):
    records = []
    byvalue = {}
    for i1 in range(len(subs)):
        e1, i, a1, b1 = subs[i1]
        for i2 in range(i1 + 1, len(subs)):
            e2, j, a2, b2 = subs[i2]
            if e1 == e2 and abs(i - j) <= 1:
                if i != j and touching(a1, b1, a2, b2):
                    shared = a2 if a2 in (a1, b1) else b2
                    # adjacent pieces may only meet at their corner
                    for q in (a2, b2):
                        if q != shared and on_segment(a1, b1, q):
                            raise DegenerateConfiguration(
                                f"edge {e1} touches itself near {q}")
                continue
            z = segment_intersection(a1, b1, c=a2, d=b2)
            if z is not None:
                key = z
                if key in byvalue:
                    raise DegenerateConfiguration(f"three strands meet at {z}")
                byvalue[key] = True
                records.append(((e1, i, _param_on(a1, b1, z)),
                                (e2, j, _param_on(a2, b2, z)), z))
                continue
            if touching(a1, b1, a2, b2):
                contacts = [q for q in (a2, b2) if on_segment(a1, b1, q)]
                contacts += [q for q in (a1, b1) if on_segment(a2, b2, q)]
                for q in contacts:
                    if not _allowed_contact(edges, subs[i1], subs[i2], q):
                        raise DegenerateConfiguration(
                            f"edges {e1} and {e2} touch at {q}")
    return records


def _intersect_cylinder(edges, subs, period):
    period = _frac(period)
    records = []
    seen_params: dict = {}
    for i1 in range(len(subs)):
        e1, i, a1, b1 = subs[i1]
        lo1 = min(a1[0], b1[0])
        hi1 = max(a1[0], b1[0])
        for i2 in range(i1, len(subs)):
            e2, j, a2, b2 = subs[i2]
            lo2 = min(a2[0], b2[0])
            hi2 = max(a2[0], b2[0])
            tmin = -((hi2 - lo1) // period)
            tmax = (hi1 - lo2) // period
            t = tmin
            while t <= tmax:
                if i1 == i2 and t == 0:
                    t += 1
                    continue
                c2, d2 = _shift(a2, t * period), _shift(b2, t * period)
                if e1 == e2 and t == 0 and abs(i - j) <= 1:
                    t += 1
                    continue
                z = segment_intersection(a1, b1, c2, d2)
                if z is not None:
                    t1 = _param_on(a1, b1, z)
                    t2 = _param_on(c2, d2, z)
                    for strand, par in (((e1, i), t1), ((e2, j), t2)):
                        key = (strand, par)
                        if key in seen_params:
                            raise DegenerateConfiguration(
                                f"three strands meet near {z}")
                        seen_params[key] = True
                    records.append(((e1, i, t1), (e2, j, t2), z))
                elif touching(a1, b1, c2, d2):
                    contacts = [q for q in (c2, d2) if on_segment(a1, b1, q)]
                    contacts += [q for q in (a1, b1) if on_segment(c2, d2, q)]
                    allowed = (t == 0 and all(
                        _allowed_contact(edges, subs[i1], subs[i2], q)
                        for q in contacts))
                    if not allowed:
                        raise DegenerateConfiguration(
                            f"edges {e1} and {e2} touch on the cylinder")
                t += 1
    return records


def _assemble(vpos, edges, records, period):
    next_node = max(vpos) + 1 if vpos else 0
    events: dict[int, list] = {eid: [] for eid in edges}
    for (p1, p2, z) in records:
        nid = next_node
        next_node += 1
        events[p1[0]].append((p1[1], p1[2], nid))
        events[p2[0]].append((p2[1], p2[2], nid))
    for eid in events:
        events[eid].sort(key=lambda t: (t[0], t[1]))
        for (i1, t1, _), (i2, t2, _) in zip(events[eid], events[eid][1:]):
            if (i1, t1) == (i2, t2):
                raise DegenerateConfiguration(f"edge {eid}: coincident crossings")

    nodes: dict[int, Node] = {}
    segments: dict[int, Segment] = {}
    emap: dict[int, Edge] = {}
    seg_geo: dict[int, list[Point]] = {}
    node_pos: dict[int, Point] = dict(vpos)
    sid = 0
    dart_dir: dict[int, Point] = {}
    incident: dict[int, list[int]] = {n: [] for n in vpos}

    for eid in sorted(edges):
        ep = edges[eid]
        stations = [(None, None, ep.u)] + events[eid] + [(None, None, ep.v)]
        pieces = _cut_path(ep.pts, events[eid])
        chain = []
        for pos, ((_, _, na), (_, _, nb)) in enumerate(zip(stations, stations[1:])):
            geo = pieces[pos]
            segments[sid] = Segment(eid, pos, (na, nb))
            seg_geo[sid] = geo
            chain.append(sid)
            d0, d1 = dart(sid, 0), dart(sid, 1)
            dart_dir[d0] = sub(geo[1], geo[0])
            dart_dir[d1] = sub(geo[-2], geo[-1])
            incident.setdefault(na, []).append(d0)
            incident.setdefault(nb, []).append(d1)
            if nb != ep.v:
                node_pos.setdefault(nb, geo[-1])
            sid += 1
        emap[eid] = Edge((ep.u, ep.v), tuple(chain))

    for n, darts in incident.items():
        keys = [angle_key(dart_dir[d]) for d in darts]
        if len(set(keys)) != len(keys):
            raise DegenerateConfiguration(f"tangential contact at node {n}")
        rot = tuple(d for _, d in sorted(zip(keys, darts)))
        kind = VERTEX if n in vpos else CROSSING
        nodes[n] = Node(kind, rot)
    for n in vpos:
        if n not in nodes:
            nodes[n] = Node(VERTEX, ())

    anchors, hosts = (None, None)
    if period is None:
        anchors, hosts = _embedding_by_rays(nodes, segments, seg_geo, node_pos)
    p = build_planarization(nodes, segments, emap, anchors, hosts)
    p.layout = {"nodes": dict(node_pos), "segments": dict(seg_geo),
                "period": period}
    return p


def _cut_path(pts, evts):
    """Split a polyline at the listed (subseg, param) stations."""
    pieces = []
    cur = [pts[0]]
    at = 0
    for (i, t, _nid) in evts:
        while at < i:
            at += 1
            cur.append(pts[at])
        a, b = pts[i], pts[i + 1]
        z = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        cur.append(z)
        pieces.append(cur)
        cur = [z]
    while at < len(pts) - 2:
        at += 1
        cur.append(pts[at])
    cur.append(pts[-1])
    pieces.append(cur)
    return [_dedup(piece) for piece in pieces]


def _dedup(piece):
    out = [piece[0]]
    for q in piece[1:]:
        if q != out[-1]:
            out.append(q)
    return out


def _trace_all(nodes, segments):
    cycle_of_dart = {}
    cycles = []
    seen = set()
    all_darts = []
    for n in sorted(nodes):
        all_darts.extend(nodes[n].rotation)
    for d0 in all_darts:
        if d0 in seen:
            continue
        cyc = []
        cur = d0
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            s = dart_segment(cur)
            far = segments[s].ends[1 - dart_end(cur)]
            rot = nodes[far].rotation
            i = rot.index(reverse(cur))
            cur = rot[(i + 1) % len(rot)]
        for d in cyc:
            cycle_of_dart[d] = len(cycles)
        cycles.append(cyc)
    return cycles, cycle_of_dart


def _embedding_by_rays(nodes, segments, seg_geo, node_pos):
    cycles, cyc_of = _trace_all(nodes, segments)

    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s, seg in segments.items():
        ra, rb = find(seg.ends[0]), find(seg.ends[1])
        if ra != rb:
            parent[ra] = rb
    rep = {}
    for n in sorted(nodes):
        rep.setdefault(find(n), n)
    comp_of = {n: rep[find(n)] for n in nodes}
    comps = sorted(set(comp_of.values()))

    comp_subs: dict[int, list] = {c: [] for c in comps}
    for s, geo in seg_geo.items():
        c = comp_of[segments[s].ends[0]]
        for a, b in zip(geo, geo[1:]):
            comp_subs[c].append((s, a, b))

    anchors: dict[int, int] = {}
    hosts: dict[int, object] = {}
    for c in comps:
        own = comp_subs[c]
        if not own:
            # isolated vertex
            q = node_pos[c]
            hit = _closest_hit(q, [sub for cc in comps if cc != c
                                   for sub in comp_subs[cc]])
            hosts[c] = OUTER if hit is None else _west_side_dart(hit)
            continue
        anchors[c] = _outward_dart(own, cycles, cyc_of)
        q = _extreme_point(own)
        hit = _closest_hit(q, [sub for cc in comps if cc != c
                               for sub in comp_subs[cc]])
        hosts[c] = OUTER if hit is None else _west_side_dart(hit)
    return anchors, hosts


def _extreme_point(own):
    best = None
    for _s, a, b in own:
        for q in (a, b):
            if best is None or q > best:
                best = q
    return best


def _outward_dart(own, cycles, cyc_of) -> int:
    """A dart on the component's outward cycle, by the eastmost corner."""
    best = None
    for s, a, b in own:
        for q, other in ((a, b), (b, a)):
            if best is None or q > best[0]:
                best = (q, s, other)
    q, s, other = best
    # collect the directions leaving q along this component
    legs = []
    for s2, a, b in own:
        if a == q:
            legs.append((s2, sub(b, a), 0))
        if b == q:
            legs.append((s2, sub(a, b), 1))
    east = (Fraction(1), Fraction(0))
    keys = sorted(range(len(legs)), key=lambda i: angle_key(legs[i][1]))
    # find the gap that contains due east
    for idx in range(len(keys)):
        va = legs[keys[idx]][1]
        vb = legs[keys[(idx + 1) % len(keys)]][1]
        if _in_gap(va, east, vb):
            s2, _vec, which = legs[keys[(idx + 1) % len(keys)]]
            return _dart_walking(s2, which)
    raise DegenerateConfiguration("no eastward gap at the extreme point")


def _in_gap(a, t, b):
    ka, kt, kb = angle_key(a), angle_key(t), angle_key(b)
    if ka == kb:
        return kt != ka
    if ka < kb:
        return ka < kt < kb
    return kt > ka or kt < kb


def _dart_walking(s: int, which_end: int) -> int:
    """Dart of map segment s whose walk starts at end which_end."""
    return dart(s, 0) if which_end == 0 else dart(s, 1)


def _closest_hit(q: Point, foreign):
    """First transversal hit of the eastward ray from q, if any."""
    px, py = q
    best = None
    for s, a, b in foreign:
        if (a[1] > py) == (b[1] > py):
            continue
        xi = a[0] + (py - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
        if xi <= px:
            continue
        if best is None or xi < best[0]:
            going_up = b[1] > a[1]
            best = (xi, s, a, b, going_up)
    return best


def _west_side_dart(hit) -> int:
    """Dart of the hit segment whose right side faces the ray origin."""
    _xi, s, a, b, going_up = hit
    # walking direction with positive y keeps west on its right... check:
    # for w with w.y > 0, cross(w, (-1,0)) = w.y > 0 puts west on the LEFT,
    # so the west-side dart walks downward.
    return dart(s, 1) if going_up else dart(s, 0)


def face_at_point(p: Planarization, q: Point) -> int:
    """Locate the face of an arranged drawing containing a free point."""
    layout = p.layout
    subsegs = []
    for s, geo in layout["segments"].items():
        for a, b in zip(geo, geo[1:]):
            subsegs.append((s, a, b))
    for s, a, b in subsegs:
        if on_segment(a, b, q):
            raise DegenerateConfiguration(f"{q} lies on segment {s}")
    hit = _closest_hit(q, subsegs)
    if hit is None:
        return p.outer_face
    d = _west_side_dart(hit)
    return p.face_of_cycle[p.cycle_of_dart[d]]
