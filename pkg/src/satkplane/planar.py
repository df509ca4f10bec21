"""Combinatorial maps for drawings whose edges may cross.

A drawing is stored as its planarization: real vertices and crossing
points become nodes, the pieces of edges between them become segments,
and a counterclockwise rotation at every node fixes the embedding.
Faces are derived by tracing darts.  Because a face of a disconnected
drawing can have several boundary cycles, every component carries an
explicit anchor (which of its cycles faces outward) and a host (which
face of the rest of the drawing it sits in); face assembly merges
cycles accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, floor

VERTEX = "vertex"
CROSSING = "crossing"

OUTER = "outer"


class MapError(ValueError):
    """Structural defect in a planarization description."""


class BadCrossing(MapError):
    pass


class BrokenChain(MapError):
    pass


class DanglingSegment(MapError):
    pass


class NonSpherical(MapError):
    pass


class BadEmbedding(MapError):
    pass


def dart(segment: int, end: int) -> int:
    return 2 * segment + end


def dart_segment(d: int) -> int:
    return d >> 1


def dart_end(d: int) -> int:
    return d & 1


def reverse(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class Node:
    kind: str
    rotation: tuple[int, ...]  # incident darts, counterclockwise


@dataclass(frozen=True)
class Segment:
    edge: int
    index: int  # ordinal along the parent edge, from 0
    ends: tuple[int, int]  # node ids; ends[0] is the earlier chain end


@dataclass(frozen=True)
class Edge:
    ends: tuple[int, int]  # real vertex ids
    chain: tuple[int, ...]  # segment ids from ends[0] to ends[1]


@dataclass(frozen=True)
class Face:
    cycles: tuple[int, ...]  # boundary cycle ids
    interior_vertices: tuple[int, ...]  # hosted isolated vertices
    outer: bool


class Planarization:
    """Validated immutable drawing.

    anchors maps each component id to a dart on the cycle of that
    component that faces its surroundings (None for an isolated
    vertex).  hosts maps each component either to OUTER or to a dart
    lying on a boundary cycle of the face that contains it.
    """

    def __init__(self, nodes, segments, edges, anchors=None, hosts=None):
        self.nodes: dict[int, Node] = dict(nodes)
        self.segments: dict[int, Segment] = dict(segments)
        self.edges: dict[int, Edge] = dict(edges)
        self._validate_incidence()
        self._components()
        self._trace_cycles()
        self._check_spherical()
        self._resolve_embedding(anchors, hosts)
        self._assemble_faces()
        self._validate_crossings()

    # -- construction checks -------------------------------------------------

    def _validate_incidence(self):
        for sid, seg in self.segments.items():
            if seg.edge not in self.edges:
                raise DanglingSegment(f"segment {sid} names missing edge {seg.edge}")
            if sid not in self.edges[seg.edge].chain:
                raise DanglingSegment(f"segment {sid} not in chain of edge {seg.edge}")
            for node in seg.ends:
                if node not in self.nodes:
                    raise DanglingSegment(f"segment {sid} touches missing node {node}")
        for eid, edge in self.edges.items():
            u, v = edge.ends
            if u == v:
                raise BrokenChain(f"edge {eid} is a loop at vertex {u}")
            for w in (u, v):
                if self.nodes[w].kind != VERTEX:
                    raise BrokenChain(f"edge {eid} ends at non-vertex node {w}")
            if not edge.chain:
                raise BrokenChain(f"edge {eid} has an empty chain")
            at = u
            for pos, sid in enumerate(edge.chain):
                seg = self.segments.get(sid)
                if seg is None or seg.edge != eid:
                    raise BrokenChain(f"edge {eid} chain names foreign segment {sid}")
                if seg.index != pos:
                    raise BrokenChain(f"edge {eid} chain out of order at {sid}")
                if seg.ends[0] != at:
                    raise BrokenChain(f"edge {eid} chain breaks at segment {sid}")
                at = seg.ends[1]
                if pos < len(edge.chain) - 1 and self.nodes[at].kind != CROSSING:
                    raise BrokenChain(
                        f"edge {eid} passes through vertex {at} mid-chain"
                    )
            if at != v:
                raise BrokenChain(f"edge {eid} chain does not reach vertex {v}")
        # rotations must list exactly the incident darts, once each
        incident: dict[int, list[int]] = {nid: [] for nid in self.nodes}
        for sid, seg in self.segments.items():
            incident[seg.ends[0]].append(dart(sid, 0))
            incident[seg.ends[1]].append(dart(sid, 1))
        for nid, node in self.nodes.items():
            if sorted(node.rotation) != sorted(incident[nid]):
                raise BadEmbedding(f"rotation at node {nid} mismatches incidences")

    def _components(self):
        parent = {nid: nid for nid in self.nodes}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for seg in self.segments.values():
            ra, rb = find(seg.ends[0]), find(seg.ends[1])
            if ra != rb:
                parent[ra] = rb
        rep: dict[int, int] = {}
        for n in sorted(self.nodes):
            rep.setdefault(find(n), n)
        self.component_of: dict[int, int] = {n: rep[find(n)] for n in self.nodes}
        self.components: tuple[int, ...] = tuple(sorted(set(self.component_of.values())))

    def _rotation_pos(self):
        self._pos: dict[int, tuple[int, int]] = {}
        for nid, node in self.nodes.items():
            for i, d in enumerate(node.rotation):
                self._pos[d] = (nid, i)

    def next_dart(self, d: int) -> int:
        seg = self.segments[dart_segment(d)]
        far = seg.ends[1 - dart_end(d)]
        rot = self.nodes[far].rotation
        r = reverse(d)
        i = rot.index(r)
        return rot[(i + 1) % len(rot)]

    def _trace_cycles(self):
        self._rotation_pos()
        seen: set[int] = set()
        cycles: list[tuple[int, ...]] = []
        self.cycle_of_dart: dict[int, int] = {}
        self.corner_cycle: dict[tuple[int, int], int] = {}
        for nid in sorted(self.nodes):
            for d in self.nodes[nid].rotation:
                if d in seen:
                    continue
                cyc: list[int] = []
                cur = d
                while cur not in seen:
                    seen.add(cur)
                    cyc.append(cur)
                    seg = self.segments[dart_segment(cur)]
                    far = seg.ends[1 - dart_end(cur)]
                    rot = self.nodes[far].rotation
                    r = reverse(cur)
                    i = rot.index(r)
                    self.corner_cycle[(far, i)] = len(cycles)
                    cur = rot[(i + 1) % len(rot)]
                cid = len(cycles)
                cycles.append(tuple(cyc))
                for dd in cyc:
                    self.cycle_of_dart[dd] = cid
        self.cycles: tuple[tuple[int, ...], ...] = tuple(cycles)
        self.cycle_component: dict[int, int] = {
            cid: self.component_of[self.segments[dart_segment(cyc[0])].ends[dart_end(cyc[0])]]
            for cid, cyc in enumerate(self.cycles)
        }

    def _check_spherical(self):
        counts: dict[int, list[int]] = {c: [0, 0, 0] for c in self.components}
        for nid in self.nodes:
            counts[self.component_of[nid]][0] += 1
        for seg in self.segments.values():
            counts[self.component_of[seg.ends[0]]][1] += 1
        for cid in range(len(self.cycles)):
            counts[self.cycle_component[cid]][2] += 1
        for comp, (v, e, f) in counts.items():
            if e == 0:
                continue  # isolated vertex: no cycles to count
            if v - e + f != 2:
                raise NonSpherical(
                    f"component {comp}: V-E+F = {v}-{e}+{f} != 2"
                )

    def _resolve_embedding(self, anchors, hosts):
        anchors = dict(anchors or {})
        hosts = dict(hosts or {})
        comp_cycles: dict[int, list[int]] = {c: [] for c in self.components}
        for cid in range(len(self.cycles)):
            comp_cycles[self.cycle_component[cid]].append(cid)
        self.anchor_cycle: dict[int, int | None] = {}
        self.host_ref: dict[int, object] = {}
        for comp in self.components:
            cycs = comp_cycles[comp]
            if comp in anchors and anchors[comp] is not None:
                d = anchors[comp]
                if d not in self.cycle_of_dart:
                    raise BadEmbedding(f"anchor dart {d} of component {comp} unknown")
                cid = self.cycle_of_dart[d]
                if self.cycle_component[cid] != comp:
                    raise BadEmbedding(f"anchor of component {comp} lies elsewhere")
                self.anchor_cycle[comp] = cid
            elif len(cycs) == 1:
                self.anchor_cycle[comp] = cycs[0]
            elif len(cycs) == 0:
                self.anchor_cycle[comp] = None
            elif len(self.components) == 1:
                # connected drawing on the sphere: outer designation is free
                self.anchor_cycle[comp] = cycs[0]
            else:
                raise BadEmbedding(
                    f"component {comp} has {len(cycs)} cycles and no anchor"
                )
            host = hosts.get(comp, OUTER)
            if host != OUTER:
                if host not in self.cycle_of_dart:
                    raise BadEmbedding(f"host dart {host} of component {comp} unknown")
                hcid = self.cycle_of_dart[host]
                if self.cycle_component[hcid] == comp:
                    raise BadEmbedding(f"component {comp} hosted in itself")
                self.host_ref[comp] = hcid
            else:
                self.host_ref[comp] = OUTER

    def _assemble_faces(self):
        # union cycles that bound one face; OUTER is a virtual key
        keys: list[object] = list(range(len(self.cycles))) + [OUTER]
        parent = {k: k for k in keys}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for comp in self.components:
            up = self.anchor_cycle[comp]
            host = self.host_ref[comp]
            if up is None:
                continue
            union(up, host if host != OUTER else OUTER)
        groups: dict[object, list[int]] = {}
        for cid in range(len(self.cycles)):
            groups.setdefault(find(cid), []).append(cid)
        outer_key = find(OUTER)
        interior: dict[object, list[int]] = {}
        for comp in self.components:
            if self.anchor_cycle[comp] is None:
                host = self.host_ref[comp]
                key = find(host) if host != OUTER else outer_key
                interior.setdefault(key, []).append(comp)
        if outer_key not in groups:
            groups[outer_key] = []  # drawing with no edges at all
        faces: list[Face] = []
        self.face_of_cycle: dict[int, int] = {}
        self.outer_face = -1
        for key in sorted(groups, key=lambda k: (k == OUTER, groups[k][:1])):
            cycs = tuple(sorted(groups[key]))
            hosted = tuple(sorted(interior.get(key, [])))
            is_outer = key == outer_key
            fid = len(faces)
            faces.append(Face(cycs, hosted, is_outer))
            for cid in cycs:
                self.face_of_cycle[cid] = fid
            if is_outer:
                self.outer_face = fid
        if self.outer_face < 0:
            raise BadEmbedding("no outer face resolved")
        self.faces: tuple[Face, ...] = tuple(faces)
        self._face_vertex_cache: dict[int, tuple[int, ...]] | None = None

    def _validate_crossings(self):
        for nid, node in self.nodes.items():
            if node.kind == VERTEX:
                continue
            if node.kind != CROSSING:
                raise MapError(f"node {nid} has unknown kind {node.kind}")
            if len(node.rotation) != 4:
                raise BadCrossing(f"crossing {nid} has degree {len(node.rotation)}")
            passes = self._passes_at(nid)
            if len(passes) != 2:
                raise BadCrossing(f"crossing {nid} is not a proper double point")
            rot = node.rotation
            pass_of = {}
            for i, pas in enumerate(passes):
                for d in pas:
                    pass_of[d] = i
            order = [pass_of[d] for d in rot]
            if order in ([0, 1, 0, 1], [1, 0, 1, 0]):
                continue
            raise BadCrossing(f"crossing {nid}: passes do not alternate")

    def _passes_at(self, nid: int) -> list[tuple[int, int]]:
        """Pair the four darts at a crossing into the two edge passes."""
        passes = []
        for eid in sorted({self.segments[dart_segment(d)].edge
                           for d in self.nodes[nid].rotation}):
            chain = self.edges[eid].chain
            for a, b in zip(chain, chain[1:]):
                if self.segments[a].ends[1] == nid and self.segments[b].ends[0] == nid:
                    passes.append((dart(a, 1), dart(b, 0)))
        return passes

    # -- derived quantities ---------------------------------------------------

    def vertices(self) -> list[int]:
        return sorted(n for n, nd in self.nodes.items() if nd.kind == VERTEX)

    def crossings(self) -> list[int]:
        return sorted(n for n, nd in self.nodes.items() if nd.kind == CROSSING)

    def stats(self) -> "DrawingStats":
        return DrawingStats(
            n=len(self.vertices()),
            m=len(self.edges),
            x=len(self.crossings()),
            f=len(self.faces),
            gamma_prime=len(self.components),
        )

    def edge_crossing_nodes(self, eid: int) -> list[int]:
        """Distinct crossing points on an edge (a self-crossing counts once)."""
        chain = self.edges[eid].chain
        return sorted({self.segments[s].ends[1] for s in chain[:-1]})

    def edge_crossing_count(self, eid: int) -> int:
        return len(self.edge_crossing_nodes(eid))

    def edge_event_count(self, eid: int) -> int:
        """Crossing passages along an edge (a self-crossing counts twice)."""
        return len(self.edges[eid].chain) - 1

    def edge_is_self_crossing(self, eid: int) -> bool:
        return self.edge_event_count(eid) != self.edge_crossing_count(eid)

    def face_boundary_vertices(self, fid: int) -> tuple[int, ...]:
        out = set()
        for cid in self.faces[fid].cycles:
            for d in self.cycles[cid]:
                node = self.segments[dart_segment(d)].ends[dart_end(d)]
                if self.nodes[node].kind == VERTEX:
                    out.add(node)
        return tuple(sorted(out))

    def face_vertices(self, fid: int) -> tuple[int, ...]:
        """Vertices on the boundary plus isolated vertices floating inside."""
        return tuple(sorted(set(self.face_boundary_vertices(fid))
                            | set(self.faces[fid].interior_vertices)))

    def faces_of_vertex(self, vid: int) -> tuple[int, ...]:
        out = set()
        node = self.nodes[vid]
        if not node.rotation:
            comp = self.component_of[vid]
            host = self.host_ref[comp]
            if host == OUTER:
                out.add(self.outer_face)
            else:
                out.add(self.face_of_cycle[host])
        for i, _d in enumerate(node.rotation):
            out.add(self.face_of_cycle[self.corner_cycle[(vid, i)]])
        return tuple(sorted(out))

    def face_boundary_edges(self, fid: int) -> tuple[int, ...]:
        out = set()
        for cid in self.faces[fid].cycles:
            for d in self.cycles[cid]:
                out.add(self.segments[dart_segment(d)].edge)
        return tuple(sorted(out))

    def adjacent(self, u: int, v: int) -> bool:
        return any(set(e.ends) == {u, v} for e in self.edges.values())

    def shared_points(self, e1: int, e2: int) -> int:
        """Common points of two edges: shared endpoints plus crossings."""
        a, b = self.edges[e1], self.edges[e2]
        shared = len(set(a.ends) & set(b.ends))
        shared += len(set(self.edge_crossing_nodes(e1)) & set(self.edge_crossing_nodes(e2)))
        return shared


@dataclass(frozen=True)
class DrawingStats:
    n: int
    m: int
    x: int
    f: int
    gamma_prime: int


def build_planarization(nodes, segments, edges, anchors=None, hosts=None) -> Planarization:
    """Validate a raw description and return the immutable map."""
    return Planarization(nodes, segments, edges, anchors, hosts)


def euler_audit(p: Planarization) -> tuple[bool, dict]:
    s = p.stats()
    seg_count = len(p.segments)
    report = {
        "n": s.n, "m": s.m, "x": s.x, "f": s.f, "gamma_prime": s.gamma_prime,
        "nodes": s.n + s.x, "segments": seg_count,
        "identity": f"{s.n} - {s.m} - {s.x} + {s.f} = {s.n - s.m - s.x + s.f}",
        "expected": s.gamma_prime + 1,
    }
    ok = (s.n - s.m - s.x + s.f == s.gamma_prime + 1) and seg_count == s.m + 2 * s.x
    report["ok"] = ok
    return ok, report


@dataclass(frozen=True)
class CrossingProfile:
    """Edge counts by number of crossing passages along the edge."""

    x: tuple[int, ...]

    def total_edges(self) -> int:
        return sum(self.x)

    def weighted(self) -> int:
        return sum(i * c for i, c in enumerate(self.x))


def crossing_profile(p: Planarization, k: int | None = None) -> CrossingProfile:
    counts = [p.edge_event_count(e) for e in p.edges]
    top = max(counts, default=0)
    if k is not None:
        top = max(top, k)
    x = [0] * (top + 1)
    for c in counts:
        x[c] += 1
    return CrossingProfile(tuple(x))


def check_k_plane(p: Planarization, k: int) -> bool:
    return all(p.edge_crossing_count(e) <= k for e in p.edges)


def check_simplicity(p: Planarization, level) -> bool:
    """level is a Simplicity value from the mode module."""
    kind = getattr(level, "kind", level)
    if kind == "unrestricted":
        return True
    no_self = not any(p.edge_is_self_crossing(e) for e in p.edges)
    if kind == "noself":
        return no_self
    if kind == "lsimple":
        if not no_self:
            return False
        ell = level.ell
        eids = sorted(p.edges)
        for i, e1 in enumerate(eids):
            for e2 in eids[i + 1:]:
                if p.shared_points(e1, e2) > ell:
                    return False
        return True
    raise ValueError(f"unknown simplicity level {level!r}")


def lb_any(n: int, k: int) -> int:
    """Fewest edges of any saturated k-plane drawing on n vertices."""
    return ceil((n - 1) / (k + 1))


def lb_noself(n: int, k: int) -> int:
    """Fewest edges when no edge is allowed to cross itself."""
    return floor((2 * n - 1) / (k + 2))
