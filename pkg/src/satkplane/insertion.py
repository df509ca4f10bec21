"""Exact edge-insertion search on a planarization.

A candidate curve from u to v is grown door by door.  Crossing a
boundary segment of the current cell refines the arrangement: the
segment is split at a fresh crossing node and the piece of curve laid
so far becomes part of the map, so cell identity, self-avoidance and
per-edge budgets stay exact.  A chord through a cell that has several
boundary cycles can leave each nested component on either side; both
assignments are explored.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .mode import Mode
from .planar import (CROSSING, OUTER, VERTEX, Edge, Node, Planarization,
                     Segment, build_planarization, dart, dart_end,
                     dart_segment, reverse)


class BadVertex(ValueError):
    pass


class EdgeExists(ValueError):
    pass


class StaleWitness(ValueError):
    pass


@dataclass(frozen=True)
class Door:
    """One crossing of the candidate with an existing segment."""

    segment: int          # segment id in the refined working map
    origin_segment: int   # segment of the input drawing it descends from
    edge: int             # parent edge in the input drawing (-1: candidate)
    side: int             # dart crossed, in working-map numbering


@dataclass(frozen=True)
class InsertionWitness:
    u: int
    v: int
    mode: Mode
    start: tuple            # (node, gap index or None)
    doors: tuple[Door, ...]
    moves: tuple            # full replay script, implementation detail
    tally: tuple[tuple[int, int], ...]  # crossings gained per existing edge

    def crossing_count(self) -> int:
        return len(self.doors)


class _Working:
    """Mutable refined copy of a planarization."""

    def __init__(self, p: Planarization):
        self.kind = {n: nd.kind for n, nd in p.nodes.items()}
        self.rot = {n: list(nd.rotation) for n, nd in p.nodes.items()}
        self.seg_ends = {s: tuple(sg.ends) for s, sg in p.segments.items()}
        self.seg_edge = {s: sg.edge for s, sg in p.segments.items()}
        self.seg_origin = {s: s for s in p.segments}
        self.edge_ends = {e: tuple(eg.ends) for e, eg in p.edges.items()}
        self.edge_chain = {e: list(eg.chain) for e, eg in p.edges.items()}
        self.face_of_dart = {}
        for fid, face in enumerate(p.faces):
            for cid in face.cycles:
                for d in p.cycles[cid]:
                    self.face_of_dart[d] = fid
        self.hosted = {fid: set(face.interior_vertices)
                       for fid, face in enumerate(p.faces)}
        self.outer_fid = p.outer_face
        self.next_node = max(p.nodes) + 1
        self.next_seg = max(p.segments) + 1 if p.segments else 0
        self.next_face = len(p.faces)
        self.edge_cross = {e: set(p.edge_crossing_nodes(e)) for e in p.edges}

    def clone(self) -> "_Working":
        w = object.__new__(_Working)
        w.kind = dict(self.kind)
        w.rot = {n: list(r) for n, r in self.rot.items()}
        w.seg_ends = dict(self.seg_ends)
        w.seg_edge = dict(self.seg_edge)
        w.seg_origin = dict(self.seg_origin)
        w.edge_ends = dict(self.edge_ends)
        w.edge_chain = {e: list(c) for e, c in self.edge_chain.items()}
        w.face_of_dart = dict(self.face_of_dart)
        w.hosted = {f: set(s) for f, s in self.hosted.items()}
        w.outer_fid = self.outer_fid
        w.next_node = self.next_node
        w.next_seg = self.next_seg
        w.next_face = self.next_face
        w.edge_cross = {e: set(s) for e, s in self.edge_cross.items()}
        return w

    # -- elementary queries ---------------------------------------------------

    def corner_face(self, node: int, gap) -> int:
        rot = self.rot[node]
        if not rot:
            for fid, vs in self.hosted.items():
                if node in vs:
                    return fid
            raise ValueError(f"floating vertex {node} is not hosted anywhere")
        return self.face_of_dart[rot[(gap + 1) % len(rot)]]

    def corners_of(self, node: int):
        rot = self.rot[node]
        if not rot:
            yield None, self.corner_face(node, None)
            return
        for g in range(len(rot)):
            yield g, self.corner_face(node, g)

    def face_darts(self, fid: int) -> list[int]:
        return sorted(d for d, f in self.face_of_dart.items() if f == fid)

    def trace_from(self, d0: int) -> list[int]:
        out = []
        cur = d0
        while True:
            out.append(cur)
            s = dart_segment(cur)
            far = self.seg_ends[s][1 - dart_end(cur)]
            rot = self.rot[far]
            i = rot.index(reverse(cur))
            cur = rot[(i + 1) % len(rot)]
            if cur == d0:
                return out

    # -- surgery ---------------------------------------------------------------

    def split_segment(self, s: int, xnode: int) -> tuple[int, int]:
        a, b = self.seg_ends[s]
        eid = self.seg_edge[s]
        sa, sb = self.next_seg, self.next_seg + 1
        self.next_seg += 2
        self.seg_ends[sa] = (a, xnode)
        self.seg_ends[sb] = (xnode, b)
        self.seg_edge[sa] = self.seg_edge[sb] = eid
        self.seg_origin[sa] = self.seg_origin[sb] = self.seg_origin[s]
        ra = self.rot[a]
        ra[ra.index(dart(s, 0))] = dart(sa, 0)
        rb = self.rot[b]
        rb[rb.index(dart(s, 1))] = dart(sb, 1)
        self.kind[xnode] = CROSSING
        self.rot[xnode] = [dart(sa, 1), dart(sb, 0)]
        f0 = self.face_of_dart.pop(dart(s, 0))
        f1 = self.face_of_dart.pop(dart(s, 1))
        self.face_of_dart[dart(sa, 0)] = f0
        self.face_of_dart[dart(sb, 0)] = f0
        self.face_of_dart[dart(sa, 1)] = f1
        self.face_of_dart[dart(sb, 1)] = f1
        chain = self.edge_chain[eid]
        i = chain.index(s)
        chain[i:i + 1] = [sa, sb]
        del self.seg_ends[s], self.seg_edge[s], self.seg_origin[s]
        return sa, sb

    def chord(self, cand_eid: int, na: int, ga, nb: int, gb,
              move_cycles=frozenset(), move_hosted=frozenset()) -> int:
        """Lay a candidate segment from corner (na, ga) to corner (nb, gb).

        Both corners must lie on one face.  When the chord splits the
        face, boundary cycles and floating vertices named in the move_*
        sets go to the far side.  Returns the new segment id.
        """
        fa = self.corner_face(na, ga)
        fb = self.corner_face(nb, gb)
        if fa != fb:
            raise StaleWitness(f"chord corners lie on faces {fa} and {fb}")
        c = self.next_seg
        self.next_seg += 1
        self.seg_ends[c] = (na, nb)
        self.seg_edge[c] = cand_eid
        self.seg_origin[c] = -1
        self._insert_dart(na, ga, dart(c, 0))
        self._insert_dart(nb, gb, dart(c, 1))
        self.hosted[fa].discard(na)
        self.hosted[fa].discard(nb)
        cyc1 = self.trace_from(dart(c, 0))
        if dart(c, 1) in cyc1:
            for d in cyc1:
                self.face_of_dart[d] = fa
            return c
        cyc2 = self.trace_from(dart(c, 1))
        fnew = self.next_face
        self.next_face += 1
        in1, in2 = set(cyc1), set(cyc2)
        rest = [d for d, f in self.face_of_dart.items()
                if f == fa and d not in in1 and d not in in2]
        groups: dict[int, list[int]] = {}
        seen = set()
        for d in sorted(rest):
            if d in seen:
                continue
            cyc = self.trace_from(d)
            seen.update(cyc)
            groups[min(cyc)] = cyc
        for d in cyc1:
            self.face_of_dart[d] = fa
        for d in cyc2:
            self.face_of_dart[d] = fnew
        for key, cyc in groups.items():
            tgt = fnew if key in move_cycles else fa
            for d in cyc:
                self.face_of_dart[d] = tgt
        stay = set()
        go = set()
        for vmid in self.hosted[fa]:
            (go if vmid in move_hosted else stay).add(vmid)
        self.hosted[fa] = stay
        self.hosted[fnew] = go
        return c

    def other_content(self, fid: int, na, ga, nb, gb):
        """Cycle keys and floating vertices a chord could leave on either side."""
        # cycles through the corner darts will be consumed by the chord itself
        keys = []
        seen = set()
        for d in self.face_darts(fid):
            if d in seen:
                continue
            cyc = self.trace_from(d)
            seen.update(cyc)
            keys.append((min(cyc), set(cyc)))
        rota = self.rot[na]
        rotb = self.rot[nb]
        da = rota[(ga + 1) % len(rota)] if rota else None
        db = rotb[(gb + 1) % len(rotb)] if rotb else None
        other = [k for k, cyc in keys
                 if not (da in cyc or db in cyc)]
        hosted = sorted(self.hosted[fid] - {na, nb})
        return other, hosted

    def _insert_dart(self, node: int, gap, d: int):
        rot = self.rot[node]
        if gap is None:
            if rot:
                raise StaleWitness(f"node {node} is not floating any more")
            rot.append(d)
        else:
            rot.insert(gap + 1, d)

    # -- assembling the result --------------------------------------------------

    def to_planarization(self) -> Planarization:
        nodes = {n: Node(self.kind[n], tuple(r)) for n, r in self.rot.items()}
        segments = {}
        edges = {}
        for eid, chain in self.edge_chain.items():
            for i, s in enumerate(chain):
                segments[s] = Segment(eid, i, tuple(self.seg_ends[s]))
            edges[eid] = Edge(tuple(self.edge_ends[eid]), tuple(chain))
        anchors, hosts = self._reconstruct_embedding()
        return build_planarization(nodes, segments, edges, anchors, hosts)

    def _reconstruct_embedding(self):
        parent = {n: n for n in self.rot}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for s, (a, b) in self.seg_ends.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        rep = {}
        for n in sorted(self.rot):
            rep.setdefault(find(n), n)
        comp_of = {n: rep[find(n)] for n in self.rot}

        cycles = []
        cyc_of_dart = {}
        seen = set()
        for d in sorted(self.face_of_dart):
            if d in seen:
                continue
            cyc = self.trace_from(d)
            seen.update(cyc)
            for dd in cyc:
                cyc_of_dart[dd] = len(cycles)
            cycles.append(cyc)
        face_cycles: dict[int, list[int]] = {}
        for i, cyc in enumerate(cycles):
            fid = self.face_of_dart[cyc[0]]
            face_cycles.setdefault(fid, []).append(i)
        for fid in self.hosted:
            if self.hosted[fid]:
                face_cycles.setdefault(fid, [])

        anchors: dict[int, int] = {}
        hosts: dict[int, object] = {}
        comp_of_cycle = {
            i: comp_of[self.seg_ends[dart_segment(cyc[0])][dart_end(cyc[0])]]
            for i, cyc in enumerate(cycles)
        }
        todo = [(self.outer_fid, None)]
        visited = set()
        while todo:
            fid, pcomp = todo.pop()
            if fid in visited:
                continue
            visited.add(fid)
            host_dart = None
            if pcomp is not None:
                for cid in face_cycles.get(fid, []):
                    if comp_of_cycle[cid] == pcomp:
                        host_dart = cycles[cid][0]
                        break
            for cid in face_cycles.get(fid, []):
                comp = comp_of_cycle[cid]
                if comp == pcomp:
                    continue
                if comp not in anchors:
                    anchors[comp] = cycles[cid][0]
                    hosts[comp] = OUTER if pcomp is None else host_dart
                    for other in range(len(cycles)):
                        if comp_of_cycle[other] == comp and other != cid:
                            todo.append((self.face_of_dart[cycles[other][0]], comp))
            for vmid in self.hosted.get(fid, ()):
                hosts[vmid] = OUTER if pcomp is None else host_dart
        return anchors, hosts


def _pair_allowance(p: Planarization, u: int, v: int, mode: Mode):
    cap = mode.simplicity.pair_cap()
    if cap is None:
        return None, True
    allow = {}
    for e, edge in p.edges.items():
        shared = len({u, v} & set(edge.ends))
        allow[e] = cap - shared
        if allow[e] < 0:
            return None, False
    return allow, True


def _subsets(items):
    yield frozenset()
    for r in range(1, len(items) + 1):
        for combo in combinations(items, r):
            yield frozenset(combo)


def can_insert(p: Planarization, u: int, v: int, mode: Mode,
               collect_map: bool = False):
    """Search for a mode-respecting curve from u to v.

    Returns an InsertionWitness, or None when no such curve exists.
    With collect_map=True returns (witness, resulting planarization).
    """
    if u == v:
        raise BadVertex("loop insertion requested")
    for w in (u, v):
        if w not in p.nodes or p.nodes[w].kind != VERTEX:
            raise BadVertex(f"{w} is not a real vertex")
    if p.adjacent(u, v) and not mode.multi:
        raise EdgeExists(f"({u},{v}) is already an edge")
    allow, feasible = _pair_allowance(p, u, v, mode)
    if not feasible:
        return (None, None) if collect_map else None

    base = _Working(p)
    cand = max(p.edges) + 1 if p.edges else 0
    k = mode.k
    self_ok = mode.simplicity.kind == "unrestricted"

    def search(w: _Working, tip_node, tip_gap, doors, moves, pair_count, depth):
        fid = w.corner_face(tip_node, tip_gap)
        # terminate if v is reachable within this cell
        if v in w.hosted[fid]:
            w2 = w.clone()
            w2.chord(cand, tip_node, tip_gap, v, None)
            return w2, moves + (("end", v, None),), doors
        for g, face in w.corners_of(v):
            if face == fid:
                w2 = w.clone()
                w2.chord(cand, tip_node, tip_gap, v, g)
                return w2, moves + (("end", v, g),), doors
        if depth >= k:
            return None
        for d in w.face_darts(fid):
            s = dart_segment(d)
            eid = w.seg_edge[s]
            if eid == cand:
                if not self_ok:
                    continue
            else:
                if len(w.edge_cross[eid]) >= k:
                    continue
                if allow is not None and pair_count.get(eid, 0) >= allow[eid]:
                    continue
            w2 = w.clone()
            x = w2.next_node
            w2.next_node += 1
            sa, sb = w2.split_segment(s, x)
            # the corner of x on our side of the crossed segment
            gap = None
            for g, face in w2.corners_of(x):
                if face == fid:
                    gap = g
                    break
            if gap is None:
                continue
            other, hosted = w2.other_content(fid, tip_node, tip_gap, x, gap)
            branches = [(frozenset(), frozenset())]
            if other or hosted:
                branches = [(mc, mh) for mc in _subsets(other)
                            for mh in _subsets(hosted)]
            for mc, mh in branches:
                w3 = w2.clone()
                w3.chord(cand, tip_node, tip_gap, x, gap, mc, mh)
                if eid != cand:
                    w3.edge_cross[eid].add(x)
                rot = w3.rot[x]
                cin = dart(w3.next_seg - 1, 1)
                i = rot.index(cin)
                exit_gap = (i + 1) % len(rot)
                pc = dict(pair_count)
                if eid != cand:
                    pc[eid] = pc.get(eid, 0) + 1
                door = Door(s, w.seg_origin[s], eid if eid != cand else -1, d)
                res = search(w3, x, exit_gap, doors + (door,),
                             moves + (("door", d, mc, mh),), pc, depth + 1)
                if res is not None:
                    return res
        return None

    for g, _face in base.corners_of(u):
        res = search(base, u, g, (), (("start", u, g),), {}, 0)
        if res is not None:
            wfinal, moves, doors = res
            wfinal.edge_ends[cand] = (u, v)
            wfinal.edge_chain[cand] = _candidate_chain(wfinal, cand, u, v)
            result = wfinal.to_planarization()
            witness = InsertionWitness(
                u=u, v=v, mode=mode, start=moves[0][1:],
                doors=doors,
                moves=moves,
                tally=tuple(sorted((e, len(wfinal.edge_cross[e] - base.edge_cross[e]))
                                   for e in base.edge_cross
                                   if wfinal.edge_cross[e] != base.edge_cross[e])),
            )
            return (witness, result) if collect_map else witness
    return (None, None) if collect_map else None


def _candidate_chain(w: _Working, cand: int, u: int, v: int) -> list[int]:
    segs = [s for s, e in w.seg_edge.items() if e == cand]
    by_start: dict[int, int] = {}
    for s in segs:
        by_start[w.seg_ends[s][0]] = s
    chain = []
    at = u
    while at != v:
        s = by_start[at]
        chain.append(s)
        at = w.seg_ends[s][1]
    if len(chain) != len(segs):
        raise StaleWitness("candidate chain is not a path")
    return chain


def insert_edge(p: Planarization, u: int, v: int,
                witness: InsertionWitness) -> Planarization:
    """Replay a witness and return the extended drawing."""
    if (witness.u, witness.v) != (u, v):
        raise StaleWitness("witness endpoints disagree")
    w = _Working(p)
    cand = max(p.edges) + 1 if p.edges else 0
    k = witness.mode.k
    tip_node = tip_gap = None
    for m in witness.moves:
        if m[0] == "start":
            tip_node, tip_gap = m[1], m[2]
        elif m[0] == "door":
            d, mc, mh = m[1], m[2], m[3]
            s = dart_segment(d)
            if s not in w.seg_ends:
                raise StaleWitness("witness references a missing segment")
            eid = w.seg_edge[s]
            if eid != cand and len(w.edge_cross[eid]) >= k:
                raise StaleWitness("edge budget exhausted on replay")
            fid = w.corner_face(tip_node, tip_gap)
            if w.face_of_dart.get(d) != fid:
                raise StaleWitness("door no longer bounds the current cell")
            x = w.next_node
            w.next_node += 1
            w.split_segment(s, x)
            gap = None
            for g, face in w.corners_of(x):
                if face == fid:
                    gap = g
                    break
            if gap is None:
                raise StaleWitness("crossed segment does not bound the cell")
            w.chord(cand, tip_node, tip_gap, x, gap, mc, mh)
            if eid != cand:
                w.edge_cross[eid].add(x)
            rot = w.rot[x]
            cin = dart(w.next_seg - 1, 1)
            tip_node, tip_gap = x, (rot.index(cin) + 1) % len(rot)
        elif m[0] == "end":
            fid = w.corner_face(tip_node, tip_gap)
            vv, g = m[1], m[2]
            w.chord(cand, tip_node, tip_gap, vv, g)
    w.edge_ends[cand] = (u, v)
    w.edge_chain[cand] = _candidate_chain(w, cand, u, v)
    return w.to_planarization()
