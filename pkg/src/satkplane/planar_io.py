"""JSON interchange for planarizations.

A dart in a file is a pair [segment, end].  The embedding of a
disconnected drawing is pinned by "outer_face_hint" (one dart, or a
list of darts, one on the outward cycle of each root component) and
"nesting", a list of [child, parent] entries: child is a dart on the
outward cycle of a nested component (or {"vertex": id} for an isolated
vertex), parent is a dart on a boundary cycle of the face hosting it.
"""

from __future__ import annotations

import json

from .planar import (CROSSING, OUTER, VERTEX, Edge, Node, Planarization,
                     Segment, build_planarization, dart, dart_end,
                     dart_segment)


def to_dict(p: Planarization) -> dict:
    data = {
        "nodes": [
            {"id": nid, "kind": node.kind,
             "rotation": [[dart_segment(d), dart_end(d)] for d in node.rotation]}
            for nid, node in sorted(p.nodes.items())
        ],
        "segments": [
            {"id": sid, "edge": seg.edge, "index": seg.index,
             "ends": list(seg.ends)}
            for sid, seg in sorted(p.segments.items())
        ],
        "edges": [
            {"id": eid, "ends": list(edge.ends), "chain": list(edge.chain)}
            for eid, edge in sorted(p.edges.items())
        ],
    }
    hints = []
    nesting = []
    for comp in p.components:
        anchor = p.anchor_cycle[comp]
        host = p.host_ref[comp]
        child = None
        if anchor is not None:
            d = p.cycles[anchor][0]
            child = [dart_segment(d), dart_end(d)]
        else:
            child = {"vertex": comp}
        if host == OUTER:
            if anchor is not None:
                hints.append(child)
            else:
                nesting.append([child, "outer"])
        else:
            hd = p.cycles[host][0]
            nesting.append([child, [dart_segment(hd), dart_end(hd)]])
    data["outer_face_hint"] = hints[0] if len(hints) == 1 else hints
    data["nesting"] = nesting
    return data


def _as_dart(ref) -> int:
    s, e = ref
    return dart(int(s), int(e))


def from_dict(data: dict) -> Planarization:
    nodes = {}
    for rec in data["nodes"]:
        kind = rec["kind"]
        if kind not in (VERTEX, CROSSING):
            raise ValueError(f"node {rec['id']}: unknown kind {kind!r}")
        nodes[int(rec["id"])] = Node(kind, tuple(_as_dart(d) for d in rec["rotation"]))
    segments = {
        int(rec["id"]): Segment(int(rec["edge"]), int(rec["index"]),
                                (int(rec["ends"][0]), int(rec["ends"][1])))
        for rec in data["segments"]
    }
    edges = {
        int(rec["id"]): Edge((int(rec["ends"][0]), int(rec["ends"][1])),
                             tuple(int(s) for s in rec["chain"]))
        for rec in data["edges"]
    }
    # learn components up-front so hints can be attributed
    parent = {nid: nid for nid in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for seg in segments.values():
        ra, rb = find(seg.ends[0]), find(seg.ends[1])
        if ra != rb:
            parent[ra] = rb
    rep: dict[int, int] = {}
    for n in sorted(nodes):
        rep.setdefault(find(n), n)
    component_of = {n: rep[find(n)] for n in nodes}
    anchors: dict[int, int] = {}
    hosts: dict[int, object] = {}

    def comp_of_child(child) -> int:
        if isinstance(child, dict):
            return component_of[int(child["vertex"])]
        d = _as_dart(child)
        node = segments[dart_segment(d)].ends[dart_end(d)]
        return component_of[node]

    hint = data.get("outer_face_hint")
    if hint:
        hint_list = hint if isinstance(hint[0], (list, tuple)) else [hint]
        for ref in hint_list:
            comp = comp_of_child(ref)
            anchors[comp] = _as_dart(ref)
            hosts[comp] = OUTER
    for child, parent in data.get("nesting", []):
        comp = comp_of_child(child)
        if not isinstance(child, dict):
            anchors[comp] = _as_dart(child)
        hosts[comp] = OUTER if parent == "outer" else _as_dart(parent)
    return build_planarization(nodes, segments, edges, anchors, hosts)


def dumps(p: Planarization, **kw) -> str:
    return json.dumps(to_dict(p), **kw)


def loads(text: str) -> Planarization:
    return from_dict(json.loads(text))
