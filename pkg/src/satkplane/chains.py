"""Build planarizations from crossing chains.

Generators that are defined by hand describe a drawing as, per edge,
the ordered list of crossing points it runs through, plus a chirality
bit per crossing and a rotation at every vertex of degree three or
more.  This module turns such a description into a validated map.
"""

from __future__ import annotations

from .planar import (CROSSING, VERTEX, Edge, Node, Planarization, Segment,
                     build_planarization, dart)


def build_from_chains(vertex_ids, edge_specs, chirality=None,
                      vertex_rotations=None, anchors=None, hosts=None,
                      isolated=()):
    """Assemble a planarization.

    vertex_ids: iterable of real vertex ids.
    edge_specs: dict edge id -> (u, v, [crossing node ids along the edge]).
    chirality: dict crossing id -> 0 or 1, picking one of the two proper
        rotations at that crossing.
    vertex_rotations: dict vertex id -> counterclockwise list of
        (edge id, end) incidences, end 0 being the end at the edge's
        first vertex.  Vertices of degree < 3 may be omitted.
    isolated: vertex ids with no edges at all.
    """
    chirality = chirality or {}
    vertex_rotations = vertex_rotations or {}

    nodes: dict[int, Node] = {}
    segments: dict[int, Segment] = {}
    edges: dict[int, Edge] = {}

    crossing_ids = set()
    for eid in edge_specs:
        crossing_ids.update(edge_specs[eid][2])
    vertex_ids = set(vertex_ids) | set(isolated)
    if crossing_ids & vertex_ids:
        raise ValueError("crossing ids overlap vertex ids")

    sid = 0
    end_dart: dict[tuple[int, int], int] = {}
    passes: dict[int, list[tuple[int, int]]] = {c: [] for c in crossing_ids}
    for eid in sorted(edge_specs):
        u, v, cross = edge_specs[eid]
        stations = [u] + list(cross) + [v]
        chain = []
        for a, b in zip(stations, stations[1:]):
            segments[sid] = Segment(eid, len(chain), (a, b))
            chain.append(sid)
            sid += 1
        edges[eid] = Edge((u, v), tuple(chain))
        end_dart[(eid, 0)] = dart(chain[0], 0)
        end_dart[(eid, 1)] = dart(chain[-1], 1)
        for i, c in enumerate(cross):
            passes[c].append((dart(chain[i], 1), dart(chain[i + 1], 0)))

    for c in sorted(crossing_ids):
        if len(passes[c]) != 2:
            raise ValueError(f"crossing {c} has {len(passes[c])} passes, wants 2")
        (a_in, a_out), (b_in, b_out) = passes[c]
        if chirality.get(c, 0):
            rot = (a_in, b_out, a_out, b_in)
        else:
            rot = (a_in, b_in, a_out, b_out)
        nodes[c] = Node(CROSSING, rot)

    incid: dict[int, list[tuple[int, int]]] = {v: [] for v in vertex_ids}
    for eid in sorted(edge_specs):
        u, v, _ = edge_specs[eid]
        incid[u].append((eid, 0))
        incid[v].append((eid, 1))
    for vid in sorted(vertex_ids):
        listed = vertex_rotations.get(vid)
        if listed is None:
            listed = sorted(incid[vid])
        if sorted(listed) != sorted(incid[vid]):
            raise ValueError(f"rotation at vertex {vid} mismatches incidences")
        nodes[vid] = Node(VERTEX, tuple(end_dart[ref] for ref in listed))

    return build_planarization(nodes, segments, edges, anchors, hosts)


def relabel(p: Planarization, node_shift: int, seg_shift: int, edge_shift: int):
    """Shift all ids; used when drawings are combined."""
    nodes = {nid + node_shift: Node(nd.kind, tuple(_shift_dart(d, seg_shift)
                                                   for d in nd.rotation))
             for nid, nd in p.nodes.items()}
    segments = {sid + seg_shift: Segment(seg.edge + edge_shift, seg.index,
                                         (seg.ends[0] + node_shift,
                                          seg.ends[1] + node_shift))
                for sid, seg in p.segments.items()}
    edges = {eid + edge_shift: Edge((e.ends[0] + node_shift, e.ends[1] + node_shift),
                                    tuple(s + seg_shift for s in e.chain))
             for eid, e in p.edges.items()}
    anchors = {}
    hosts = {}
    from .planar import OUTER
    for comp in p.components:
        cyc = p.anchor_cycle[comp]
        if cyc is not None:
            anchors[comp + node_shift] = _shift_dart(p.cycles[cyc][0], seg_shift)
        host = p.host_ref[comp]
        if host == OUTER:
            hosts[comp + node_shift] = OUTER
        else:
            hosts[comp + node_shift] = _shift_dart(p.cycles[host][0], seg_shift)
    return nodes, segments, edges, anchors, hosts


def _shift_dart(d: int, seg_shift: int) -> int:
    return d + 2 * seg_shift
