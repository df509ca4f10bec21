"""Core map construction, face tracing and the Euler identity."""

import pytest

from satkplane.chains import build_from_chains
from satkplane.planar import (BadCrossing, BadEmbedding, euler_audit, lb_any,
                              lb_noself, crossing_profile, check_k_plane,
                              check_simplicity)
from satkplane.mode import NOSELF, lsimple
from satkplane import planar_io


def single_edge():
    return build_from_chains([0, 1], {0: (0, 1, [])})


def self_crossing_edge(k, chirality_bit=0):
    cross = []
    for i in range(k):
        cross += [10 + i, 10 + i]
    return build_from_chains([0, 1], {0: (0, 1, cross)},
                             chirality={10 + i: chirality_bit for i in range(k)})


def test_single_plane_edge():
    p = single_edge()
    s = p.stats()
    assert (s.n, s.m, s.x, s.f, s.gamma_prime) == (2, 1, 0, 1, 1)
    ok, _ = euler_audit(p)
    assert ok


def test_two_disjoint_edges_share_one_face():
    p = build_from_chains([0, 1, 2, 3], {0: (0, 1, []), 1: (2, 3, [])})
    s = p.stats()
    assert (s.n, s.m, s.x, s.f, s.gamma_prime) == (4, 2, 0, 1, 2)
    ok, rep = euler_audit(p)
    assert ok, rep


def test_self_crossing_edge_faces():
    p = self_crossing_edge(2)
    s = p.stats()
    assert (s.n, s.m, s.x, s.f, s.gamma_prime) == (2, 1, 2, 3, 1)
    ok, _ = euler_audit(p)
    assert ok
    assert p.edge_crossing_count(0) == 2
    assert p.edge_event_count(0) == 4


def test_triple_point_rejected():
    # three passes through one "crossing" cannot be described: the chain
    # builder already sees 3 passes and refuses
    with pytest.raises(ValueError):
        build_from_chains([0, 1, 2, 3, 4, 5],
                          {0: (0, 1, [9]), 1: (2, 3, [9]), 2: (4, 5, [9])})


def test_degree_three_crossing_rejected():
    # hand-build a crossing with a degree-3 rotation
    from satkplane.planar import Node, Segment, Edge, build_planarization, dart, CROSSING, VERTEX
    nodes = {
        0: Node(VERTEX, (dart(0, 0),)),
        1: Node(VERTEX, (dart(1, 1),)),
        2: Node(VERTEX, (dart(2, 1),)),
        9: Node(CROSSING, (dart(0, 1), dart(1, 0), dart(2, 0))),
    }
    segments = {0: Segment(0, 0, (0, 9)), 1: Segment(0, 1, (9, 1)),
                2: Segment(1, 0, (9, 2))}
    edges = {0: Edge((0, 1), (0, 1)), 1: Edge((9, 2), (2,))}
    with pytest.raises(Exception):
        build_planarization(nodes, segments, edges)


def plane_cycle(n):
    edges = {i: (i, (i + 1) % n, []) for i in range(n)}
    rot = {i: [(i, 0), ((i - 1) % n, 1)] for i in range(n)}
    return build_from_chains(range(n), edges, vertex_rotations=rot)


def test_plane_square_two_faces():
    p = plane_cycle(4)
    s = p.stats()
    assert s.f == 2
    assert euler_audit(p)[0]


def two_triangles(anchors=None, hosts=None):
    edges = {i: (i, (i + 1) % 3, []) for i in range(3)}
    edges.update({3 + i: (3 + i, 3 + (i + 1) % 3, []) for i in range(3)})
    rot = {i: [(i, 0), ((i - 1) % 3, 1)] for i in range(3)}
    rot.update({3 + i: [(3 + i, 0), (3 + (i - 1) % 3, 1)] for i in range(3)})
    return build_from_chains(range(6), edges, vertex_rotations=rot,
                             anchors=anchors, hosts=hosts)


def test_two_triangles_need_embedding_hints():
    with pytest.raises(BadEmbedding):
        two_triangles()


def test_nested_triangles_three_faces():
    # first build each triangle alone to learn its cycle darts
    probe = plane_cycle(3)
    out_dart, in_dart = probe.cycles[0][0], probe.cycles[1][0]
    # components are rooted at nodes 0 and 3; triangle 2's segments are 3..5
    shift = lambda d: d + 2 * 3
    for inner_anchor in (shift(out_dart), shift(in_dart)):
        for host in (in_dart, out_dart):
            p = two_triangles(anchors={0: out_dart, 3: inner_anchor},
                              hosts={3: host})
            s = p.stats()
            assert s.f == 3
            assert euler_audit(p)[0]
            middle = [f for f in range(3) if len(p.faces[f].cycles) == 2]
            assert len(middle) == 1
            assert len(p.face_vertices(middle[0])) == 6


def test_lower_bounds():
    assert lb_any(1, 3) == 0
    for k in range(1, 9):
        for t in range(1, 6):
            assert lb_any((k + 1) * t + 1, k) == t
    assert lb_noself(3, 2) == 1


def test_profile_and_checks_on_self_spiral():
    p = self_crossing_edge(3)
    prof = crossing_profile(p)
    assert prof.weighted() == 2 * p.stats().x
    assert check_k_plane(p, 3)
    assert not check_k_plane(p, 2)
    assert not check_simplicity(p, NOSELF)
    assert check_simplicity(p, lsimple(5)) is False  # self-crossing forbidden


def test_json_roundtrip():
    p = self_crossing_edge(2)
    q = planar_io.loads(planar_io.dumps(p))
    assert q.stats() == p.stats()
    assert euler_audit(q)[0]
