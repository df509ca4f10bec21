"""Edge insertion search and witness replay."""

import pytest

from satkplane.chains import build_from_chains
from satkplane.insertion import EdgeExists, can_insert, insert_edge
from satkplane.mode import Mode, NOSELF, SIMPLE, UNRESTRICTED, lsimple
from satkplane.planar import euler_audit
from satkplane.saturation import free_cells, is_saturated, saturated_edges


def plane_cycle(n):
    edges = {i: (i, (i + 1) % n, []) for i in range(n)}
    rot = {i: [(i, 0), ((i - 1) % n, 1)] for i in range(n)}
    return build_from_chains(range(n), edges, vertex_rotations=rot)


def self_spiral(k):
    cross = []
    for i in range(k):
        cross += [10 + i, 10 + i]
    return build_from_chains([0, 1], {0: (0, 1, cross)},
                             chirality={10 + i: 0 for i in range(k)})


def test_two_disjoint_edges_zero_door_witness():
    p = build_from_chains([0, 1, 2, 3], {0: (0, 1, []), 1: (2, 3, [])})
    w = can_insert(p, 1, 2, Mode(1, SIMPLE))
    assert w is not None and w.crossing_count() == 0
    q = insert_edge(p, 1, 2, w)
    assert euler_audit(q)[0]
    assert q.stats().m == 3 and q.stats().x == 0


def test_square_chord_inserts_without_crossing():
    p = plane_cycle(4)
    w = can_insert(p, 0, 2, Mode(1, SIMPLE))
    assert w is not None and w.crossing_count() == 0
    q = insert_edge(p, 0, 2, w)
    assert q.stats().m == 5
    assert euler_audit(q)[0]


def test_adjacent_pair_needs_multi():
    p = plane_cycle(4)
    with pytest.raises(EdgeExists):
        can_insert(p, 0, 1, Mode(1, SIMPLE))
    # a parallel edge shares both endpoints: impossible under 1-simplicity
    assert can_insert(p, 0, 1, Mode(1, SIMPLE, multi=True)) is None
    # with two shared points allowed it drops in without crossings
    w = can_insert(p, 0, 1, Mode(1, lsimple(2), multi=True))
    assert w is not None and w.crossing_count() == 0


def test_one_door_through_nested_triangle():
    probe = plane_cycle(3)
    out_dart, in_dart = probe.cycles[0][0], probe.cycles[1][0]
    edges = {i: (i, (i + 1) % 3, []) for i in range(3)}
    edges.update({3 + i: (3 + i, 3 + (i + 1) % 3, []) for i in range(3)})
    rot = {i: [(i, 0), ((i - 1) % 3, 1)] for i in range(3)}
    rot.update({3 + i: [(3 + i, 0), (3 + (i - 1) % 3, 1)] for i in range(3)})
    p = build_from_chains(range(6), edges, vertex_rotations=rot,
                          anchors={0: out_dart, 3: out_dart + 6},
                          hosts={3: in_dart})
    # no curve from an inner to an outer vertex without one crossing
    assert can_insert(p, 3, 0, Mode(1, SIMPLE)) is not None
    w = can_insert(p, 3, 0, Mode(1, SIMPLE))
    assert w.crossing_count() == 1
    q = insert_edge(p, 3, 0, w)
    assert euler_audit(q)[0]
    assert q.stats().x == 1 and q.stats().gamma_prime == 1


def test_self_spiral_saturation_and_free_cells():
    for k in (1, 2, 3, 5):
        p = self_spiral(k)
        assert saturated_edges(p, k) == {0}
        assert len(free_cells(p, k)) == k
        rep = is_saturated(p, Mode(k, UNRESTRICTED))
        assert rep.saturated
        # with parallel edges allowed the outer cell lets a twin in
        rep2 = is_saturated(p, Mode(k, UNRESTRICTED, multi=True))
        assert not rep2.saturated


def test_single_edge_multi_not_saturated():
    p = build_from_chains([0, 1], {0: (0, 1, [])})
    rep = is_saturated(p, Mode(1, UNRESTRICTED, multi=True))
    assert not rep.saturated
    rep = is_saturated(p, Mode(1, NOSELF))
    assert rep.saturated  # only the adjacent pair exists


def test_witness_soundness_on_insertion():
    # inserting through a door keeps every budget honest
    p = self_spiral(2)
    # relax the cap: one more crossing is allowed at k=3
    w, q = can_insert(p, 0, 1, Mode(3, UNRESTRICTED, multi=True), collect_map=True)
    assert w is not None
    assert euler_audit(q)[0]
