"""Tests for the dynamic multigraph substrate."""

from __future__ import annotations

import random

import pytest

from ksmatch.multigraph import MultiGraph, read_edge_list, write_edge_list

K4_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


class ShadowGraph:
    """Independent dict-based model used as an oracle for MultiGraph."""

    def __init__(self, n, pairs):
        self.edges = {}
        self.live = set(range(n))
        for i, (u, v) in enumerate(pairs):
            assert u != v
            self.edges[i] = (u, v)
        self.next_vertex = n

    def degrees(self):
        d = {v: 0 for v in self.live}
        for u, v in self.edges.values():
            d[u] += 1
            d[v] += 1
        return d

    def remove_edge(self, e):
        del self.edges[e]

    def remove_vertex(self, v):
        removed = [e for e, (a, b) in self.edges.items() if v in (a, b)]
        for e in removed:
            del self.edges[e]
        self.live.remove(v)
        return removed

    def contract(self, members):
        mset = set(members)
        vc = self.next_vertex
        self.next_vertex += 1
        purged = []
        for e, (a, b) in list(self.edges.items()):
            ina, inb = a in mset, b in mset
            if ina and inb:
                purged.append(e)
                del self.edges[e]
            elif ina:
                self.edges[e] = (vc, b)
            elif inb:
                self.edges[e] = (a, vc)
        self.live -= mset
        self.live.add(vc)
        return vc, purged

    def ex4(self):
        return sum(max(d - 4, 0) for d in self.degrees().values())


def same_state(g: MultiGraph, s: ShadowGraph):
    assert g.n == len(s.live)
    assert g.e == len(s.edges)
    sd = s.degrees()
    for v in s.live:
        assert g.degree(v) == sd[v]
    for e, (a, b) in s.edges.items():
        assert set(g.endpoints(e)) == {a, b} or g.endpoints(e) == (a, b)
        assert tuple(sorted(g.endpoints(e))) == tuple(sorted((a, b)))
    assert g.ex4 == s.ex4()
    g.check()


# ----------------------------------------------------------------------
# build

def test_build_triple_bond():
    g = MultiGraph(2, [(0, 1), (0, 1), (0, 1)])
    assert g.degree(0) == 3 and g.degree(1) == 3
    assert g.e == 3 and g.n == 2
    assert g.ex4 == 0


def test_build_k4_buckets():
    g = MultiGraph(4, K4_PAIRS)
    assert g.bucket_size(3) == 4
    assert g.min_degree() == 3 and g.max_degree() == 3


def test_build_rejects_loop():
    with pytest.raises(ValueError):
        MultiGraph(2, [(0, 0)])


def test_build_rejects_out_of_range():
    with pytest.raises(ValueError):
        MultiGraph(2, [(0, 2)])


# ----------------------------------------------------------------------
# remove_edge

def test_remove_edge_k4():
    g = MultiGraph(4, K4_PAIRS)
    g.remove_edge(0)
    degs = sorted(g.degree(v) for v in range(4))
    assert degs == [2, 2, 3, 3]


def test_remove_edge_triple_bond():
    g = MultiGraph(2, [(0, 1), (0, 1), (0, 1)])
    g.remove_edge(1)
    assert (g.degree(0), g.degree(1)) == (2, 2)
    assert g.e == 2


def test_remove_edge_degree_sum_drops_by_two():
    rnd = random.Random(7)
    for _ in range(50):
        n = rnd.randrange(3, 9)
        pairs = []
        for _ in range(rnd.randrange(2, 14)):
            u, v = rnd.sample(range(n), 2)
            pairs.append((u, v))
        g = MultiGraph(n, pairs)
        before = sum(g.degree(v) for v in g.live_vertices())
        g.remove_edge(rnd.randrange(len(pairs)))
        after = sum(g.degree(v) for v in g.live_vertices())
        assert before - after == 2
        g.check()


def test_remove_dead_edge_errors():
    g = MultiGraph(2, [(0, 1)])
    g.remove_edge(0)
    with pytest.raises(ValueError):
        g.remove_edge(0)


# ----------------------------------------------------------------------
# remove_vertex

def test_remove_isolated_vertex():
    g = MultiGraph(1, [])
    assert g.remove_vertex(0) == []
    assert g.n == 0


def test_remove_vertex_k4_leaves_triangle():
    g = MultiGraph(4, K4_PAIRS)
    removed = g.remove_vertex(0)
    assert len(removed) == 3
    assert g.n == 3 and g.e == 3
    assert all(g.degree(v) == 2 for v in (1, 2, 3))


def test_remove_vertex_parallel_pair_neighbor():
    # 0 joined to 1 by two parallel edges plus 1-2 spoke
    g = MultiGraph(3, [(0, 1), (0, 1), (1, 2)])
    g.remove_vertex(0)
    assert g.degree(1) == 1
    assert g.degree(2) == 1


def test_remove_dead_vertex_errors():
    g = MultiGraph(2, [(0, 1)])
    g.remove_vertex(0)
    with pytest.raises(ValueError):
        g.remove_vertex(0)


# ----------------------------------------------------------------------
# contract

def test_contract_path_center():
    # x(0)-y(1)-z(2); x also joined to 3,4; z also joined to 5,6
    pairs = [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)]
    g = MultiGraph(7, pairs)
    vc, purged = g.contract([0, 1, 2])
    assert g.degree(vc) == 4
    assert sorted(purged) == [0, 1]
    assert sorted(g.other_endpoint(e, vc) for e in g.incident_edges(vc)) == [3, 4, 5, 6]


def test_contract_whole_triangle():
    g = MultiGraph(3, [(0, 1), (1, 2), (0, 2)])
    vc, purged = g.contract([0, 1, 2])
    assert g.degree(vc) == 0
    assert len(purged) == 3
    assert g.e == 0 and g.n == 1


def test_contract_parallel_pair_with_externals():
    g = MultiGraph(4, [(0, 1), (0, 1), (0, 2), (1, 3)])
    vc, purged = g.contract([0, 1])
    assert g.degree(vc) == 2
    assert len(purged) == 2


def test_contract_keeps_parallel_to_common_outside_vertex():
    # both members joined to 2; after contraction those become parallel
    g = MultiGraph(3, [(0, 1), (0, 2), (1, 2)])
    vc, purged = g.contract([0, 1])
    assert purged == [0]
    assert g.degree(vc) == 2
    assert g.degree(2) == 2
    assert all(g.other_endpoint(e, vc) == 2 for e in g.incident_edges(vc))


def test_contract_errors():
    g = MultiGraph(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        g.contract([0])
    g.remove_vertex(2)
    with pytest.raises(ValueError):
        g.contract([0, 2])


def test_contract_degree_formula_random():
    # degree(new) = sum of member degrees - 2 * internal edge count
    rnd = random.Random(1234)
    for _ in range(1000):
        n = rnd.randrange(3, 10)
        pairs = []
        for _ in range(rnd.randrange(1, 16)):
            u, v = rnd.sample(range(n), 2)
            pairs.append((u, v))
        g = MultiGraph(n, pairs)
        k = rnd.randrange(2, n + 1)
        members = rnd.sample(range(n), k)
        dsum = sum(g.degree(m) for m in members)
        mset = set(members)
        internal = sum(1 for u, v in pairs if u in mset and v in mset)
        vc, purged = g.contract(members)
        assert len(purged) == internal
        assert g.degree(vc) == dsum - 2 * internal
        g.check()


# ----------------------------------------------------------------------
# random selection

def test_pick_uniform_k4_frequencies():
    g = MultiGraph(4, K4_PAIRS)
    rng = random.Random(42)
    counts = [0, 0, 0, 0]
    for _ in range(30000):
        counts[g.pick_uniform("max", rng)] += 1
    for c in counts:
        assert abs(c / 30000 - 0.25) <= 0.02


def test_pick_incident_edge_multiplicity():
    # 0 has a parallel pair to 1 and a single edge to 2
    g = MultiGraph(3, [(0, 1), (0, 1), (0, 2)])
    rng = random.Random(99)
    hits = 0
    for _ in range(10000):
        e = g.pick_incident_edge(0, rng)
        if g.other_endpoint(e, 0) == 1:
            hits += 1
    assert abs(hits / 10000 - 2 / 3) <= 0.03


def test_pick_empty_class_errors():
    g = MultiGraph(4, K4_PAIRS)
    rng = random.Random(0)
    with pytest.raises(ValueError):
        g.pick_uniform(1, rng)


# ----------------------------------------------------------------------
# oracle fuzz: random op sequences against the shadow model

def test_fuzz_against_shadow_model():
    rnd = random.Random(20240816)
    for trial in range(300):
        n = rnd.randrange(2, 12)
        pairs = []
        for _ in range(rnd.randrange(1, 20)):
            u, v = rnd.sample(range(n), 2)
            pairs.append((u, v))
        g = MultiGraph(n, pairs)
        s = ShadowGraph(n, pairs)
        same_state(g, s)
        for _ in range(rnd.randrange(1, 12)):
            live_v = sorted(s.live)
            live_e = sorted(s.edges)
            ops = []
            if live_e:
                ops.append("edge")
            if live_v:
                ops.append("vertex")
            if len(live_v) >= 2:
                ops.append("contract")
            if not ops:
                break
            op = rnd.choice(ops)
            if op == "edge":
                e = rnd.choice(live_e)
                g.remove_edge(e)
                s.remove_edge(e)
            elif op == "vertex":
                v = rnd.choice(live_v)
                got = g.remove_vertex(v)
                want = s.remove_vertex(v)
                assert sorted(got) == sorted(want)
            else:
                k = rnd.randrange(2, len(live_v) + 1)
                members = rnd.sample(live_v, k)
                vc_g, purged_g = g.contract(members)
                vc_s, purged_s = s.contract(members)
                assert vc_g == vc_s
                assert sorted(purged_g) == sorted(purged_s)
            same_state(g, s)


def test_no_live_loop_after_contract():
    rnd = random.Random(5)
    for _ in range(200):
        n = rnd.randrange(3, 9)
        pairs = [tuple(rnd.sample(range(n), 2)) for _ in range(rnd.randrange(2, 12))]
        g = MultiGraph(n, pairs)
        members = rnd.sample(range(n), rnd.randrange(2, n + 1))
        g.contract(members)
        for e in g.live_edges():
            a, b = g.endpoints(e)
            assert a != b


def test_original_endpoints_survive_contraction():
    pairs = [(0, 1), (1, 2), (0, 3), (2, 3)]
    g = MultiGraph(4, pairs)
    g.contract([1, 2])
    for e, (u, v) in enumerate(pairs):
        assert g.original_endpoints(e) == (u, v)


def test_initial_copy_restores_build_state():
    g = MultiGraph(4, K4_PAIRS)
    fp0 = g.fingerprint()
    g.remove_vertex(0)
    g.contract([1, 2])
    h = g.initial_copy()
    assert h.fingerprint() == fp0


# ----------------------------------------------------------------------
# edge-list text format

def test_edge_list_round_trip(tmp_path):
    path = tmp_path / "g.edges"
    write_edge_list(path, 4, K4_PAIRS)
    n, pairs = read_edge_list(path)
    assert n == 4
    assert pairs == K4_PAIRS


def test_edge_list_header_mismatch(tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("3 5\n0 1\n1 2\n")
    with pytest.raises(ValueError):
        read_edge_list(path)
