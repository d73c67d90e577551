import random
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import cut_table, random_graph
from tangletree import corpus
from tangletree.connectivity import GraphSystem
from tangletree.construct import greedy_extend, prune_minimal
from tangletree.errors import PreconditionError
from tangletree.separations import Separation, is_nested, symmetric_closure
from tangletree.tangles import all_tangles, distinguishes
from tangletree.treedec import (check_structure, edge_separation, home_subtree, lives_in,
                                nested_to_tree, tree_is_nested, verify_corollary)

E_SIDE, F_SIDE = 0b000111, 0b111000
T1, T2, T3 = 0b000000111, 0b000111000, 0b111000000


def closure(system, sides):
    return symmetric_closure(Separation.of(system, x) for x in sides)


def random_nested_family(rng, system, attempts=40):
    """A random symmetric nested set, grown by rejection."""
    chosen = []
    for _ in range(attempts):
        r = rng.random()
        x = 0 if r < 0.05 else system.full if r < 0.1 else rng.getrandbits(system.n)
        s = Separation.of(system, x)
        if all(is_nested(s, t) for t in chosen):
            chosen.append(s)
    return symmetric_closure(chosen)


def connected_subsets(td):
    for r in range(1, len(td.parts) + 1):
        for nodes in combinations(td.nodes, r):
            nodes = set(nodes)
            start = next(iter(nodes))
            seen, todo = {start}, [start]
            while todo:
                x = todo.pop()
                for k in td.adj[x]:
                    y = td.other(k, x)
                    if y in nodes and y not in seen:
                        seen.add(y)
                        todo.append(y)
            if seen == nodes:
                yield frozenset(nodes)


class TestNestedToTree:
    def test_empty_set_gives_one_node(self, bowtie):
        td = nested_to_tree(bowtie.ground, set())
        assert td.parts == [bowtie.full] and td.edges == []

    def test_bowtie(self, bowtie):
        td = nested_to_tree(bowtie.ground, closure(bowtie, [E_SIDE]))
        assert td.parts == [E_SIDE, F_SIDE]
        (e,) = td.edges
        assert (e.u, e.v, e.sep.order) == (0, 1, 1)

    def test_three_element_chain(self):
        sys = GraphSystem([(1, 2), (2, 3), (3, 4)])
        td = nested_to_tree(sys.ground, closure(sys, [0b001, 0b011]))
        assert sorted(td.parts) == [0b001, 0b010, 0b100]
        assert td.is_tree() and len(td.edges) == 2
        degrees = sorted(len(td.adj[t]) for t in td.nodes)
        assert degrees == [1, 1, 2]
        s = edge_separation(td, 0, sys)
        assert (s.a, s.b) == (0b001, 0b110)

    def test_trivial_bipartition_gives_empty_leaf(self, bowtie):
        td = nested_to_tree(bowtie.ground, closure(bowtie, [0, E_SIDE]))
        assert sorted(td.parts) == [0, E_SIDE, F_SIDE]
        assert td.separations() == closure(bowtie, [0, E_SIDE])

    def test_rejects_crossing_and_asymmetric_sets(self, k4):
        with pytest.raises(PreconditionError, match="not nested"):
            nested_to_tree(k4.ground, closure(k4, [0b000111, 0b011001]))
        with pytest.raises(PreconditionError, match="symmetric"):
            nested_to_tree(k4.ground, {Separation.of(k4, 0b1)})

    def test_single_node_has_no_edges(self, k4):
        td = nested_to_tree(k4.ground, set())
        assert list(td.edges) == [] and check_structure(td, k4) == []


@pytest.mark.parametrize("n", range(3, 11))
def test_roundtrip_random_families(n):
    rng = random.Random(n)
    sys = GraphSystem([(rng.randrange(6), rng.randrange(6)) for _ in range(n)])
    for _ in range(100):
        fam = random_nested_family(rng, sys)
        td = nested_to_tree(sys.ground, fam)
        assert td.is_partition() and td.is_tree()
        assert td.separations() == fam
        assert tree_is_nested(td)
        assert check_structure(td, sys) == []


class TestLiving:
    def test_bowtie_homes(self, bowtie):
        cat = all_tangles(bowtie)
        td = nested_to_tree(bowtie.ground, closure(bowtie, [E_SIDE]))
        p = next(t for t in cat.levels[2] if t.is_small(F_SIDE))
        q = next(t for t in cat.levels[2] if t.is_small(E_SIDE))
        e_node = td.parts.index(E_SIDE)
        assert home_subtree(bowtie, td, p).nodes == {e_node}
        assert lives_in(bowtie, td, p, {e_node})
        assert not lives_in(bowtie, td, q, {e_node})
        for t in cat:
            assert lives_in(bowtie, td, t, set(td.nodes))

    def test_single_node(self, k4):
        td = nested_to_tree(k4.ground, set())
        for t in all_tangles(k4):
            assert home_subtree(k4, td, t).nodes == {0}

    def test_triple_bowtie_pruned_path(self, triple_bowtie):
        cat = all_tangles(triple_bowtie)
        td = nested_to_tree(triple_bowtie.ground, closure(triple_bowtie, [T2, T3]))
        assert sorted(td.parts) == [T1, T2, T3]
        p3 = next(t for t in cat.levels[2] if t.is_big(T3, triple_bowtie.full))
        assert home_subtree(triple_bowtie, td, p3).nodes == {td.parts.index(T3)}

    def test_disconnected_set_does_not_qualify(self, triple_bowtie):
        td = nested_to_tree(triple_bowtie.ground, closure(triple_bowtie, [T2, T3]))
        ends = {td.parts.index(T2), td.parts.index(T3)}
        for t in all_tangles(triple_bowtie):
            assert not lives_in(triple_bowtie, td, t, ends)

    def test_empty_node_set(self, bowtie):
        td = nested_to_tree(bowtie.ground, set())
        with pytest.raises(ValueError):
            lives_in(bowtie, td, all_tangles(bowtie).tangles[0], set())


def living_properties(system):
    cat = all_tangles(system)
    rng = random.Random(system.n)
    for _ in range(3):
        td = nested_to_tree(system.ground, random_nested_family(rng, system, attempts=12))
        if len(td.parts) > 7:
            continue
        subsets = list(connected_subsets(td))
        homes = {}
        for t in cat:
            home = home_subtree(system, td, t).nodes
            homes[t] = home
            living = [s for s in subsets if lives_in(system, td, t, s)]
            assert home in living
            assert home == frozenset.intersection(*living)
            for e in td.edges:
                if e.u in home and e.v in home:
                    assert e.sep.order >= t.order
        for t1, t2 in combinations(cat, 2):
            if any(distinguishes(s, t1, t2) for s in td.separations()):
                assert not homes[t1] & homes[t2]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=3, max_size=9))
def test_home_subtree_is_least_living_set(edges):
    living_properties(GraphSystem(edges))


@pytest.mark.parametrize("make", [corpus.bowtie, corpus.triple_bowtie, corpus.k4, corpus.petersen])
def test_home_subtree_on_corpus(make):
    living_properties(make())


class TestCorollary:
    def pipeline(self, system):
        cat = all_tangles(system)
        n = prune_minimal(cat, greedy_extend(system, cat))
        return cat, nested_to_tree(system.ground, n.seps())

    @pytest.mark.parametrize("make,nodes", [(corpus.bowtie, 2), (corpus.triple_bowtie, 3), (corpus.k4, 1)])
    def test_pipeline_passes(self, make, nodes):
        sys = make()
        cat, td = self.pipeline(sys)
        rep = verify_corollary(sys, td, cat)
        assert rep.passed and len(td.parts) == nodes

    def test_unpruned_star_fails_at_empty_center(self, triple_bowtie):
        cat = all_tangles(triple_bowtie)
        td = nested_to_tree(triple_bowtie.ground, greedy_extend(triple_bowtie, cat).seps())
        rep = verify_corollary(triple_bowtie, td, cat)
        assert not rep.passed
        (center,) = rep.empty_nodes
        assert td.parts[center] == 0 and len(td.adj[center]) == 3
        assert rep.messages() == [f"no maximal tangle lives in node {center}"]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_random_pipelines(self, seed):
        rng = random.Random(seed)
        if seed % 2:
            sys = cut_table(rng, rng.randint(3, 9), density=0.4)
        else:
            sys = random_graph(rng, rng.randint(3, 10), rng.randint(3, 7))
        cat, td = self.pipeline(sys)
        assume(cat.maximal())
        assert verify_corollary(sys, td, cat).passed

    def test_tangle_free_system_cannot_pass(self):
        # every bipartition has order 0, and no tangle can orient all of them
        sys = GraphSystem([(1, 2), (3, 4), (5, 6), (7, 8)])
        cat, td = self.pipeline(sys)
        assert len(cat) == 0 and len(td.parts) == 1
        rep = verify_corollary(sys, td, cat)
        assert not rep.passed
        assert rep.messages() == ["there are no tangles, so no part can host one"]
