import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cut_table, random_graph, random_matroid
from tangletree import corpus
from tangletree.connectivity import (GraphSystem, GroundSet, MatroidSystem, TableSystem, graph_order,
                                     mask_of, matroid_order, matroid_rank, validate_system)
from tangletree.errors import InputError, ResourceError

E_SIDE = 0b000111
F_SIDE = 0b111000


def boundary_by_vertex_sets(edges, side):
    inside = {v for i, e in enumerate(edges) if (side >> i) & 1 for v in e}
    outside = {v for i, e in enumerate(edges) if not (side >> i) & 1 for v in e}
    return len(inside & outside)


class TestGraphOrder:
    def test_bowtie_triangle_side_meets_at_one_vertex(self):
        assert graph_order(corpus.BOWTIE_EDGES, E_SIDE) == 1
        assert boundary_by_vertex_sets(corpus.BOWTIE_EDGES, E_SIDE) == 1

    def test_empty_side(self):
        assert graph_order(corpus.BOWTIE_EDGES, 0) == 0

    def test_bowtie_single_edge(self):
        assert graph_order(corpus.BOWTIE_EDGES, 0b1) == 2

    def test_k4_star(self):
        star = mask_of([0, 1, 2])  # 12, 13, 14
        assert graph_order(corpus.K4_EDGES, star) == 3

    def test_loop_counts_only_when_vertex_meets_other_side(self):
        edges = [(1, 1), (1, 2), (3, 4)]
        assert graph_order(edges, 0b001) == 1
        assert graph_order(edges, 0b101) == 1
        assert graph_order(edges, 0b100) == 0

    def test_system_agrees_with_function_on_all_sides(self, bowtie):
        table = bowtie.order_table()
        for x in range(64):
            assert table[x] == graph_order(bowtie.edges, x) == bowtie.evaluate(x)


class TestMatroid:
    def test_rank_examples(self):
        assert matroid_rank(corpus.TRIANGLE_GF2, 2, 0b111) == 2
        assert matroid_rank(corpus.TRIANGLE_GF2, 2, 0) == 0
        assert matroid_rank(corpus.U24_GF3, 3, 0b1100) == 2

    def test_rank_over_gf2_differs_from_rationals(self):
        # columns (1,1) (1,0) (0,1): dependent over GF(2) and over Q
        assert matroid_rank([[1, 1, 0], [1, 0, 1]], 2, 0b111) == 2
        # (1,1),(1,2) over GF(2) collapse to (1,1),(1,0): still independent
        assert matroid_rank([[1, 1], [1, 2 % 2]], 2, 0b11) == 2
        assert matroid_rank([[1, 2], [2, 1]], 3, 0b11) == 1  # det = -3

    def test_order_examples(self):
        tri = corpus.triangle_matroid()
        assert matroid_order(tri, 0b001) == 1
        assert matroid_order(tri, 0) == 0
        u24 = corpus.u24()
        assert matroid_order(u24, 0b0011) == 2
        assert u24.order(0b0011) == 2

    @pytest.mark.parametrize("matrix,p", [
        ([[1, 0], [0]], 2),
        ([[1, 2]], 2),
        ([[1, 0]], 4),
        ([[1, 0]], 257),
    ])
    def test_malformed_matrices(self, matrix, p):
        with pytest.raises(InputError):
            matroid_rank(matrix, p, 1)


class TestTables:
    def test_lookup(self):
        sys = TableSystem(2, {0: 0, 1: 1, 2: 1, 3: 0})
        assert sys.order(0b01) == 1

    def test_missing_entry_rejected_eagerly(self):
        with pytest.raises(InputError):
            TableSystem(2, {0: 0, 1: 1, 3: 0})

    def test_missing_entry_on_lookup(self):
        sys = TableSystem(2, {0: 0, 1: 1, 3: 0}, validate=False)
        with pytest.raises(InputError):
            sys.order(0b10)

    def test_asymmetric_table_rejected_eagerly(self):
        with pytest.raises(InputError, match="symmetry"):
            TableSystem(2, {0: 0, 1: 1, 2: 2, 3: 0})

    def test_validation_reports_symmetry_violation(self):
        sys = TableSystem(2, {0: 0, 1: 1, 2: 2, 3: 0}, validate=False)
        report = validate_system(sys)
        assert not report.ok
        v = report.violations[0]
        assert (v.kind, v.x, v.y) == ("symmetry", 0b01, 0b10)

    def test_non_submodular_table_is_reported(self):
        # symmetric but f({0}) + f({1}) < f({}) + f({0,1}) after the shift
        sys = TableSystem(2, {0: 5, 1: 1, 2: 1, 3: 5}, validate=False)
        report = validate_system(sys)
        assert [v.kind for v in report.violations] == ["submodularity"]


class TestValidation:
    @pytest.mark.parametrize("make", [corpus.bowtie, corpus.u24, corpus.k4, corpus.triple_bowtie,
                                      corpus.triangle_matroid])
    def test_shipped_instances_pass_exhaustively(self, make):
        report = validate_system(make(), mode="exhaustive")
        assert report.ok, report.violations

    def test_sampled_mode(self):
        report = validate_system(corpus.petersen(), mode="sampled", count=500, seed=1)
        assert report.ok and report.checked_pairs == 500

    def test_exhaustive_respects_cap(self):
        sys = GraphSystem([(i, i + 1) for i in range(18)])
        with pytest.raises(ResourceError):
            validate_system(sys)

    def test_unknown_mode(self, bowtie):
        with pytest.raises(InputError):
            validate_system(bowtie, mode="quick")


def test_ground_set_rejects_duplicates_and_empty():
    with pytest.raises(InputError):
        GroundSet(["a", "a"])
    with pytest.raises(InputError):
        GroundSet([])


def test_parallel_edges_get_distinct_labels():
    sys = GraphSystem([(1, 2), (1, 2), (2, 3)])
    assert sys.ground.labels == ("1-2", "1-2#1", "2-3")


def test_memo_agrees_with_direct_evaluation():
    rng = random.Random(11)
    sys = random_graph(rng, 9, 5)
    for x in rng.sample(range(1 << 9), 60):
        assert sys.order(x) == sys.evaluate(x)
    table = sys.order_table()
    for x in range(1 << 9):
        assert table[x] == sys.evaluate(x) == sys.order(x)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=8))
def test_graph_orders_symmetric_submodular_and_bounded(edges):
    sys = GraphSystem(edges)
    table = sys.order_table()
    full = sys.full
    assert all(table[x] == table[full ^ x] for x in range(full + 1))
    assert table.min() >= 0 and table.max() <= len(sys.vertices)
    assert validate_system(sys).ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]), st.integers(1, 3), st.integers(1, 7))
def test_matroid_connectivity_symmetric_submodular(seed, p, rows, cols):
    sys = random_matroid(random.Random(seed), rows, cols, p)
    assert validate_system(sys).ok
    for x in range(1 << cols):
        assert sys.order(x) == matroid_order(sys, x)


def test_cut_tables_are_connectivity_functions():
    rng = random.Random(2)
    for n in range(2, 8):
        assert validate_system(cut_table(rng, n)).ok
