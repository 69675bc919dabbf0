"""Tests for truncations, coordination sequences and degree bounds."""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shift import (
    DomainError, EncodingError, ErrorCode, Kite, LatticePoint, ResourceError, TreePath, U,
    degree_bounds, euclidean_ratio, gamma_sequence, lattice_gamma_closed_form, make_homogeneous,
    make_infinite_comb, make_tail_graph, neighbors, override_settings, truncate,
)
from shift.families import (
    AlmostRegularTree, AlternatingTree, CombWithTail, ExplicitBeta, FlySwatter, StretchedTree, make_tree,
)

BALL_FAMILIES = [
    make_homogeneous("lattice", d=2),
    make_homogeneous("lattice", d=3),
    make_homogeneous("triangular"),
    make_homogeneous("hexagonal"),
    make_homogeneous("ladder"),
    make_homogeneous("ray"),
    make_tail_graph(Kite(5)),
    make_tail_graph(FlySwatter(4)),
    make_tail_graph(CombWithTail(3)),
    make_infinite_comb(),
    make_tree(AlternatingTree(2, 3)),
    make_tree(AlmostRegularTree(3)),
    make_tree(StretchedTree(2)),
    make_tree(ExplicitBeta((3, 1, 2), 2)),
]


def _as_networkx(trunc):
    g = nx.Graph()
    g.add_nodes_from(range(len(trunc)))
    for i, nbrs in enumerate(trunc.adjacency):
        g.add_edges_from((i, j) for j in nbrs)
    return g


class TestTruncate:
    """BFS balls around the distinguished vertex."""

    def test_lattice_radius_two(self, square_lattice):
        trunc = truncate(square_lattice, 2)
        assert len(trunc) == 13
        assert trunc.vertices[0] == LatticePoint((0, 0))
        assert trunc.interior_radius == 1

    def test_hexagonal_radius_two(self):
        assert len(truncate(make_homogeneous("hexagonal"), 2)) == 10

    def test_radius_zero(self, square_lattice):
        trunc = truncate(square_lattice, 0)
        assert len(trunc) == 1
        assert trunc.adjacency == [[]]

    def test_negative_radius(self, square_lattice):
        with pytest.raises(DomainError) as exc:
            truncate(square_lattice, -1)
        assert exc.value.info.code == ErrorCode.GRAPH_NEGATIVE_RADIUS

    def test_levels_are_graph_distances(self):
        for family in (make_homogeneous("triangular"), make_tail_graph(Kite(4)), make_tree(AlternatingTree(2, 3))):
            trunc = truncate(family, 5)
            dist = nx.single_source_shortest_path_length(_as_networkx(trunc), 0)
            assert [dist[i] for i in range(len(trunc))] == trunc.level

    def test_bidirectional_path_matches_level(self, square_lattice):
        trunc = truncate(square_lattice, 6)
        g = _as_networkx(trunc)
        far = trunc.index_of(LatticePoint((3, -3)))
        path = nx.bidirectional_shortest_path(g, 0, far)
        assert len(path) - 1 == trunc.level[far] == 6

    def test_adjacency_is_symmetric(self):
        trunc = truncate(make_tail_graph(CombWithTail(3)), 6)
        a = trunc.shift_matrix
        assert (a != a.T).nnz == 0

    def test_shift_matrix_includes_last_level_edges(self):
        trunc = truncate(make_homogeneous("triangular"), 1)
        # the six neighbors of the origin form a hexagon
        assert trunc.shift_matrix.nnz == 2 * (6 + 6)

    def test_index_of_outside(self, ray):
        trunc = truncate(ray, 2)
        with pytest.raises(EncodingError) as exc:
            trunc.index_of(U(10))
        assert exc.value.info.code == ErrorCode.GRAPH_INVALID_VERTEX

    def test_resource_cap(self, square_lattice):
        with override_settings(max_truncation_vertices=50):
            with pytest.raises(ResourceError) as exc:
                truncate(square_lattice, 10)
        assert exc.value.info.code == ErrorCode.GRAPH_RESOURCE_CAP

    def test_foreign_vertex(self, square_lattice):
        with pytest.raises(EncodingError):
            neighbors(square_lattice, TreePath())

    def test_wrong_dimension(self, square_lattice):
        with pytest.raises(EncodingError):
            neighbors(square_lattice, LatticePoint((0, 0, 0)))


class TestGammaSequence:
    """Coordination sequences by BFS."""

    @pytest.mark.parametrize("kind,d,slope", [("lattice", 2, 4), ("triangular", None, 6), ("hexagonal", None, 3)])
    def test_linear_growth(self, kind, d, slope):
        counts = gamma_sequence(make_homogeneous(kind, d=d), 50).counts
        assert counts[0] == 1
        assert all(counts[n] == slope * n for n in range(1, 51))

    def test_ladder_and_ray(self):
        assert gamma_sequence(make_homogeneous("ladder"), 5).counts == (1, 2, 2, 2, 2, 2)
        assert gamma_sequence(make_homogeneous("ray"), 3).counts == (1, 1, 1, 1)

    def test_lattice_dimension_three(self):
        assert gamma_sequence(make_homogeneous("lattice", d=3), 3).counts == (1, 6, 18, 38)

    def test_lattice_dimension_one(self):
        assert gamma_sequence(make_homogeneous("lattice", d=1), 4).counts == (1, 2, 2, 2, 2)

    def test_kite(self):
        assert gamma_sequence(make_tail_graph(Kite(3)), 4).counts == (1, 3, 2, 1, 1)

    def test_infinite_comb(self):
        assert gamma_sequence(make_infinite_comb(), 4).counts == (1, 2, 2, 2, 2)

    def test_alternating_tree(self, alternating_24):
        counts = gamma_sequence(alternating_24, 6).counts
        assert counts == (1, 2, 8, 16, 64, 128, 512)
        assert all(counts[2 * k] == 8 ** k for k in range(4))

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(BALL_FAMILIES), st.integers(min_value=0, max_value=6))
    def test_counts_sum_to_ball_size(self, family, radius):
        assert sum(gamma_sequence(family, radius).counts) == len(truncate(family, radius))

    def test_negative_nmax(self, ray):
        with pytest.raises(DomainError):
            gamma_sequence(ray, -1)

    def test_csv(self, square_lattice, compare_or_write_snapshot):
        csv = gamma_sequence(square_lattice, 5).to_csv()
        assert csv.splitlines()[:3] == ["n,gamma", "0,1", "1,4"]
        compare_or_write_snapshot("gamma_lattice_d2.csv", csv)

    def test_record(self, square_lattice):
        assert gamma_sequence(square_lattice, 2).to_record() == {"family": "lattice(d=2)", "counts": [1, 4, 8]}


class TestClosedForm:
    """The octahedral count agrees with BFS only up to d = 2."""

    @pytest.mark.parametrize("d", [1, 2])
    def test_agrees_low_dimension(self, d):
        counts = gamma_sequence(make_homogeneous("lattice", d=d), 12).counts
        assert [lattice_gamma_closed_form(d, n) for n in range(13)] == list(counts)

    def test_diverges_in_dimension_three(self):
        assert lattice_gamma_closed_form(3, 2) == 18
        assert lattice_gamma_closed_form(3, 3) == 30


class TestEuclideanRatio:

    def test_hexagonal(self):
        seq = gamma_sequence(make_homogeneous("hexagonal"), 11)
        assert euclidean_ratio(seq, 10) == pytest.approx(63 / 166)

    def test_ladder(self):
        seq = gamma_sequence(make_homogeneous("ladder"), 11)
        assert euclidean_ratio(seq, 10) == pytest.approx(4 / 21)

    @pytest.mark.parametrize("kind,d", [("lattice", 2), ("triangular", None), ("hexagonal", None),
                                        ("ladder", None), ("ray", None)])
    def test_tends_to_zero(self, kind, d):
        seq = gamma_sequence(make_homogeneous(kind, d=d), 101)
        assert euclidean_ratio(seq, 100) < 0.05

    def test_out_of_range(self, square_lattice):
        seq = gamma_sequence(square_lattice, 3)
        with pytest.raises(DomainError) as exc:
            euclidean_ratio(seq, 3)
        assert exc.value.info.code == ErrorCode.GRAPH_INDEX_RANGE


class TestDegreeBounds:

    @pytest.mark.parametrize("radius", [3, 5])
    def test_lattice(self, square_lattice, radius):
        assert degree_bounds(truncate(square_lattice, radius)) == (4, 4)

    @pytest.mark.parametrize("n,radius", [(3, 2), (4, 6)])
    def test_kite(self, n, radius):
        assert degree_bounds(truncate(make_tail_graph(Kite(n)), radius)) == (3, 2)

    def test_tree_root_counts(self):
        # the root has m children and no parent
        trunc = truncate(make_tree(AlternatingTree(2, 4)), 4)
        assert degree_bounds(trunc) == (5, 2)
        below_root = [len(a) for i, a in enumerate(trunc.adjacency) if 0 < trunc.level[i] <= trunc.interior_radius]
        assert (max(below_root), min(below_root)) == (5, 3)

    def test_empty_interior(self, ray):
        with pytest.raises(DomainError) as exc:
            degree_bounds(truncate(ray, 0))
        assert exc.value.info.code == ErrorCode.GRAPH_EMPTY_INTERIOR

    def test_degrees_never_exceed_bound(self):
        for family in (make_homogeneous("ladder"), make_tail_graph(Kite(5)), make_infinite_comb()):
            trunc = truncate(family, 8)
            top, _ = degree_bounds(trunc)
            assert top <= family.degree_bound
            assert np.all(np.asarray(trunc.shift_matrix.sum(axis=1)).ravel() <= family.degree_bound)
