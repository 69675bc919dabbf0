"""Tests for graph family constructors and neighbor oracles."""

import pytest
from hypothesis import given, settings, strategies as st

from shift import (
    ROOT, AlmostRegularTree, AlternatingTree, CombWithTail, DomainError, ErrorCode, ExplicitBeta,
    FlySwatter, Kite, LadderPoint, LatticePoint, PlanarPoint, StretchedTree, TailKind, TailShape,
    TreePath, U, V, W, make_homogeneous, make_infinite_comb, make_tail_graph, make_tree, neighbors,
    truncate,
)
from shift.families import T_SEQUENCES, is_bifurcation_level


class TestHomogeneous:
    """Lattices, tessellations, the ladder and the ray."""

    def test_lattice_neighbor_order(self):
        lattice = make_homogeneous("lattice", d=2)
        assert neighbors(lattice, LatticePoint((0, 0))) == [
            LatticePoint((1, 0)), LatticePoint((-1, 0)), LatticePoint((0, 1)), LatticePoint((0, -1)),
        ]
        assert lattice.degree_bound == 4
        assert lattice.label == "lattice(d=2)"

    def test_triangular(self):
        tri = make_homogeneous("triangular")
        assert len(neighbors(tri, PlanarPoint(2, -1))) == 6

    def test_hexagonal_vertical_edge(self):
        hexa = make_homogeneous("hexagonal")
        assert PlanarPoint(0, 1) in neighbors(hexa, PlanarPoint(0, 0))
        assert PlanarPoint(1, -1) in neighbors(hexa, PlanarPoint(1, 0))

    def test_ladder(self):
        ladder = make_homogeneous("ladder")
        assert neighbors(ladder, LadderPoint(0, 0)) == [LadderPoint(1, 0), LadderPoint(0, 1)]
        assert neighbors(ladder, LadderPoint(3, 1)) == [LadderPoint(2, 1), LadderPoint(4, 1), LadderPoint(3, 0)]

    def test_ray(self):
        ray = make_homogeneous("ray")
        assert neighbors(ray, U(1)) == [U(2)]
        assert neighbors(ray, U(2)) == [U(1), U(3)]

    def test_lattice_needs_dimension(self):
        with pytest.raises(DomainError) as exc:
            make_homogeneous("lattice")
        assert exc.value.info.code == ErrorCode.GRAPH_INVALID_PARAMS

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            make_homogeneous("penrose")

    def test_lattice_dimension_positive(self):
        with pytest.raises(DomainError):
            make_homogeneous("lattice", d=0)


class TestTailGraphs:
    """Finite graphs with an infinite tail."""

    def test_kite_finite_part(self):
        kite = make_tail_graph(Kite(3))
        assert kite.finite_part() == {
            V(0): [V(1), V(3)], V(1): [V(0), V(2)], V(2): [V(1), V(3)], V(3): [V(2), V(0)],
        }
        assert neighbors(kite, V(0)) == [V(1), V(3), U(1)]
        assert neighbors(kite, U(1)) == [V(0), U(2)]

    def test_fly_swatter_degree(self):
        fly = make_tail_graph(FlySwatter(4))
        assert fly.degree(V(0)) == 5 == fly.degree_bound
        assert fly.degree(V(2)) == 4

    def test_comb(self):
        comb = make_tail_graph(CombWithTail(3))
        assert comb.distinguished_vertex == V(1)
        assert neighbors(comb, V(1)) == [V(2), W(1)]
        assert neighbors(comb, V(2)) == [V(1), V(3), W(2)]
        assert neighbors(comb, V(3)) == [V(2), W(3), U(1)]
        assert neighbors(comb, W(2)) == [V(2)]
        assert neighbors(comb, U(1)) == [V(3), U(2)]

    def test_comb_has_no_v0(self):
        assert not make_tail_graph(CombWithTail(3)).contains(V(0))

    def test_kite_has_no_teeth(self):
        assert not make_tail_graph(Kite(3)).contains(W(1))

    def test_n_at_least_two(self):
        with pytest.raises(DomainError):
            TailKind(TailShape.KITE, 1)

    def test_labels(self):
        assert make_tail_graph(FlySwatter(3)).label == "fly-swatter(n=3)"

    def test_infinite_comb(self):
        comb = make_infinite_comb()
        assert neighbors(comb, V(1)) == [V(2), W(1)]
        assert neighbors(comb, V(4)) == [V(3), V(5), W(4)]
        assert neighbors(comb, W(4)) == [V(4)]


class TestTreeSpecs:
    """Level-regular rooted trees."""

    def test_alternating_beta(self):
        tree = make_tree(AlternatingTree(2, 4))
        assert [tree.beta(j) for j in range(4)] == [2, 4, 2, 4]
        assert tree.degree_bound == 5
        assert tree.label == "alternating-tree(m=2,M=4)"

    def test_level_counts(self):
        assert make_tree(AlternatingTree(1, 3)).level_counts(6) == [1, 1, 3, 3, 9, 9, 27]

    def test_almost_regular(self):
        tree = make_tree(AlmostRegularTree(3))
        assert tree.level_counts(3) == [1, 3, 6, 12]
        assert tree.degree_bound == 3
        assert make_tree(AlmostRegularTree(3, root_children=2)).level_counts(3) == [1, 2, 4, 8]

    def test_stretched_squares_levels(self):
        spec = StretchedTree(2)
        bifurcations = [level for level in range(40) if is_bifurcation_level(spec, level)]
        assert bifurcations == [0, 1, 4, 35]

    def test_stretched_first_child_bifurcates(self):
        tree = make_tree(StretchedTree(2))
        assert [tree.beta(j) for j in range(6)] == [2, 2, 1, 1, 2, 1]

    def test_stretched_explicit_prefix_repeats(self):
        spec = StretchedTree(3, (1, 2))
        assert [spec.t_value(j) for j in range(1, 5)] == [1, 2, 2, 2]
        assert [level for level in range(12) if is_bifurcation_level(spec, level)] == [0, 1, 4, 7, 10]

    def test_named_sequences(self):
        assert [T_SEQUENCES["squares"](j) for j in range(1, 5)] == [1, 2, 16, 512]
        assert [T_SEQUENCES["selfpow"](j) for j in range(1, 5)] == [1, 2, 9, 64]

    def test_explicit_beta(self):
        tree = make_tree(ExplicitBeta((3, 1, 2), 2))
        assert tree.level_counts(5) == [1, 3, 3, 6, 12, 24]
        assert tree.degree_bound == 4

    def test_contains(self, alternating_24):
        assert alternating_24.contains(TreePath((1, 3)))
        assert not alternating_24.contains(TreePath((2,)))
        assert not alternating_24.contains(LatticePoint((0,)))

    def test_parent_first(self, alternating_24):
        v = TreePath((1,))
        assert neighbors(alternating_24, v) == [ROOT] + [v.child(i) for i in range(4)]
        assert neighbors(alternating_24, ROOT) == [TreePath((0,)), TreePath((1,))]

    @pytest.mark.parametrize("build", [
        lambda: AlternatingTree(0, 2),
        lambda: AlmostRegularTree(1),
        lambda: AlmostRegularTree(3, root_children=0),
        lambda: StretchedTree(1),
        lambda: StretchedTree(2, "fibonacci"),
        lambda: StretchedTree(2, ()),
        lambda: ExplicitBeta((2, 0), 2),
    ])
    def test_invalid_specs(self, build):
        with pytest.raises(DomainError) as exc:
            build()
        assert exc.value.info.code == ErrorCode.KERNEL_INVALID_SPEC


FAMILIES = [
    make_homogeneous("lattice", d=2),
    make_homogeneous("lattice", d=3),
    make_homogeneous("triangular"),
    make_homogeneous("hexagonal"),
    make_homogeneous("ladder"),
    make_homogeneous("ray"),
    make_tail_graph(Kite(4)),
    make_tail_graph(FlySwatter(3)),
    make_tail_graph(CombWithTail(3)),
    make_infinite_comb(),
    make_tree(AlternatingTree(2, 3)),
    make_tree(StretchedTree(2)),
]


class TestOracleProperties:
    """Every oracle is symmetric, deterministic and within its degree bound."""

    @pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label)
    def test_symmetric_on_a_thousand_vertices(self, family):
        radius = 1
        while True:
            trunc = truncate(family, radius)
            interior = [v for i, v in enumerate(trunc.vertices) if trunc.is_interior(i)]
            if len(interior) >= 1000:
                break
            radius *= 2
        for v in interior:
            for u in neighbors(family, v):
                assert v in neighbors(family, u)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(FAMILIES), st.integers(min_value=1, max_value=4))
    def test_symmetric(self, family, radius):
        trunc = truncate(family, radius)
        for i, v in enumerate(trunc.vertices):
            if trunc.level[i] >= radius:
                continue
            for u in neighbors(family, v):
                assert v in neighbors(family, u)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(FAMILIES), st.integers(min_value=0, max_value=3))
    def test_deterministic_and_bounded(self, family, radius):
        for v in truncate(family, radius).vertices:
            first = neighbors(family, v)
            assert first == neighbors(family, v)
            assert len(first) <= family.degree_bound
            assert len(set(first)) == len(first)
