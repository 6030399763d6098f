import itertools
from fractions import Fraction

import numpy as np
import pytest

from twinpoly import config
from twinpoly.core.polytope import (
    Facet,
    HRep,
    VRep,
    canonicalize,
    facets,
    hull_facets,
    hull_volume,
    in_orthant,
    interior_lattice_points,
    is_centrally_symmetric,
    is_reflexive,
    polar_dual,
    restrict_to_orthant,
    vertex_enumeration,
)
from twinpoly.errors import CapacityError, DimensionError, UnboundedError


def cube(dim, low=0, high=1):
    return VRep(itertools.product((low, high), repeat=dim))


def region_volume(v):
    if not len(v):
        return 0
    try:
        return hull_volume(v)
    except DimensionError:
        return 0


def cross_polytope(dim):
    points = []
    for k in range(dim):
        for sign in (1, -1):
            point = [0] * dim
            point[k] = sign
            points.append(point)
    return VRep(points)


class TestVRep:
    def test_dedup_and_sort(self):
        v = VRep([[1, 0], [0, 1], [1, 0]])
        assert len(v) == 2
        assert v.vertices == ((0, 1), (1, 0))
        assert [0, 1] in v

    def test_exact_entries(self):
        v = VRep([["1/2", "-2/4"]])
        assert v[0] == (Fraction(1, 2), Fraction(-1, 2))
        assert not v.is_integral()

    def test_mixed_lengths(self):
        with pytest.raises(ValueError):
            VRep([[0, 0], [1]])

    def test_empty_needs_dim(self):
        with pytest.raises(ValueError):
            VRep([])
        assert len(VRep([], dim=3)) == 0

    def test_negate(self):
        v = VRep([[1, 2], [0, -1]])
        assert v.negate().equals(VRep([[-1, -2], [0, 1]]))

    def test_dict(self):
        v = VRep([[0, "1/2"], [1, 0]])
        assert v.to_dict() == {"dim": 2, "vertices": [["0/1", "1/2"], ["1/1", "0/1"]]}
        assert VRep.from_dict(v.to_dict()).equals(v)

    def test_array(self):
        array = np.asarray(VRep([[1, 0], [0, 1]]))
        assert array.shape == (2, 2)
        assert array[0, 1] == Fraction(1)


class TestHRep:
    def test_canonical_rows(self):
        h = HRep([([2, 4], 2), ([1, 2], 1), (["1/2", 0], 3)])
        assert h.rows == (((1, 0), Fraction(6)), ((1, 2), Fraction(1)))

    def test_zero_normal(self):
        with pytest.raises(ValueError):
            HRep([([0, 0], 1)])

    def test_contains(self):
        h = hull_facets(cube(2))
        assert h.contains(["1/2", "1/2"], strict=True)
        assert h.contains([1, 0])
        assert not h.contains([1, 0], strict=True)
        assert not h.contains([2, 0])

    def test_dict(self):
        h = HRep([([1, 0], "1/2"), ([-1, 0], 0)])
        assert h.to_dict() == {
            "dim": 2,
            "facets": [
                {"normal": [-1, 0], "rhs": "0/1"},
                {"normal": [1, 0], "rhs": "1/2"},
            ],
        }
        assert HRep.from_dict(h.to_dict()).equals(h)


class TestHull:
    def test_triangle_facets(self):
        result = facets(VRep([[0, 0], [1, 0], [0, 1]]))
        assert result == [
            Facet((-1, 0), Fraction(0), frozenset({0, 1})),
            Facet((0, -1), Fraction(0), frozenset({0, 2})),
            Facet((1, 1), Fraction(1), frozenset({1, 2})),
        ]

    def test_cube(self):
        h = hull_facets(cube(3))
        assert len(h) == 6
        assert all(rhs in (0, 1) for _, rhs in h.rows)

    def test_cross_polytope(self):
        h = hull_facets(cross_polytope(3))
        assert set(h.normals) == set(itertools.product((-1, 1), repeat=3))
        assert all(rhs == 1 for _, rhs in h.rows)

    def test_interior_points_ignored(self):
        points = list(cube(2, -1, 1)) + [[0, 0], [1, 0], ["1/3", "-1/2"]]
        assert hull_facets(VRep(points)).equals(hull_facets(cube(2, -1, 1)))

    def test_rational_points(self):
        h = hull_facets(VRep([[0, 0], ["1/3", 0], [0, "1/7"]]))
        assert h.rows == (((-1, 0), 0), ((0, -1), 0), ((3, 7), 1))

    def test_lower_dimensional(self):
        with pytest.raises(DimensionError):
            hull_facets(VRep([[0, 0], [1, 1], [2, 2]]))

    def test_capacity(self):
        config.set("max_hull_dim", 2)
        try:
            with pytest.raises(CapacityError):
                hull_facets(cube(3))
        finally:
            config.set("max_hull_dim", 5)

    def test_five_dimensional(self):
        h = hull_facets(cross_polytope(5))
        assert len(h) == 32


class TestCanonicalize:
    def test_drop_inner_points(self):
        points = list(cube(2)) + [["1/2", "1/2"], ["1/2", 0]]
        assert canonicalize(VRep(points)).equals(cube(2))


class TestVertexEnumeration:
    def test_cube(self):
        rows = [row for row in itertools.product((-1, 0, 1), repeat=2) if any(row)]
        v = vertex_enumeration(HRep([(row, 1) for row in rows]))
        assert v.equals(cross_polytope(2))

    def test_round_trip(self):
        v = cross_polytope(4)
        assert vertex_enumeration(hull_facets(v)).equals(v)

    def test_rational_vertex(self):
        h = HRep([([2, 0], 1), ([-1, 0], 0), ([0, 1], 1), ([0, -1], 0)])
        assert vertex_enumeration(h).equals(
            VRep([[0, 0], [0, 1], ["1/2", 0], ["1/2", 1]])
        )

    def test_infeasible(self):
        h = HRep([([1, 0], -1), ([-1, 0], 0), ([0, 1], 1), ([0, -1], 0)])
        assert len(vertex_enumeration(h)) == 0

    def test_no_rows(self):
        with pytest.raises(UnboundedError):
            vertex_enumeration(HRep([], dim=2))

    def test_unbounded(self):
        with pytest.raises(UnboundedError):
            vertex_enumeration(HRep([([1, 0], 1), ([0, 1], 1)]))
        with pytest.raises(UnboundedError):
            vertex_enumeration(HRep([([1, 0], 1)], dim=2))


class TestVolume:
    def test_cubes(self):
        assert hull_volume(cube(3)) == 1
        assert hull_volume(cube(3, -1, 1)) == 8

    def test_cross_polytope(self):
        assert hull_volume(cross_polytope(3)) == Fraction(4, 3)
        assert hull_volume(cross_polytope(4)) == Fraction(2, 3)

    def test_translation_invariant(self):
        shifted = VRep([[x + 3, y - 2] for x, y in cross_polytope(2)])
        assert hull_volume(shifted) == 2

    def test_redundant_points(self):
        points = list(cube(2)) + [["1/2", "1/2"], [1, "1/2"]]
        assert hull_volume(VRep(points)) == 1


class TestLatticePoints:
    def test_interior(self):
        h = HRep([(row, 2) for row in ([1, 0], [-1, 0], [0, 1], [0, -1])])
        points = interior_lattice_points(h)
        assert len(points) == 9

    def test_polar_dual_requires_interior_origin(self):
        with pytest.raises(ValueError, match="interior"):
            polar_dual(hull_facets(cube(2)))

    def test_polar_dual_is_involutive(self):
        v = cross_polytope(3)
        dual = polar_dual(hull_facets(v))
        assert polar_dual(hull_facets(dual)).equals(v)


class TestReflexive:
    def test_reflexive_triangle(self):
        assert is_reflexive(VRep([[1, 0], [0, 1], [-1, -1]]))

    def test_dilated(self):
        assert not is_reflexive(cube(2, -2, 2))

    def test_origin_on_boundary(self):
        assert not is_reflexive(cube(2))

    def test_rational_vertex(self):
        assert not is_reflexive(VRep([["1/2", 0], [-1, 0], [0, 1], [0, -1]]))

    def test_cross_polytope(self):
        assert is_reflexive(cross_polytope(4))


class TestOrthant:
    def test_volumes_add_up(self):
        simplex = VRep([[-1, -1, -1], [2, 0, 0], [0, 3, 0], [0, 0, 1]])
        shifted = VRep([[x - 1, y, z + 1] for x, y, z in cube(3, -1, 1)])
        for v in (cube(2, -1, 1), cross_polytope(3), simplex, shifted):
            orthants = itertools.chain.from_iterable(
                itertools.combinations(range(1, v.dim + 1), k)
                for k in range(v.dim + 1)
            )
            total = sum(
                region_volume(restrict_to_orthant(v, set(w))) for w in orthants
            )
            assert total == hull_volume(v)

    def test_restrict(self):
        region = restrict_to_orthant(cube(2, -1, 1), {2})
        assert region.equals(VRep([[-1, 0], [-1, 1], [0, 0], [0, 1]]))

    def test_invalid_coordinates(self):
        with pytest.raises(ValueError):
            restrict_to_orthant(cube(2, -1, 1), {3})

    def test_in_orthant(self):
        assert in_orthant([1, 0, -1], {1, 2})
        assert in_orthant([1, 0, -1], {1})
        assert not in_orthant([1, 0, -1], {3})


class TestSymmetry:
    def test_symmetric(self):
        assert is_centrally_symmetric(cross_polytope(3))
        assert not is_centrally_symmetric(cube(3))
