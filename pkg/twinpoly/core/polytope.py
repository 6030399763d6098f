"""
Exact polyhedral kernel: convex hulls, vertex enumeration, volumes, lattice points and
polar duality of small full-dimensional polytopes.

Both conversions between vertex and inequality descriptions are delegated to cddlib
(pycddlib) in its GMP rational mode. Everything built on top of them (incidences,
triangulation volumes, lattice points) stays in `Fraction` arithmetic.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import cdd
import cdd.gmp
import numpy as np

from .. import config
from ..errors import CapacityError, DimensionError, UnboundedError
from .linalg import as_fraction, as_vector, det, dot, format_rational, primitive, rank

logger = logging.getLogger(__name__)


class VRep:
    """
    Polytope given by a finite set of exact rational points.

    Points are deduplicated and sorted lexicographically. Use `canonicalize` to drop
    the points that are not vertices of their convex hull.

    Parameters
    ----------
    vertices : iterable of sequences
        The points. Entries may be int, Fraction or "p/q" strings.
    dim : int, optional
        The ambient dimension. Required when `vertices` is empty.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> VRep([[1, 0], [0, "1/2"], [1, 0]])
    VRep(dim=2, vertices=[(0, 1/2), (1, 0)])

    """

    def __init__(self, vertices, dim=None):
        points = {as_vector(vertex) for vertex in vertices}
        if dim is None:
            if not points:
                raise ValueError("`dim` must be given for an empty vertex list")
            dim = len(next(iter(points)))
        dim = int(dim)
        if any(len(point) != dim for point in points):
            raise ValueError(f"all vertices must have length {dim}")
        self._dim = dim
        self._vertices = tuple(sorted(points))
        self._lookup = frozenset(self._vertices)

    def __repr__(self):
        points = ", ".join(
            "(" + ", ".join(str(x) for x in vertex) + ")" for vertex in self._vertices
        )
        return f"VRep(dim={self._dim}, vertices=[{points}])"

    def __len__(self):
        return len(self._vertices)

    def __iter__(self):
        return iter(self._vertices)

    def __getitem__(self, idx):
        return self._vertices[idx]

    def __contains__(self, point):
        return as_vector(point) in self._lookup

    def __eq__(self, other):
        if not isinstance(other, VRep):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash((self._dim, self._vertices))

    def __array__(self, dtype=None, copy=None):
        array = np.empty((len(self._vertices), self._dim), dtype=object)
        for idx, vertex in enumerate(self._vertices):
            array[idx] = vertex
        return array if dtype is None else array.astype(dtype)

    @property
    def dim(self):
        return self._dim

    @property
    def vertices(self):
        return self._vertices

    def equals(self, other):
        return (
            isinstance(other, VRep)
            and self._dim == other._dim
            and self._vertices == other._vertices
        )

    def is_integral(self):
        return all(x.denominator == 1 for vertex in self._vertices for x in vertex)

    def negate(self):
        return VRep([[-x for x in vertex] for vertex in self._vertices], self._dim)

    def to_dict(self):
        return {
            "dim": self._dim,
            "vertices": [
                [format_rational(x) for x in vertex] for vertex in self._vertices
            ],
        }

    @classmethod
    def from_dict(cls, dct):
        return cls(dct["vertices"], dct["dim"])


class HRep:
    """
    Polyhedron given by inequalities ``normal . x <= rhs``.

    Each row is rescaled so that its normal is a primitive integer vector, then rows
    are deduplicated and sorted.

    Parameters
    ----------
    rows : iterable of (sequence, rational)
        The (normal, rhs) pairs.
    dim : int, optional
        The ambient dimension. Required when `rows` is empty.

    Examples
    --------
    >>> from twinpoly import HRep
    >>> HRep([([2, 0], 1), ([0, "-1/3"], 0)])
    HRep(dim=2, rows=[(0, -1) <= 0, (1, 0) <= 1/2])

    """

    def __init__(self, rows, dim=None):
        canonical = {_canonical_row(normal, rhs) for normal, rhs in rows}
        if dim is None:
            if not canonical:
                raise ValueError("`dim` must be given for an empty row list")
            dim = len(next(iter(canonical))[0])
        dim = int(dim)
        if any(len(normal) != dim for normal, _ in canonical):
            raise ValueError(f"all normals must have length {dim}")
        self._dim = dim
        self._rows = tuple(sorted(canonical))

    def __repr__(self):
        rows = ", ".join(
            "(" + ", ".join(str(a) for a in normal) + f") <= {rhs}"
            for normal, rhs in self._rows
        )
        return f"HRep(dim={self._dim}, rows=[{rows}])"

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, HRep):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash((self._dim, self._rows))

    @property
    def dim(self):
        return self._dim

    @property
    def rows(self):
        return self._rows

    @property
    def normals(self):
        return tuple(normal for normal, _ in self._rows)

    def equals(self, other):
        return (
            isinstance(other, HRep)
            and self._dim == other._dim
            and self._rows == other._rows
        )

    def contains(self, point, strict=False):
        point = as_vector(point)
        if strict:
            return all(dot(normal, point) < rhs for normal, rhs in self._rows)
        return all(dot(normal, point) <= rhs for normal, rhs in self._rows)

    def to_dict(self):
        return {
            "dim": self._dim,
            "facets": [
                {"normal": list(normal), "rhs": format_rational(rhs)}
                for normal, rhs in self._rows
            ],
        }

    @classmethod
    def from_dict(cls, dct):
        return cls(((row["normal"], row["rhs"]) for row in dct["facets"]), dct["dim"])


@dataclass(frozen=True)
class Facet:
    """
    Facet-defining inequality together with the points lying on it.

    Attributes
    ----------
    normal : tuple of int
        Primitive outer normal.
    rhs : Fraction
        Right-hand side of ``normal . x <= rhs``.
    incident_vertices : frozenset of int
        Indices, in the originating `VRep`, of the points satisfying equality.

    """

    normal: tuple
    rhs: Fraction
    incident_vertices: frozenset


def facets(v):
    """
    Compute the facets of the convex hull of a point set.

    Parameters
    ----------
    v : VRep
        Points affinely spanning their ambient space.

    Returns
    -------
    list of Facet
        The facets sorted by normal, with incidences indexing ``v.vertices``.

    """
    return [
        Facet(normal, rhs, frozenset(_bits(mask)))
        for normal, rhs, mask in _hull(v.vertices, v.dim)
    ]


def hull_facets(v):
    """
    Irredundant H-representation of the convex hull of a point set.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> hull_facets(VRep([[0, 0], [1, 0], [0, 1], [1, 1]]))
    HRep(dim=2, rows=[(-1, 0) <= 0, (0, -1) <= 0, (0, 1) <= 1, (1, 0) <= 1])

    """
    return HRep(((normal, rhs) for normal, rhs, _ in _hull(v.vertices, v.dim)), v.dim)


def canonicalize(v):
    """
    Keep only the points of `v` that are vertices of its convex hull.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> canonicalize(VRep([[0, 0], [2, 0], [0, 2], [1, 1], [1, 0]]))
    VRep(dim=2, vertices=[(0, 0), (0, 2), (2, 0)])

    """
    masks = [mask for _, _, mask in _hull(v.vertices, v.dim)]
    keep = _vertex_mask(len(v), masks)
    return VRep([v.vertices[idx] for idx in _bits(keep)], v.dim)


def vertex_enumeration(h):
    """
    Vertices of a bounded polyhedron given by inequalities.

    Parameters
    ----------
    h : HRep
        The inequalities. They may be redundant.

    Returns
    -------
    VRep
        The vertices, empty when the inequalities are infeasible.

    Raises
    ------
    UnboundedError
        If the solution set admits a recession direction.

    Examples
    --------
    >>> from twinpoly import HRep
    >>> square = HRep([([1, 0], 1), ([-1, 0], 0), ([0, 1], 1), ([0, -1], 0)])
    >>> vertex_enumeration(square)
    VRep(dim=2, vertices=[(0, 0), (0, 1), (1, 0), (1, 1)])

    """
    _check_capacity(h.dim, len(h))
    if not h.rows:
        raise UnboundedError("no inequality bounds the space")
    matrix = cdd.gmp.matrix_from_array(
        [[rhs, *(-a for a in normal)] for normal, rhs in h.rows],
        rep_type=cdd.RepType.INEQUALITY,
    )
    generators = cdd.gmp.copy_generators(cdd.gmp.polyhedron_from_matrix(matrix))
    if generators.lin_set:
        raise UnboundedError("the inequalities leave a line unconstrained")
    vertices = []
    for scale, *point in generators.array:
        if scale == 0:
            raise UnboundedError(f"unbounded along the direction {tuple(point)}")
        vertices.append([Fraction(x) / scale for x in point])
    logger.debug("%d inequalities: %d vertices", len(h), len(vertices))
    return VRep(vertices, h.dim)


def hull_volume(v):
    """
    Exact volume of the convex hull of a full-dimensional point set.

    The hull is split into pyramids over the facets not containing its
    lexicographically smallest vertex, recursively down to simplices, and the simplex
    volumes ``|det| / d!`` are summed.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> hull_volume(VRep([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    Fraction(1, 6)
    >>> hull_volume(VRep([[1, 0], [-1, 0], [0, 1], [0, -1]]))
    Fraction(2, 1)

    """
    points = v.vertices
    masks = [mask for _, _, mask in _hull(points, v.dim)]
    keep = _vertex_mask(len(points), masks)
    masks = tuple(mask & keep for mask in masks)
    simplices = _pulling_triangulation(keep, masks, {})
    logger.debug("triangulated the hull into %d simplices", len(simplices))
    total = Fraction(0)
    for simplex in simplices:
        apex = points[simplex[0]]
        edges = [[a - b for a, b in zip(points[idx], apex)] for idx in simplex[1:]]
        total += abs(det(edges))
    return total / math.factorial(v.dim)


def interior_lattice_points(h):
    """
    Integer points strictly inside a bounded polyhedron.

    Examples
    --------
    >>> from twinpoly import HRep
    >>> cube = HRep([(row, 1) for row in ([1, 0], [-1, 0], [0, 1], [0, -1])])
    >>> interior_lattice_points(cube)
    [(0, 0)]

    """
    return _interior_lattice_points(h, vertex_enumeration(h).vertices)


def polar_dual(h):
    """
    Dual polytope of a polytope containing the origin in its interior.

    Each inequality ``a . x <= b`` with ``b > 0`` becomes the vertex ``a / b``.

    Examples
    --------
    >>> from twinpoly import HRep
    >>> cube = HRep([(row, 1) for row in ([1, 0], [-1, 0], [0, 1], [0, -1])])
    >>> polar_dual(cube)
    VRep(dim=2, vertices=[(-1, 0), (0, -1), (0, 1), (1, 0)])

    """
    if any(rhs <= 0 for _, rhs in h.rows):
        raise ValueError("the origin is not an interior point of the polytope")
    return VRep([[Fraction(a) / rhs for a in normal] for normal, rhs in h.rows], h.dim)


def is_reflexive(v):
    """
    Whether a lattice polytope is reflexive (Gorenstein Fano).

    The origin must be its unique interior lattice point and its polar dual must be a
    lattice polytope.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> is_reflexive(VRep([[1, 0], [-1, 0], [0, 1], [0, -1]]))
    True
    >>> is_reflexive(VRep([[2, 0], [-2, 0], [0, 1], [0, -1]]))
    False

    """
    if not v.is_integral():
        return False
    h = hull_facets(v)
    if any(rhs <= 0 for _, rhs in h.rows):
        return False
    origin = (0,) * v.dim
    if _interior_lattice_points(h, v.vertices) != [origin]:
        return False
    return polar_dual(h).is_integral()


def restrict_to_orthant(v, w):
    """
    Intersect a polytope with a closed orthant.

    Parameters
    ----------
    v : VRep
        The polytope.
    w : set of int
        The coordinates (1-based) required to be nonnegative. The others are required
        to be nonpositive.

    Returns
    -------
    VRep
        The vertices of the intersection.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> diamond = VRep([[1, 0], [-1, 0], [0, 1], [0, -1]])
    >>> restrict_to_orthant(diamond, {1})
    VRep(dim=2, vertices=[(0, -1), (0, 0), (1, 0)])

    """
    w = _check_orthant(w, v.dim)
    rows = list(hull_facets(v).rows)
    for k in range(v.dim):
        normal = [0] * v.dim
        normal[k] = -1 if k + 1 in w else 1
        rows.append((normal, 0))
    return vertex_enumeration(HRep(rows, v.dim))


def in_orthant(point, w):
    """Whether a point lies in the closed orthant of the coordinates `w`."""
    return all(
        (x >= 0) if k + 1 in w else (x <= 0) for k, x in enumerate(as_vector(point))
    )


def is_centrally_symmetric(v):
    """
    Whether the point set is invariant under negation.

    Examples
    --------
    >>> from twinpoly import VRep
    >>> is_centrally_symmetric(VRep([[1, 0], [-1, 0], [0, 1], [0, -1]]))
    True
    >>> is_centrally_symmetric(VRep([[0, 0], [1, 0], [0, 1], [1, 1]]))
    False

    """
    return set(v.vertices) == set(v.negate().vertices)


def _hull(points, dim):
    """Facets of conv(points) as sorted (normal, rhs, incidence bitmask) triples."""
    _check_capacity(dim, len(points))
    return _cached_hull(tuple(points), dim)


@lru_cache(maxsize=256)
def _cached_hull(points, dim):
    if not points:
        raise DimensionError("cannot compute the hull of an empty point set")
    apex = points[0]
    if rank([[a - b for a, b in zip(point, apex)] for point in points]) < dim:
        raise DimensionError(
            f"the points do not affinely span a {dim}-dimensional space"
        )
    generators = cdd.gmp.matrix_from_array(
        [[1, *point] for point in points], rep_type=cdd.RepType.GENERATOR
    )
    inequalities = cdd.gmp.copy_inequalities(cdd.gmp.polyhedron_from_matrix(generators))
    rows = set()
    for offset, *coefficients in inequalities.array:
        if not any(coefficients):
            continue
        rows.add(_canonical_row([-a for a in coefficients], offset))
    logger.debug("hull of %d points: %d facets", len(points), len(rows))
    return tuple(
        sorted((normal, rhs, _incidence(normal, rhs, points)) for normal, rhs in rows)
    )


def _incidence(normal, rhs, points):
    return sum(
        1 << idx for idx, point in enumerate(points) if dot(normal, point) == rhs
    )


def _pulling_triangulation(face, masks, cache):
    """
    Triangulate a face given as a vertex bitmask.

    Its facets are the inclusion-maximal proper intersections with the top-level
    facets. Each simplex is a tuple of vertex indices.
    """
    if face in cache:
        return cache[face]
    if face & (face - 1) == 0:
        result = [(face.bit_length() - 1,)]
    else:
        apex_bit = face & -face
        apex = apex_bit.bit_length() - 1
        candidates = {face & mask for mask in masks} - {face, 0}
        result = []
        for sub in candidates:
            if sub & apex_bit:
                continue
            if any(sub != other and sub & other == sub for other in candidates):
                continue
            for simplex in _pulling_triangulation(sub, masks, cache):
                result.append((apex,) + simplex)
        result.sort()
    cache[face] = result
    return result


def _vertex_mask(n_points, masks):
    """Bitmask of the points whose incident facets meet in that point alone."""
    full = (1 << n_points) - 1
    keep = 0
    for idx in range(n_points):
        common = full
        for mask in masks:
            if mask >> idx & 1:
                common &= mask
        if common == 1 << idx:
            keep |= 1 << idx
    return keep


def _interior_lattice_points(h, points):
    if not points:
        return []
    ranges = [
        range(
            math.floor(min(point[k] for point in points)),
            math.ceil(max(point[k] for point in points)) + 1,
        )
        for k in range(h.dim)
    ]
    return [
        point
        for point in itertools.product(*ranges)
        if all(dot(normal, point) < rhs for normal, rhs in h.rows)
    ]


def _canonical_row(normal, rhs):
    normal = as_vector(normal)
    scale = lcm(*(x.denominator for x in normal)) if normal else 1
    scaled = [int(x * scale) for x in normal]
    reduced = primitive(scaled)
    if not any(reduced):
        raise ValueError("normals must be nonzero")
    divisor = next(a // b for a, b in zip(scaled, reduced) if b)
    return reduced, as_fraction(rhs) * scale / divisor


def _check_capacity(dim, n_points):
    max_dim = config.get("max_hull_dim")
    max_points = config.get("max_hull_points")
    if dim > max_dim:
        raise CapacityError(
            f"the polyhedral kernel is limited to dimension {max_dim}, got {dim}"
        )
    if n_points > max_points:
        raise CapacityError(
            f"the polyhedral kernel is limited to {max_points} rows, got {n_points}"
        )


def _check_orthant(w, dim):
    w = {int(label) for label in w}
    if any(label < 1 or label > dim for label in w):
        raise ValueError(f"orthant coordinates must lie in 1..{dim}")
    return w


def _bits(mask):
    idx = 0
    while mask:
        if mask & 1:
            yield idx
        mask >>= 1
        idx += 1
