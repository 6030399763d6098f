"""
Twinned chain polytopes and their order/chain variants.

For two posets P and Q on the same labels ``1, ..., d`` the twinned polytopes are

- ``cc``: conv(C(P) ∪ -C(Q)), the twinned chain polytope,
- ``oc``: conv(O(P) ∪ -C(Q)),
- ``oo``: conv(O(P) ∪ -O(Q)), the twinned order polytope,

where O and C are the order and chain polytopes. Their volume, facets and dual are
described combinatorially through the signed ordinal sums ``delta(P, Q, W)``.
"""

import itertools
import logging
import math
import warnings
from enum import Enum
from fractions import Fraction
from functools import cached_property

from . import config
from .core.linalg import format_rational
from .core.polytope import (
    HRep,
    VRep,
    canonicalize,
    hull_facets,
    hull_volume,
    in_orthant,
    is_centrally_symmetric,
    is_reflexive,
    restrict_to_orthant,
)
from .core.poset import (
    antichains,
    check_same_labels,
    common_linear_extension,
    count_linear_extensions_signed,
    delta,
    enumerate_posets,
    ideals,
    maximal_chains,
)
from .errors import CapacityError
from .parallel import parallel_map

logger = logging.getLogger(__name__)


class GammaKind(str, Enum):
    """Which of the order or chain polytope is used on each side."""

    CC = "cc"
    OC = "oc"
    OO = "oo"


class FacetNormalSet:
    """
    Set of distinct facet normals with entries in {-1, 0, 1}.

    Parameters
    ----------
    normals : iterable of sequences of int
        The normals. Duplicates are collapsed.
    dim : int
        The ambient dimension.
    multiplicity : int, optional
        The number of normals before collapsing duplicates. Defaults to the length of
        `normals`.

    Examples
    --------
    >>> normals = FacetNormalSet([(1, 0), (0, 1), (1, 0)], dim=2)
    >>> normals
    FacetNormalSet(dim=2, normals=[(0, 1), (1, 0)])
    >>> len(normals), normals.multiplicity
    (2, 3)

    """

    def __init__(self, normals, dim, multiplicity=None):
        normals = [tuple(int(a) for a in normal) for normal in normals]
        if any(len(normal) != dim for normal in normals):
            raise ValueError(f"all normals must have length {dim}")
        if any(a not in (-1, 0, 1) for normal in normals for a in normal):
            raise ValueError("normal entries must lie in {-1, 0, 1}")
        self._dim = dim
        self._normals = tuple(sorted(set(normals)))
        self.multiplicity = len(normals) if multiplicity is None else multiplicity

    def __repr__(self):
        return f"FacetNormalSet(dim={self._dim}, normals={list(self._normals)})"

    def __len__(self):
        return len(self._normals)

    def __iter__(self):
        return iter(self._normals)

    def __contains__(self, normal):
        return tuple(normal) in set(self._normals)

    def __eq__(self, other):
        if not isinstance(other, FacetNormalSet):
            return NotImplemented
        return self.equals(other)

    @property
    def dim(self):
        return self._dim

    @property
    def normals(self):
        return self._normals

    def equals(self, other):
        return (
            isinstance(other, FacetNormalSet)
            and self._dim == other._dim
            and self._normals == other._normals
        )

    def to_vrep(self):
        return VRep(self._normals, self._dim)

    def to_hrep(self):
        """The inequalities ``n . x <= 1``."""
        return HRep([(normal, 1) for normal in self._normals], self._dim)


def rho(subset, labels):
    """
    Indicator vector of a subset of labels.

    Examples
    --------
    >>> rho({2, 3}, (1, 2, 3))
    (0, 1, 1)

    """
    return tuple(int(label in subset) for label in labels)


def signed_rho(subset, sp):
    """
    Indicator vector of a subset carrying the signs of a signed poset.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> from twinpoly.core.poset import delta
    >>> p = synthetics.wedge()
    >>> signed_rho({1, 3}, delta(p, p, {1, 2}))
    (1, 0, -1)

    """
    return tuple(
        s if label in subset else 0 for label, s in zip(sp.poset.labels, sp.sign)
    )


def order_polytope_vertices(p):
    """Vertices of the order polytope: indicator vectors of the order ideals."""
    return VRep([rho(ideal, p.labels) for ideal in ideals(p)], p.d)


def chain_polytope_vertices(p):
    """Vertices of the chain polytope: indicator vectors of the antichains."""
    return VRep([rho(antichain, p.labels) for antichain in antichains(p)], p.d)


def signed_chain_vertices(sp):
    """
    Signed indicator vectors of the antichains of a signed poset.

    Their convex hull is the unimodular image of the chain polytope obtained by
    flipping the coordinates of the minus elements.
    """
    points = [signed_rho(antichain, sp) for antichain in antichains(sp.poset)]
    return VRep(points, sp.d)


def unimodular_image(sp):
    """Chain polytope of the underlying poset with the minus coordinates negated."""
    return VRep(
        [
            [s * x for s, x in zip(sp.sign, vertex)]
            for vertex in chain_polytope_vertices(sp.poset)
        ],
        sp.d,
    )


def chain_polytope_facets(p):
    """
    Facets of the chain polytope.

    They are ``x_i >= 0`` for every element and ``sum_{i in C} x_i <= 1`` for every
    maximal chain C.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> chain_polytope_facets(synthetics.chain(2))
    HRep(dim=2, rows=[(-1, 0) <= 0, (0, -1) <= 0, (1, 1) <= 1])

    """
    rows = [(_unit(p.d, k, -1), 0) for k in range(p.d)]
    rows.extend((rho(chain, p.labels), 1) for chain in maximal_chains(p))
    return HRep(rows, p.d)


def signed_chain_facets(sp):
    """
    Facets of the hull of `signed_chain_vertices`.

    The sign constraints ``s_i x_i >= 0`` come with ``signed_rho(C) . x <= 1`` for
    every maximal chain C.
    """
    rows = [(_unit(sp.d, k, -s), 0) for k, s in enumerate(sp.sign)]
    rows.extend((signed_rho(chain, sp), 1) for chain in maximal_chains(sp.poset))
    return HRep(rows, sp.d)


def gamma_vertices(kind, p, q):
    """
    Vertex list of a twinned polytope.

    Parameters
    ----------
    kind : GammaKind or str
        One of "cc", "oc" or "oo".
    p, q : Poset
        The two posets on the same labels.

    Returns
    -------
    VRep
        The vertices of the polytope. For "cc" these are the indicator vectors of the
        nonempty antichains of P and the negated ones of Q, which are all vertices.
        The other kinds go through a hull computation to drop non-vertices.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> c = synthetics.chain(2)
    >>> gamma_vertices("cc", c, c)
    VRep(dim=2, vertices=[(-1, 0), (0, -1), (0, 1), (1, 0)])

    """
    kind = GammaKind(kind)
    check_same_labels(p, q)
    if kind is GammaKind.CC:
        points = [rho(a, p.labels) for a in antichains(p) if a]
        points += [_negated(rho(a, q.labels)) for a in antichains(q) if a]
        return VRep(points, p.d)
    points = [rho(ideal, p.labels) for ideal in ideals(p)]
    if kind is GammaKind.OC:
        points += [_negated(rho(a, q.labels)) for a in antichains(q)]
    else:
        points += [_negated(rho(ideal, q.labels)) for ideal in ideals(q)]
    return canonicalize(VRep(points, p.d))


def volume_terms(p, q, parallel=None):
    """
    Per-orthant contributions to the volume of the twinned chain polytope.

    The term of W is ``e(delta(P, Q, W)) / d!``.

    Parameters
    ----------
    p, q : Poset
        The two posets on the same labels.
    parallel : int or bool, optional
        The number of workers to use. See `twinpoly.parallel.get_workers_count`.

    Returns
    -------
    dict
        Mapping from every subset W of the labels (as a frozenset, in lexicographic
        order of the sorted members) to its Fraction contribution.

    Raises
    ------
    CapacityError
        If the posets are too large for the linear extension counter.

    """
    check_same_labels(p, q)
    _check_formula_capacity(p.d)
    subsets = all_subsets(p.labels)
    counts = parallel_map(
        lambda w: count_linear_extensions_signed(delta(p, q, w)), subsets, parallel
    )
    scale = math.factorial(p.d)
    return {w: Fraction(count, scale) for w, count in zip(subsets, counts)}


def volume_formula(p, q, parallel=None):
    """
    Volume of the twinned chain polytope computed combinatorially.

    It is the sum over all subsets W of ``e(delta(P, Q, W)) / d!``. The same value is
    the volume of the "oc" polytope, and of the "oo" polytope when P and Q have a
    common linear extension.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> p = synthetics.wedge()
    >>> volume_formula(p, p)
    Fraction(2, 1)

    """
    return sum(volume_terms(p, q, parallel).values(), Fraction(0))


def facet_normals(p, q, parallel=None):
    """
    Facet normals of the twinned chain polytope computed combinatorially.

    Every facet reads ``n . x <= 1`` where ``n`` is the signed indicator vector of a
    maximal chain of some ``delta(P, Q, W)``. The normals are collected over all W
    and deduplicated, and the total before deduplication is kept as the
    multiplicity.

    Returns
    -------
    FacetNormalSet
        The distinct normals.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> c = synthetics.chain(2)
    >>> facet_normals(c, c)
    FacetNormalSet(dim=2, normals=[(-1, -1), (-1, 1), (1, -1), (1, 1)])

    """
    check_same_labels(p, q)
    _check_formula_capacity(p.d)

    def chains_of(w):
        sp = delta(p, q, w)
        return [signed_rho(chain, sp) for chain in maximal_chains(sp.poset)]

    per_subset = parallel_map(chains_of, all_subsets(p.labels), parallel)
    normals = [normal for chunk in per_subset for normal in chunk]
    logger.debug(
        "collected %d facet normals, %d distinct", len(normals), len(set(normals))
    )
    return FacetNormalSet(normals, p.d, multiplicity=len(normals))


def dual_vertices(p, q, parallel=None):
    """Vertices of the polar dual of the twinned chain polytope."""
    return facet_normals(p, q, parallel).to_vrep()


def check_region_decomposition(p, q, w):
    """
    Check the description of the twinned chain polytope inside one closed orthant.

    The part of conv(C(P) ∪ -C(Q)) lying in the orthant where exactly the
    coordinates of W are nonnegative must be the hull of the signed antichain
    vectors of ``delta(P, Q, W)``, and the vertices of the twinned polytope lying in
    that orthant must be those antichain vectors without the origin.

    Parameters
    ----------
    p, q : Poset
        The two posets on the same labels.
    w : set of int
        The labels of the nonnegative coordinates.

    Returns
    -------
    bool
        Whether both descriptions hold.

    Raises
    ------
    CapacityError
        If the dimension exceeds ``config.get("max_region_dim")``.

    """
    check_same_labels(p, q)
    _check_region_capacity(p.d)
    w = frozenset(w)
    sp = delta(p, q, w)
    gamma = gamma_vertices(GammaKind.CC, p, q)
    cell = canonicalize(signed_chain_vertices(sp))
    region = restrict_to_orthant(gamma, w)
    if not region.equals(cell):
        logger.debug("region of W=%s differs: %s != %s", sorted(w), region, cell)
        return False
    origin = (0,) * p.d
    in_region = {vertex for vertex in gamma.vertices if in_orthant(vertex, w)}
    return in_region == set(cell.vertices) - {origin}


def region_is_integral(kind, p, q, w):
    """Whether the part of a twinned polytope in the orthant of W is integral."""
    check_same_labels(p, q)
    _check_region_capacity(p.d)
    region = restrict_to_orthant(gamma_vertices(kind, p, q), frozenset(w))
    return region.is_integral()


def arrangements(d):
    """
    Number of ordered selections of any size from d items.

    It equals ``d! * sum_{k=0}^{d} 1/k!`` so that the twinned chain polytope of an
    antichain and a chain has volume ``arrangements(d) / d!``.

    Examples
    --------
    >>> [arrangements(d) for d in range(1, 6)]
    [2, 5, 16, 65, 326]

    """
    return sum(math.perm(d, k) for k in range(d + 1))


def antichain_counts(d):
    """
    Sorted distinct numbers of antichains (the empty one included) over all posets
    on d labelled elements.
    """
    return sorted({len(antichains(p)) for p in enumerate_posets(d)})


def no_poset_with_k_antichains(d, k):
    """
    Whether no poset on d elements has exactly k antichains.

    Examples
    --------
    >>> no_poset_with_k_antichains(3, 7), no_poset_with_k_antichains(3, 6)
    (True, False)

    """
    return k not in antichain_counts(d)


def all_subsets(labels):
    """
    All subsets of the labels, sorted lexicographically by their sorted members.

    Examples
    --------
    >>> [sorted(w) for w in all_subsets((1, 2))]
    [[], [1], [1, 2], [2]]

    """
    subsets = [
        frozenset(combination)
        for size in range(len(labels) + 1)
        for combination in itertools.combinations(labels, size)
    ]
    return sorted(subsets, key=lambda w: tuple(sorted(w)))


class TwinnedPolytope:
    """
    A twinned polytope with lazily computed geometry.

    Parameters
    ----------
    p, q : Poset
        The two posets on the same labels.
    kind : GammaKind or str
        One of "cc", "oc" or "oo". Defaults to "cc".

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> p = synthetics.wedge()
    >>> TwinnedPolytope(p, p).report()
    {'volume': '2/1', 'facet_count': 12, 'reflexive': True, 'centrally_symmetric': True}

    """

    def __init__(self, p, q, kind=GammaKind.CC):
        check_same_labels(p, q)
        self.p = p
        self.q = q
        self.kind = GammaKind(kind)
        self.common_linear_extension = common_linear_extension(p, q)
        if not self.formula_applies:
            warnings.warn(
                "P and Q have no common linear extension: the volume formula and "
                "reflexivity do not apply to their twinned order polytope",
                UserWarning,
            )

    def __repr__(self):
        return f"TwinnedPolytope(kind={self.kind.value}, p={self.p!r}, q={self.q!r})"

    @property
    def d(self):
        return self.p.d

    @property
    def has_common_linear_extension(self):
        return self.common_linear_extension is not None

    @property
    def formula_applies(self):
        """Whether `volume_formula` gives the volume of this polytope."""
        return self.kind is not GammaKind.OO or self.has_common_linear_extension

    @cached_property
    def vertices(self):
        return gamma_vertices(self.kind, self.p, self.q)

    @cached_property
    def facets(self):
        return hull_facets(self.vertices)

    def volume(self, method="formula"):
        """
        Exact volume, either combinatorially ("formula") or from the hull ("hull").

        Raises
        ------
        ValueError
            If the formula is requested while `formula_applies` is False.
        """
        match method:
            case "formula":
                if not self.formula_applies:
                    raise ValueError(
                        "the volume formula does not apply to an oo polytope without "
                        "a common linear extension, use the hull method"
                    )
                return volume_formula(self.p, self.q)
            case "hull":
                return hull_volume(self.vertices)
            case _:
                raise ValueError(f"unknown volume method '{method}'")

    def facet_count(self, method="formula"):
        if method == "formula" and self.kind is GammaKind.CC:
            return len(facet_normals(self.p, self.q))
        return len(self.facets)

    def is_reflexive(self):
        return is_reflexive(self.vertices)

    def is_centrally_symmetric(self):
        return is_centrally_symmetric(self.vertices)

    def report(self, method="formula"):
        """
        Summary of the polytope as a JSON-ready dict.

        The volume is a "p/q" string. It comes from the hull whenever the formula does
        not apply. The reflexivity test always runs on the hull.
        """
        if not self.formula_applies:
            method = "hull"
        return {
            "volume": format_rational(self.volume(method)),
            "facet_count": self.facet_count(method),
            "reflexive": self.is_reflexive(),
            "centrally_symmetric": self.is_centrally_symmetric(),
        }


def _check_formula_capacity(d):
    max_size = config.get("max_linext_size")
    if d > max_size:
        raise CapacityError(
            f"the combinatorial formulas are limited to {max_size} elements, got {d}"
        )


def _check_region_capacity(d):
    max_dim = config.get("max_region_dim")
    if d > max_dim:
        raise CapacityError(
            f"region checks are limited to dimension {max_dim}, got {d}"
        )


def _unit(d, k, value):
    row = [0] * d
    row[k] = value
    return row


def _negated(vector):
    return tuple(-x for x in vector)
