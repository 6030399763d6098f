"""
Cross-checks of the combinatorial formulas against the polyhedral kernel.

Every check returns a list of human readable failure messages, empty on success.
"""

import itertools
import logging
import math
from fractions import Fraction

from tqdm import tqdm

from . import config, synthetics
from .core.polytope import (
    hull_facets,
    hull_volume,
    is_centrally_symmetric,
    is_reflexive,
    polar_dual,
)
from .core.poset import (
    count_linear_extensions,
    enumerate_posets,
    has_common_linear_extension,
)
from .twinned import (
    GammaKind,
    all_subsets,
    arrangements,
    chain_polytope_vertices,
    check_region_decomposition,
    dual_vertices,
    facet_normals,
    gamma_vertices,
    no_poset_with_k_antichains,
    order_polytope_vertices,
    region_is_integral,
    volume_formula,
    volume_terms,
)

logger = logging.getLogger(__name__)


def check_pair(p, q, regions=False):
    """
    Check every combinatorial statement on one pair of posets.

    The following are compared:

    - the volume formula against the hull volume of the "cc" and "oc" polytopes,
      and of the "oo" polytope when P and Q have a common linear extension,
    - the facet normals against the hull facets, all of which must read ``n . x <= 1``,
    - the dual vertices against the polar dual of the hull,
    - reflexivity of the "cc" and "oc" polytopes, and of "oo" when it applies,
    - the boundary terms ``W = all`` and ``W = none`` against ``e(P)`` and ``e(Q)``,
    - central symmetry when P equals Q,
    - optionally the orthant decomposition for every W.

    Parameters
    ----------
    p, q : Poset
        The pair to check.
    regions : bool
        Whether to run the orthant decomposition checks as well.

    Returns
    -------
    list of str
        The failures.

    """
    tag = f"P={p.relations()} Q={q.relations()}"
    failures = []

    terms = volume_terms(p, q)
    formula = sum(terms.values(), Fraction(0))
    scale = math.factorial(p.d)
    full, empty = frozenset(p.labels), frozenset()
    if terms[full] != Fraction(count_linear_extensions(p), scale):
        failures.append(f"{tag}: the W=all term differs from e(P)/d!")
    if terms[empty] != Fraction(count_linear_extensions(q), scale):
        failures.append(f"{tag}: the W=none term differs from e(Q)/d!")

    cc = gamma_vertices(GammaKind.CC, p, q)
    volume = hull_volume(cc)
    if volume != formula:
        failures.append(f"{tag}: cc volume {volume} differs from formula {formula}")
    h = hull_facets(cc)
    normals = facet_normals(p, q)
    if any(rhs != 1 for _, rhs in h.rows):
        failures.append(f"{tag}: cc has a facet with right-hand side other than 1")
    elif set(h.normals) != set(normals):
        failures.append(f"{tag}: cc facet normals differ from the chain normals")
    elif not polar_dual(h).equals(dual_vertices(p, q)):
        failures.append(f"{tag}: cc dual differs from the chain normals")
    if not is_reflexive(cc):
        failures.append(f"{tag}: cc is not reflexive")
    if p.equals(q) and not is_centrally_symmetric(cc):
        failures.append(f"{tag}: cc is not centrally symmetric")

    oc = gamma_vertices(GammaKind.OC, p, q)
    volume = hull_volume(oc)
    if volume != formula:
        failures.append(f"{tag}: oc volume {volume} differs from formula {formula}")
    if not is_reflexive(oc):
        failures.append(f"{tag}: oc is not reflexive")

    if has_common_linear_extension(p, q):
        oo = gamma_vertices(GammaKind.OO, p, q)
        volume = hull_volume(oo)
        if volume != formula:
            failures.append(
                f"{tag}: oo volume {volume} differs from formula {formula}"
            )
        if not is_reflexive(oo):
            failures.append(f"{tag}: oo is not reflexive")

    if regions:
        for w in all_subsets(p.labels):
            if not check_region_decomposition(p, q, w):
                failures.append(f"{tag}: region decomposition fails at W={sorted(w)}")
    return failures


def exhaustive_suite(d, regions=True, verbose=False):
    """
    Check all ordered pairs of posets on d labelled elements.

    Region checks are skipped above ``config.get("max_region_dim")``.
    """
    posets = enumerate_posets(d)
    pairs = list(itertools.product(posets, repeat=2))
    regions = regions and d <= config.get("max_region_dim")
    return _run(pairs, regions, verbose, f"exhaustive d={d}")


def random_suite(d, n_pairs=50, seed=0, regions=False, verbose=False):
    """Check `n_pairs` random pairs of posets on d elements drawn from `seed`."""
    pairs = synthetics.random_pairs(d, n_pairs, seed)
    regions = regions and d <= config.get("max_region_dim")
    return _run(pairs, regions, verbose, f"random d={d}")


def stanley_suite(d, verbose=False):
    """
    Check that the order and chain polytopes of every poset on d elements both have
    volume ``e(P) / d!``.
    """
    posets = enumerate_posets(d)
    if verbose:
        posets = tqdm(posets, desc=f"order/chain d={d}")
    failures = []
    for p in posets:
        expected = Fraction(count_linear_extensions(p), math.factorial(d))
        for name, v in (
            ("order", order_polytope_vertices(p)),
            ("chain", chain_polytope_vertices(p)),
        ):
            volume = hull_volume(v)
            if volume != expected:
                failures.append(
                    f"P={p.relations()}: {name} polytope volume {volume} "
                    f"differs from e(P)/d! = {expected}"
                )
    return failures


def golden_checks():
    """
    Check known values, including negative controls.

    - The wedge ``p2 < p1, p3 < p1`` twinned with itself has volume 2, its eight
      orthant terms are four times 1/6 and four times 2/6, and its dual has twelve
      vertices.
    - An antichain twinned with a chain has volume ``arrangements(d) / d!`` and
      ``d * 2^(d-1) + 1`` facets.
    - The twinned order polytope of two 2-chains has a non-integral orthant region.
    - No poset on three elements has exactly seven antichains.
    - Two 3-antichains yield repeated facet normals.
    """
    failures = []

    p = synthetics.wedge()
    if volume_formula(p, p) != 2:
        failures.append("wedge: volume is not 2")
    values = sorted(volume_terms(p, p).values())
    if values != [Fraction(1, 6)] * 4 + [Fraction(2, 6)] * 4:
        failures.append(f"wedge: unexpected orthant terms {values}")
    expected = {
        tuple(sign * x for x in vector)
        for vector in (
            (1, 1, 0),
            (1, 0, 1),
            (1, -1, 0),
            (1, 1, -1),
            (1, -1, 1),
            (1, 0, -1),
        )
        for sign in (1, -1)
    }
    if set(facet_normals(p, p)) != expected:
        failures.append("wedge: unexpected dual vertices")
    if hull_volume(gamma_vertices(GammaKind.CC, p, p)) != 2:
        failures.append("wedge: hull volume is not 2")

    for d in range(1, 7):
        a, c = synthetics.antichain(d), synthetics.chain(d)
        expected = Fraction(arrangements(d), math.factorial(d))
        if volume_formula(a, c) != expected:
            failures.append(f"antichain/chain d={d}: volume differs from {expected}")
        if d <= config.get("max_hull_dim"):
            h = hull_facets(gamma_vertices(GammaKind.CC, a, c))
            if len(h) != d * 2 ** (d - 1) + 1:
                failures.append(f"antichain/chain d={d}: got {len(h)} facets")
            if len(facet_normals(a, c)) != len(h):
                failures.append(f"antichain/chain d={d}: normal count differs")

    c = synthetics.chain(2)
    if region_is_integral(GammaKind.OO, c, c, {1}):
        failures.append("oo of 2-chains: the W={1} region is unexpectedly integral")

    if not no_poset_with_k_antichains(3, 7):
        failures.append("some poset on 3 elements has 7 antichains")

    a = synthetics.antichain(3)
    normals = facet_normals(a, a)
    if not normals.multiplicity > len(normals):
        failures.append("3-antichains: no repeated facet normal")
    return failures


def _run(pairs, regions, verbose, desc):
    if verbose:
        pairs = tqdm(pairs, desc=desc)
    failures = []
    for p, q in pairs:
        failures.extend(check_pair(p, q, regions=regions))
    logger.debug("%s: %d failures", desc, len(failures))
    return failures
