import numpy as np

from .core.poset import Poset


def chain(d):
    """
    Totally ordered poset ``1 < 2 < ... < d``.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> synthetics.chain(3)
    Poset(d=3, relations=[(1, 2), (1, 3), (2, 3)])

    """
    return Poset.from_relations(d, [(i, i + 1) for i in range(1, d)])


def antichain(d):
    """Poset on d pairwise incomparable elements."""
    return Poset(np.zeros((d, d), dtype=bool))


def wedge():
    """
    Poset on three elements with ``p2 < p1`` and ``p3 < p1``.

    Its twinned chain polytope with itself has volume 2 and twelve facets.
    """
    return Poset.from_relations(3, [(2, 1), (3, 1)])


def random_poset(d, seed=None, density=None):
    """
    Draw a random poset on d labelled elements.

    A random acyclic relation is drawn on a random ordering of the labels and closed
    transitively.

    Parameters
    ----------
    d : int
        The number of elements.
    seed : int or numpy.random.Generator, optional
        Seed or generator for reproducibility.
    density : float, optional
        Probability for each pair to be related before closure. Drawn uniformly for
        each poset when not given so that both sparse and dense posets show up.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> synthetics.random_poset(4, seed=0).equals(synthetics.random_poset(4, seed=0))
    True

    """
    rng = np.random.default_rng(seed)
    if density is None:
        density = rng.random()
    upper = np.triu(rng.random((d, d)) < density, k=1)
    order = rng.permutation(d) + 1
    relations = [
        (int(order[i]), int(order[j])) for i, j in np.argwhere(upper)
    ]
    return Poset.from_relations(d, relations)


def random_pairs(d, n_pairs, seed=None):
    """
    Draw `n_pairs` independent pairs of random posets on d elements.

    The same seed always yields the same pairs.
    """
    rng = np.random.default_rng(seed)
    return [(random_poset(d, rng), random_poset(d, rng)) for _ in range(n_pairs)]
