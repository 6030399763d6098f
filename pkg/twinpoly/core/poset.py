import itertools
import logging
from collections.abc import Sequence
from functools import cached_property

import numpy as np
from numba import njit

from .. import config
from ..errors import CapacityError

logger = logging.getLogger(__name__)

# largest poset size whose extension count (at most d!) fits in int64
INT64_SIZE_LIMIT = 20


class Poset:
    """
    Finite partially ordered set stored as its strict order relation.

    Parameters
    ----------
    lt : array-like of bool
        Square matrix with ``lt[i, j]`` true iff the i-th element is strictly below the
        j-th one. It must already be transitively closed.
    labels : sequence of int, optional
        Increasing integer labels of the elements. Defaults to ``1, ..., d``. Induced
        subposets keep the labels of their parent.

    Examples
    --------
    >>> from twinpoly import Poset
    >>> p = Poset.from_relations(3, [(2, 1), (3, 1)])
    >>> p
    Poset(d=3, relations=[(2, 1), (3, 1)])
    >>> p.less(2, 1), p.less(2, 3)
    (True, False)

    """

    def __init__(self, lt, labels=None):
        lt = np.array(lt, dtype=bool)
        if lt.size == 0:
            lt = lt.reshape(0, 0)
        if not (lt.ndim == 2 and lt.shape[0] == lt.shape[1]):
            raise ValueError("`lt` must be a square matrix")
        if labels is None:
            labels = range(1, lt.shape[0] + 1)
        labels = tuple(int(label) for label in labels)
        if not len(labels) == lt.shape[0]:
            raise ValueError(
                f"got {len(labels)} labels for a relation on {lt.shape[0]} elements"
            )
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ValueError("labels must be strictly increasing")
        if np.any(np.diag(lt)):
            raise ValueError("not a partial order: the relation is not irreflexive")
        if np.any(lt & lt.T):
            raise ValueError("not a partial order: the relation is not antisymmetric")
        composed = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        if np.any(composed & ~lt):
            raise ValueError("not a partial order: the relation is not transitive")
        lt.setflags(write=False)
        self._lt = lt
        self._labels = labels
        self._index = {label: idx for idx, label in enumerate(labels)}

    @classmethod
    def from_relations(cls, d, relations, labels=None):
        """
        Build a poset from generating relations by transitive closure.

        Parameters
        ----------
        d : int
            The number of elements.
        relations : iterable of (int, int)
            Pairs ``(i, j)`` meaning ``p_i < p_j``, given with labels. Redundant pairs
            are allowed.
        labels : sequence of int, optional
            The labels, defaults to ``1, ..., d``.

        Returns
        -------
        Poset
            The closed relation.

        """
        labels = tuple(range(1, d + 1)) if labels is None else tuple(labels)
        index = {label: idx for idx, label in enumerate(labels)}
        lt = np.zeros((d, d), dtype=bool)
        for i, j in relations:
            if i not in index or j not in index:
                raise ValueError(f"relation ({i}, {j}) has a label out of range")
            lt[index[i], index[j]] = True
        for k in range(d):
            lt |= np.outer(lt[:, k], lt[k, :])
        if np.any(np.diag(lt)):
            raise ValueError("not a partial order: the relations contain a cycle")
        return cls(lt, labels)

    def __repr__(self):
        return f"Poset(d={self.d}, relations={self.relations()})"

    def __len__(self):
        return self.d

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash((self._labels, self._lt.tobytes()))

    @property
    def d(self):
        return len(self._labels)

    @property
    def labels(self):
        return self._labels

    @property
    def lt(self):
        return self._lt

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"label {label} is out of range") from None

    def less(self, a, b):
        return bool(self._lt[self.index(a), self.index(b)])

    def comparable(self, a, b):
        return self.less(a, b) or self.less(b, a)

    def equals(self, other):
        return (
            isinstance(other, Poset)
            and self._labels == other._labels
            and np.array_equal(self._lt, other._lt)
        )

    def relations(self):
        """Return all pairs ``(a, b)`` of labels with ``a < b``, sorted."""
        return [(self._labels[i], self._labels[j]) for i, j in np.argwhere(self._lt)]

    def cover_relations(self):
        """Return the pairs of the Hasse diagram, sorted."""
        return [(self._labels[i], self._labels[j]) for i, j in np.argwhere(self.covers)]

    @cached_property
    def covers(self):
        """Boolean matrix of the covering relation."""
        lt = self._lt.astype(np.int64)
        return self._lt & ~((lt @ lt) > 0)

    @cached_property
    def down_masks(self):
        """For each position, the bitmask of the positions strictly below it."""
        return tuple(
            sum(1 << int(i) for i in np.flatnonzero(self._lt[:, j]))
            for j in range(self.d)
        )

    @cached_property
    def incomparable_masks(self):
        """For each position, the bitmask of the other positions incomparable to it."""
        comparable = self._lt | self._lt.T | np.eye(self.d, dtype=bool)
        return tuple(
            sum(1 << int(j) for j in np.flatnonzero(~comparable[i]))
            for i in range(self.d)
        )

    def mask(self, subset):
        """Convert a set of labels into a bitmask over positions."""
        mask = 0
        for label in subset:
            mask |= 1 << self.index(label)
        return mask

    def subset(self, mask):
        """Convert a bitmask over positions into a set of labels."""
        return frozenset(
            label for idx, label in enumerate(self._labels) if mask >> idx & 1
        )


class SignedPoset:
    """
    Poset on ``1, ..., d`` whose elements are tagged +1 (coming from P) or -1 (coming
    from Q), with every plus element below every minus element.

    Parameters
    ----------
    poset : Poset
        The relation of the ordinal sum.
    sign : mapping or sequence
        Either a mapping from label to +1/-1 or a sequence aligned with the labels.

    """

    def __init__(self, poset, sign):
        if isinstance(sign, dict):
            missing = set(poset.labels) - set(sign)
            if missing:
                raise ValueError(f"sign is not defined on labels {sorted(missing)}")
            sign = [sign[label] for label in poset.labels]
        sign = tuple(int(s) for s in sign)
        if not len(sign) == poset.d:
            raise ValueError("sign must be defined on every label")
        if any(s not in (1, -1) for s in sign):
            raise ValueError("signs must be either +1 or -1")
        plus = np.array([s > 0 for s in sign], dtype=bool)
        if not np.all(poset.lt[np.ix_(plus, ~plus)]):
            raise ValueError("every plus element must lie below every minus element")
        self._poset = poset
        self._sign = sign

    def __repr__(self):
        relations = self.poset.relations()
        return f"SignedPoset(plus={sorted(self.plus)}, relations={relations})"

    @property
    def poset(self):
        return self._poset

    @property
    def d(self):
        return self._poset.d

    @property
    def sign(self):
        return self._sign

    @property
    def plus(self):
        return frozenset(
            label for label, s in zip(self._poset.labels, self._sign) if s > 0
        )

    @property
    def minus(self):
        return frozenset(
            label for label, s in zip(self._poset.labels, self._sign) if s < 0
        )

    def equals(self, other):
        return (
            isinstance(other, SignedPoset)
            and self._sign == other._sign
            and self._poset.equals(other._poset)
        )


class SubsetList(Sequence):
    """
    Deduplicated list of label subsets in lexicographic order of their sorted labels.

    Examples
    --------
    >>> from twinpoly.core.poset import SubsetList
    >>> SubsetList([{2}, set(), {1, 2}, {2}])
    SubsetList([[], [1, 2], [2]])

    """

    def __init__(self, members=()):
        members = {frozenset(int(label) for label in member) for member in members}
        self._members = tuple(sorted(members, key=lambda s: tuple(sorted(s))))
        self._lookup = frozenset(self._members)

    def __getitem__(self, idx):
        return self._members[idx]

    def __len__(self):
        return len(self._members)

    def __contains__(self, subset):
        return frozenset(subset) in self._lookup

    def __eq__(self, other):
        if isinstance(other, SubsetList):
            return self._members == other._members
        return NotImplemented

    def __repr__(self):
        return f"SubsetList({self.to_list()})"

    def to_list(self):
        return [sorted(member) for member in self._members]


def ideals(poset):
    """
    Enumerate the poset ideals (down-closed subsets), empty set and full set included.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> ideals(synthetics.wedge())
    SubsetList([[], [1, 2, 3], [2], [2, 3], [3]])

    """
    down = poset.down_masks
    seen = {0}
    stack = [0]
    while stack:
        mask = stack.pop()
        for idx in range(poset.d):
            bit = 1 << idx
            if not mask & bit and not down[idx] & ~mask:
                grown = mask | bit
                if grown not in seen:
                    seen.add(grown)
                    stack.append(grown)
    return SubsetList(poset.subset(mask) for mask in seen)


def antichains(poset):
    """
    Enumerate the antichains (pairwise incomparable subsets), empty set included.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> antichains(synthetics.wedge())
    SubsetList([[], [1], [2], [2, 3], [3]])

    """
    incomparable = poset.incomparable_masks
    masks = []
    stack = [(0, (1 << poset.d) - 1)]
    while stack:
        mask, candidates = stack.pop()
        masks.append(mask)
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            idx = low.bit_length() - 1
            stack.append((mask | low, candidates & incomparable[idx]))
    return SubsetList(poset.subset(mask) for mask in masks)


def maximal_chains(poset):
    """
    Enumerate the maximal chains, each given as the set of its labels.

    A maximal chain is a saturated path of the Hasse diagram from a minimal element to
    a maximal element. The empty poset has the empty chain as unique maximal chain.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> maximal_chains(synthetics.wedge())
    SubsetList([[1, 2], [1, 3]])

    """
    if poset.d == 0:
        return SubsetList([frozenset()])
    covers = poset.covers
    successors = [np.flatnonzero(covers[idx]).tolist() for idx in range(poset.d)]
    minimal = np.flatnonzero(~poset.lt.any(axis=0)).tolist()
    masks = []
    stack = [(idx, 1 << idx) for idx in minimal]
    while stack:
        idx, mask = stack.pop()
        if not successors[idx]:
            masks.append(mask)
        for nxt in successors[idx]:
            stack.append((nxt, mask | 1 << nxt))
    return SubsetList(poset.subset(mask) for mask in masks)


def count_linear_extensions(poset):
    """
    Count the linear extensions of a poset.

    The count is the number of saturated chains of ideals from the empty set to the
    full set, obtained by dynamic programming over the ideal bitmasks.

    Parameters
    ----------
    poset : Poset
        The poset, with at most ``config.get("max_linext_size")`` elements.

    Returns
    -------
    int
        The exact number e(P).

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> count_linear_extensions(synthetics.wedge())
    2
    >>> count_linear_extensions(synthetics.antichain(4))
    24

    """
    bound = min(config.get("max_linext_size"), INT64_SIZE_LIMIT)
    if poset.d > bound:
        raise CapacityError(
            f"cannot count linear extensions of a {poset.d}-element poset "
            f"(bound is {bound})"
        )
    down = np.array(poset.down_masks, dtype=np.int64)
    return int(_count_linear_extensions(down))


@njit("i8(i8[:])", nogil=True)
def _count_linear_extensions(down):
    """
    Bitmask dynamic programming over order ideals.

    Parameters
    ----------
    down : ndarray
        Integer array of shape (d,) holding for each element the bitmask of the
        elements strictly below it.

    Returns
    -------
    int
        The number of linear extensions. Fits in int64 as long as d <= 20.

    """
    d = down.shape[0]
    full = (1 << d) - 1
    counts = np.zeros(full + 1, dtype=np.int64)
    counts[0] = 1
    for mask in range(full + 1):
        count = counts[mask]
        if count == 0:
            continue
        for idx in range(d):
            bit = 1 << idx
            if (mask & bit) == 0 and (down[idx] & ~mask) == 0:
                counts[mask | bit] += count
    return counts[full]


def induced_subposet(poset, w):
    """
    Restrict a poset to the labels of `w`, keeping the original labels.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> induced_subposet(synthetics.wedge(), {2, 3})
    Poset(d=2, relations=[])

    """
    labels = sorted(int(label) for label in w)
    positions = [poset.index(label) for label in labels]
    return Poset(poset.lt[np.ix_(positions, positions)], labels)


def delta(p, q, w):
    """
    Build the ordinal sum of P restricted to `w` and Q restricted to its complement.

    Parameters
    ----------
    p, q : Poset
        Two posets on the same labels ``1, ..., d``.
    w : set of int
        The labels taken from P. They get sign +1 and lie below all the others.

    Returns
    -------
    SignedPoset
        The signed ordinal sum.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> sp = delta(synthetics.wedge(), synthetics.wedge(), {1, 2})
    >>> sp.poset
    Poset(d=3, relations=[(1, 3), (2, 1), (2, 3)])
    >>> sp.sign
    (1, 1, -1)

    """
    check_same_labels(p, q)
    plus = np.zeros(p.d, dtype=bool)
    for label in w:
        plus[p.index(label)] = True
    minus = ~plus
    lt = np.zeros((p.d, p.d), dtype=bool)
    lt[np.ix_(plus, plus)] = p.lt[np.ix_(plus, plus)]
    lt[np.ix_(minus, minus)] = q.lt[np.ix_(minus, minus)]
    lt[np.ix_(plus, minus)] = True
    sign = np.where(plus, 1, -1)
    return SignedPoset(Poset(lt, p.labels), sign.tolist())


def count_linear_extensions_signed(sp):
    """Count the linear extensions of the relation underlying a signed poset."""
    return count_linear_extensions(sp.poset)


def common_linear_extension(p, q):
    """
    Find a permutation that is a linear extension of both posets.

    The smallest available label is always listed first, so the result is
    deterministic.

    Returns
    -------
    tuple of int or None
        The labels in extension order, or None when the union of both relations has a
        cycle.

    Examples
    --------
    >>> from twinpoly import synthetics
    >>> common_linear_extension(synthetics.wedge(), synthetics.wedge())
    (2, 3, 1)

    """
    check_same_labels(p, q)
    union = p.lt | q.lt
    indegree = union.sum(axis=0).tolist()
    placed = []
    available = [idx for idx in range(p.d) if indegree[idx] == 0]
    while available:
        idx = min(available)
        available.remove(idx)
        placed.append(p.labels[idx])
        for nxt in np.flatnonzero(union[idx]).tolist():
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                available.append(nxt)
    if len(placed) < p.d:
        return None
    return tuple(placed)


def has_common_linear_extension(p, q):
    return common_linear_extension(p, q) is not None


def enumerate_posets(d):
    """
    List all labeled posets on ``1, ..., d``.

    Each unordered pair of labels is either incomparable or ordered one way or the
    other; the transitive assignments are kept, in a fixed order.

    Examples
    --------
    >>> [len(enumerate_posets(d)) for d in (1, 2, 3)]
    [1, 3, 19]

    """
    bound = config.get("max_enum_size")
    if d < 1:
        raise ValueError("`d` must be a positive integer")
    if d > bound:
        raise CapacityError(f"cannot enumerate posets of size {d} (bound is {bound})")
    pairs = list(itertools.combinations(range(d), 2))
    posets = []
    for states in itertools.product((0, 1, -1), repeat=len(pairs)):
        lt = np.zeros((d, d), dtype=bool)
        for (i, j), state in zip(pairs, states):
            if state == 1:
                lt[i, j] = True
            elif state == -1:
                lt[j, i] = True
        closed = lt | ((lt.astype(np.int64) @ lt.astype(np.int64)) > 0)
        if np.array_equal(closed, lt):
            posets.append(Poset(lt))
    logger.debug("enumerated %d labeled posets of size %d", len(posets), d)
    return posets


def check_same_labels(p, q):
    if not p.d == q.d:
        raise ValueError(f"size mismatch between posets: {p.d} and {q.d}")
    if not p.labels == q.labels:
        raise ValueError("posets must share the same labels")
