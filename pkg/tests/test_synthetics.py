from twinpoly import synthetics
from twinpoly.core.poset import count_linear_extensions


class TestSynthetics:
    def test_chain(self):
        p = synthetics.chain(4)
        assert count_linear_extensions(p) == 1
        assert p.cover_relations() == [(1, 2), (2, 3), (3, 4)]

    def test_antichain(self):
        assert synthetics.antichain(3).relations() == []

    def test_wedge(self):
        assert synthetics.wedge().relations() == [(2, 1), (3, 1)]

    def test_random_poset_reproducible(self):
        a = synthetics.random_poset(5, seed=42)
        b = synthetics.random_poset(5, seed=42)
        assert a.equals(b)

    def test_random_poset_density(self):
        assert synthetics.random_poset(4, seed=0, density=0.0).relations() == []
        dense = synthetics.random_poset(4, seed=0, density=1.0)
        assert count_linear_extensions(dense) == 1

    def test_random_pairs(self):
        pairs = synthetics.random_pairs(4, 10, seed=3)
        assert len(pairs) == 10
        assert pairs == synthetics.random_pairs(4, 10, seed=3)
        assert all(p.d == q.d == 4 for p, q in pairs)
