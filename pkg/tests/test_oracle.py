from twinpoly import oracle, synthetics
from twinpoly.core.poset import Poset


class TestCheckPair:
    def test_wedge(self):
        p = synthetics.wedge()
        assert oracle.check_pair(p, p, regions=True) == []

    def test_without_common_extension(self):
        p = synthetics.chain(3)
        q = Poset.from_relations(3, [(3, 2), (2, 1)])
        assert oracle.check_pair(p, q, regions=True) == []


class TestSuites:
    def test_exhaustive(self):
        for d in (1, 2, 3):
            assert oracle.exhaustive_suite(d) == []

    def test_random_four(self):
        assert oracle.random_suite(4, n_pairs=50, seed=0, regions=True) == []

    def test_random_five(self):
        assert oracle.random_suite(5, n_pairs=50, seed=1) == []

    def test_stanley(self):
        assert oracle.stanley_suite(4) == []

    def test_golden(self):
        assert oracle.golden_checks() == []
