import json
import os
from tempfile import TemporaryDirectory

import pytest

from twinpoly import synthetics
from twinpoly.core.poset import Poset
from twinpoly.cli import main
from twinpoly.io import dumps, write_poset

POSETS = {
    "wedge": synthetics.wedge(),
    "antichain3": synthetics.antichain(3),
    "chain3": synthetics.chain(3),
    "chain2": synthetics.chain(2),
    "reversed2": Poset.from_relations(2, [(2, 1)]),
    "antichain6": synthetics.antichain(6),
    "chain6": synthetics.chain(6),
    "chain21": synthetics.chain(21),
}


@pytest.fixture
def files():
    with TemporaryDirectory() as tmpdir:
        paths = {"dir": tmpdir}
        for name, poset in POSETS.items():
            paths[name] = os.path.join(tmpdir, f"{name}.poset")
            write_poset(poset, paths[name])
        paths["bad"] = os.path.join(tmpdir, "bad.poset")
        with open(paths["bad"], "w") as file:
            file.write("d 3\nrel 1 2\nrel 2 1\n")
        yield paths


def run(capsys, command, files=None):
    """Run a command where poset names are replaced by their file paths."""
    files = files or {}
    argv = [files.get(token, token) for token in command.split()]
    status = main(argv)
    out, err = capsys.readouterr()
    return status, out, err


class TestVolume:
    def test_both(self, files, capsys):
        command = "volume --p wedge --q wedge --method both"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert out.strip() == "formula = 2, hull = 2, agree"

    def test_json(self, files, capsys):
        status, out, _ = run(capsys, "volume --p antichain3 --q chain3 --json", files)
        assert status == 0
        assert json.loads(out) == {"kind": "cc", "formula": "8/3"}

    def test_json_round_trip(self, files, capsys):
        command = "volume --p wedge --q chain3 --method both --json"
        _, out, _ = run(capsys, command, files)
        assert dumps(json.loads(out)) + "\n" == out

    def test_kinds(self, files, capsys):
        for kind in ("oc", "oo"):
            command = f"volume --p chain2 --q chain2 --kind {kind} --method both"
            status, out, _ = run(capsys, command, files)
            assert status == 0
            assert out.strip() == "formula = 2, hull = 2, agree"

    def test_oo_without_common_extension(self, files, capsys):
        command = "volume --p chain2 --q reversed2 --kind oo"
        status, _, err = run(capsys, command, files)
        assert status == 1
        assert "--method hull" in err
        status, out, _ = run(capsys, command + " --method hull", files)
        assert status == 0
        assert out.strip() == "hull = 3/2"

    def test_hull_capacity(self, files, capsys):
        command = "volume --p antichain6 --q chain6 --method hull"
        status, _, err = run(capsys, command, files)
        assert status == 2
        assert "capacity" in err

    def test_formula_capacity(self, files, capsys):
        status, _, _ = run(capsys, "volume --p chain21 --q chain21", files)
        assert status == 2

    def test_formula_beyond_hull(self, files, capsys):
        status, out, _ = run(capsys, "volume --p antichain6 --q chain6", files)
        assert status == 0
        assert out.strip() == "formula = 1957/720"


class TestFacets:
    def test_count_only(self, files, capsys):
        command = "facets --p antichain3 --q chain3 --count-only"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert out.strip() == "13"

    def test_both(self, files, capsys):
        command = "facets --p wedge --q chain3 --method both --json"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        facets = json.loads(out)["facets"]
        assert all(facet["rhs"] == "1/1" for facet in facets)

    def test_formula_needs_cc(self, files, capsys):
        status, _, err = run(capsys, "facets --p wedge --q wedge --kind oc", files)
        assert status == 1
        assert "--method hull" in err

    def test_hull_for_oc(self, files, capsys):
        command = "facets --p chain2 --q chain2 --kind oc --method hull --count-only"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert out.strip() == "4"


class TestDual:
    def test_wedge(self, files, capsys):
        status, out, _ = run(capsys, "dual --p wedge --q wedge --json", files)
        assert status == 0
        vertices = json.loads(out)["vertices"]
        assert len(vertices) == 12
        assert all(x.endswith("/1") for vertex in vertices for x in vertex)

    def test_both(self, files, capsys):
        command = "dual --p wedge --q wedge --method both --count-only"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert out.strip() == "12"


class TestReflexive:
    def test_report(self, files, capsys):
        status, out, _ = run(capsys, "reflexive --p wedge --q wedge --json", files)
        assert status == 0
        assert json.loads(out) == {
            "volume": "2/1",
            "facet_count": 12,
            "reflexive": True,
            "centrally_symmetric": True,
        }

    def test_oo_falls_back_to_hull(self, files, capsys):
        command = "reflexive --p chain2 --q reversed2 --kind oo --json"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert json.loads(out)["volume"] == "3/2"

    def test_text(self, files, capsys):
        _, out, _ = run(capsys, "reflexive --p wedge --q wedge", files)
        assert "reflexive = true" in out.splitlines()


class TestRegionCheck:
    def test_all_orthants(self, files, capsys):
        status, out, _ = run(capsys, "region-check --p wedge --q chain3", files)
        assert status == 0
        lines = out.strip().splitlines()
        assert len(lines) == 8
        assert all(line.endswith("holds") for line in lines)

    def test_single_orthant(self, files, capsys):
        command = "region-check --p chain2 --q chain2 --kind oo --w 1 --json"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert json.loads(out) == {
            "kind": "oo",
            "regions": [{"w": [1], "integral": False}],
        }

    def test_invalid_orthant(self, files, capsys):
        command = "region-check --p chain2 --q chain2 --w 1,7"
        status, _, _ = run(capsys, command, files)
        assert status == 1


class TestValidate:
    def test_single(self, files, capsys):
        status, out, _ = run(capsys, "validate --p wedge --json", files)
        assert status == 0
        assert json.loads(out) == {
            "p": {
                "d": 3,
                "relations": 2,
                "ideals": 5,
                "antichains": 5,
                "maximal_chains": 2,
                "linear_extensions": 2,
            }
        }

    def test_pair(self, files, capsys):
        status, out, _ = run(capsys, "validate --p wedge --q wedge", files)
        assert status == 0
        assert out.strip().splitlines()[-1] == "common linear extension: 2 3 1"

    def test_bad_file(self, files, capsys):
        status, _, err = run(capsys, "validate --p bad", files)
        assert status == 1
        assert "not a partial order" in err

    def test_missing_file(self, files, capsys):
        path = os.path.join(files["dir"], "missing.poset")
        status, _, _ = run(capsys, f"validate --p {path}")
        assert status == 1


class TestEnumerate:
    def test_families(self, files, capsys):
        status, out, _ = run(capsys, "enumerate --p wedge --json", files)
        assert status == 0
        assert json.loads(out) == {
            "ideals": [[], [1, 2, 3], [2], [2, 3], [3]],
            "antichains": [[], [1], [2], [2, 3], [3]],
            "maximal_chains": [[1, 2], [1, 3]],
        }

    def test_gamma(self, files, capsys):
        status, out, _ = run(capsys, "enumerate --p chain2 --q chain2 --kind oo", files)
        assert status == 0
        assert out.strip().splitlines() == ["(-1, -1)", "(-1, 0)", "(1, 0)", "(1, 1)"]


class TestUsage:
    def test_missing_q(self, files, capsys):
        status, _, err = run(capsys, "volume --p wedge", files)
        assert status == 1
        assert "--q" in err

    def test_missing_p(self, capsys):
        status, _, _ = run(capsys, "dual")
        assert status == 1

    def test_unknown_verb(self, capsys):
        status, _, _ = run(capsys, "plot")
        assert status == 1

    def test_size_mismatch(self, files, capsys):
        status, _, _ = run(capsys, "volume --p wedge --q chain2", files)
        assert status == 1

    def test_out(self, files, capsys):
        path = os.path.join(files["dir"], "report.json")
        command = f"dual --p wedge --q wedge --json --out {path}"
        status, out, _ = run(capsys, command, files)
        assert status == 0
        assert out == ""
        with open(path) as file:
            assert len(json.load(file)["vertices"]) == 12


class TestSelftest:
    def test_selftest(self, capsys):
        command = "selftest --pairs 3 --random-dim 3 --seed 1 --json"
        status, out, _ = run(capsys, command)
        assert status == 0
        report = json.loads(out)
        assert report["passed"]
        assert report["suites"][-1] == "random d=3 x3"
