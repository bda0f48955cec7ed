import json

import pytest

from fdsrank import fixtures as fx
from fdsrank.cli import main
from fdsrank.digraph import format_digraph
from fdsrank.fds import parse_fds


@pytest.fixture
def star3_file(tmp_path):
    path = tmp_path / "star3.graph"
    path.write_text(format_digraph(fx.STAR3))
    return str(path)


@pytest.fixture
def fig1_file(tmp_path):
    path = tmp_path / "fig1.graph"
    path.write_text(format_digraph(fx.FIG1))
    return str(path)


def run_json(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, json.loads(out)


class TestAnalyze:
    def test_star_document(self, capsys, star3_file):
        rc, doc = run_json(capsys, ["analyze", star3_file, "--q", "2", "--strict"])
        assert rc == 0
        assert doc["minrank"]["lower"] == 4 and doc["minrank"]["upper"] == 4
        assert doc["canonical"]["L"] == 4 and doc["canonical"]["U"] == 4
        assert doc["conjunctive_rank"]["value"] == 8
        assert doc["enumeration"]["rank"]["min"] == 5
        assert doc["enumeration"]["function_count"] == 2000

    def test_two_level_fixture_document(self, capsys, fig1_file):
        rc, doc = run_json(capsys, ["analyze", fig1_file, "--q", "2"])
        assert rc == 0
        assert doc["canonical"] == {
            "A_size": 3, "B_size": 4, "L": 4, "Lp": 6, "U": 8,
            "status": "ok", "tight": False,
        }
        assert doc["conjunctive_rank"]["value"] == 7

    def test_empty_graph_document(self, capsys, tmp_path):
        path = tmp_path / "e3.graph"
        path.write_text(format_digraph(fx.E3))
        rc, doc = run_json(capsys, ["analyze", str(path), "--q", "2"])
        assert rc == 0
        assert doc["minrank"]["classification"] == "one"
        assert doc["enumeration"]["rank"]["max"] == 1

    def test_sections_marked_skipped_not_absent(self, capsys, star3_file):
        rc, doc = run_json(
            capsys, ["analyze", star3_file, "--q", "2", "--max-funcs", "10"]
        )
        assert rc == 0
        assert doc["enumeration"]["status"] == "skipped(size)"
        assert doc["enumeration"]["projected"] > 10

    def test_byte_stable_output(self, capsys, star3_file):
        main(["analyze", star3_file, "--q", "2"])
        first = capsys.readouterr().out
        main(["analyze", star3_file, "--q", "2"])
        second = capsys.readouterr().out
        assert first == second

    def test_table_format(self, capsys, star3_file):
        rc = main(["analyze", star3_file, "--q", "2", "--format", "table"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "canonical.U: 4" in out


class TestExitCodes:
    def test_parse_error_is_two(self, capsys, tmp_path):
        path = tmp_path / "broken.graph"
        path.write_text("n 2\n1 2\n1 2\n")
        rc = main(["analyze", str(path), "--q", "2"])
        assert rc == 2
        assert "line 3" in capsys.readouterr().err

    def test_missing_file_is_two(self, capsys):
        assert main(["analyze", "/nonexistent/xyz.graph", "--q", "2"]) == 2

    def test_guard_refusal_is_three(self, capsys, star3_file):
        rc = main(["enum", star3_file, "--q", "2", "--max-funcs", "10"])
        assert rc == 3
        assert "refused by guard" in capsys.readouterr().err

    def test_bad_q_is_two(self, capsys, star3_file):
        assert main(["enum", star3_file, "--q", "1"]) == 2


class TestEnum:
    def test_json(self, capsys, star3_file):
        rc, doc = run_json(capsys, ["enum", star3_file, "--q", "2", "--strict"])
        assert rc == 0
        assert doc["function_count"] == 2000
        assert doc["fixed_points"]["average"] == "1"

    def test_table(self, capsys, star3_file):
        rc = main(["enum", star3_file, "--q", "2", "--strict", "--format", "table"])
        out = capsys.readouterr().out
        assert rc == 0 and "functions: 2000" in out


class TestCanonical:
    def test_provenance_comments(self, capsys, star3_file):
        rc = main(["canonical", star3_file])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.count("# provenance") == 7
        assert "n 7" in out


class TestBounds:
    def test_triangle(self, capsys, tmp_path):
        path = tmp_path / "k3.graph"
        path.write_text(format_digraph(fx.K3))
        rc, doc = run_json(capsys, ["bounds", str(path), "--q", "2"])
        assert rc == 0
        assert doc["best_lower"] == doc["best_upper"] == 4
        assert doc["consistent"]


class TestWitness:
    def test_star(self, capsys):
        rc = main(["witness", "star", "3"])
        out = capsys.readouterr().out
        assert rc == 0
        f = parse_fds(out)
        assert f.n == 4 and f.q == 2

    def test_conjunctive_to_file(self, tmp_path, star3_file):
        out = tmp_path / "w.fds"
        rc = main(["witness", "conjunctive", star3_file, "-o", str(out)])
        assert rc == 0
        f = parse_fds(out.read_text())
        from fdsrank.fds import interaction_graph

        assert interaction_graph(f) == fx.STAR3

    def test_maxper_with_q(self, capsys, star3_file):
        rc = main(["witness", "maxper", star3_file, "--q", "3"])
        out = capsys.readouterr().out
        f = parse_fds(out)
        from fdsrank.fds import periodic_rank

        assert periodic_rank(f) == 27

    def test_packing_plus_one_explicit_packing(self, capsys, tmp_path):
        path = tmp_path / "c3o.graph"
        path.write_text(format_digraph(fx.C3_LOOPED))
        rc = main(["witness", "packing-plus-one", str(path), "--packing", "1;2;3"])
        out = capsys.readouterr().out
        f = parse_fds(out)
        from fdsrank.fds import fixed_points

        assert len(fixed_points(f)) >= 4

    def test_modular(self, capsys):
        rc = main(["witness", "modular", "3", "2"])
        f = parse_fds(capsys.readouterr().out)
        from fdsrank.fds import fixed_points

        assert len(fixed_points(f)) == 4

    def test_unknown_witness(self, capsys, star3_file):
        assert main(["witness", "bogus", star3_file]) == 2


class TestFixture:
    def test_known(self, capsys):
        rc = main(["fixture", "C3"])
        assert rc == 0
        assert "n 3" in capsys.readouterr().out

    def test_unknown(self, capsys):
        assert main(["fixture", "NOPE"]) == 2
