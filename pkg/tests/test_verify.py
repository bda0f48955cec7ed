from fdsrank.cli import main
from fdsrank.enumeration import resolve_max_funcs
from fdsrank.verify import VerifySuite


def test_quick_battery_all_green():
    results = VerifySuite(quick=True).run()
    assert len(results) == 14
    assert all(r.passed for r in results), [r.name for r in results if not r.passed]


def test_check_lines_carry_expected_and_actual():
    suite = VerifySuite(quick=True)
    name, ok, expected, actual = suite.check_figure_values()
    assert ok and expected == str((8, 7)) == actual


def test_cli_verify_quick_exits_zero(capsys):
    assert main(["verify", "--quick"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 14
    assert "14/14 checks passed" in out


def test_cli_verify_reports_broken_build(capsys, monkeypatch):
    # simulate a corrupted build: one check coming back wrong
    def broken(self):
        return "independent-set bound", False, "(8, 7)", "(7, 7)"

    monkeypatch.setattr(VerifySuite, "check_figure_values", broken)
    rc = main(["verify", "--quick"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "FAIL" in captured.out
    assert "failed: independent-set bound" in captured.err


def test_env_override_of_function_guard(monkeypatch):
    monkeypatch.setenv("FDSRANK_MAX_FUNCS", "123")
    assert resolve_max_funcs() == 123
    assert resolve_max_funcs(77) == 77
    monkeypatch.delenv("FDSRANK_MAX_FUNCS")
    assert resolve_max_funcs() == 10 ** 8


def test_env_guard_blocks_enumeration(monkeypatch, tmp_path):
    from fdsrank import fixtures as fx
    from fdsrank.digraph import format_digraph

    path = tmp_path / "g.graph"
    path.write_text(format_digraph(fx.STAR3))
    monkeypatch.setenv("FDSRANK_MAX_FUNCS", "10")
    assert main(["enum", str(path), "--q", "2", "--strict"]) == 3
