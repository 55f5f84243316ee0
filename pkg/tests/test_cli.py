"""Command-line behavior: exit codes, files written, output text."""

import pytest

from autostruct.cli import main
from autostruct.formats import parse_fsa, parse_rules

GRID = """\
version 1
generators x y
inverse x X
inverse y Y
order wreathshortlex
lexorder x X y Y
level x 1
level y 2
relation y x = x y
"""


@pytest.fixture()
def grid_file(tmp_path):
    f = tmp_path / "grid.pres"
    f.write_text(GRID)
    return f


@pytest.fixture()
def grid_out(grid_file, tmp_path):
    out = tmp_path / "out"
    assert main(["autostructure", str(grid_file), "-o", str(out)]) == 0
    return out


def test_autostructure_writes_the_full_bundle(grid_out, capsys):
    names = {p.name for p in grid_out.iterdir()}
    assert {"W.fsa", "D.fsa", "R.rws", "report.txt", "M_e.fsa"} <= names
    assert {"M_x.fsa", "M_X.fsa", "M_y.fsa", "M_Y.fsa"} <= names
    report = (grid_out / "report.txt").read_text()
    assert "outcome: verified" in report
    assert "word acceptor states: 5" in report
    assert "difference machine states: 9" in report


def test_autostructure_exit_two_on_loop_limit(tmp_path, capsys):
    f = tmp_path / "double.pres"
    f.write_text(GRID.replace("relation y x = x y", "relation y x = x x y"))
    out = tmp_path / "out"
    code = main([
        "autostructure", str(f), "-o", str(out), "--max-loops", "2",
    ])
    assert code == 2
    assert "loop-limit" in (out / "report.txt").read_text()
    # partial output still lands so the run can be inspected
    assert (out / "D.fsa").exists()
    assert (out / "R.rws").exists()


def test_autostructure_exit_three_on_bad_file(tmp_path, capsys):
    f = tmp_path / "broken.pres"
    f.write_text("version 1\ngenerators x\n")
    assert main(["autostructure", str(f), "-o", str(tmp_path / "o")]) == 3
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "line" in err


def test_missing_file_is_an_input_error(tmp_path, capsys):
    assert main(["reduce", str(tmp_path / "nope.rws"), "x"]) == 3


def test_bad_usage_is_exit_three(capsys):
    assert main(["autostructure"]) == 3
    assert main(["no-such-command"]) == 3


def test_kbcomplete_prints_a_rules_file(grid_file, capsys):
    assert main(["kbcomplete", str(grid_file)]) == 0
    captured = capsys.readouterr()
    rs = parse_rules(captured.out)
    assert rs.active_count() == 8
    assert "confluent" in captured.err


def test_kbcomplete_exit_two_at_tiny_caps(grid_file, tmp_path, capsys):
    out = tmp_path / "r.rws"
    code = main([
        "kbcomplete", str(grid_file), "-o", str(out), "--kb-max-len", "1",
    ])
    assert code == 2
    assert parse_rules(out.read_text()).active_count() >= 4


def test_reduce_accepts_directory_or_file(grid_out, capsys):
    assert main(["reduce", str(grid_out), "xyXY"]) == 0
    assert main(["reduce", str(grid_out / "R.rws"), "x y x"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["e", "yxx"]


def test_accept_exit_codes(grid_out, capsys):
    assert main(["accept", str(grid_out / "W.fsa"), "yyx"]) == 0
    assert main(["accept", str(grid_out / "W.fsa"), "xy"]) == 1
    assert main(["accept", str(grid_out / "W.fsa"), "e"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["accepted", "rejected", "accepted"]


def test_enumerate_and_growth(grid_out, capsys):
    assert main(["enumerate", str(grid_out / "W.fsa"), "--maxlen", "1"]) == 0
    assert main(["growth", str(grid_out / "W.fsa"), "--maxlen", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:5] == ["e", "x", "X", "y", "Y"]
    assert out[5:] == ["0 1", "1 4", "2 8", "3 12"]


def test_fsaop_not_and_equal(grid_out, tmp_path, capsys):
    w = str(grid_out / "W.fsa")
    comp = tmp_path / "notW.fsa"
    assert main(["fsaop", "not", w]) == 0
    comp.write_text(capsys.readouterr().out)
    a = parse_fsa(comp.read_text())
    assert a.accepts(("x", "y"))
    assert not a.accepts(("y", "x"))
    assert main(["fsaop", "equal", w, str(comp)]) == 1
    assert capsys.readouterr().out.startswith("different:")
    # and with the complement gives the empty language
    assert main(["fsaop", "and", w, str(comp)]) == 0
    empty = parse_fsa(capsys.readouterr().out)
    assert empty.is_empty()


def test_fsaop_compose_multipliers_matches_identity(grid_out, tmp_path, capsys):
    mx, mX = str(grid_out / "M_x.fsa"), str(grid_out / "M_X.fsa")
    assert main(["fsaop", "compose", mx, mX]) == 0
    comp = tmp_path / "c.fsa"
    comp.write_text(capsys.readouterr().out)
    assert main(["fsaop", "equal", str(comp), str(grid_out / "M_e.fsa")]) == 0
    assert capsys.readouterr().out.strip() == "equal"


def test_fsaop_min_is_idempotent(grid_out, capsys):
    w = str(grid_out / "W.fsa")
    assert main(["fsaop", "min", w]) == 0
    out = capsys.readouterr().out
    assert out == (grid_out / "W.fsa").read_text()


def test_fsaop_arity_errors(grid_out, capsys):
    w = str(grid_out / "W.fsa")
    assert main(["fsaop", "and", w]) == 3
    assert main(["fsaop", "min", w, w]) == 3
    assert main(["fsaop", "not", str(grid_out / "M_x.fsa")]) == 3


def test_family_command_round_trips(tmp_path, capsys):
    assert main(["family", "BSpq", "1", "1"]) == 0
    assert capsys.readouterr().out == GRID.replace("# ", "")
    assert main(["family", "Hpq", "2", "1"]) == 0
    assert "relation x x y = Y x" in capsys.readouterr().out
    assert main(["family", "KNOT41"]) == 0
    text = capsys.readouterr().out
    assert "generators a x y z t" in text
    assert "order shortlex" in text
    assert main(["family", "KNOT41", "--wirtinger"]) == 0
    assert "generators x y z t" in capsys.readouterr().out
    assert main(["family", "NOPE"]) == 3
