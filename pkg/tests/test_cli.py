from fractions import Fraction

import pytest

from timedlogic.cli import main
from timedlogic.separations.families import THM2_FORMULA
from timedlogic.words import parse_word


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_true_and_false(files, capsys):
    phi = files("phi.mtl", THM2_FORMULA + "\n")
    b1 = files("b1.tw", "a 0\na 1\nc 5/2\n")
    a1 = files("a1.tw", "a 0\na 1\nc 7/2\n")
    assert run(capsys, "eval", b1, phi)[:2] == (0, "true\n")
    assert run(capsys, "eval", a1, phi)[:2] == (1, "false\n")


def test_eval_bad_interval(files, capsys):
    phi = files("bad.mtl", "(U (2,2) a b)")
    w = files("w.tw", "a 0")
    code, _, err = run(capsys, "eval", w, phi)
    assert code == 2 and "empty interval" in err


def test_eval_needs_anchor_for_freeze_logics(files, capsys):
    phi = files("f.tptl", "(freeze x a)")
    w = files("w.tw", "a 1")
    code, _, err = run(capsys, "eval", w, phi, "--logic", "tptl")
    assert code == 2 and "first timestamp" in err
    assert run(capsys, "eval", w, phi, "--logic", "tptl", "--position", "1")[0] == 0


def test_translate_report(files, capsys):
    f = files("f.ttl", "(sp (X (ev b (tt)) (top)))")
    code, out, _ = run(capsys, "translate", f)
    assert code == 0
    assert "# fragment: MITL[F,P]" in out
    assert "# alpha(root): (not (P [0,inf) (top)))" in out
    code, out, _ = run(capsys, "translate", f, "--literal")
    assert "(not (P (0,inf) (top))) as written" in out


def test_translate_leak_and_strict(files, capsys):
    f = files("f.ttl", "(freeze x (X (ev b (cmp x-T <= 0)) (top)))")
    code, out, _ = run(capsys, "--porcelain", "translate", f)
    rows = dict(line.split("\t", 1) for line in out.splitlines())
    assert code == 0 and rows["punctuality_leak"] == "1"
    assert run(capsys, "translate", f, "--strict-punctuality")[0] == 2


def test_game_examples(files, capsys):
    a = files("a.tw", "a 0")
    b = files("b.tw", "b 0")
    code, out, _ = run(capsys, "--porcelain", "game", a, b, "--rounds", "0")
    assert code == 0 and out.splitlines() == ["winner\tspoiler"]
    code, out, _ = run(capsys, "game", a, a, "--rounds", "2")
    assert out.splitlines()[0] == "duplicator"


def test_gen_then_game_and_check(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "thm2", "--m", "2", "--k", "1", "--out", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == 3
    A, B = str(tmp_path / "thm2_A.tw"), str(tmp_path / "thm2_B.tw")
    assert parse_word((tmp_path / "thm2_B.tw").read_text()).time(4) == Fraction(7, 2)
    code, out, _ = run(capsys, "game", A, B, "--rounds", "2", "--menu", "bint^k", "--k", "1")
    assert out.splitlines()[0] == "duplicator"
    code, out, _ = run(capsys, "eval", B, str(tmp_path / "thm2_phi.mtl"))
    assert code == 0


def test_gen_thm5_writes_three_files(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "thm5", "--n", "1", "--k", "1", "--out", str(tmp_path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["thm5_A.tw", "thm5_B.tw", "thm5_phi.tptl"]
    A = str(tmp_path / "thm5_A.tw")
    assert run(capsys, "eval", A, str(tmp_path / "thm5_phi.tptl"), "--logic", "tptl")[0] == 0


def test_check_thm2(capsys):
    code, out, _ = run(capsys, "check", "thm2", "--m", "2", "--k", "1")
    assert code == 0
    assert sum(line.startswith("  PASS ") for line in out.splitlines()) == 3
    assert out.splitlines()[-1] == "OVERALL PASS"


def test_check_all_small(capsys):
    code, out, _ = run(capsys, "check", "all", "--small", "--samples", "30", "--seed", "4")
    assert code == 0
    assert "expressiveness edges" in out and "TPTL[F] not contained in MTL[U,S]" in out


def test_check_unknown_case(capsys):
    assert run(capsys, "check", "thm9")[0] == 2


def test_fragment(files, capsys):
    f = files("f.mtl", "(F (0,1) (and a (F [3,3] c)))")
    code, out, _ = run(capsys, "fragment", f, "--porcelain")
    rows = dict(line.split("\t") for line in out.splitlines())
    assert rows["fragment"] == "BMTL[F,P]" and rows["non_punctual"] == "false" and rows["modal_depth"] == "2"


def test_crosscheck_files_and_random(files, capsys):
    a = files("a.tw", "a 0\nc 5/2")
    b = files("b.tw", "a 0\nc 3/2")
    code, out, _ = run(capsys, "crosscheck", a, b, "--menu", "Int^k", "--k", "2")
    assert code == 0
    code, out, _ = run(capsys, "crosscheck", "--random", "20", "--seed", "2")
    assert code == 0 and out.startswith("pairs: 20")
    assert run(capsys, "crosscheck")[0] == 2
