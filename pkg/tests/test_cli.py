"""The command-line front end: verdicts, exit codes, formats."""

import pytest

from filterlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# member


def test_member_true_exits_zero(capsys):
    code, out, _ = run(capsys, "member", "frechet", "cofin{0}")
    assert code == 0
    assert "true" in out


def test_member_false_exits_one(capsys):
    code, out, _ = run(capsys, "member", "frechet", "fin{0,1}")
    assert code == 1
    assert "false" in out


def test_member_set_parses_against_filter_domain(capsys):
    code, out, _ = run(capsys, "member", "katetov(2)", "sections({}, cofin{})")
    assert code == 0


def test_member_structured_format(capsys):
    code, out, _ = run(capsys, "--format", "structured", "member", "frechet", "cofin{}")
    lines = out.splitlines()
    assert lines[0] == "format=1"
    assert "verdict=true" in lines


# ---------------------------------------------------------------------------
# rank


def test_rank_prints_bounds_and_certificate(capsys):
    code, out, _ = run(capsys, "rank", "katetov(3)")
    assert code == 0
    assert "bounds: [3,3]" in out
    assert "RKat" in out


def test_rank_structured(capsys):
    code, out, _ = run(capsys, "--format", "structured", "rank", "katetov(1)")
    assert code == 0
    assert "bounds=[1,1]" in out


# ---------------------------------------------------------------------------
# flim


def test_flim_prints_fraction(capsys):
    code, out, _ = run(capsys, "flim", "seq({0: 1/2}, 1/3)", "frechet")
    assert code == 0
    assert "1/3" in out


def test_flim_divergent(capsys):
    code, out, _ = run(
        capsys, "flim", "seq({0: 1}, 0)", "principal(fin{0,1})"
    )
    assert code == 1
    assert "divergent" in out


# ---------------------------------------------------------------------------
# game


def test_game_prints_transcript(capsys):
    code, out, _ = run(capsys, "game", "frechet", "--rounds", "4", "--seed", "2")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("n=")]
    assert len(lines) == 4
    assert "|U|=" in lines[-1]


def test_game_copy_strategy(capsys):
    code, out, _ = run(
        capsys,
        "game",
        "prod(frechet,frechet)",
        "--rounds",
        "5",
        "--pI",
        "copy",
        "--pII",
        "random",
    )
    assert code == 0
    assert out.count("n=") == 5


def test_game_unknown_strategy_errors(capsys):
    code, _, err = run(capsys, "game", "frechet", "--pI", "nosuch")
    assert code == 2
    assert "error" in err


# ---------------------------------------------------------------------------
# construct


def test_construct_zfamily(capsys):
    code, out, _ = run(capsys, "construct", "zfamily", "--trunc", "200")
    assert code == 0
    assert out.strip()


def test_construct_collapse_limit(capsys):
    code, out, _ = run(capsys, "construct", "collapse-limit", "--trunc", "500")
    assert code == 0
    assert "[1,1]" in out


def test_construct_type_gap(capsys):
    code, out, _ = run(capsys, "construct", "type-gap")
    assert code == 0
    assert "[1,1]" in out


def test_construct_trunc_flag_position_is_flexible(capsys):
    before = run(capsys, "--trunc", "300", "construct", "zfamily")
    after = run(capsys, "construct", "zfamily", "--trunc", "300")
    assert before[0] == after[0] == 0
    assert before[1] == after[1]


def test_trunc_env_variable(capsys, monkeypatch):
    monkeypatch.setenv("FILTERLAB_TRUNC", "250")
    code, out, _ = run(capsys, "construct", "zfamily")
    assert code == 0
    monkeypatch.setenv("FILTERLAB_TRUNC", "not-a-number")
    code, _, err = run(capsys, "construct", "zfamily")
    assert code == 2
    assert "FILTERLAB_TRUNC" in err


# ---------------------------------------------------------------------------
# check


def test_check_ordinals_suite(capsys):
    code, out, _ = run(capsys, "check", "ordinals")
    assert code == 0
    assert "PASS" in out
    assert "passed" in out.splitlines()[-1]


def test_check_unknown_suite(capsys):
    code, _, err = run(capsys, "check", "nosuch")
    assert code == 2


def test_check_list(capsys):
    code, out, _ = run(capsys, "check", "--list")
    assert code == 0
    assert "ordinals" in out


# ---------------------------------------------------------------------------
# errors


def test_parse_error_exit_code_and_position(capsys):
    code, _, err = run(capsys, "member", "frechet", "fin{1,}")
    assert code == 2
    assert "line 1" in err


def test_rank_of_malformed_filter(capsys):
    code, _, err = run(capsys, "rank", "meet(frechet)")
    assert code == 2
