import json
import subprocess
import sys

import pytest

from symdias import cli, golden


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_example3(capsys):
    code, out, _ = run(capsys, "expand", "(ab)c")
    assert code == 0
    assert out.splitlines()[0] == "X((ab)c) = " + golden.load("example3")["expansion"]


def test_expand_two_letters(capsys):
    code, out, _ = run(capsys, "expand", "ab", "--format", "csv")
    assert code == 0
    assert out == "center,word,coefficient\n1,ab,1\n1,ba,1\n2,ab,1\n2,ba,1\n"


def test_expand_degree5_json(capsys):
    code, out, _ = run(capsys, "expand", "((ab)(cd))e", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["terms"]) == 80
    assert sum(t[0] for t in data["terms"]) == 256


@pytest.mark.parametrize("argv", [["expand", "(ab"], ["expand", "(ab)a", "--multilinear"],
                                  ["rank", "--degree", "3", "--prime", "15"],
                                  ["rank", "--degree", "9"]])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "expand", "(ab)(cd")
    assert "position 7" in err


@pytest.mark.parametrize("n, line", [(3, "rank 3 / 3 columns, nullity 0"),
                                     (4, "rank 15 / 15 columns, nullity 0"),
                                     (5, "rank 105 / 105 columns, nullity 0")])
def test_rank(capsys, n, line):
    code, out, _ = run(capsys, "rank", "--degree", str(n))
    assert code == 0
    assert line in out.splitlines()


def test_prime_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRIME_ENV, "101")
    code, out, _ = run(capsys, "rank", "--degree", "4", "--format", "json")
    assert code == 0 and json.loads(out)["prime"] == 101
    code, out, _ = run(capsys, "rank", "--degree", "4", "--format", "json", "--prime", "103")
    assert json.loads(out)["prime"] == 103
    monkeypatch.setenv(cli.PRIME_ENV, "seven")
    assert run(capsys, "rank", "--degree", "4")[0] == 2


@pytest.mark.parametrize("pattern, count", [("x6", 3), ("x5y", 4)])
def test_degree6_patterns(capsys, pattern, count):
    code, out, _ = run(capsys, "degree6", "--pattern", pattern, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["nullity"] == count and len(data["identities"]) == count


def test_mismatch_gives_diff_and_exit_1(capsys, monkeypatch):
    real = golden.load

    def tampered(name):
        data = json.loads(json.dumps(real(name)))
        if name == "example3":
            data["rank"] = 2
        return data

    monkeypatch.setattr(golden, "load", tampered)
    code, _, err = run(capsys, "rank", "--degree", "3")
    assert code == 1
    assert "--- golden rank" in err and "- 2" in err and "+ 3" in err
    assert run(capsys, "rank", "--degree", "3", "--no-golden")[0] == 0


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "FAIL" not in out
    assert len(out.splitlines()) > 25


def test_output_is_byte_deterministic():
    argv = [sys.executable, "-m", "symdias", "degree6", "--pattern", "x5y", "--format", "csv"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


@pytest.mark.slow
def test_degree7_cli(capsys):
    code, out, _ = run(capsys, "degree7", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "partition,dim,rank_S,rank_SC,rank_N,new"
    assert lines[2] == "61,6,31,40,47,7"
    assert len(lines) == 16
