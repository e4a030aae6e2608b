import json

import pytest

from weylcyc.cli import main
from weylcyc.suites import RunConfig, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_fundamental_cycle(capsys):
    code, out, err = run(capsys, "eval-tau", "--n", "1", "--chain", "[1; p1; q1] - [1; q1; p1]")
    assert code == 0
    assert out.startswith("1/1")
    assert "ratio = 1/2" in out
    assert "runtime" in err and "runtime" not in out


def test_eval_json_and_component(capsys):
    code, out, _ = run(capsys, "eval-tau", "--n", "1", "--k", "0", "--chain", "[1]", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["k"] == 0 and data["results"][0]["value"] == "1/1"


def test_eval_chain_file(capsys, tmp_path):
    path = tmp_path / "chains.txt"
    path.write_text("# two chains\n[1; p1; q1]\n[1; q1; p1]\n")
    code, out, _ = run(capsys, "eval-tau", "--n", "1", "--chain-file", str(path))
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["1/2", "-1/2"]


def test_eval_matrix_chain(capsys):
    code, out, _ = run(capsys, "eval-tau", "--n", "1", "--r", "2",
                       "--chain", "[E(1,2); E(2,1)*p1; E(1,1)*q1]")
    assert code == 0 and out.split()[0] == "1/2"


@pytest.mark.parametrize("argv", [
    ["eval-tau", "--n", "1", "--chain", "[1; p1 + ; q1]"],
    ["eval-tau", "--n", "1", "--chain", "[1; p1]"],
    ["eval-tau", "--n", "1", "--k", "2", "--chain", "[1]"],
    ["eval-tau", "--n", "1", "--chain-file", "/nonexistent/chains.txt"],
    ["table", "ahat-components", "3", "--matrix", "1,2;3,x"],
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_parse_error_shows_a_caret(capsys):
    _, _, err = run(capsys, "eval-tau", "--n", "1", "--chain", "[1; p1 + ; q1]")
    assert "^" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nonexistent"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_caps_exit_3(capsys):
    assert run(capsys, "table", "cycle-weights", "12")[0] == 3
    assert run(capsys, "--degree-cap", "2", "eval-tau", "--n", "1", "--chain", "[1; p1^3; q1^3]")[0] == 3
    assert run(capsys, "table", "ahat-components", "40")[0] == 3


def test_tables(capsys):
    code, out, _ = run(capsys, "table", "bernoulli", "4", "--format", "json")
    assert code == 0 and json.loads(out)["rows"][2] == ["2", "1/6"]
    code, out, _ = run(capsys, "table", "cycle-weights", "4", "--format", "json")
    rows = json.loads(out)["rows"]
    assert rows[0] == ["2", "-1/12", "1/12", "False"]
    code, out, _ = run(capsys, "table", "ahat-components", "2", "--matrix", "1,0;0,1")
    assert code == 0 and "-1/12" in out


def test_verify_is_reproducible(capsys):
    first = run(capsys, "verify", "--suite", "trace-id", "--seed", "3")
    second = run(capsys, "verify", "--suite", "trace-id", "--seed", "3")
    other = run(capsys, "verify", "--suite", "trace-id", "--seed", "4")
    assert first[0] == 0 and first[1] == second[1]
    assert json.loads(first[1])["suite_hash"] != json.loads(other[1])["suite_hash"]


def test_verify_failure_exits_1(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "cyclic", "--format", "text")
    assert code == 1 and out.rstrip().endswith("FAIL")


def test_certificate_round_trip():
    cert = run_suite("hm", RunConfig(seed=1))
    data = json.loads(cert.to_json())
    assert data["pass"] is True
    assert [i["name"] for i in data["identities"]] == [i.name for i in cert.identities]
    assert cert.to_text().endswith("PASS")
    with pytest.raises(KeyError):
        run_suite("nonexistent")
