import json

import pytest

from ufabound.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--n", "3")
    assert code == 0 and out == "115\n"


def test_table1_csv(capsys):
    code, out, _ = run(capsys, "table1", "--max", "3")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n,dfa2ufa_lower,dfa2ufa_upper,nfa2ufa_lower,nfa2dfa"
    assert lines[1] == "1,1,1,1,1"
    assert lines[3] == "3,39,39,115,133"


def test_enumerate_methods_agree(tmp_path, capsys):
    out_a = tmp_path / "filter.txt"
    out_b = tmp_path / "bijection.txt"
    assert run(capsys, "enumerate", "--n", "3", "--method", "filter",
               "--out", str(out_a))[0] == 0
    assert run(capsys, "enumerate", "--n", "3", "--method", "bijection",
               "--out", str(out_b))[0] == 0
    a = set(out_a.read_text().splitlines())
    b = set(out_b.read_text().splitlines())
    assert a == b and len(a) == 115


def test_build_matrix_and_rank(tmp_path, capsys):
    mat = tmp_path / "m2.mat"
    code, out, _ = run(capsys, "build-matrix", "--n", "2", "--kind", "M",
                       "--out", str(mat))
    assert code == 0 and "7x9" in out
    assert (tmp_path / "m2.mat.rows").exists()
    assert (tmp_path / "m2.mat.cols").exists()

    code, out, _ = run(capsys, "rank", "--in", str(mat), "--exact")
    assert code == 0 and out == "7\n"
    code, out, _ = run(capsys, "rank", "--in", str(mat), "--mod", str(2**31 - 1))
    assert code == 0 and out == "7\n"


def test_build_matrix_output_is_reproducible(tmp_path, capsys):
    first = tmp_path / "a.mat"
    second = tmp_path / "b.mat"
    run(capsys, "build-matrix", "--n", "2", "--kind", "K", "--out", str(first))
    run(capsys, "build-matrix", "--n", "2", "--kind", "K", "--jobs", "3",
        "--out", str(second))
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "a.mat.rows").read_bytes() == (tmp_path / "b.mat.rows").read_bytes()


def test_rank_reports_bad_modulus(tmp_path, capsys):
    mat = tmp_path / "k.mat"
    run(capsys, "build-matrix", "--n", "2", "--kind", "K", "--out", str(mat))
    code, _, err = run(capsys, "rank", "--in", str(mat), "--mod", "4")
    assert code == 2 and "not prime" in err


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--level", "quick")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].endswith("checks passed")


def test_verify_full_n2_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--level", "full")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_verify_output_is_reproducible(capsys):
    _, first, _ = run(capsys, "verify", "--n", "2", "--level", "quick")
    _, second, _ = run(capsys, "verify", "--n", "2", "--level", "quick")
    assert first == second


def test_schmidt_with_files(tmp_path, capsys):
    automaton = {
        "type": "2nfa",
        "states": 2,
        "alphabet": ["a", "b"],
        "initial": [1],
        "accepting": [2],
        "transitions": [
            {"from": 1, "symbol": "⊢", "to": 1, "dir": 1},
            {"from": 1, "symbol": "a", "to": 2, "dir": 1},
            {"from": 2, "symbol": "b", "to": 2, "dir": 1},
            {"from": 2, "symbol": "a", "to": 1, "dir": -1},
        ],
    }
    aut = tmp_path / "aut.json"
    aut.write_text(json.dumps(automaton))
    (tmp_path / "xs.txt").write_text("-\na\na b\nb\n")
    (tmp_path / "ys.txt").write_text("-\nb\nb b\na\n")
    code, out, _ = run(capsys, "schmidt", "--automaton", str(aut),
                       "--prefixes", str(tmp_path / "xs.txt"),
                       "--suffixes", str(tmp_path / "ys.txt"))
    assert code == 0
    assert "rank" in out and "bound 7" in out
    report = json.loads(out.splitlines()[-1])
    assert report["ok"] is True and report["rank"] <= 7
    assert report["rows"] == 4 and report["cols"] == 4


def test_schmidt_random_mode(capsys):
    code, out, _ = run(capsys, "schmidt", "--random", "3", "--states", "2",
                       "--alphabet", "2", "--seed", "5")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4
    for line in lines[:-1]:
        assert json.loads(line)["ok"] is True


def test_schmidt_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["schmidt", "--prefixes", "x"])
    assert exc.value.code == 2


def test_unknown_symbol_in_strings(tmp_path, capsys):
    automaton = {
        "type": "2nfa", "states": 1, "alphabet": ["a"],
        "initial": [1], "accepting": [1],
        "transitions": [{"from": 1, "symbol": "⊢", "to": 1, "dir": 1},
                        {"from": 1, "symbol": "a", "to": 1, "dir": 1}],
    }
    aut = tmp_path / "aut.json"
    aut.write_text(json.dumps(automaton))
    (tmp_path / "xs.txt").write_text("a z\n")
    (tmp_path / "ys.txt").write_text("-\n")
    code, _, err = run(capsys, "schmidt", "--automaton", str(aut),
                       "--prefixes", str(tmp_path / "xs.txt"),
                       "--suffixes", str(tmp_path / "ys.txt"))
    assert code == 2 and "unknown symbol" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["count"])
    assert exc.value.code == 2


def test_bad_json_is_a_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "schmidt", "--automaton", str(bad),
                       "--prefixes", str(bad), "--suffixes", str(bad))
    assert code == 2 and err.startswith("error:")
