import json
import subprocess
import sys

import numpy as np
import pytest

from altlab import PsdMatrix
from altlab.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATED, main
from altlab.matrixio import save_matrix

FAST = ["--dims", "1,2", "--samples", "3", "--seed", "5"]


def test_check_clean_run(capsys):
    assert main(["check", "--ineq", "alt,waterwine", "--r", "0.5,2", "--q", "1"] + FAST) == EXIT_OK
    out = capsys.readouterr().out
    assert "alt" in out and "waterwine" in out and "min rel. slack" in out


def test_check_out_files_byte_identical(tmp_path):
    for fmt in ("jsonl", "csv"):
        paths = [tmp_path / f"{i}.{fmt}" for i in range(2)]
        for p in paths:
            main(["check", "--ineq", "all", "--format", fmt, "--out", str(p)] + FAST)
        assert paths[0].read_bytes() == paths[1].read_bytes()


def test_check_out_dash_streams_records(capsys):
    main(["check", "--ineq", "lemma", "--out", "-"] + FAST)
    cap = capsys.readouterr()
    records = [json.loads(line) for line in cap.out.splitlines()]
    assert records and all(r["ineq_id"] == "lemma" for r in records)
    assert "inequality" in cap.err


def test_check_seed_from_environment(monkeypatch, tmp_path):
    a, b, c = (tmp_path / n for n in "abc")
    args = ["check", "--ineq", "alt", "--dims", "2", "--samples", "2"]
    monkeypatch.setenv("ALTLAB_SEED", "31")
    main(args + ["--out", str(a)])
    main(args + ["--seed", "31", "--out", str(b)])
    main(args + ["--seed", "32", "--out", str(c)])
    assert a.read_bytes() == b.read_bytes() != c.read_bytes()


def test_check_exploratory_violations_do_not_fail(capsys):
    code = main(["check", "--ineq", "t_family", "--dims", "3", "--r", "0.5", "--q", "1",
                 "--t", "0", "--samples", "40", "--seed", "0"])
    assert code == EXIT_OK
    assert "EXPLORATORY REGIME" in capsys.readouterr().out


def test_check_proven_violation_exits_one(capsys):
    # the symmetrised general bound fails for p > 1 on some inputs
    code = main(["check", "--ineq", "general", "--dims", "2", "--q", "1", "--p", "inf",
                 "--samples", "60", "--seed", "0"])
    assert code == EXIT_VIOLATED


@pytest.mark.parametrize("argv", [
    ["check", "--ineq", "nope"],
    ["check", "--samples", "0"],
    ["check", "--r", "x"],
    ["check", "--a", "2,3", "--b", "1"],
    ["probe", "--ineq", "waterwine", "--r", "0.5", "--q", "1", "--budget", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_probe_and_witness_replay(tmp_path, capsys):
    w = tmp_path / "w.json"
    code = main(["probe", "--ineq", "waterwine", "--dims", "2", "--r", "0.5", "--q", "1",
                 "--budget", "200", "--seed", "1", "--out", str(w)])
    assert code == EXIT_OK
    assert "best ratio" in capsys.readouterr().out
    assert main(["case", "--witness", str(w)]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert abs(rep["replay_ratio"] - rep["witness_ratio"]) <= 1e-10


def test_case_identity_pair(tmp_path, capsys):
    a = tmp_path / "a.json"
    save_matrix(a, PsdMatrix(np.eye(2)))
    assert main(["case", str(a), str(a), "--ineq", "alt", "--r", "0.5", "--q", "2"]) == EXIT_OK
    rep = json.loads(capsys.readouterr().out)
    assert rep["verdict"] == "equality"


def test_case_prints_intermediates(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_matrix(a, np.diag([2.0, 1.0]), kind="psd")
    save_matrix(b, np.array([[2.0, 1.0], [1.0, 1.0]]), kind="psd")
    main(["case", str(a), str(b), "--ineq", "waterwine", "--r", "0.5", "--q", "2"])
    extras = json.loads(capsys.readouterr().out)["extras"]
    for key in ("water", "wine", "norm_form", "sandwich_form", "formulation_gap"):
        assert key in extras


def test_case_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows": 2, "cols": 2, "data": [[1, 0], [0, 0], [0, 0]}')
    code = main(["case", str(bad), str(bad), "--ineq", "alt", "--r", "0.5", "--q", "1"])
    assert code != EXIT_OK
    err = capsys.readouterr().err
    assert "parse error" in err and "bad.json" in err and "at byte" in err


def test_case_kind_mismatch_names_class(tmp_path, capsys):
    a = tmp_path / "a.json"
    save_matrix(a, np.diag([1.0, -1.0]))
    code = main(["case", str(a), str(a), "--ineq", "alt", "--r", "0.5", "--q", "1"])
    assert code == EXIT_USAGE
    assert "positive semidefinite" in capsys.readouterr().err


def test_case_wrong_file_count(tmp_path, capsys):
    a = tmp_path / "a.json"
    save_matrix(a, np.eye(2))
    assert main(["case", str(a), "--ineq", "alt", "--r", "0.5", "--q", "1"]) == EXIT_USAGE


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "altlab", "check", "--ineq", "trace_norm",
                          "--dims", "2", "--samples", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "trace_norm" in res.stdout
