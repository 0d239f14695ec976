"""End-to-end tests of the command-line interface (invoked in process)."""

import json

import pytest

from ballpick.cli import (
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VERIFY_FAIL,
    main,
)

# the third node is pinned at the origin by the canonical reduction
DEGENERATE_PROBLEM = {
    "nodes": [[[0.5, 0.0], [0.0, 0.0]], [[0.3, 0.0], [0.6, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
    "targets": [[1.0, 0.0], [0.3, 0.0], [0.0, 0.0]],
}
COLINEAR_PROBLEM = {
    "nodes": [[[0.5, 0.0], [0.0, 0.0]], [[-0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
    "targets": [[0.25, 0.0], [0.25, 0.0], [0.0, 0.0]],
}
GREEN_PROBLEM = {
    "p": [[0.5, 0.0], [0.0, 0.0]],
    "q": [[-0.5, 0.0], [0.0, 0.0]],
    "z": [[0.0, 0.0], [0.0, 0.0]],
}


def _run(capsys, argv, stdin_obj=None, monkeypatch=None, tmp_path=None):
    if stdin_obj is not None:
        path = tmp_path / "input.json"
        path.write_text(json.dumps(stdin_obj))
        argv = argv + [str(path)]
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_classify_degenerate(capsys, tmp_path):
    code, out = _run(capsys, ["classify"], DEGENERATE_PROBLEM, tmp_path=tmp_path)
    assert code == EXIT_OK
    assert out["kind"] == "degenerate"
    assert out["pair"] == "(0,z)"
    assert out["witnesses"]["t_A"] == pytest.approx(0.5, abs=1e-12)


def test_tstar_colinear(capsys, tmp_path):
    code, out = _run(capsys, ["tstar"], COLINEAR_PROBLEM, tmp_path=tmp_path)
    assert code == EXIT_OK
    assert out["tstar"] == pytest.approx(1.0, abs=1e-9)
    assert out["classification"]["kind"] == "colinear"


def test_solve_then_certify_round_trip(capsys, tmp_path):
    code, cert = _run(capsys, ["solve"], DEGENERATE_PROBLEM, tmp_path=tmp_path)
    assert code == EXIT_OK
    assert cert["report"]["pass"]
    assert cert["tstar"] == pytest.approx(0.5, abs=1e-9)
    code2, out2 = _run(capsys, ["certify"], cert, tmp_path=tmp_path)
    assert code2 == EXIT_OK
    assert out2["report"]["pass"]


def test_certify_rejects_tampered_certificate(capsys, tmp_path):
    _, cert = _run(capsys, ["solve"], DEGENERATE_PROBLEM, tmp_path=tmp_path)
    cert["B"]["zeros"] = [[0.3, 0.0]]
    code, out = _run(capsys, ["certify"], cert, tmp_path=tmp_path)
    assert code == EXIT_VERIFY_FAIL
    assert not out["report"]["pass"]


def test_green_command(capsys, tmp_path):
    code, out = _run(capsys, ["green"], GREEN_PROBLEM, tmp_path=tmp_path)
    assert code == EXIT_OK
    assert out["pass"]
    assert out["c"] == pytest.approx(0.25, abs=1e-9)
    assert out["l"] == pytest.approx(0.25, abs=1e-9)


def test_selftest(capsys):
    code, out = _run(capsys, ["selftest"])
    assert code == EXIT_OK
    assert out["failures"] == 0
    assert out["checks"] > 100


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["classify", str(bad)])
    capsys.readouterr()
    assert code == EXIT_PARSE


def test_missing_field_exit_code(capsys, tmp_path):
    code, _ = _run(capsys, ["classify"], {"nodes": []}, tmp_path=tmp_path)
    assert code == EXIT_PARSE


def test_bad_tol_rejected(capsys):
    code = main(["--tol", "0.5", "selftest"])
    capsys.readouterr()
    assert code == EXIT_PARSE


def test_output_is_deterministic(capsys, tmp_path):
    _, first = _run(capsys, ["solve"], DEGENERATE_PROBLEM, tmp_path=tmp_path)
    _, second = _run(capsys, ["solve"], DEGENERATE_PROBLEM, tmp_path=tmp_path)
    assert first == second
