"""Command-line behaviour against frozen golden transcripts.

Each file in tests/golden holds ``argv``, the expected exit status and the
exact stdout.  Failing cases also pin a fragment of the stderr message.
Regenerate with ``G2ORBITS_REGEN_GOLDEN=1 pytest tests/test_cli.py``.
"""

from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from g2orbits.cli import run

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"
GOLDEN_FILES = sorted(GOLDEN.glob("*.json"))
REGEN = os.environ.get("G2ORBITS_REGEN_GOLDEN") == "1"


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = run(list(argv), out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda p: p.stem)
def test_golden(path):
    rec = json.loads(path.read_text())
    code, out, err = invoke(rec["argv"])
    if REGEN:
        rec.update(exit=code, stdout=out)
        path.write_text(json.dumps(rec, indent=1, ensure_ascii=False) + "\n")
    assert code == rec["exit"], err
    assert out == rec["stdout"]
    if rec["exit"] != 0:
        assert err.startswith("g2orbits: invalid input:")
        assert rec["stderr_contains"] in err


def test_every_subcommand_has_a_golden_file():
    from g2orbits.cli import COMMANDS

    covered = {json.loads(p.read_text())["argv"][0] for p in GOLDEN_FILES}
    covered |= {
        json.loads(p.read_text())["argv"][2]
        for p in GOLDEN_FILES
        if json.loads(p.read_text())["argv"][0] == "--format"
    }
    assert set(COMMANDS) <= covered


@pytest.mark.parametrize("argv, fragment", [
    (["case1-classify", "--vector", "[0,1,0,0,0,0,0]"], "not semistable"),
    (["case2-representative", "--d", "-1", "--s", "0"], "nonzero"),
    (["case2-same-orbit", "--d", "2", "--s1", "0", "--s2", "1"], "nonzero"),
    (["normclass", "--d", "3", "--s", "0"], "nonzero"),
    (["case1-classify", "--vector", "{not json"], "malformed JSON"),
    (["case2-classify", "--vector", "[[1,2]"], "malformed JSON"),
    (["case1-classify", "--vector", "[1,2,3]"], "expected 7 entries"),
])
def test_invalid_inputs_exit_2(argv, fragment):
    code, out, err = invoke(argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_argparse_errors_exit_2(capsys):
    assert run(["no-such-command"]) == 2
    assert run(["normclass", "--d", "2"]) == 2


def test_bad_factor_ceiling_exits_2(monkeypatch):
    monkeypatch.setenv("G2ORBITS_FACTOR_CEILING", "not-a-number")
    code, _, err = invoke(["normclass", "--d", "2", "--s", "3"])
    assert code == 2 and "invalid input" in err


def test_factor_ceiling_exceeded_exits_2(monkeypatch):
    monkeypatch.setenv("G2ORBITS_FACTOR_CEILING", "100")
    code, _, err = invoke(["normclass", "--d", "2", "--s", str(1000003 * 1000033)])
    assert code == 2 and "invalid input" in err


def test_verify_all_exits_0():
    code, out, _ = invoke(["verify", "--suite", "all"])
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert {c["name"] for c in report["checks"]}
    assert all(c["passed"] for c in report["checks"])


def test_verify_unknown_suite_exits_2():
    code, _, err = invoke(["verify", "--suite", "bogus"])
    assert code == 2 and "unknown suite" in err


@pytest.mark.parametrize("d, s", [(-1, "3"), (2, "-5/3"), (-3, "7"), (10, "1/2")])
def test_representative_round_trip(tmp_path, d, s):
    code, out, _ = invoke(["case2-representative", "--d", str(d), "--s", s])
    assert code == 0
    f = tmp_path / "rep.json"
    f.write_text(out)
    code, out2, _ = invoke(["case2-classify", "--file", str(f)])
    assert code == 0
    assert json.loads(out2)["splitting_class"] == d


def test_constructed_class_matches_normclass():
    pair_g = json.dumps({"g1": [[int(i == j) for j in range(7)] for i in range(7)],
                         "g2": [[1, 0], [0, 1]]})
    code, rep, _ = invoke(["case2-representative", "--d", "-1", "--s", "6"])
    code, out, _ = invoke(["case2-classify", "--vector", rep, "--g", pair_g, "--d", "-1", "--s", "6"])
    assert code == 0
    _, nc, _ = invoke(["normclass", "--d", "-1", "--s", "6"])
    assert json.loads(out)["norm_class"] == json.loads(nc)["class"]


def test_wrong_g_is_rejected():
    pair_g = json.dumps({"g1": [[int(i == j) for j in range(7)] for i in range(7)],
                         "g2": [[0, 1], [1, 0]]})
    code, rep, _ = invoke(["case2-representative", "--d", "-1", "--s", "3"])
    code, _, err = invoke(["case2-classify", "--vector", rep, "--g", pair_g, "--d", "-1", "--s", "3"])
    assert code == 2 and "not g . w_alpha" in err


def test_output_is_deterministic():
    argv = ["case1-reduce", "--vector", "[3,-1,2,0,5,1,7]"]
    assert invoke(argv) == invoke(argv)


def test_text_format_per_subcommand():
    code, out, _ = invoke(["normclass", "--d", "5", "--s", "-1", "--format", "text"])
    assert code == 0
    assert "is_norm: true" in out.splitlines()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "g2orbits", "normclass", "--d", "-1", "--s", "5"],
        capture_output=True, text=True, cwd=ROOT, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["is_norm"] is True
