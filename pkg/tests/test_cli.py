import io as stdio
import json
import subprocess
import sys

import pytest

from dgquot import io
from dgquot.cli import main
from dgquot.library import a0, k_resolution
from dgquot.randgen import random_table_category


def dims(table_json):
    return {e["degree"]: e["dimension"] for e in table_json["degrees"]}


def run(*argv):
    out = stdio.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def a0_file(tmp_path):
    p = tmp_path / "a0.dgcat"
    p.write_text(io.render(a0()))
    return str(p)


def test_validate(a0_file):
    code, text = run("validate", a0_file)
    assert code == 0 and "valid" in text


def test_validate_broken_file_is_an_input_error(tmp_path):
    p = tmp_path / "bad.dgcat"
    p.write_text("dgcat 1\nfield Q\nmode table\nobjects P\nhom P P: id 0, x -1\nunit P = id\nd id = x\n")
    assert run("validate", str(p))[0] == 3


def test_missing_file_and_bad_flags(a0_file):
    assert run("validate", "/nonexistent.dgcat")[0] == 3
    assert run("quotient-ext", a0_file, "--window", "3:-3", "--max-level", "2")[0] == 3
    assert run("frobnicate")[0] == 3


def test_quotient_commands_need_bounds(a0_file):
    assert run("quotient-ext", a0_file, "--by", "X1")[0] == 3
    code, text = run("--format", "json", "quotient-ext", a0_file, "--by", "X1")
    assert code == 3 and json.loads(text)["exit_code"] == 3


def test_quotient_ext_with_empty_b_is_ext_tr(a0_file):
    code, text = run("--format", "json", "quotient-ext", a0_file, "--window", "-2:2", "--max-level", "2",
                     "--pipeline", "filtration", "--pipeline", "cone", "--pipeline", "orthogonal")
    assert code == 0
    doc = json.loads(text)
    got = {(p["source"], p["target"]): p["pipelines"] for p in doc["pairs"]}
    want = {("X1", "X1"): 1, ("X1", "X2"): 1, ("X2", "X2"): 1, ("X2", "X1"): 0}
    for pair, tabs in got.items():
        for t in tabs.values():
            assert dims(t) == {n: (want[pair] if n == 0 else 0) for n in range(-2, 3)}


def test_quotient_ext_by_cone_bundled():
    code, text = run("quotient-ext", "bundled:i2.dgcat", "X1", "X2", "--by", "Cf", "--window", "-1:1",
                     "--max-level", "6", "--pipeline", "orthogonal")
    assert code == 0
    assert "0:1" in text


def test_cone_flag_extends_the_category(a0_file):
    code, text = run("--format", "json", "quotient-ext", a0_file, "X1", "X2", "--cone", "Cf=X1,X2,f",
                     "--by", "Cf", "--window", "-1:1", "--max-level", "6", "--pipeline", "orthogonal")
    assert code == 0
    (pair,) = json.loads(text)["pairs"]
    assert dims(pair["pipelines"]["orthogonal"]) == {-1: 0, 0: 1, 1: 0}


def test_json_is_deterministic():
    argv = ("--format", "json", "cross-check", "--seed", "3", "--window", "-1:1", "--max-level", "3")
    code1, a = run(*argv)
    code2, b = run(*argv)
    assert a == b and code1 == code2
    doc = json.loads(a)
    assert doc["format_version"] >= 1 and doc["command"] == "cross-check"


def test_cross_check_seed_agrees():
    code, text = run("cross-check", "--seed", "5", "--count", "2", "--window", "-2:2", "--max-level", "4")
    assert code in (0, 2)
    assert "DISCREPANCY" not in text


def test_orthogonal(tmp_path):
    code, text = run("--format", "json", "orthogonal", "bundled:i2.dgcat", "X2", "--by", "Cf", "--window", "-3:3")
    assert code == 0 and json.loads(text)["orthogonal"] == "yes"
    code, _ = run("orthogonal", "bundled:i2.dgcat", "Cf", "--by", "Cf", "--window", "-3:3")
    assert code == 1


def test_resolve_module_and_category(tmp_path):
    for method in ("semifree", "bar"):
        code, _ = run("resolve-module", "bundled:i2.dgcat", "X2", "--over", "Cf", "--method", method,
                      "--window", "-1:1", "--max-level", "3")
        assert code == 0
    out = tmp_path / "res.dgcat"
    code, _ = run("resolve-category", "bundled:i2.dgcat", "--window", "-1:1", "--max-level", "4", "-o", str(out))
    assert code in (0, 2)
    R = io.load(str(out))
    assert set(R.objects) == {"X1", "X2", "Cf"}


def test_check_quotient_examples():
    assert run("check-quotient", "--example", "k-i2", "--window", "-3:3")[0] == 0
    code, text = run("check-quotient", "--example", "k-broken-i2", "--window", "-3:3")
    assert code == 1 and "refuted" in text


def test_check_quotient_from_files(tmp_path):
    k = tmp_path / "k.dgcat"
    k.write_text(io.render(k_resolution()))
    from dgquot.library import i2
    t = tmp_path / "i2.dgcat"
    t.write_text(io.render(i2()))
    code, _ = run("check-quotient", str(k), str(t), "--image", "f=f", "--image", "g=g", "--window", "-2:2")
    assert code == 0
    code, _ = run("check-quotient", str(k), str(t), "--image", "f=f", "--window", "-2:2")
    assert code == 1


def test_ext_on_random_file(tmp_path):
    p = tmp_path / "r.dgcat"
    p.write_text(io.render(random_table_category(1)))
    code, text = run("--format", "json", "ext", str(p), "--window", "-1:1")
    assert code == 0 and json.loads(text)["pairs"]


def test_module_entry_point(a0_file):
    r = subprocess.run([sys.executable, "-m", "dgquot", "validate", a0_file], capture_output=True, text=True)
    assert r.returncode == 0 and "valid" in r.stdout
