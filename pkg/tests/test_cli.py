import json
import subprocess
import sys

import pytest

from quotcodes.cli import main
from quotcodes.codes import parse_code
from quotcodes.config import load_config


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_params(capsys):
    rc, out, _ = run(capsys, "params", "--q", "8", "--m", "3")
    info = json.loads(out)
    assert rc == 0
    assert info["rational_points"] == 177 and info["genus"] == 7 and info["c"] == 3


def test_points_listing(capsys):
    rc, out, _ = run(capsys, "points", "--q", "3", "--m", "2")
    lines = out.splitlines()
    assert rc == 0 and len(lines) == 1 + 3 * (1 + 2 * 2)
    assert lines[0] == "(0, 0)" and "Pinf" in lines


def test_bad_instance_exit_1(capsys):
    rc, _, err = run(capsys, "params", "--q", "7", "--m", "3")
    assert rc == 1 and "error" in err


def test_missing_flag_exit_1(capsys):
    rc, _, err = run(capsys, "build", "--q", "5", "--m", "3")
    assert rc == 1 and "--d" in err


def test_argparse_error_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 1


def test_build_to_file(tmp_path, capsys):
    out = tmp_path / "g.txt"
    rc, _, _ = run(capsys, "build", "--q", "5", "--m", "3", "--d", "1", "--out", str(out))
    code = parse_code(out.read_text())
    assert rc == 0 and (code.n, code.k) == (65, 3)


def test_build_with_divisor(capsys):
    rc, out, _ = run(capsys, "build", "--q", "7", "--m", "4", "--d", "2", "--E", "origin")
    assert rc == 0 and out.splitlines()[0].startswith("174 ")


def test_dual_distance(capsys):
    rc, out, _ = run(capsys, "dual-distance", "--q", "5", "--m", "2", "--d", "1")
    res = json.loads(out)
    assert rc == 0 and res["dual_distance"] == 4 and len(res["witness"]) == 4


def test_circuits_count(capsys):
    rc, out, _ = run(capsys, "circuits", "--q", "8", "--m", "3", "--d", "1")
    res = json.loads(out)
    assert rc == 0 and res["circuit_count"] == 56 and res["codeword_count"] == 63 * 56
    assert {c["geometry"] for c in res["circuits"]} == {"horizontal"}


def test_verify_mismatch_exit_2(capsys):
    rc, out, _ = run(capsys, "verify", "horizontal-supports", "--q", "8", "--m", "3", "--d", "1", "--format", "txt")
    assert rc == 2
    assert "[mismatch] horizontal-supports count-closed-form" in out


def test_verify_alias_and_match(capsys):
    aliases = load_config()["aliases"]["suites"]
    alias = next(k for k, v in aliases.items() if v == "complete-distance")
    rc, out, _ = run(capsys, "verify", alias, "--q", "5", "--m", "3", "--d", "1", "--format", "csv")
    assert rc == 0
    assert out.splitlines()[0].startswith("suite,claim")
    assert all(",match," in line for line in out.splitlines()[1:])


def test_verify_fresh_instance(capsys):
    rc, out, _ = run(capsys, "verify", "curve", "--q", "2", "--m", "3")
    assert rc == 0 and len(json.loads(out)) == 2


def test_unknown_suite_exit_1(capsys):
    rc, _, err = run(capsys, "verify", "no-such-suite")
    assert rc == 1 and "unknown suite" in err


@pytest.mark.parametrize("name", sorted(load_config()["aliases"]["examples"]) + ["slanted-line"])
def test_repro(name, capsys):
    rc, out, _ = run(capsys, "repro", name, "--format", "json")
    assert rc == 0 and {r["verdict"] for r in json.loads(out)} == {"match"}


def test_repro_output_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "repro", "slanted-line", "--out", str(a))
    run(capsys, "repro", "slanted-line", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "quotcodes.cli", "params", "--q", "5", "--m", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["rational_points"] == 1 + 5 * (1 + 4 * 3)
