import json
import subprocess
import sys
from pathlib import Path

import pytest

from dgres.cli import main, run

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def s(name):
    return str(SAMPLES / name)


def output(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv,code", [
    (["validate", "kx2.alg"], 0),
    (["validate", "dg-free.alg"], 0),
    (["cohomology", "dg-free.alg"], 0),
    (["bar", "kx2.alg"], 0),
    (["koszul-dual", "trunc2.alg", "--max-degree", "5"], 0),
    (["mc-check", "zp-group.alg"], 0),
    (["resolve", "kx2.alg"], 0),
    (["resolve", "exterior.alg", "--window", "-3:1"], 0),
    (["tor", "kx2.alg", "--max-n", "8"], 0),
    (["glue", "a2-glue.alg"], 0),
    (["glue", "kx2-glue.alg"], 0),
    (["diagonal-cone", "a2-glue.alg"], 0),
    (["smooth-cert", "kx2.alg"], 0),
    (["zigzag", "zigzag.alg"], 0),
    (["zigzag", "zigzag-zero.alg"], 1),
    (["validate", "bad-undeclared.alg"], 2),
])
def test_exit_codes(capsys, argv, code):
    argv = [argv[0], s(argv[1])] + argv[2:]
    got, out, err = output(capsys, argv)
    assert got == code, out + err
    if code == 2:
        assert out == ""
        assert err.startswith("dgres: error: ")
    else:
        assert out.startswith("dgres %s" % " ".join(argv))
        assert out.rstrip().splitlines()[-1].startswith("verdict: ")


def test_koszul_dual_dims_line(capsys):
    _, out, _ = output(capsys, ["koszul-dual", s("trunc2.alg"), "--max-degree", "5"])
    assert "dual dims: 1,2,4,8,16,32" in out
    assert "zero differential: yes" in out


def test_tor_line(capsys):
    _, out, _ = output(capsys, ["tor", s("kx2.alg"), "--max-n", "8"])
    assert "Tor dims: 1,1,1,1,1,1,1,1,1" in out


def test_negative_window_value(capsys):
    code, out, _ = output(capsys, ["bar", s("kx2.alg"), "--window", "-6:1"])
    assert code == 0
    assert "window: [-6,1]" in out


def test_bad_windows(capsys):
    assert output(capsys, ["bar", s("kx2.alg"), "--window", "3:4"])[0] == 2
    assert output(capsys, ["bar", s("kx2.alg"), "--window", "nonsense"])[0] == 2
    assert output(capsys, ["resolve", s("kx2.alg"), "--window", "-4:0"])[0] == 2


def test_positive_degree_algebra_is_an_input_error(tmp_path, capsys):
    p = tmp_path / "pos.alg"
    p.write_text("field Q\nalgebra E\n  gen 1 0\n  gen e 1\n  unit 1\nend\n")
    code, out, err = output(capsys, ["bar", str(p)])
    assert code == 2
    assert "window not representable" in err


def test_field_mismatch_is_an_input_error(capsys):
    code, _, err = output(capsys, ["validate", s("zp-group.alg"), "--field", "Q"])
    assert code == 2
    assert "field mismatch" in err


def test_missing_file(capsys):
    assert output(capsys, ["validate", s("nope.alg")])[0] == 2


def test_json_and_out(tmp_path, capsys):
    dest = tmp_path / "r.json"
    code, out, _ = output(capsys, ["tor", s("kx2.alg"), "--max-n", "3", "--json", "--out", str(dest)])
    assert code == 0
    data = json.loads(out)
    assert data["tables"]["Tor dims"] == [1, 1, 1, 1]
    assert data["ok"] is True
    assert dest.read_text() == out


@pytest.mark.parametrize("argv", [["resolve", "trunc2.alg"], ["diagonal-cone", "a2-glue.alg"],
                                  ["zigzag", "zigzag.alg"], ["koszul-dual", "kx2.alg", "--json"]])
def test_reruns_are_byte_identical(capsys, argv):
    argv = [argv[0], s(argv[1])] + argv[2:]
    first = output(capsys, argv)
    second = output(capsys, argv)
    assert first == second


def test_run_returns_report():
    code, rep, err = run(["resolve", s("zp-group.alg")])
    assert code == 0 and err is None
    assert rep.verdict.startswith("categorical-resolution evidence complete")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "dgres.cli", "tor", s("kx2.alg"), "--max-n", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "Tor dims: 1,1,1" in r.stdout
