import csv
import io
import json
import subprocess
import sys

import pytest

from quadpoisson.cli import rational, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_verify_json():
    code, text = call("verify", "dh2", "--a", "0", "--b", "1", "--rmax", "4")
    assert code == 0
    doc = json.loads(text)
    assert doc["summary"]["failed"] == 0
    assert doc["summary"]["regime"] == "A0_EXACT"
    assert all(s["status"] == "pass" for s in doc["slices"])
    r2 = [s for s in doc["slices"] if s["d"] == 2 and (s["k"], s["r"]) == (1, 1)]
    assert r2[0]["dim"] == 2 and r2[0]["named"] == ["d23", "d31"]


def test_json_round_trip_and_order():
    _, text = call("compute", "dh2", "--a", "0", "--b", "1", "--rmax", "5")
    doc = json.loads(text)
    table = {(s["d"], s["k"], s["r"]): s["dim"] for s in doc["slices"]}
    from quadpoisson.complexes import cohomology_dims
    from quadpoisson.structures import StructureParams
    p = StructureParams.dh2(0, 1)
    for (d, k, r), dim in table.items():
        assert cohomology_dims((k, r), p)[d] == dim
    keys = [(s["d"], s["k"], s["r"]) for s in doc["slices"]]
    assert keys == sorted(keys)
    assert json.loads(json.dumps(doc)) == doc


def test_verify_failure_exit_code(monkeypatch):
    from quadpoisson import report
    real = report.expected_dim_complex
    # pretend the oracle predicts one extra class at (1,1) in degree 2
    fake = lambda p, cx, d, g: real(p, cx, d, g) + (d == 2 and tuple(g) == (1, 1))
    monkeypatch.setattr(report, "expected_dim_complex", fake)
    code, text = call("verify", "dh2", "--a", "0", "--b", "1", "--rmax", "2")
    assert code == 1
    doc = json.loads(text)
    (bad,) = [s for s in doc["slices"] if s["status"] == "fail"]
    assert (bad["d"], bad["k"], bad["r"], bad["dim"], bad["expected"]) == (2, 1, 1, 2, 3)
    assert doc["summary"]["failed"] == 1


def test_structure_flag_and_positional_agree():
    assert call("compute", "dh7", "--a", "0", "--b", "1", "--c", "-2", "--rmax", "3") == \
        call("compute", "--structure", "dh7", "--a", "0", "--b", "1", "--c", "-2", "--rmax", "3")


def test_verify_all_complexes_markdown_and_csv():
    code, md = call("verify", "dh2", "--a", "1", "--b", "1", "--rmax", "3", "--complex", "all",
                    "--format", "markdown")
    assert code == 0
    assert md.startswith("# verify") and "## H^3(R)" in md
    code, text = call("verify", "dh2", "--a", "1", "--b", "1", "--rmax", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and rows and all(r["status"] == "pass" for r in rows)


def test_empty_report():
    code, text = call("compute", "dh2", "--a", "1", "--b", "1", "--rmax", "0", "--complex", "s")
    assert code == 0 and json.loads(text)["slices"] == []
    code, md = call("compute", "dh2", "--a", "1", "--b", "1", "--rmax", "0", "--complex", "s",
                    "--format", "markdown")
    assert "_no slices_" in md


def test_all_slices_flag():
    _, text = call("compute", "dh2", "--rmax", "2", "--all-slices")
    assert len(json.loads(text)["slices"]) == 6 * 4


def test_les_check():
    code, text = call("les-check", "dh2", "--a", "0", "--b", "1", "--rmax", "4")
    doc = json.loads(text)
    assert code == 0 and doc["summary"]["failed"] == 0 and len(doc["slices"]) == 15


def test_jobs_match_sequential():
    args = ("compute", "dh7", "--a", "0", "--b", "1", "--c", "-3", "--rmax", "4", "--complex", "all")
    assert call(*args, "--jobs", "2") == call(*args)


def test_usage_errors(capsys):
    assert call("verify", "dh2", "--a", "1", "--b", "0")[0] == 2
    assert "diagonal" in capsys.readouterr().err
    assert call("compute")[0] == 2
    assert call("compute", "dh2", "--structure", "dh7")[0] == 2
    assert call("compute", "custom")[0] == 2
    assert call("compute", "dh2", "--rmax", "-1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        call("compute", "dh2", "--a", "0.5")
    assert exc.value.code == 2


def test_rational_type():
    assert rational("-3/2") == pytest.approx(-1.5) and str(rational("4/6")) == "2/3"
    for bad in ("0.5", "1e3", "1/0", "a"):
        with pytest.raises(Exception):
            rational(bad)


def test_custom_tensors(tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text("(2*x1 - x2)*x3*d23 + (x1 + 2*x2)*x3*d31 + (x1^2 + x2^2)*d12\n")
    code, text = call("compute", "custom", "--tensor", str(good), "--rmax", "3")
    assert code == 0
    _, ref = call("compute", "dh2", "--a", "1", "--b", "1", "--rmax", "3")
    assert json.loads(text)["slices"] == json.loads(ref)["slices"]
    # the closed forms do not cover custom input
    assert call("verify", "custom", "--tensor", str(good))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("x1*x3*d12 + x2*x3*d23")
    assert call("compute", "custom", "--tensor", str(bad))[0] == 2
    assert "[L, L] = " in capsys.readouterr().err
    skew = tmp_path / "skew.txt"
    skew.write_text("x3^2*d12")
    assert call("compute", "custom", "--tensor", str(skew))[0] == 2
    assert "admissible" in capsys.readouterr().err
    junk = tmp_path / "junk.txt"
    junk.write_text("x1 +")
    assert call("compute", "custom", "--tensor", str(junk))[0] == 2
    assert call("compute", "custom", "--tensor", str(tmp_path / "missing.txt"))[0] == 2


def test_rmatrix_commands():
    code, text = call("rmatrix", "stabilizer", "dh2", "--a", "1", "--b", "1")
    assert code == 0 and json.loads(text)["dim"] == 3
    code, text = call("rmatrix", "yb", "dh7", "--a", "1", "--b", "2", "--c", "3")
    doc = json.loads(text)
    assert code == 0 and doc["is_zero"] and doc["j_identity"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quadpoisson", "verify", "dh2", "--rmax", "2",
                           "--format", "csv"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.startswith("complex,")
