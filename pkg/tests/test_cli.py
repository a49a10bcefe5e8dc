import json
import subprocess
import sys

import jsonschema
import pytest

from cyclotope.cli import main
from cyclotope.report import load_schema


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_report_validates(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, err = run(capsys, "verify", "--n", "3", "--out", str(out), "--seed", "7")
    assert code == 0
    assert "seed=7" in err
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, load_schema())
    assert doc["status"] == "pass"
    by_name = {c["name"]: c for c in doc["checks"]}
    assert by_name["critical_counts"]["actual"] == ["1", "7"]
    assert by_name["volume_det_route"]["actual"] == "0"


def test_verify_skips_long_checks(capsys):
    code, out, _ = run(capsys, "verify", "--n", "7")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, load_schema())
    status = {c["name"]: c["status"] for c in doc["checks"]}
    assert status["betti_order_complex"] == "skipped"
    assert status["volume_det_route"] == "skipped"
    assert status["critical_counts"] == "pass"


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "99"],
    ["verify", "--n", "2"],
    ["betti", "--n", "6", "--method", "order-complex"],
    ["complex", "--n", "8"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["volume", "--n", "3", "--route", "nope"])
    assert exc.value.code == 2


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("CYCLOTOPE_THREADS", "many")
    code, _, _ = run(capsys, "volume", "--n", "3")
    assert code == 2


def test_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(capsys, "export", "--n", "3", "--out", str(blocker / "sub"))
    assert code == 3
    code, _, _ = run(capsys, "complex", "--n", "3", "--out", str(blocker / "x.json"))
    assert code == 3


def test_complex_exports(capsys):
    code, out, _ = run(capsys, "complex", "--n", "3", "--export", "dot")
    assert code == 0 and out.count("--") == 12
    code, out, _ = run(capsys, "complex", "--n", "4", "--export", "json")
    assert len(json.loads(out)["cells"]) == 134
    code, out, _ = run(capsys, "complex", "--n", "5", "--export", "csv")
    assert out == "dim,count\n0,120\n1,360\n2,390\n3,180\n"


def test_morse_reports(capsys):
    code, out, _ = run(capsys, "morse", "--n", "4")
    rows = out.strip().splitlines()
    assert rows[0] == "id,dim,type,label" and len(rows) == 1 + 22
    code, out, _ = run(capsys, "morse", "--n", "4", "--report", "critical", "--format", "jsonl")
    assert sum(1 for r in map(json.loads, out.splitlines()) if r["dim"] == 2) == 17
    code, out, _ = run(capsys, "morse", "--n", "5", "--report", "boundary", "--format", "json")
    assert json.loads(out)["all_zero"] is True
    code, out, _ = run(capsys, "morse", "--n", "5", "--check", "acyclic")
    assert code == 0 and out.strip() == "acyclic"


def test_betti_and_volume(capsys):
    code, out, _ = run(capsys, "betti", "--n", "4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and all(r["betti"] == [1, 4, 17] for r in doc["results"])
    code, out, _ = run(capsys, "volume", "--n", "5", "--route", "det")
    doc = json.loads(out)
    assert code == 0 and doc["coefficient"] == "0" and doc["terms_evaluated"] == 1230
    code, out, _ = run(capsys, "abel", "--n", "30")
    assert code == 0 and set(json.loads(out)["q_n"].values()) == {"0"}


def test_export_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "export", "--n", "4", "--out", str(a))[0] == 0
    assert run(capsys, "export", "--n", "4", "--out", str(b))[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == ["complex.json", "critical.csv", "fvector.csv", "matching.json",
                     "morse_boundary_1.txt", "morse_boundary_2.txt", "skeleton.dot"]
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_verify_is_deterministic(capsys):
    first = json.loads(run(capsys, "verify", "--n", "4", "--seed", "3")[1])
    second = json.loads(run(capsys, "verify", "--n", "4", "--seed", "3")[1])
    for doc in (first, second):
        for c in doc["checks"]:
            c.pop("elapsed_ms")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cyclotope", "volume", "--n", "3", "--route", "forest"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["terms_evaluated"] == 15
