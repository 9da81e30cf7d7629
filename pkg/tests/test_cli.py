import json
import subprocess
import sys

import pytest

from bicontact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_plug_new(tmp_path, capsys):
    f = tmp_path / "plug.json"
    code, _, _ = run(capsys, "plug", "new", "--genus", "1", "--punctures", "1", "--indices", "0", "--k", "1", "-o", str(f))
    assert code == 0
    data = json.loads(f.read_text())
    assert data["boundaries"][0]["orbit_count"] == 2
    code, out, _ = run(capsys, "plug", "show", str(f))
    assert code == 0 and "Sigma_1,1" in out


def test_plug_new_invalid(capsys):
    code, _, err = run(capsys, "plug", "new", "--genus", "2", "--indices", "-1", "--k", "1")
    assert code == 1 and "index-sum" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["plug", "frobnicate"])
    assert exc.value.code == 2


def test_artifact_roundtrip_byte_identical(tmp_path, capsys):
    f = tmp_path / "plug.json"
    run(capsys, "plug", "new", "--genus", "2", "--indices", "-1,-1", "--k", "6", "-o", str(f))
    first = f.read_text()
    g = tmp_path / "again.json"
    run(capsys, "plug", "show", str(f), "--json", "-o", str(g))
    assert g.read_text() == first


def test_surgery_chain(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "plug", "new", "--genus", "1", "--indices", "0", "--k", "2", "-o", str(f))
    g = tmp_path / "q.json"
    assert run(capsys, "surgery", "boundary", str(f), "-o", str(g))[0] == 0
    h = tmp_path / "r.json"
    assert run(capsys, "surgery", "interior", str(g), "--curve", "c1", "--level", "1", "-o", str(h))[0] == 0
    i = tmp_path / "s.json"
    assert run(capsys, "surgery", "interior", str(h), "--curve", "c2", "--power", "-1", "--level", "2", "-o", str(i))[0] == 0
    code, out, _ = run(capsys, "monodromy", "matrix", str(i), "--json")
    assert json.loads(out)["matrix"] == [[2, 1], [1, 1]]
    # duplicate level is a validation failure
    assert run(capsys, "surgery", "interior", str(i), "--curve", "c1", "--level", "2")[0] == 1


def test_surgery_sequence_report(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "plug", "new", "--genus", "1", "--indices", "0", "--k", "1", "-o", str(f))
    code, out, _ = run(capsys, "surgery", "sequence", str(f), "--entry", "c1:1:1", "--entry", "c2:1:2", "--entry", "c1:1:3")
    assert code == 0
    assert json.loads(out)["double_chain"]["status"] == "mismatch"


def test_mcg_commands(capsys):
    assert run(capsys, "mcg", "check-chain")[0] == 0
    code, out, _ = run(capsys, "mcg", "fuzz", "--seed", "3", "--count", "200")
    assert code == 0 and json.loads(out)["mismatches"] == 0
    assert run(capsys, "mcg", "self-surgery", "--p", "3", "--q", "2")[0] == 0


def test_glue_and_classify(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "plug", "new", "--genus", "1", "--indices", "0", "--k", "1", "-o", str(f))
    g = tmp_path / "m.json"
    assert run(capsys, "glue", str(f), str(f), "-o", str(g))[0] == 0
    code, out, _ = run(capsys, "classify", str(g))
    assert code == 0 and out.startswith("1 class\n")


def test_assemble_and_classify(tmp_path, capsys):
    f = tmp_path / "fam.json"
    assert run(capsys, "assemble", "fig8", "--k", "3", "--sweep", "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "classify", str(f), "--json")
    data = json.loads(out)
    assert data["classes"] == 4
    assert data["partition"] == [[0, 6], [1, 5], [2, 4], [3]]
    assert run(capsys, "assemble", "ht", "--k1", "1", "--k2", "3")[0] == 0
    assert run(capsys, "assemble", "fig8", "--n", "1", "--m", "2")[0] == 1


def test_wind(tmp_path, capsys):
    f = tmp_path / "finger.json"
    f.write_text(json.dumps({"vertices": [[[0, 1], [0, 1]], [[0, 1], [2, 1]], [[1, 1], [1, 1]], [[2, 1], [3, 1]]],
                             "closed": True, "translation": [[0, 1], [4, 1]]}))
    code, out, _ = run(capsys, "wind", str(f), str(f), "--min-twisting", "--json")
    data = json.loads(out)
    assert code == 0 and data["min_twisting"] == 4
    assert data["curves"][0]["delta_w"] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "forms", "--k", "5", "--h", "-2", "--grid", "256", "--json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert data["reports"][-1]["components"] == 2
    assert run(capsys, "verify", "collar", "--n", "3")[0] == 0
    code, out, _ = run(capsys, "verify", "collar", "--n", "3", "--shift", "0.5", "--json")
    assert code == 1 and json.loads(out)["reports"][0]["worst_error"] > 0.1


def test_pipeline_subprocess():
    assemble = subprocess.run([sys.executable, "-m", "bicontact", "assemble", "fig8", "--k", "3", "--sweep"],
                              capture_output=True, text=True, check=True)
    out = subprocess.run([sys.executable, "-m", "bicontact", "classify"], input=assemble.stdout,
                         capture_output=True, text=True, check=True)
    assert out.stdout.splitlines()[0] == "4 classes"


def test_idempotent(capsys):
    a = run(capsys, "assemble", "fig8", "--k", "2", "--sweep")[1]
    b = run(capsys, "assemble", "fig8", "--k", "2", "--sweep")[1]
    assert a == b
