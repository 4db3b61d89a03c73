import csv
import json
import math

import pytest

from ektau import cli
from ektau import gallery as G


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_surface_slice(capsys):
    code, out, _ = run(capsys, "check-surface", "--gallery", "slice")
    assert code == 0 and "structure" in out and "FAIL" not in out


def test_check_surface_cylinder_reports_ar_value(capsys, tmp_path):
    code, _, _ = run(capsys, "check-surface", "--gallery", "cyl", "--kg", "2", "--out", str(tmp_path))
    assert code == 0
    rows = list(csv.DictReader(open(tmp_path / "cyl_holomorphy.csv")))
    assert rows and all(abs(float(r["QAR_abs"]) - 0.75) <= 1e-6 for r in rows)
    summary = json.loads((tmp_path / "cyl_summary.json").read_text())
    assert set(summary["reports"]) == {"structure", "gauss", "codazzi", "holomorphy"}


def test_check_surface_rotational_sphere(capsys):
    code, _, _ = run(capsys, "check-surface", "--gallery", "rotsphere", "--H", "0.70710678", "--kappa", "-1")
    assert code == 0


def test_check_surface_negative_control_fails(capsys):
    code, out, _ = run(capsys, "check-surface", "--gallery", "bumpcyl")
    assert code == cli.EXIT_FAIL and "FAIL" in out


@pytest.mark.parametrize("argv,code", [
    (("key-lemma", "--pair", "fiber"), 0),
    (("key-lemma", "--pair", "caps"), 0),
    (("key-lemma", "--pair", "tangent"), 0),
    (("key-lemma", "--pair", "example"), 4),
    (("key-lemma", "--pair", "fiber", "--mutate", "angle"), 4),
    (("key-lemma", "--pair", "caps", "--mutate", "nu"), 4),
    (("key-lemma", "--pair", "fiber", "--mutate", "nu"), 2),
])
def test_key_lemma_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_key_lemma_example_notes_orthogonality(capsys, tmp_path):
    code, out, _ = run(capsys, "key-lemma", "--pair", "example", "--out", str(tmp_path), "--format", "json")
    assert code == 4 and "weighted product condition fails" in out
    data = json.loads((tmp_path / "key_lemma_example.json").read_text())
    assert abs(data["d_mean"]) <= 1e-12 and data["verdict"] == "hypotheses unmet"


def test_example_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "example-h2xr", "--out", str(tmp_path))
    assert code == 0
    assert "not part of an Abresch-Rosenberg surface" in out
    rows = list(csv.DictReader(open(tmp_path / "example_h2xr.csv")))
    assert max(abs(float(r["d"])) for r in rows) <= 1e-8
    assert max(float(r["ar_locus_plane"]) for r in rows) >= 0.01


def test_meridians_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "meridians", "--out", str(tmp_path))
    assert code == 0
    manifest = json.loads((tmp_path / "meridians.json").read_text())
    assert [m["family"] for m in manifest] == list(cli.FAMILIES)
    for m in manifest:
        header = (tmp_path / m["csv"]).read_text().splitlines()[0]
        assert header == "s,rho,h,H_measured,QAR_abs"
        assert m["H_error"] <= 1e-6 and m["QAR_max"] <= 1e-6
    cat = next(m for m in manifest if m["family"] == "C2_H")
    assert cat["somewhere_K_negative"] and cat["classification"] == "somewhere negative Gauss curvature"
    assert "somewhere negative Gauss curvature" in out


def test_meridians_s2xr_sphere_closes(capsys, tmp_path):
    code, _, _ = run(capsys, "meridians", "--kappa", "1", "--H", "1", "--family", "S2_H", "--out", str(tmp_path))
    assert code == 0
    (m,) = json.loads((tmp_path / "meridians.json").read_text())
    assert m["axis_closure"] <= 1e-6 and m["K_min"] > 0


def test_outputs_are_byte_identical(capsys, tmp_path, monkeypatch):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "meridians", "--family", "C2_H", "--out", str(a))
    monkeypatch.setenv("EKTAU_THREADS", "3")
    run(capsys, "meridians", "--family", "C2_H", "--out", str(b))
    assert (a / "meridian_C2_H.csv").read_bytes() == (b / "meridian_C2_H.csv").read_bytes()
    run(capsys, "check-surface", "--gallery", "sphere4", "--out", str(a))
    run(capsys, "check-surface", "--gallery", "sphere4", "--out", str(b))
    for name in ("structure", "codazzi", "holomorphy"):
        assert (a / f"sphere4_{name}.csv").read_bytes() == (b / f"sphere4_{name}.csv").read_bytes()


def test_config_file_mirrors_flags(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"gallery": "cyl", "kg": 0.5, "tol": 1e-6, "h": 0.01}))
    code, out, _ = run(capsys, "check-surface", "--config", str(cfg), "--out", str(tmp_path / "o"))
    assert code == 0 and (tmp_path / "o" / "cyl_structure.csv").exists()
    # flags win over the file
    code, _, err = run(capsys, "check-surface", "--config", str(cfg), "--gallery", "nosuch")
    assert code == 2 and "unknown gallery" in err


@pytest.mark.parametrize("argv", [
    ("check-surface", "--tol", "0"),
    ("check-surface", "--h", "-0.1"),
    ("check-surface", "--h", "1", "--half-width", "0.1"),
    ("check-surface", "--order", "3"),
    ("check-surface", "--gallery", "slice", "--chart", "polar"),
    ("check-surface", "--chart", "torus"),
    ("meridians", "--family", "S2_H", "--H", "0.4"),
    ("meridians", "--tau", "0.5"),
    ("check-surface", "--gallery", "slice", "--kappa", "3"),
])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_config_files(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    assert run(capsys, "check-surface", "--config", str(f))[0] == 2
    f.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "check-surface", "--config", str(f))[0] == 2
    assert run(capsys, "check-surface", "--config", str(tmp_path / "missing.json"))[0] == 2


def test_numeric_failure_exit_3(capsys, monkeypatch):
    def boom(*a, **k):
        raise G.NumericError("integrator gave up")

    monkeypatch.setattr(cli.G, "rotational_cmc", boom)
    code, _, err = run(capsys, "meridians", "--family", "S2_H")
    assert code == 3 and "integrator gave up" in err


def test_meridian_table_values():
    rows, meta = cli.meridian_table(G.SpaceParams(-1, 0.0), "S2_H", 1 / math.sqrt(2), 21)
    assert len(rows) == 21 and meta["classification"] == "rotational sphere"
    assert all(abs(r[3] - 1 / math.sqrt(2)) <= 1e-6 for r in rows)
