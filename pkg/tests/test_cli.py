import json

import numpy as np
import pytest

from clifft import field_norm, load_field
from clifft.cli import main
from clifft.roots import load_roots


def run(*argv):
    return main([str(a) for a in argv])


def test_roots_classify(capsys):
    assert run("roots", "classify", "0", "3") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ring"] == "H2" and out["s8"] == 5


def test_roots_sample_and_verify(tmp_path, capsys):
    path = tmp_path / "roots.json"
    assert run("roots", "sample", "0", "2", "--seed", 11, "--count", 3, "--out", path) == 0
    roots = load_roots(path)
    assert len(roots) == 3
    assert run("roots", "verify", path) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("{")]
    assert len(lines) == 3


def test_field_pipeline(tmp_path):
    h = tmp_path / "h.cfld"
    f = tmp_path / "f.json"
    g = tmp_path / "g.json"
    assert run("gen-field", "random", "0", "2", "--dims", "8,8", "--seed", 5, "--out", h) == 0
    assert run("roots", "sample", "0", "2", "--seed", 1, "--out", f) == 0
    assert run("roots", "sample", "0", "2", "--seed", 2, "--out", g) == 0

    hp, hm = tmp_path / "hp.cfld", tmp_path / "hm.cfld"
    assert run("split", "--in", h, "--f", f, "--g", g, "--out-plus", hp, "--out-minus", hm) == 0
    a = load_field(h)
    total = load_field(hp) + load_field(hm)
    assert field_norm(total - a) <= 1e-12 * field_norm(a)

    H = tmp_path / "H.cfld"
    h2 = tmp_path / "h2.cfld"
    assert run("cft", "forward", "--in", h, "--f", f, "--g", g, "--left-axes", "1", "--mode", "fft", "--out", H) == 0
    assert run("cft", "inverse", "--in", H, "--f", f, "--g", g, "--left-axes", "1", "--mode", "fft", "--out", h2) == 0
    back = load_field(h2)
    assert field_norm(back - a) <= 1e-10 * field_norm(a)

    # fft and direct agree through the CLI too
    H2 = tmp_path / "H2.cfld"
    assert run("cft", "forward", "--in", h, "--f", f, "--g", g, "--left-axes", "1", "--mode", "direct", "--out", H2) == 0
    assert field_norm(load_field(H2) - load_field(H)) <= 1e-10 * field_norm(load_field(H))


def test_convolve_and_theorem_report(tmp_path):
    a = tmp_path / "a.cfld"
    b = tmp_path / "b.cfld"
    f = tmp_path / "f.json"
    g = tmp_path / "g.json"
    run("gen-field", "random", "0", "2", "--dims", "8,8", "--seed", 1, "--out", a)
    run("gen-field", "random", "0", "2", "--dims", "8,8", "--seed", 2, "--out", b)
    run("roots", "sample", "0", "2", "--seed", 3, "--out", f)
    run("roots", "sample", "0", "2", "--seed", 4, "--out", g)

    c = tmp_path / "c.cfld"
    assert run("convolve", "--a", a, "--b", b, "--out", c) == 0
    assert load_field(c).data.any()

    report = tmp_path / "conv.json"
    assert run("convolve", "verify-theorem", "--a", a, "--b", b, "--f", f, "--g", g, "--report", report) == 0
    payload = json.loads(report.read_text())
    assert payload["norm_rel_error"] <= 1e-9
    assert len(payload["term_norms"]) == 8


def test_check_writes_report_and_figure(tmp_path):
    report = tmp_path / "report.json"
    assert run("check", "--suite", "roots", "--report", report) == 0
    payload = json.loads(report.read_text())
    assert payload["summary"]["fail"] == 0
    assert all(c["name"].startswith("roots.") for c in payload["checks"])
    assert (tmp_path / "report.csv").exists()
    assert (tmp_path / "report.png").exists()
    assert (tmp_path / "report.csv").read_text().splitlines()[0].startswith("name,status")


def test_check_failure_exit_code(tmp_path):
    assert run("check", "--suite", "roots", "--tolerance-scale", 0.0, "--no-figure",
               "--report", tmp_path / "r.json") == 1


def test_plot_manifold_outputs(tmp_path):
    out = tmp_path / "m.csv"
    assert run("plot-manifold", "2", "0", "--out", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "b1,b2,beta"
    rows = np.array([[float(v) for v in l.split(",")] for l in lines[1:]])
    # hyperboloid sheet: beta^2 = b1^2 + b2^2 + 1
    assert np.allclose(rows[:, 2] ** 2, rows[:, 0] ** 2 + rows[:, 1] ** 2 + 1, atol=1e-12)
    assert (tmp_path / "m.png").exists()

    # empty admissible region: header-only CSV
    out2 = tmp_path / "empty.csv"
    assert run("plot-manifold", "1", "1", "--out", out2, "--extent", "0.5", "--no-figure") == 0
    assert out2.read_text().splitlines() == ["b1,b2,beta"]


def test_sphere_manifold(tmp_path):
    out = tmp_path / "s.csv"
    assert run("plot-manifold", "0", "2", "--out", out, "--extent", "1.0", "--no-figure") == 0
    rows = np.array([[float(v) for v in l.split(",")] for l in out.read_text().splitlines()[1:]])
    assert np.allclose(rows[:, 0] ** 2 + rows[:, 1] ** 2 + rows[:, 2] ** 2, 1.0, atol=1e-12)


def test_quadrature_field_pipeline(tmp_path):
    h = tmp_path / "g.cfld"
    f = tmp_path / "f.json"
    assert run("gen-field", "gaussian", "0", "1", "--dims", "64", "--quadrature", "-8", "8",
               "--sigma", "1.0", "--out", h) == 0
    field = load_field(h)
    assert field.grid.mode == "quadrature"
    run("roots", "sample", "0", "1", "--seed", 1, "--out", f)
    out = tmp_path / "G.cfld"
    assert run("cft", "forward", "--in", h, "--f", f, "--g", f, "--left-axes", "1",
               "--mode", "direct", "--out", out) == 0
    # the fft path refuses quadrature grids: usage error
    assert run("cft", "forward", "--in", h, "--f", f, "--g", f, "--left-axes", "1",
               "--mode", "fft", "--out", out) == 2


def test_emit_plot_data_dispatch(tmp_path):
    from clifft import Algebra, GridGeometry, random_field
    from clifft.plotting import emit_plot_data
    from clifft.suite import SuiteConfig, run_suite

    pts = emit_plot_data((0, 2), tmp_path / "m.csv", extent=1.0)
    assert (tmp_path / "m.csv").read_text().splitlines()[0] == "b1,b2,beta"
    assert len(pts) > 100

    report = run_suite(SuiteConfig(suites=("roots",)))
    emit_plot_data(report, tmp_path / "r.csv")
    assert (tmp_path / "r.csv").read_text().startswith("name,status")

    h = random_field(Algebra(0, 2), GridGeometry.cyclic(3, 3), seed=1)
    emit_plot_data(h, tmp_path / "f.csv")
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert lines[0] == "j1,j2,1,e1,e2,e12"
    assert len(lines) == 10


def test_bad_input_is_a_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.cfld"
    bad.write_bytes(b"garbage\x00\x01")
    assert run("cft", "forward", "--in", bad, "--f", bad, "--g", bad, "--out", tmp_path / "x.cfld") == 2
    with pytest.raises(SystemExit) as exc:
        run("nonsense")
    assert exc.value.code == 2


def test_verify_theorem_requires_roots_and_report(tmp_path):
    a = tmp_path / "a.cfld"
    run("gen-field", "random", "0", "2", "--dims", "4,4", "--seed", 1, "--out", a)
    with pytest.raises(SystemExit) as exc:
        run("convolve", "verify-theorem", "--a", a, "--b", a)
    assert exc.value.code == 2
