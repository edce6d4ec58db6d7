import json
import re

from clifft.suite import SuiteConfig, check_names, run_check, run_suite


def test_check_registry_covers_every_suite():
    names = check_names()
    suites = {n.split(".")[0] for n in names}
    assert suites == {"core", "roots", "split", "cft", "theorems", "convolution"}
    # each transform law has a named check
    for law in (
        "left-linearity",
        "right-linearity",
        "shift",
        "modulation",
        "dilation-isotropic",
        "dilation-per-axis",
        "power-factors",
        "inversion",
        "derivative",
        "moment",
        "plancherel",
        "parseval",
        "theorem",
    ):
        assert any(law in n for n in names), law


def test_suite_filtering():
    cfg = SuiteConfig(suites=("roots",))
    report = run_suite(cfg)
    assert report.results
    assert all(r.name.startswith("roots.") for r in report.results)
    assert report.ok


def test_every_result_names_its_identity():
    cfg = SuiteConfig(suites=("split",))
    report = run_suite(cfg)
    for r in report.results:
        assert isinstance(r.identity, str) and len(r.identity) > 10


def test_zero_tolerance_forces_failures_with_errors_populated():
    cfg = SuiteConfig(suites=("core",), tolerance_scale=0.0, core_samples=50)
    report = run_suite(cfg)
    failed = [r for r in report.results if r.status == "fail"]
    assert failed  # round-off checks cannot meet tolerance zero
    assert all(r.max_error is not None for r in failed)
    assert not report.ok


def test_report_determinism():
    cfg = SuiteConfig(suites=("split", "roots"), core_samples=50)
    a = run_suite(cfg).to_dict()
    b = run_suite(cfg).to_dict()

    def strip(d):
        return re.sub(r'"runtime_ms": [0-9.e+-]+', '"runtime_ms": 0', json.dumps(d, sort_keys=True))

    assert strip(a) == strip(b)


def test_run_check_crash_becomes_failure(monkeypatch):
    import clifft.suite as suite_mod

    def boom(cfg, tol):
        raise RuntimeError("kaput")

    monkeypatch.setitem(suite_mod._CHECKS, "core.boom", ("core", "x = x", 1.0, boom))
    try:
        results = run_check("core.boom", SuiteConfig())
        assert results[0].status == "fail"
        assert "kaput" in results[0].reason
    finally:
        suite_mod._CHECKS.pop("core.boom", None)


def test_parallel_run_matches_serial():
    cfg_serial = SuiteConfig(suites=("split",), max_workers=1)
    cfg_parallel = SuiteConfig(suites=("split",), max_workers=4)
    a = run_suite(cfg_serial)
    b = run_suite(cfg_parallel)
    assert [(r.name, r.status, r.max_error) for r in a.results] == [
        (r.name, r.status, r.max_error) for r in b.results
    ]


def test_tolerance_override_by_name():
    cfg = SuiteConfig(suites=("core",), tolerances={"core.associativity": 1e-30}, core_samples=20)
    report = run_suite(cfg)
    assoc = [r for r in report.results if r.name == "core.associativity"]
    assert assoc[0].status == "fail"


def test_thread_env_var_caps_workers(monkeypatch):
    monkeypatch.setenv("CLIFFT_THREADS", "3")
    cfg = SuiteConfig(suites=("split",))  # max_workers=None reads the env var
    report = run_suite(cfg)
    assert report.ok
    serial = run_suite(SuiteConfig(suites=("split",), max_workers=1))
    assert [(r.name, r.max_error) for r in report.results] == [
        (r.name, r.max_error) for r in serial.results
    ]
