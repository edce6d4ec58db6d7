"""Acceptance matrix: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s`.  Every criterion calls the
same named checks the `clifft check` command runs, at their default (spec)
tolerances, and enforces the stated runtime budgets.
"""

import time

from clifft.suite import SuiteConfig, run_check

CFG = SuiteConfig()  # defaults are the acceptance matrix


def run_named(names, budget_s=None, criterion=""):
    """Run checks fresh, assert every non-skipped entry passes, print a line."""
    t0 = time.perf_counter()
    results = [r for name in names for r in run_check(name, CFG)]
    elapsed = time.perf_counter() - t0
    failed = [r for r in results if r.status == "fail"]
    skipped = [r for r in results if r.status == "skipped"]
    worst = max((r.max_error for r in results if r.max_error is not None), default=0.0)
    status = "FAIL" if failed else "PASS"
    print(
        f"[criterion {criterion}] {status}: {len(results) - len(skipped)} checks, "
        f"{len(skipped)} skipped, worst error {worst:.3e}, {elapsed:.1f}s"
    )
    for r in failed:
        print(f"    FAILED {r.name}: max_error={r.max_error} tol={r.tolerance} {r.reason or ''}")
    assert not failed
    if budget_s is not None:
        assert elapsed < budget_s, f"runtime {elapsed:.1f}s exceeds the {budget_s}s budget"
    return results


def test_criterion_01_algebra_correctness():
    """Associativity, anticommutation, involutions, scalar cyclicity; < 10 s."""
    run_named(
        ["core.associativity", "core.anticommutation", "core.involutions", "core.scalar-cyclicity"],
        budget_s=10.0,
        criterion="1 algebra",
    )


def test_criterion_02_root_certification():
    """Ring table (27 signatures + 62 dimension cases), sampled-root
    certificates, and the n=2 family grids."""
    results = run_named(
        ["roots.ring-table", "roots.ring-dimension", "roots.sampled-certificates", "roots.family-grid"],
        criterion="2 roots",
    )
    # the two table checks together cover more than 64 classified cases
    assert len(results) >= 4


def test_criterion_03_split_identities():
    run_named(
        [
            "split.reconstruction",
            "split.eigen-sign",
            "split.idempotent-form",
            "split.steering",
            "split.commutator-exponential",
            "split.orthogonality",
        ],
        criterion="3 split",
    )


def test_criterion_04_oracle_equivalence():
    run_named(["cft.oracle-equivalence"], budget_s=60.0, criterion="4 oracle")


def test_criterion_05_inversion():
    run_named(["cft.inversion"], criterion="5 inversion")


def test_criterion_06_shift_modulation():
    run_named(["theorems.shift", "theorems.modulation"], criterion="6 shift/modulation")


def test_criterion_07_plancherel_parseval():
    results = run_named(["theorems.plancherel", "theorems.parseval"], criterion="7 plancherel")
    # guarded pairs must actually have been tested, not all skipped
    assert any(r.status == "pass" and r.name.startswith("theorems.plancherel") for r in results)


def test_criterion_08_dilation():
    run_named(["theorems.dilation-isotropic", "theorems.dilation-per-axis"], criterion="8 dilation")


def test_criterion_09_derivative_moment():
    run_named(["theorems.derivative", "theorems.moment"], criterion="9 derivative/moment")


def test_criterion_10_linearity_power_factors():
    run_named(
        ["theorems.power-factors", "theorems.left-linearity", "theorems.right-linearity"],
        criterion="10 linearity",
    )


def test_criterion_11_convolution_theorem():
    run_named(
        ["convolution.theorem", "convolution.commuting-degenerate"],
        budget_s=120.0,
        criterion="11 convolution",
    )


def test_criterion_12_fft_speedup():
    results = run_named(["cft.fft-speedup"], criterion="12 speedup")
    ratio = results[0].max_error
    assert ratio >= 10.0, f"fft path only {ratio:.1f}x faster"
