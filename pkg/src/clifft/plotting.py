"""Root-manifold point clouds and report figures.

CSV is the machine-readable output; a PNG rendering is written alongside it
(same stem) unless suppressed.  The n = 2 manifold slices plot the root
coefficients (b1, b2, beta): a sphere for Cl(0,2), hyperboloid sheets for
Cl(2,0) and Cl(1,1).
"""

from __future__ import annotations

import csv
import os

import numpy as np

from .algebra import Algebra
from .errors import OffManifoldError
from .roots import root_family_n2

os.environ.setdefault("MPLBACKEND", "Agg")


def manifold_points(p: int, q: int, samples: int = 41, extent: float = 1.5) -> np.ndarray:
    """Admissible (b1, b2, beta) triples on a samples x samples grid, both branches."""
    algebra = Algebra(p, q)
    if algebra.n != 2:
        raise ValueError("manifold slices are defined for n = 2 signatures")
    rows = []
    for b1 in np.linspace(-extent, extent, samples):
        for b2 in np.linspace(-extent, extent, samples):
            for branch in (1, -1):
                try:
                    root = root_family_n2(algebra, float(b1), float(b2), branch)
                except OffManifoldError:
                    continue
                rows.append((float(b1), float(b2), root.value.coeffs[3]))
    if not rows:
        return np.empty((0, 3))
    return np.array(rows)


def write_manifold_csv(points: np.ndarray, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["b1", "b2", "beta"])
        for b1, b2, beta in points:
            writer.writerow([repr(float(b1)), repr(float(b2)), repr(float(beta))])


def emit_plot_data(subject, path, samples: int = 41, extent: float = 1.5):
    """Write plot-ready CSV for a (p, q) manifold slice, a suite report, or a field.

    Manifold slices get (b1, b2, beta) rows; reports one row per check;
    fields one row per grid point with a column per blade channel.
    """
    from .field import MultivectorField
    from .suite import SuiteReport

    if isinstance(subject, SuiteReport):
        write_report_csv(subject, path)
        return subject
    if isinstance(subject, MultivectorField):
        write_field_csv(subject, path)
        return subject
    p, q = subject
    points = manifold_points(p, q, samples=samples, extent=extent)
    write_manifold_csv(points, path)
    return points


def write_field_csv(field, path) -> None:
    """One row per grid point: index coordinates then blade coefficients."""
    alg = field.algebra
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = [f"j{ax + 1}" for ax in range(field.grid.ndim)]
        header += [alg.blade_name(m) for m in range(alg.dim)]
        writer.writerow(header)
        stack = field.stack
        for flat, idx in enumerate(np.ndindex(*field.grid.dims)):
            writer.writerow(list(idx) + [repr(float(v)) for v in stack[:, flat]])


def render_manifold_figure(points: np.ndarray, path, title: str) -> None:
    import matplotlib.pyplot as plt

    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    if len(points):
        upper = points[points[:, 2] >= 0]
        lower = points[points[:, 2] < 0]
        for branch, color in ((upper, "tab:blue"), (lower, "tab:orange")):
            if len(branch):
                ax.scatter(branch[:, 0], branch[:, 1], branch[:, 2], s=6, alpha=0.7, c=color)
    ax.set_xlabel("b1")
    ax.set_ylabel("b2")
    ax.set_zlabel("beta")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def write_report_csv(report, path) -> None:
    """Delimited view of a suite report, one row per check."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "status", "max_error", "tolerance", "runtime_ms", "reason"])
        for r in report.results:
            writer.writerow(
                [
                    r.name,
                    r.status,
                    "" if r.max_error is None else repr(r.max_error),
                    "" if r.tolerance is None else repr(r.tolerance),
                    f"{r.runtime_ms:.3f}",
                    r.reason or "",
                ]
            )


def render_report_figure(report, path) -> None:
    """Horizontal error-vs-tolerance bars, one per check, log scale."""
    import matplotlib.pyplot as plt

    rows = [r for r in report.results if r.max_error is not None]
    rows.sort(key=lambda r: r.name, reverse=True)
    names = [r.name for r in rows]
    floor = 1e-18
    errors = [max(r.max_error, floor) for r in rows]
    colors = ["tab:green" if r.status == "pass" else "tab:red" for r in rows]

    height = max(3.0, 0.28 * len(rows) + 1.2)
    fig, ax = plt.subplots(figsize=(9, height))
    y = np.arange(len(rows))
    ax.barh(y, errors, color=colors, alpha=0.8)
    for i, r in enumerate(rows):
        if r.tolerance:
            ax.plot([r.tolerance, r.tolerance], [i - 0.4, i + 0.4], color="black", lw=1.2)
    ax.set_xscale("log")
    ax.set_yticks(y, names, fontsize=7)
    ax.set_xlabel("max error (bars) vs tolerance (ticks)")
    counts = report.counts
    ax.set_title(f"property checks: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
