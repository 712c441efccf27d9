"""Matplotlib figures written next to certification and verification reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .genus import group_bound, hypercube_genus  # noqa: E402

plt.rcParams.update({
    "figure.figsize": (5.0, 3.6),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "svg.hashsalt": "frucht-genus",
})

_META = {"Date": None, "Creator": None}


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    meta = {"Software": None} if path.suffix == ".png" else _META
    fig.savefig(path, dpi=120, metadata=meta)
    plt.close(fig)
    return path


def certification_figure(report, path):
    """Pass/fail matrix of the pair checks, one panel per gluing color."""
    size = report.max_m + 1
    fig, axes = plt.subplots(1, 2, figsize=(7.0, 3.4))
    for ax, color in zip(axes, ("A", "B")):
        grid = [[float("nan")] * size for _ in range(size)]
        for c in report.checks:
            if c["kind"] == "e" and c.get("at") == color:
                grid[c["m"]][c["m2"]] = grid[c["m2"]][c["m"]] = 1.0 if c["pass"] else 0.0
        ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, origin="lower", interpolation="nearest")
        ax.set_title(f"glued at {color}")
        ax.set_xlabel("m'")
        ax.set_ylabel("m")
        ax.grid(False)
    fig.suptitle(f"{report.family} family, d={report.d}: "
                 f"{'all checks pass' if report.all_pass else f'{len(report.failures())} failures'}")
    return _save(fig, path)


def lemma2_figure(report, path, n_max: int = 10):
    """Hypercube genus against dimension, with the verified instance marked."""
    n = report.parameters["n"]
    xs = list(range(2, max(n, n_max) + 1))
    fig, ax = plt.subplots()
    ax.plot(xs, [hypercube_genus(k) for k in xs], marker="o", ms=3, label="genus of Q_n")
    observed = next((c["observed"] for c in report.checks if c["name"] == "genus exact"), None)
    if observed is not None:
        ax.plot([n], [observed], "s", color="tab:red", ms=7, label=f"verified, n={n}")
    ax.set_yscale("symlog")
    ax.set_xlabel("n")
    ax.set_ylabel("genus")
    ax.legend()
    ax.set_title("asymmetric graph over Q_n: " + ("PASS" if report.passed else "FAIL"))
    return _save(fig, path)


def theorem1_figure(report, path, n_max: int = 8):
    """Genus lower bound against n for the verified group order."""
    n = report.parameters["n"]
    k = report.parameters["order"]
    xs = list(range(2, max(n, n_max) + 1))
    fig, ax = plt.subplots()
    ax.plot(xs, [group_bound(x, k) for x in xs], marker="o", ms=3, label=f"lower bound, |G|={k}")
    observed = next((c["observed"] for c in report.checks if c["name"] == "genus lower bound"), None)
    if observed is not None:
        ax.plot([n], [observed], "s", color="tab:red", ms=7, label=f"verified, n={n}")
    ax.set_yscale("symlog")
    ax.set_xlabel("n")
    ax.set_ylabel("genus lower bound")
    ax.legend()
    ax.set_title(f"{report.parameters['group']}: " + ("PASS" if report.passed else "FAIL"))
    return _save(fig, path)
