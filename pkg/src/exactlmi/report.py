"""Degree sweeps over seeded random pencils: a CSV of observed parametrization
degrees against the combinatorial bound, plus a scatter plot."""
from __future__ import annotations

import csv
from dataclasses import replace
from pathlib import Path
from typing import Iterable, Sequence

from .bounds import aggregate_bound, theta
from .driver import SolveLog, SolverConfig, low_rank_sym_rec
from .pencil import random_pencil, sub_seed

__all__ = ["FIELDS", "sweep", "write_csv", "plot_degrees", "degree_report"]

FIELDS = ["m", "n", "r", "seed", "level", "n_level", "degree", "theta", "totaldeg", "aggregate_bound"]


def sweep(cases: Iterable[tuple[int, int, int]], seeds: Sequence[int], cfg: SolverConfig,
          pencil_bound: int = 10) -> list[dict]:
    """One row per recursion level for each (m, n, r) case and seed.

    Pencils have integer entries in [-pencil_bound, pencil_bound].
    """
    rows = []
    for m, n, r in cases:
        for seed in seeds:
            p = random_pencil(m, n, sub_seed(seed, "report", m, n, r), pencil_bound, integer=True)
            slog = SolveLog()
            q = low_rank_sym_rec(p, r, replace(cfg, seed=seed), 0, slog)
            for lv in slog.levels:
                rows.append({
                    "m": m, "n": n, "r": r, "seed": seed,
                    "level": lv["level"], "n_level": lv["n"], "degree": lv["degree"],
                    "theta": theta(m, lv["n"], r), "totaldeg": q.degree,
                    "aggregate_bound": aggregate_bound(m, n, r),
                })
    return rows


def write_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIELDS)
        w.writeheader()
        w.writerows(rows)


def plot_degrees(rows: list[dict], path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    xs = [row["theta"] for row in rows]
    ys = [row["degree"] for row in rows]
    top = max(xs + ys + [1])
    ax.plot([0, top], [0, top], color="0.6", lw=1, ls="--", label="degree = bound")
    labels = sorted({(row["m"], row["r"]) for row in rows})
    for m, r in labels:
        sel = [row for row in rows if (row["m"], row["r"]) == (m, r)]
        ax.scatter([s["theta"] for s in sel], [s["degree"] for s in sel], label=f"m={m}, r={r}", zorder=3)
    ax.set_xlabel("combinatorial bound theta(m, n, r)")
    ax.set_ylabel("observed parametrization degree")
    ax.set_title("Observed degree per recursion level")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def degree_report(cases, seeds, cfg: SolverConfig, out_dir, pencil_bound: int = 10) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = sweep(cases, seeds, cfg, pencil_bound)
    csv_path, png_path = out / "degrees.csv", out / "degrees.png"
    write_csv(rows, csv_path)
    plot_degrees(rows, png_path)
    return csv_path, png_path
