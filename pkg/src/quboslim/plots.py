"""Render benchmark figures next to the CSV output.

One PNG per (problem, metric): couplings, cnot count, and annealing success
against problem size, with one line per ancilla budget and the per-size
median drawn through the seeds. Uses the Agg backend so the CLI works
headless.
"""

from __future__ import annotations

from pathlib import Path
from statistics import median

from .bench import BenchRow

_METRICS = (
    ("couplings", "couplings_after", "nonzero couplings"),
    ("cnot", "cnot_after", "CNOT count (p=1 proxy)"),
    ("success", "success_after", "annealing success rate"),
)


def _budget_label(budget: int | None) -> str:
    if budget is None:
        return "budget max"
    if budget == 0:
        return "original"
    return f"budget {budget}"


def render_bench_figures(rows: list[BenchRow], out_dir: Path, stem: str) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    problems = sorted({r.problem for r in rows})
    for problem in problems:
        subset = [r for r in rows if r.problem == problem]
        budgets = sorted(
            {r.ancilla_budget for r in subset},
            key=lambda b: (1, 0) if b is None else (0, b),
        )
        sizes = sorted({r.num_vertices for r in subset})
        for name, attr, ylabel in _METRICS:
            series = {}
            for budget in budgets:
                points = []
                for size in sizes:
                    values = [
                        getattr(r, attr)
                        for r in subset
                        if r.ancilla_budget == budget and r.num_vertices == size
                        and getattr(r, attr) is not None
                    ]
                    if values:
                        points.append((size, float(median(values))))
                if points:
                    series[budget] = points
            if not series:
                continue
            fig, ax = plt.subplots(figsize=(5.0, 3.4))
            for budget, points in series.items():
                xs = [s for s, _ in points]
                ys = [v for _, v in points]
                ax.plot(xs, ys, marker="o", label=_budget_label(budget))
            ax.set_xlabel("graph size |V|")
            ax.set_ylabel(ylabel)
            ax.set_title(f"{problem}: {ylabel} (median over seeds)")
            ax.legend()
            ax.grid(True, alpha=0.3)
            fig.tight_layout()
            path = out_dir / f"{stem}_{problem}_{name}.png"
            fig.savefig(path, dpi=120)
            plt.close(fig)
            written.append(path)
    return written
