"""Error-bar figure assembly from parsed sweep rows.

One curve per distinct sweep value, dataset size on x, mean predicted
fidelity on y with standard-error bars.  Each job writes a raster/vector
pair next to each other so the figure drops into both slides and papers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib import ticker

from .reading import SweepRow, read_sweep_csv

RASTER_SUFFIXES = (".png", ".jpg", ".jpeg")
VECTOR_SUFFIXES = (".svg", ".pdf")

_VALUE_LABELS = {
    "qubits": "Q = {}",
    "delta": "δ = {}",
    "layers": "p = {}",
    "noise": "noise ×{}",
}


def format_pi_fraction(value: float) -> str:
    """Pretty-print small rational multiples of pi, else a plain decimal."""
    if value == 0:
        return "0"
    for den in range(1, 65):
        num = value * den / math.pi
        if abs(num - round(num)) < 1e-9 and round(num) != 0:
            num = round(num)
            sign = "-" if num < 0 else ""
            num = abs(num)
            head = "π" if num == 1 else f"{num}π"
            return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"
    return f"{value:.4g}"


def curve_label(sweep_name: str, value: float) -> str:
    template = _VALUE_LABELS.get(sweep_name, sweep_name + " = {}")
    if sweep_name == "delta":
        return template.format(format_pi_fraction(value))
    return template.format(f"{value:g}")


def _is_geometric(sizes: list[int]) -> bool:
    if len(sizes) < 3 or sizes[0] <= 0:
        return False
    ratios = [b / a for a, b in zip(sizes, sizes[1:])]
    return all(r > 1.0 for r in ratios) and max(ratios) / min(ratios) < 1.25


def output_pair(out_path) -> tuple[Path, Path]:
    """The (raster, vector) paths implied by the requested output path."""
    out = Path(out_path)
    if out.suffix.lower() in RASTER_SUFFIXES:
        return out, out.with_suffix(".svg")
    if out.suffix.lower() in VECTOR_SUFFIXES:
        return out.with_suffix(".png"), out
    raise ValueError(
        f"unsupported output format {out.suffix!r}; use one of "
        f"{', '.join(RASTER_SUFFIXES + VECTOR_SUFFIXES)}"
    )


@dataclass(frozen=True)
class PlotJob:
    """One figure request; parsing happens up front so a bad CSV never
    leaves a half-written image behind."""

    input_csv: str
    output_path: str
    title: str = ""
    xlabel: str = "Dataset size N"
    ylabel: str = "Average predicted fidelity"
    rows: tuple[SweepRow, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        output_pair(self.output_path)  # rejects unknown suffixes early
        object.__setattr__(self, "rows", tuple(read_sweep_csv(self.input_csv)))


def render(job: PlotJob):
    """Draw the figure and write the raster/vector pair.

    Returns ``(figure, written_paths)``; the caller owns closing the
    figure (or just lets the process exit).
    """
    by_value: dict[float, list[SweepRow]] = {}
    for row in job.rows:
        by_value.setdefault(row.sweep_value, []).append(row)
    sweep_name = job.rows[0].sweep_name

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for value in sorted(by_value):
        cells = sorted(by_value[value], key=lambda r: r.dataset_size)
        ax.errorbar(
            [c.dataset_size for c in cells],
            [c.mean_fidelity for c in cells],
            yerr=[c.std_error for c in cells],
            marker="o",
            markersize=4,
            capsize=3,
            linewidth=1.2,
            label=curve_label(sweep_name, value),
        )

    sizes = sorted({r.dataset_size for r in job.rows})
    if _is_geometric(sizes):
        ax.set_xscale("log", base=2)
        ax.set_xticks(sizes)
        ax.get_xaxis().set_major_formatter(ticker.ScalarFormatter())
    ax.set_xlabel(job.xlabel)
    ax.set_ylabel(job.ylabel)
    if job.title:
        ax.set_title(job.title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()

    raster, vector = output_pair(job.output_path)
    written = []
    for path in (raster, vector):
        fig.savefig(path)
        written.append(path)
    return fig, written
