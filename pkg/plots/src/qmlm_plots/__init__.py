"""Figure rendering for sweep result CSVs."""

from .reading import EXPECTED_COLUMNS, CsvFormatError, SweepRow, read_sweep_csv
from .render import PlotJob, curve_label, format_pi_fraction, output_pair, render

__all__ = [
    "EXPECTED_COLUMNS",
    "CsvFormatError",
    "SweepRow",
    "read_sweep_csv",
    "PlotJob",
    "curve_label",
    "format_pi_fraction",
    "output_pair",
    "render",
]

__version__ = "0.1.0"
