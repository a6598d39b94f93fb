"""Parsing and validation of sweep result CSV files.

The expected file is exactly what the sweep harness writes: the fixed
seven-column header followed by one row per (sweep value, dataset size)
cell.  Anything else is rejected with a message precise enough to act on,
and missing header columns are listed by name.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import NamedTuple

EXPECTED_COLUMNS = (
    "sweep_name",
    "sweep_value",
    "dataset_size",
    "mean_fidelity",
    "std_error",
    "trials",
    "seed",
)


class SweepRow(NamedTuple):
    sweep_name: str
    sweep_value: float
    dataset_size: int
    mean_fidelity: float
    std_error: float
    trials: int
    seed: int


class CsvFormatError(ValueError):
    """The input file does not follow the sweep CSV contract."""


def read_sweep_csv(path) -> list[SweepRow]:
    path = Path(path)
    if not path.is_file():
        raise CsvFormatError(f"{path}: no such file")
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        missing = [c for c in EXPECTED_COLUMNS if c not in header]
        if missing:
            raise CsvFormatError(
                f"{path}: missing columns: {', '.join(missing)}"
            )
        if header != list(EXPECTED_COLUMNS):
            raise CsvFormatError(
                f"{path}: header must be exactly {','.join(EXPECTED_COLUMNS)}"
            )
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if not raw or (len(raw) == 1 and not raw[0].strip()):
                continue
            if len(raw) != len(EXPECTED_COLUMNS):
                raise CsvFormatError(
                    f"{path}:{lineno}: expected {len(EXPECTED_COLUMNS)} fields, got {len(raw)}"
                )
            try:
                row = SweepRow(
                    sweep_name=raw[0].strip(),
                    sweep_value=float(raw[1]),
                    dataset_size=int(raw[2]),
                    mean_fidelity=float(raw[3]),
                    std_error=float(raw[4]),
                    trials=int(raw[5]),
                    seed=int(raw[6]),
                )
            except ValueError as exc:
                raise CsvFormatError(f"{path}:{lineno}: {exc}") from None
            if not 0.0 <= row.mean_fidelity <= 1.0:
                raise CsvFormatError(
                    f"{path}:{lineno}: mean_fidelity {row.mean_fidelity} outside [0, 1]"
                )
            if row.std_error < 0.0:
                raise CsvFormatError(
                    f"{path}:{lineno}: std_error {row.std_error} is negative"
                )
            rows.append(row)
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return rows
