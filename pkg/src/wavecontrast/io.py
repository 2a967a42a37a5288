"""Reading and writing the delimited and JSON file formats."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import SeriesTooShortError, WaveContrastError

MIN_SERIES_LENGTH = 64


class SeriesFormatError(WaveContrastError):
    """Input file is not a single numeric column."""


def read_series(path) -> np.ndarray:
    """Read a one-column series CSV.

    Blank lines and lines starting with '#' are ignored; one header row
    is tolerated. Values use a decimal point, no thousands separators.
    """
    values = []
    header_seen = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(float(line))
            except ValueError:
                if not values and not header_seen:
                    header_seen = True
                    continue
                raise SeriesFormatError(
                    f"{path}:{lineno}: expected a single numeric value, got {line!r}")
    if len(values) < MIN_SERIES_LENGTH:
        raise SeriesTooShortError(
            f"series too short: need at least {MIN_SERIES_LENGTH} observations, got {len(values)}")
    return np.array(values)


def write_series(path, x: np.ndarray) -> None:
    """Write a series as a one-column CSV with header 'x'. Values are
    printed with repr so reading them back is exact."""
    with open(path, "w", newline="\n") as fh:
        fh.write("x\n")
        for v in np.asarray(x, dtype=float):
            fh.write(f"{float(v)!r}\n")


def write_json_report(path, report: dict) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")


def read_json_report(path) -> dict:
    with open(Path(path)) as fh:
        return json.load(fh)
