"""Deterministic CSV emission: 9 significant digits, scientific, LF endings."""

from pathlib import Path
from typing import Sequence

import numpy as np


def format_value(x: float) -> str:
    return f"{x:.8e}"


def csv_text(header: Sequence[str], columns: Sequence[np.ndarray]) -> str:
    columns = [np.asarray(c, dtype=float) for c in columns]
    if len(header) != len(columns):
        raise ValueError("header and column counts differ")
    n = columns[0].size
    if any(c.size != n for c in columns):
        raise ValueError("columns differ in length")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(format_value(c[i]) for c in columns))
    return "\n".join(lines) + "\n"


def write_csv(path: Path | str, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    Path(path).write_text(csv_text(header, columns), encoding="utf-8", newline="\n")
