"""Sweep output as CSV or JSON."""

from pathlib import Path
from typing import Optional

import pandas as pd

CSV_COLUMNS = [
    "T", "k_r", "k_b", "k_g",
    "S_A_nats", "S_A_ln2", "S_topo_nats", "S_topo_ln2", "I_AB_nats",
]


def rows_to_frame(rows: list[dict]) -> pd.DataFrame:
    """Rows in grid order with the fixed column schema; KSigma is appended when present."""
    columns = CSV_COLUMNS + (["KSigma"] if any("KSigma" in row for row in rows) else [])
    frame = pd.DataFrame(rows, columns=columns)
    return frame.astype("float64")


def to_csv_text(rows: list[dict]) -> str:
    """
    CSV with the fixed header, empty absent cells and 12 significant digits.

    KSigma sweeps append a trailing KSigma column after the fixed ones.
    """
    frame = rows_to_frame(rows)
    return frame.to_csv(index=False, float_format="%.12g", na_rep="", lineterminator="\n")


def to_json_text(rows: list[dict]) -> str:
    return rows_to_frame(rows).to_json(orient="records", double_precision=12, indent=2) + "\n"


def write_rows(rows: list[dict], fmt: str = "csv", out: Optional[Path] = None) -> str:
    """
    Render rows and write them to a file when a path is given.

    Args:
        rows: Sweep rows
        fmt: 'csv' or 'json'
        out: Optional output path

    Returns:
        The rendered text
    """
    text = to_csv_text(rows) if fmt == "csv" else to_json_text(rows)
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, newline="")
    return text
