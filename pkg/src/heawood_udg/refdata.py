"""Bundled reference coordinate tables for the eleven embeddings.

The tables ship as a data file of decimal strings (inspectable, not buried
in code) and list the eight dependent vertices of each embedding; the six
pinned vertices are implied.  They are used only for verification: table
matching in :mod:`heawood_udg.verify` and as Newton seeds in tests.

Accuracy note: rows 1-8, 10 and 11 are accurate to about 5e-16, but row 9
carries an error of about 5e-11 in its printed digits (its own flag
residuals are ~1e-10, so the row is not a solution to the stated number of
digits).  Matching against row 9 therefore needs a ~1e-9 tolerance instead
of the 1e-13 the other rows support.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

TABLE_VERTICES = ("P1", "P3", "P4", "P6", "l1", "l2", "l4", "l6")


def reference_tables(path: str | Path | None = None) -> tuple:
    """Load the eleven tables as dicts of vertex name -> (x, y) strings."""
    if path is not None:
        raw = json.loads(Path(path).read_text())
    else:
        raw = json.loads(
            resources.files("heawood_udg").joinpath("data/tables.json").read_text()
        )
    tables = []
    for row in raw["tables"]:
        missing = [v for v in TABLE_VERTICES if v not in row]
        if missing:
            raise ValueError(f"reference table is missing vertices: {missing}")
        tables.append({v: (row[v][0], row[v][1]) for v in TABLE_VERTICES})
    return tuple(tables)
