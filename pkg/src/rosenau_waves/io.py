"""CSV/JSON readers and writers shared by the CLI and the solver guesses.

CSV files are comma separated with one header row and LF line endings;
floats use 17 significant digits so a round trip is lossless.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, columns) -> None:
    rows = zip(*columns)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def read_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        data = np.array([[float(v) for v in row] for row in r if row], dtype=float)
    return header, data.reshape(-1, len(header))


def read_profile(path) -> tuple[np.ndarray, np.ndarray]:
    """(X, u) columns of a profile CSV; accepts any header naming X first and u second."""
    header, data = read_csv(path)
    cols = {h.strip(): i for i, h in enumerate(header)}
    ix = cols.get("X", 0)
    iu = cols.get("u", 1)
    return data[:, ix], data[:, iu]


def write_dat(path, columns, comment: str | None = None) -> None:
    """Whitespace-separated columns (gnuplot)."""
    with open(path, "w") as fh:
        if comment:
            fh.write(f"# {comment}\n")
        for row in zip(*columns):
            fh.write(" ".join(fmt(v) for v in row) + "\n")


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, Path):
        return str(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default, allow_nan=True)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj) + "\n", encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def json_line(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_default)
