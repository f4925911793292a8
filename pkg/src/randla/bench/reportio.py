"""Report records and file I/O: experiment tables (CSV/JSON), matrix CSV
ingestion, and binary PGM image directories.

CSV reports carry their metadata in '#'-prefixed preamble lines (name,
parameters as one JSON object, seed, sweep column name, timestamp),
followed by a header row and data rows. Floats are printed with 17
significant digits so a save/load round trip is exact.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

import numpy as np

from randla.errors import DataError


@dataclass
class ExperimentReport:
    """Tabular result of one experiment run.

    ``rows`` is a list of (sweep_value, metrics) with every metrics dict
    sharing the same key set, in ``columns`` order.
    """

    experiment_name: str
    parameters: dict
    sweep_name: str
    columns: list
    rows: list = field(default_factory=list)
    seed: int = 0
    timestamp: str = ""

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat()
        for value, metrics in self.rows:
            self._check_row(metrics)

    def _check_row(self, metrics):
        if set(metrics) != set(self.columns):
            raise ValueError(
                f"row metrics {sorted(metrics)} do not match declared columns "
                f"{sorted(self.columns)}"
            )

    def add_row(self, sweep_value, metrics):
        self._check_row(metrics)
        self.rows.append((float(sweep_value), {k: float(v) for k, v in metrics.items()}))


def _fmt(x):
    return format(float(x), ".17g")


def save_report(report: ExperimentReport, path, format="csv"):
    """Write a report as CSV (with metadata preamble) or JSON."""
    if format == "csv":
        lines = [
            f"# experiment={report.experiment_name}",
            f"# parameters={json.dumps(report.parameters, sort_keys=True)}",
            f"# seed={report.seed}",
            f"# sweep={report.sweep_name}",
            f"# timestamp={report.timestamp}",
            ",".join([report.sweep_name] + list(report.columns)),
        ]
        for value, metrics in report.rows:
            lines.append(
                ",".join([_fmt(value)] + [_fmt(metrics[c]) for c in report.columns])
            )
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    elif format == "json":
        payload = {
            "experiment_name": report.experiment_name,
            "parameters": report.parameters,
            "sweep_name": report.sweep_name,
            "columns": list(report.columns),
            "rows": [
                {"sweep_value": value, "metrics": metrics}
                for value, metrics in report.rows
            ],
            "seed": report.seed,
            "timestamp": report.timestamp,
        }
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        raise ValueError(f"format must be csv or json, got {format!r}")


def load_report(path, format="csv") -> ExperimentReport:
    """Read a report written by :func:`save_report`."""
    if format == "json":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        return ExperimentReport(
            experiment_name=payload["experiment_name"],
            parameters=payload["parameters"],
            sweep_name=payload["sweep_name"],
            columns=list(payload["columns"]),
            rows=[(r["sweep_value"], r["metrics"]) for r in payload["rows"]],
            seed=payload["seed"],
            timestamp=payload["timestamp"],
        )
    if format != "csv":
        raise ValueError(f"format must be csv or json, got {format!r}")
    meta: dict[str, Any] = {}
    header = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value
                continue
            cells = line.split(",")
            if header is None:
                header = cells
                continue
            if len(cells) != len(header):
                raise DataError(
                    f"{path}: row has {len(cells)} cells, header has {len(header)}"
                )
            values = [float(c) for c in cells]
            rows.append((values[0], dict(zip(header[1:], values[1:]))))
    if header is None:
        raise DataError(f"{path}: no header row found")
    return ExperimentReport(
        experiment_name=meta.get("experiment", ""),
        parameters=json.loads(meta.get("parameters", "{}")),
        sweep_name=meta.get("sweep", header[0]),
        columns=header[1:],
        rows=rows,
        seed=int(meta.get("seed", 0)),
        timestamp=meta.get("timestamp", ""),
    )


def load_matrix_csv(path, header=False):
    """Parse a matrix of comma-separated decimal floats, one row per line.

    Malformed cells are reported with 1-based line and column numbers;
    ragged rows and empty files are rejected.
    """
    rows = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if header and lineno == 1:
                continue
            cells = line.split(",")
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise DataError(
                    f"{path}:{lineno}: ragged row has {len(cells)} cells, "
                    f"expected {width}"
                )
            parsed = []
            for col, cell in enumerate(cells, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise DataError(
                        f"{path}:{lineno}:{col}: bad numeric cell {cell.strip()!r}"
                    ) from None
            rows.append(parsed)
    if not rows:
        raise DataError(f"{path}: no data rows (empty matrix files are rejected)")
    return np.array(rows, dtype=np.float64)


def _read_pgm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    # Header: magic, width, height, maxval as whitespace-separated tokens,
    # with '#' comments allowed, then a single whitespace before the pixels.
    tokens = []
    pos = 0
    while len(tokens) < 4:
        if pos >= len(data):
            raise DataError(f"{path}: truncated PGM header")
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            start = pos
            while pos < len(data) and not data[pos : pos + 1].isspace():
                pos += 1
            tokens.append(data[start:pos])
    if tokens[0] != b"P5":
        raise DataError(f"{path}: not a binary PGM (magic {tokens[0]!r}, need P5)")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise DataError(f"{path}: non-numeric PGM header fields") from None
    if width < 1 or height < 1:
        raise DataError(f"{path}: bad PGM dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise DataError(f"{path}: maxval {maxval} outside 8-bit range")
    pos += 1  # single whitespace separating header from raster
    raster = data[pos : pos + width * height]
    if len(raster) != width * height:
        raise DataError(
            f"{path}: raster has {len(raster)} bytes, expected {width * height}"
        )
    pixels = np.frombuffer(raster, dtype=np.uint8).astype(np.float64) / maxval
    return pixels, (height, width)


def load_pgm_dir(path):
    """Load a directory of same-sized 8-bit binary PGM images as a
    pixels x n_images matrix (columns in lexicographic filename order,
    images flattened row-major, values scaled to [0, 1])."""
    if not os.path.isdir(path):
        raise DataError(f"{path}: not a directory")
    names = sorted(n for n in os.listdir(path) if n.lower().endswith(".pgm"))
    if not names:
        raise DataError(f"{path}: no .pgm files found")
    columns = []
    shape = None
    for name in names:
        pixels, dims = _read_pgm(os.path.join(path, name))
        if shape is None:
            shape = dims
        elif dims != shape:
            raise DataError(
                f"{os.path.join(path, name)}: image is {dims[1]}x{dims[0]}, "
                f"expected {shape[1]}x{shape[0]}"
            )
        columns.append(pixels)
    return np.column_stack(columns)


def write_pgm(path, image):
    """Write a 2-D array with values in [0, 1] as an 8-bit binary PGM."""
    arr = np.asarray(image, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError("image must be 2-D")
    quantized = np.clip(np.round(arr * 255.0), 0, 255).astype(np.uint8)
    h, w = quantized.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(quantized.tobytes())
