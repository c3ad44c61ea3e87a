"""Deterministic CSV output, run manifests and key = value config files."""

from __future__ import annotations

import csv
import datetime as _dt
import json
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = ["format_float", "write_csv", "csv_text", "write_manifest", "read_config", "jsonable"]


def format_float(x) -> str:
    """Shortest round-trip decimal for a float (17 significant digits at most)."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return str(v)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(csv_text(header, rows))
    return path


def jsonable(obj):
    """Recursively convert numpy scalars, arrays, enums and tuples to JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_manifest(path, payload: dict, version: str) -> Path:
    doc = {
        "version": version,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    }
    doc.update(payload)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(jsonable(doc), indent=2, sort_keys=False) + "\n")
    return path


def read_config(path) -> dict:
    """Read ``key = value`` lines (``#`` comments) or the ``config`` block of a manifest."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"bad JSON config {path}: {exc}") from exc
        cfg = doc.get("config", doc)
        return {k: v for k, v in cfg.items() if v is not None}
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected 'key = value'")
        k, v = (p.strip() for p in line.split("=", 1))
        if not k:
            raise DomainError(f"{path}:{lineno}: empty key")
        out[k.replace("-", "_")] = v
    return out
