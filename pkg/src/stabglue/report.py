"""Deterministic report records and serialization.

Reports are JSON with sorted keys; exact scalars are serialized as
strings ("p/q", "a/b+c/d√3"); floats appear only in convenience fields
tagged approximate and in the CSV side channel.  Timings are isolated in
one subtree so that everything else is byte-identical for a fixed
(config, seed).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

SCHEMA_VERSION = "stabglue-report-1"


def _jsonable(value):
    from .scalars import QS3, XC

    if isinstance(value, (QS3, XC)):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if hasattr(value, "as_dict"):
        return _jsonable(value.as_dict())
    if hasattr(value, "__dict__"):
        return _jsonable(vars(value))
    return str(value)


def config_fingerprint(config: dict) -> str:
    blob = json.dumps(_jsonable(config), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def make_report(subcommand: str, config: dict, results: dict, timings: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "config": _jsonable(config),
        "corpus_fingerprint": config_fingerprint(config),
        "results": _jsonable(results),
        "timings": {k: round(v, 3) for k, v in timings.items()},
    }


def write_report(path: str | Path, report: dict) -> None:
    Path(path).write_text(
        json.dumps(report, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
