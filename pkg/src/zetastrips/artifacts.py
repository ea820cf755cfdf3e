"""Deterministic artifact I/O: CSV and JSON writers, content hashing.

All numbers are written with 12 significant digits ('.' decimal point),
rows in a fixed order, so identical inputs produce byte-identical files.
Writes go through a temp file + atomic rename: a crashed writer never
leaves a half-written artifact under its final name.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from typing import Iterable, Sequence


def fmt_value(x) -> str:
    """Stable textual form: ints verbatim, floats at 12 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _atomic_write_text(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)  # csv defaults to RFC-4180 CRLF line endings
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_value(v) for v in row])
    _atomic_write_text(path, buf.getvalue())


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    return rows[0], rows[1:]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path: str, obj) -> None:
    _atomic_write_text(path, canonical_json(obj))


def read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def digest_of(obj) -> str:
    """sha256 of the canonical compact JSON encoding of obj."""
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def digest_of_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
