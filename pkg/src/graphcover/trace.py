"""Per-tick simulation records, CSV traces and seed derivation."""

from __future__ import annotations

import csv
import io
import random
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = ["TraceRecord", "derive_seed", "make_rng", "format_trace", "write_trace", "read_trace"]


@dataclass(frozen=True)
class TraceRecord:
    tick: int
    covered: int
    positions: tuple[int, ...]


def derive_seed(seed: int, label: str) -> int:
    """Decorrelated 64-bit seed for the substream named ``label``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(zlib.crc32(label.encode()),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int, label: str = "sim") -> random.Random:
    return random.Random(derive_seed(seed, label))


def trace_header(m: int) -> list[str]:
    return ["tick", "covered", *(f"pos_{i}" for i in range(m))]


def _write(records: Iterable[TraceRecord], m: int, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(trace_header(m))
    for rec in records:
        w.writerow((rec.tick, rec.covered, *rec.positions))


def format_trace(records: Sequence[TraceRecord]) -> str:
    if not records:
        raise ValueError("cannot format an empty trace")
    buf = io.StringIO()
    _write(records, len(records[0].positions), buf)
    return buf.getvalue()


def write_trace(records: Sequence[TraceRecord], path: str | Path) -> None:
    if not records:
        raise ValueError("cannot write an empty trace")
    with open(path, "w", newline="", encoding="ascii") as fh:
        _write(records, len(records[0].positions), fh)


def read_trace(path: str | Path) -> list[TraceRecord]:
    with open(path, newline="", encoding="ascii") as fh:
        rows = csv.reader(fh)
        header = next(rows)
        if header[:2] != ["tick", "covered"]:
            raise ValueError(f"{path}: not a trace file (header {header[:2]})")
        m = len(header) - 2
        if header != trace_header(m):
            raise ValueError(f"{path}: malformed trace header")
        return [
            TraceRecord(int(row[0]), int(row[1]), tuple(int(x) for x in row[2:]))
            for row in rows
        ]
