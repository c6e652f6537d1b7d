"""Parsing and exact round-tripping of x,y,logabs CSV grids.

The parser never reformats a value: the original string triples are
kept verbatim so a write() after a read() reproduces the input file
byte for byte. Floats are derived alongside for plotting only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HEADER = "x,y,logabs"


class GridFormatError(ValueError):
    """Raised when a file does not satisfy the grid contract."""


@dataclass(frozen=True)
class GridFile:
    """A complete rectangular lattice of (x, y, logabs) samples.

    triples holds the raw strings in file order; xs and ys are the
    sorted distinct coordinates; values is indexed [iy, ix].
    """

    path: str
    triples: tuple
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray

    @property
    def nx(self) -> int:
        return len(self.xs)

    @property
    def ny(self) -> int:
        return len(self.ys)

    def write(self, stream) -> None:
        stream.write(HEADER + "\n")
        for x, y, v in self.triples:
            stream.write(f"{x},{y},{v}\n")


def parse_grid(path: str) -> GridFile:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != HEADER:
        raise GridFormatError(f"{path}: first line must be '{HEADER}'")

    triples = []
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3:
            raise GridFormatError(f"{path}:{i}: expected 3 fields, "
                                  f"got {len(parts)}")
        try:
            float(parts[0]), float(parts[1]), float(parts[2])
        except ValueError as exc:
            raise GridFormatError(f"{path}:{i}: non-numeric field") from exc
        triples.append(tuple(parts))
    if not triples:
        raise GridFormatError(f"{path}: no data rows")

    xs = sorted({float(t[0]) for t in triples})
    ys = sorted({float(t[1]) for t in triples})
    nx, ny = len(xs), len(ys)
    if nx * ny != len(triples):
        raise GridFormatError(
            f"{path}: {len(triples)} rows cannot tile a {nx} x {ny} lattice")

    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    values = np.full((ny, nx), np.nan)
    for t in triples:
        iy, ix = yi[float(t[1])], xi[float(t[0])]
        if not np.isnan(values[iy, ix]):
            raise GridFormatError(f"{path}: duplicate node "
                                  f"({t[0]}, {t[1]})")
        values[iy, ix] = float(t[2])
    # nx*ny rows, no duplicates: every node was filled exactly once.

    return GridFile(path=path, triples=tuple(triples),
                    xs=np.array(xs), ys=np.array(ys), values=values)
