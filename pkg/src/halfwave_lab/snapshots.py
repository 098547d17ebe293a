"""Bit-exact binary snapshot format (HWNLS1).

Little-endian layout: magic b"HWNLS1" (6 bytes), u32 nx, u32 ny, f64 lx,
f64 ly, f64 time, then nx*ny complex samples as interleaved (re: f64, im: f64),
row-major with the x index fastest.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .grid import Field, make_grid

MAGIC = b"HWNLS1"
_HEADER = struct.Struct("<IIddd")


class SnapshotFormatError(IOError):
    """Malformed or truncated snapshot file."""


def write_snapshot(path, time: float, f: Field) -> None:
    g = f.grid
    payload = np.ascontiguousarray(f.values, dtype="<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(g.nx, g.ny, g.lx, g.ly, float(time)))
        fh.write(payload)


def read_snapshot(path) -> tuple[float, Field]:
    data = Path(path).read_bytes()
    if data[: len(MAGIC)] != MAGIC:
        raise SnapshotFormatError(
            f"{path}: bad magic at offset 0, expected {MAGIC!r}"
        )
    off = len(MAGIC)
    if len(data) < off + _HEADER.size:
        raise SnapshotFormatError(
            f"{path}: truncated header at offset {len(data)} "
            f"(need {off + _HEADER.size} bytes)"
        )
    nx, ny, lx, ly, time = _HEADER.unpack_from(data, off)
    off += _HEADER.size
    need = off + 16 * nx * ny
    if len(data) != need:
        raise SnapshotFormatError(
            f"{path}: expected {need} bytes for a {nx}x{ny} snapshot, "
            f"got {len(data)} (payload starts at offset {off})"
        )
    values = np.frombuffer(data, dtype="<c16", offset=off).reshape(ny, nx)
    grid = make_grid(nx, ny, lx, ly)
    return time, Field(grid, values.copy())
