"""Tabulated structures: dense distance samples over a uniform angle grid.

File format (whitespace separated):

    mhm-table v1 <n>
    d[0][0] d[0][1] ... d[0][n-1]
    ...
    d[n-1][0] ... d[n-1][n-1]

Row i, column j holds the distance between angles 2*pi*i/n and 2*pi*j/n.
The grid must be at least 64x64, nonnegative, zero on the diagonal and
positive off it; small asymmetries (relative difference up to 1e-6) are
averaged away, larger ones are rejected.  Evaluation is bilinear
interpolation on the doubly periodic grid.
"""

from __future__ import annotations

import math

import numpy as np

from .circle import TAU
from .errors import FormatError
from .structures import MoebiusStructure

MAGIC = "mhm-table"
MIN_RESOLUTION = 64
SYMMETRY_RTOL = 1e-6


def write_table(path: str, grid: np.ndarray) -> None:
    """Serialize an n x n distance grid in the table format."""
    n = grid.shape[0]
    with open(path, "w") as fh:
        fh.write(f"{MAGIC} v1 {n}\n")
        for row in grid:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def chordal_table(n: int) -> np.ndarray:
    """Reference grid sampling the chordal distance at resolution ``n``."""
    theta = np.arange(n) * (TAU / n)
    diff = theta[:, None] - theta[None, :]
    return 2.0 * np.abs(np.sin(0.5 * diff))


def load_table_structure(path: str) -> MoebiusStructure:
    """Load a table file as a structure with bilinear interpolation."""
    try:
        with open(path) as fh:
            header = fh.readline().split()
            body = fh.read().split()
    except OSError as exc:
        raise FormatError(f"cannot read table file {path!r}: {exc}") from exc
    if len(header) != 3 or header[0] != MAGIC or header[1] != "v1":
        raise FormatError(f"{path}:1: bad header {' '.join(header)!r}")
    try:
        n = int(header[2])
    except ValueError as exc:
        raise FormatError(f"{path}:1: bad resolution {header[2]!r}") from exc
    if n < MIN_RESOLUTION:
        raise FormatError(f"{path}: resolution {n} below minimum {MIN_RESOLUTION}")
    if len(body) != n * n:
        raise FormatError(f"{path}: expected {n * n} values, found {len(body)}")
    try:
        grid = np.array([float(v) for v in body], dtype=float).reshape(n, n)
    except ValueError as exc:
        raise FormatError(f"{path}: non-numeric entry: {exc}") from exc
    if not np.all(np.isfinite(grid)):
        raise FormatError(f"{path}: non-finite entry")
    if np.any(grid < 0.0):
        i, j = np.argwhere(grid < 0.0)[0]
        raise FormatError(f"{path}: negative entry at row {i} column {j}")
    scale = grid.max()
    if scale == 0.0:
        raise FormatError(f"{path}: all entries are zero")
    asym = np.abs(grid - grid.T)
    if asym.max() > SYMMETRY_RTOL * scale:
        i, j = np.argwhere(asym > SYMMETRY_RTOL * scale)[0]
        raise FormatError(f"{path}: asymmetric at row {i} column {j}")
    grid = 0.5 * (grid + grid.T)
    diag = np.abs(np.diagonal(grid))
    if diag.max() > 1e-12 * scale:
        i = int(np.argmax(diag))
        raise FormatError(f"{path}: nonzero diagonal at row {i}")
    off = grid + np.eye(n) * scale
    if off.min() <= 0.0:
        i, j = np.argwhere(off <= 0.0)[0]
        raise FormatError(f"{path}: nonpositive off-diagonal entry at row {i} column {j}")

    step = TAU / n

    def base(t1: float, t2: float) -> float:
        # Bilinear interpolation cannot represent the diagonal kink of a
        # distance grid, so the diagonal is pinned to zero explicitly and
        # same-cell evaluations near it carry O(grid step) error.
        if abs(math.remainder(t1 - t2, TAU)) < 1e-14:
            return 0.0
        f1 = (t1 % TAU) / step
        f2 = (t2 % TAU) / step
        i0 = int(f1) % n
        j0 = int(f2) % n
        s = f1 - int(f1)
        t = f2 - int(f2)
        i1 = (i0 + 1) % n
        j1 = (j0 + 1) % n
        v = (
            grid[i0, j0] * (1 - s) * (1 - t)
            + grid[i1, j0] * s * (1 - t)
            + grid[i0, j1] * (1 - s) * t
            + grid[i1, j1] * s * t
        )
        return v if v > 0.0 else 5e-324

    return MoebiusStructure(label=f"table:{path}", base=base)
