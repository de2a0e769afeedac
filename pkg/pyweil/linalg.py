"""Linear algebra over Q_p on numpy object arrays of PadicNumbers.

Elimination always pivots on an entry of minimal valuation in the current column, so every elimination factor lies in
Z_p and integral matrices stay integral. Entries of valuation at least `threshold` (by default the working precision)
count as zero, so ranks are ranks at that precision.

"""

from dataclasses import dataclass
from math import inf
from typing import List, Optional, Sequence, Tuple
from warnings import warn

import numpy as np

from .PadicNumber import PadicNumber
from .utils import PrecisionWarning, ShapeError

__all__ = [
    "EchelonForm",
    "as_matrix",
    "valuations",
    "row_echelon",
    "rank",
    "kernel",
    "solve",
    "span_basis",
    "mat_vec",
]


@dataclass
class EchelonForm:
    matrix: np.ndarray
    pivots: List[Tuple[int, int]]
    min_pivot_valuation: float
    threshold: int

    @property
    def rank(self) -> int:
        return len(self.pivots)


def as_matrix(rows: Sequence[Sequence[PadicNumber]]) -> np.ndarray:
    """Packs nested sequences of PadicNumbers into a 2D object array."""
    rows = [list(row) for row in rows]
    ncols = len(rows[0]) if rows else 0
    matrix = np.empty((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ShapeError(f"Row {i} has {len(row)} entries, expected {ncols}.")
        for j, entry in enumerate(row):
            matrix[i, j] = entry
    return matrix


_valuation = np.vectorize(lambda x: float(x.valuation), otypes=[float])


def valuations(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return np.zeros(matrix.shape)
    return _valuation(matrix)


def _context(matrix: np.ndarray) -> Tuple[int, int]:
    if matrix.size == 0:
        raise ShapeError("Cannot infer the p-adic context of an empty matrix.")
    entries = matrix.ravel()
    return entries[0].prime, min(x.precision for x in entries)


def row_echelon(matrix, threshold: Optional[int] = None, ncols: Optional[int] = None) -> EchelonForm:
    """Reduces a matrix to row echelon form with valuation pivoting.

    Parameters
    ----------
    matrix : array_like of PadicNumber
        The m x n matrix to reduce. It is copied.

    threshold : int, optional
        Entries of valuation >= threshold are treated as zero. Defaults to the smallest precision among the entries.

    ncols : int, optional
        Only the first `ncols` columns are searched for pivots, as for an augmented matrix.

    Returns
    -------
    echelon : EchelonForm
        The reduced matrix (not normalized: pivots keep their values), the (row, column) pivot positions and the
        smallest pivot valuation.

    """
    m = matrix.copy() if isinstance(matrix, np.ndarray) else as_matrix(matrix)
    rows, cols = m.shape
    if threshold is None:
        threshold = _context(m)[1]
    search = cols if ncols is None else ncols

    pivots = []
    min_pivot = inf
    r = 0
    for c in range(search):
        if r == rows:
            break
        column = valuations(m[r:, c])
        k = int(np.argmin(column))
        if column[k] >= threshold:
            continue
        k += r
        if k != r:
            m[[r, k]] = m[[k, r]]

        pivot = m[r, c]
        for i in range(r + 1, rows):
            if m[i, c].is_zero():
                continue
            factor = m[i, c] / pivot
            m[i, c:] = m[i, c:] - factor * m[r, c:]
            m[i, c] = PadicNumber.zero(pivot.prime, pivot.precision)

        pivots.append((r, c))
        min_pivot = min(min_pivot, pivot.valuation)
        r += 1

    if pivots and min_pivot > 0:
        warn(f"Smallest pivot has valuation {min_pivot}; the matrix is singular mod p.", PrecisionWarning)
    return EchelonForm(m, pivots, min_pivot, threshold)


def rank(matrix, threshold: Optional[int] = None) -> int:
    return row_echelon(matrix, threshold).rank


def kernel(matrix, threshold: Optional[int] = None) -> List[List[PadicNumber]]:
    """Returns a basis of the kernel of `matrix` at precision `threshold`.

    Each basis vector has one free coordinate equal to p^S, where S is the sum of the pivot valuations, and zeros in
    the other free coordinates. The scaling keeps the back-substitution inside Z_p for integral matrices.

    """
    m = matrix if isinstance(matrix, np.ndarray) else as_matrix(matrix)
    p, precision = _context(m)
    echelon = row_echelon(m, threshold)
    reduced = echelon.matrix
    cols = m.shape[1]

    pivot_columns = {c for _, c in echelon.pivots}
    scale = int(sum(reduced[r, c].valuation for r, c in echelon.pivots))
    zero = PadicNumber.zero(p, precision)

    basis = []
    for free in range(cols):
        if free in pivot_columns:
            continue
        x = [zero] * cols
        x[free] = PadicNumber(p, scale, 1, precision)
        for r, c in reversed(echelon.pivots):
            total = zero
            for j in range(c + 1, cols):
                total = total + reduced[r, j] * x[j]
            x[c] = -total / reduced[r, c]
        basis.append(x)
    return basis


def solve(a, b: Sequence[PadicNumber], threshold: Optional[int] = None) -> List[PadicNumber]:
    """Solves the square system a x = b.

    Raises
    ------
    numpy.linalg.LinAlgError
        If `a` has rank below its size at the given precision.

    """
    a = a if isinstance(a, np.ndarray) else as_matrix(a)
    n = a.shape[0]
    if a.shape != (n, n) or len(b) != n:
        raise ShapeError(f"Expected a square system, got a {a.shape} matrix and {len(b)} right-hand sides.")

    augmented = np.empty((n, n + 1), dtype=object)
    augmented[:, :n] = a
    augmented[:, n] = list(b)
    echelon = row_echelon(augmented, threshold, ncols=n)
    if echelon.rank < n:
        raise np.linalg.LinAlgError(f"Matrix has rank {echelon.rank} < {n} at precision {echelon.threshold}.")

    reduced = echelon.matrix
    x = [None] * n
    for r in reversed(range(n)):
        total = reduced[r, n]
        for j in range(r + 1, n):
            total = total - reduced[r, j] * x[j]
        x[r] = total / reduced[r, r]
    return x


def span_basis(vectors: Sequence[Sequence[PadicNumber]], threshold: Optional[int] = None) -> List[List[PadicNumber]]:
    """Returns linearly independent vectors spanning the same space as `vectors`, at precision `threshold`."""
    if not vectors:
        return []
    echelon = row_echelon(as_matrix(vectors), threshold)
    return [list(echelon.matrix[r]) for r, _ in echelon.pivots]


def mat_vec(matrix, vector: Sequence[PadicNumber]) -> List[PadicNumber]:
    m = matrix if isinstance(matrix, np.ndarray) else as_matrix(matrix)
    result = []
    for i in range(m.shape[0]):
        total = m[i, 0] * vector[0]
        for j in range(1, m.shape[1]):
            total = total + m[i, j] * vector[j]
        result.append(total)
    return result
