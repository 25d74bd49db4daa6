"""
Dense GF(2) linear algebra.

Matrices are handed around as numpy uint8 arrays holding 0/1 entries. Elimination
packs every row into bytes with `np.packbits`, so adding one row to another is a
single XOR over ceil(cols / 8) bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt

from cosetmeter.internals.errors import DimensionMismatchError, ParameterError

BitVector = npt.NDArray[np.uint8]
BitMatrix = npt.NDArray[np.uint8]


@dataclass(frozen=True)
class RrefResult:
    reduced: BitMatrix
    pivot_columns: tuple[int, ...]
    rank: int
    # reduced[:, j] holds original column column_permutation[j]
    column_permutation: tuple[int, ...]


def as_bit_vector(data: Any) -> BitVector:
    vector = np.asarray(data)
    if vector.ndim != 1:
        raise DimensionMismatchError(
            f"expected a 1-D bit vector, got shape {vector.shape}"
        )
    if vector.size and not np.isin(vector, (0, 1)).all():
        raise ParameterError("bit vector entries must be 0 or 1")
    return vector.astype(np.uint8)


def as_bit_matrix(data: Any, cols: int | None = None) -> BitMatrix:
    """
    Coerce rows of 0/1 values into a bit matrix. `cols` fixes the width of an
    empty matrix, which cannot be inferred from `[]`.
    """
    matrix = np.asarray(data)
    if matrix.size == 0:
        rows = matrix.shape[0] if matrix.ndim == 2 else 0
        if cols is None:
            cols = matrix.shape[1] if matrix.ndim == 2 else 0
        return np.zeros((rows, cols), dtype=np.uint8)
    if matrix.ndim != 2:
        raise DimensionMismatchError(
            f"expected a 2-D bit matrix, got shape {matrix.shape}"
        )
    if cols is not None and matrix.shape[1] != cols:
        raise DimensionMismatchError(
            f"expected {cols} columns, got {matrix.shape[1]}"
        )
    if not np.isin(matrix, (0, 1)).all():
        raise ParameterError("bit matrix entries must be 0 or 1")
    return matrix.astype(np.uint8)


def mat_vec_mul(matrix: BitMatrix, vector: BitVector) -> BitVector:
    if vector.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(
            f"cannot multiply a {matrix.shape[0]}x{matrix.shape[1]} matrix by a length-{vector.shape[0]} vector"
        )
    product = matrix.astype(np.int64) @ vector.astype(np.int64)
    return (product & 1).astype(np.uint8)


def mat_mat_mul(left: BitMatrix, right: BitMatrix) -> BitMatrix:
    if left.shape[1] != right.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply {left.shape[0]}x{left.shape[1]} by {right.shape[0]}x{right.shape[1]}"
        )
    product = left.astype(np.int64) @ right.astype(np.int64)
    return (product & 1).astype(np.uint8)


def _pack(matrix: BitMatrix) -> npt.NDArray[np.uint8]:
    return np.packbits(matrix, axis=1)


def _unpack(packed: npt.NDArray[np.uint8], cols: int) -> BitMatrix:
    return np.unpackbits(packed, axis=1, count=cols)


def _column_bits(packed: npt.NDArray[np.uint8], col: int) -> npt.NDArray[np.uint8]:
    return (packed[:, col >> 3] >> (7 - (col & 7))) & 1


def _swap_rows(packed: npt.NDArray[np.uint8], a: int, b: int) -> None:
    if a != b:
        packed[[a, b]] = packed[[b, a]]


def _clear_column(packed: npt.NDArray[np.uint8], pivot_row: int, col: int) -> None:
    hits = _column_bits(packed, col).astype(bool)
    hits[pivot_row] = False
    packed[hits] ^= packed[pivot_row]


def _reduce(matrix: BitMatrix) -> tuple[npt.NDArray[np.uint8], list[int]]:
    rows, cols = matrix.shape
    packed = _pack(matrix)
    pivots: list[int] = []
    for col in range(cols):
        pivot_row = len(pivots)
        if pivot_row == rows:
            break
        candidates = np.flatnonzero(_column_bits(packed[pivot_row:], col))
        if candidates.size == 0:
            continue
        _swap_rows(packed, pivot_row, pivot_row + int(candidates[0]))
        _clear_column(packed, pivot_row, col)
        pivots.append(col)
    return packed, pivots


def _reduce_permuted(
    matrix: BitMatrix,
) -> tuple[npt.NDArray[np.uint8], list[int], int]:
    rows, cols = matrix.shape
    packed = _pack(matrix)
    order = list(range(cols))
    pivot_row = 0
    while pivot_row < rows:
        # row-major scan of the unreduced block for its first nonzero entry
        block = _unpack(packed[pivot_row:], cols)[:, order[pivot_row:]]
        nonzero_rows = np.flatnonzero(block.any(axis=1))
        if nonzero_rows.size == 0:
            break
        found = int(nonzero_rows[0])
        position = pivot_row + int(np.flatnonzero(block[found])[0])
        order[pivot_row], order[position] = order[position], order[pivot_row]
        _swap_rows(packed, pivot_row, pivot_row + found)
        _clear_column(packed, pivot_row, order[pivot_row])
        pivot_row += 1
    return packed, order, pivot_row


def rank(matrix: BitMatrix) -> int:
    _, pivots = _reduce(matrix)
    return len(pivots)


def rref(matrix: BitMatrix, allow_column_permutation: bool = False) -> RrefResult:
    """
    Reduced row-echelon form over GF(2).

    Pivots are searched column by column, top to bottom. With
    `allow_column_permutation` the search becomes row-major and every pivot
    column is moved to the leading block, giving `[I | A]` on the nonzero rows.
    """
    cols = matrix.shape[1]
    if not allow_column_permutation:
        packed, pivots = _reduce(matrix)
        return RrefResult(
            reduced=_unpack(packed, cols),
            pivot_columns=tuple(pivots),
            rank=len(pivots),
            column_permutation=tuple(range(cols)),
        )

    packed, order, matrix_rank = _reduce_permuted(matrix)
    reduced = _unpack(packed, cols)[:, order]
    return RrefResult(
        reduced=reduced,
        pivot_columns=tuple(range(matrix_rank)),
        rank=matrix_rank,
        column_permutation=tuple(order),
    )


def nullspace_basis(matrix: BitMatrix) -> BitMatrix:
    """
    One basis row per free column of the RREF, ordered by free-column index.
    """
    cols = matrix.shape[1]
    packed, pivots = _reduce(matrix)
    reduced = _unpack(packed, cols)
    pivot_set = set(pivots)
    free = [col for col in range(cols) if col not in pivot_set]

    basis = np.zeros((len(free), cols), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    if pivots and free:
        basis[:, pivots] = reduced[: len(pivots)][:, free].T
    return basis


def independent_rows(matrix: BitMatrix) -> list[int]:
    """
    Indices of the lowest-indexed maximal set of linearly independent rows.
    """
    _, pivots = _reduce(np.ascontiguousarray(matrix.T))
    return pivots


def row_basis(matrix: BitMatrix) -> BitMatrix:
    return matrix[independent_rows(matrix)]


def is_in_rowspace(matrix: BitMatrix, vector: BitVector) -> bool:
    # rank([M^T | v^T]) == rank(M^T)
    if vector.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(
            f"vector of length {vector.shape[0]} cannot lie in the rowspace of a matrix with {matrix.shape[1]} columns"
        )
    transposed = np.ascontiguousarray(matrix.T)
    augmented = np.hstack([transposed, vector.reshape(-1, 1).astype(np.uint8)])
    return rank(augmented) == rank(transposed)
