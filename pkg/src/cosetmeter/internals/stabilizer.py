"""
Stabilizer and CSS code model.

A stabilizer code is described by its parity check matrix (PCM), an (N-k) x 2N
bit matrix whose rows are the symplectic images of the stabilizer generators.
The certificates used to classify decoding outcomes are derived from it here:
the kernel generator matrix G (its right kernel is the PCM rowspace) and the
encoded Pauli operators obtained from the standard form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Iterator, NamedTuple

import numpy as np
from pydantic import BaseModel

from cosetmeter.internals.errors import (
    CodeValidationError,
    DimensionMismatchError,
    EnumerationCapError,
    NoLogicalQubitsError,
    ParameterError,
)
from cosetmeter.internals.gf2 import (
    BitMatrix,
    BitVector,
    as_bit_matrix,
    independent_rows,
    mat_mat_mul,
    nullspace_basis,
    rank,
)
from cosetmeter.internals.pauli import PauliError, Syndrome, symplectic_products

DEFAULT_ENUMERATION_CAP = 24


class ViolationKind(StrEnum):
    ANTICOMMUTING_ROWS = "anticommuting-rows"
    RANK_DEFICIENT = "rank-deficient"
    NON_ORTHOGONAL = "non-orthogonal"
    SHAPE = "shape"


class Violation(BaseModel):
    kind: ViolationKind
    matrix: str = "pcm"
    rows: list[int] = []
    message: str


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    pcm: BitMatrix
    name: str = "stabilizer"

    def __post_init__(self) -> None:
        pcm = as_bit_matrix(self.pcm)
        if pcm.shape[1] % 2:
            raise ParameterError(
                f"PCM must have an even number of columns, got {pcm.shape[1]}"
            )
        pcm.setflags(write=False)
        object.__setattr__(self, "pcm", pcm)

    @property
    def n(self) -> int:
        return self.pcm.shape[1] // 2

    @property
    def k(self) -> int:
        return self.n - self.pcm.shape[0]

    @property
    def rate(self) -> float:
        return self.k / self.n if self.n else 0.0

    @property
    def generators(self) -> int:
        return self.pcm.shape[0]


@dataclass(frozen=True, eq=False)
class CssCode:
    hx: BitMatrix
    hz: BitMatrix
    name: str = "css"

    def __post_init__(self) -> None:
        hx = as_bit_matrix(self.hx)
        hz = as_bit_matrix(self.hz)
        if hx.shape[1] != hz.shape[1]:
            raise DimensionMismatchError(
                f"hx acts on {hx.shape[1]} qubits but hz acts on {hz.shape[1]}"
            )
        for matrix in (hx, hz):
            matrix.setflags(write=False)
        object.__setattr__(self, "hx", hx)
        object.__setattr__(self, "hz", hz)

    @property
    def n(self) -> int:
        return self.hx.shape[1]

    @property
    def k(self) -> int:
        return self.n - self.hx.shape[0] - self.hz.shape[0]


@dataclass(frozen=True, eq=False)
class KernelGenerator:
    g: BitMatrix


@dataclass(frozen=True, eq=False)
class LogicalOperatorSet:
    xbars: tuple[PauliError, ...]
    zbars: tuple[PauliError, ...]

    @property
    def k(self) -> int:
        return len(self.xbars)

    def as_matrix(self, n_qubits: int) -> BitMatrix:
        """
        All 2k operators stacked as rows, X-type first.
        """
        operators = self.xbars + self.zbars
        if not operators:
            return np.zeros((0, 2 * n_qubits), dtype=np.uint8)
        return np.vstack([operator.symplectic for operator in operators])


class StandardForm(NamedTuple):
    matrix: BitMatrix
    # position j of the permuted code holds original qubit qubit_permutation[j]
    qubit_permutation: tuple[int, ...]
    r: int


def _symplectic_gram(pcm: BitMatrix) -> BitMatrix:
    n = pcm.shape[1] // 2
    x = pcm[:, :n].astype(np.int64)
    z = pcm[:, n:].astype(np.int64)
    return ((x @ z.T + z @ x.T) & 1).astype(np.uint8)


def _dependent_rows(matrix: BitMatrix) -> list[int]:
    # rows missing from the lowest-index basis are the redundant ones
    independent = set(independent_rows(matrix))
    return [row for row in range(matrix.shape[0]) if row not in independent]


def validate(code: StabilizerCode) -> list[Violation]:
    violations: list[Violation] = []

    dependent = _dependent_rows(code.pcm)
    if dependent:
        violations.append(
            Violation(
                kind=ViolationKind.RANK_DEFICIENT,
                rows=dependent,
                message=f"PCM has rank {code.generators - len(dependent)} < {code.generators}; rows {dependent} are linearly dependent on earlier rows",
            )
        )

    gram = _symplectic_gram(code.pcm)
    for i, j in zip(*np.nonzero(np.triu(gram, 1))):
        violations.append(
            Violation(
                kind=ViolationKind.ANTICOMMUTING_ROWS,
                rows=[int(i), int(j)],
                message=f"rows {int(i)} and {int(j)} anticommute",
            )
        )
    return violations


def syndrome(code: StabilizerCode, error: PauliError) -> Syndrome:
    if error.n_qubits != code.n:
        raise DimensionMismatchError(
            f"error acts on {error.n_qubits} qubits, code has {code.n}"
        )
    return symplectic_products(code.pcm, error)


def _block_diagonal(top: BitMatrix, bottom: BitMatrix) -> BitMatrix:
    rows_top, cols_top = top.shape
    rows_bottom, cols_bottom = bottom.shape
    matrix = np.zeros((rows_top + rows_bottom, cols_top + cols_bottom), dtype=np.uint8)
    matrix[:rows_top, :cols_top] = top
    matrix[rows_top:, cols_top:] = bottom
    return matrix


def css_violations(css: CssCode) -> list[Violation]:
    violations: list[Violation] = []
    overlap = mat_mat_mul(css.hx, np.ascontiguousarray(css.hz.T))
    for i, j in zip(*np.nonzero(overlap)):
        violations.append(
            Violation(
                kind=ViolationKind.NON_ORTHOGONAL,
                matrix="hx/hz",
                rows=[int(i), int(j)],
                message=f"hx row {int(i)} and hz row {int(j)} overlap on an odd number of qubits",
            )
        )
    for label, matrix in (("hx", css.hx), ("hz", css.hz)):
        dependent = _dependent_rows(matrix)
        if dependent:
            violations.append(
                Violation(
                    kind=ViolationKind.RANK_DEFICIENT,
                    matrix=label,
                    rows=dependent,
                    message=f"{label} rows {dependent} are linearly dependent on earlier rows",
                )
            )
    return violations


def assemble_css_pcm(css: CssCode) -> BitMatrix:
    """
    [H_x' 0 ; 0 H_z'] over the (x|z) halves, X-type rows first.
    """
    return _block_diagonal(css.hx, css.hz)


def css_to_stabilizer(css: CssCode) -> StabilizerCode:
    violations = css_violations(css)
    if violations:
        raise CodeValidationError(violations, name=css.name)
    return StabilizerCode(assemble_css_pcm(css), name=css.name)


def kernel_from_nullspace(code: StabilizerCode) -> KernelGenerator:
    return KernelGenerator(nullspace_basis(code.pcm))


def classical_generator_from_pcm(hc: BitMatrix) -> BitMatrix:
    return nullspace_basis(hc)


def _check_classical_generator(label: str, g: BitMatrix, h: BitMatrix) -> None:
    if g.shape[1] != h.shape[1]:
        raise DimensionMismatchError(
            f"{label} has {g.shape[1]} columns, the PCM has {h.shape[1]}"
        )
    overlap = mat_mat_mul(g, np.ascontiguousarray(h.T))
    if overlap.any():
        i, j = (int(index) for index in np.argwhere(overlap)[0])
        raise CodeValidationError(
            [
                Violation(
                    kind=ViolationKind.NON_ORTHOGONAL,
                    matrix=label,
                    rows=[i, j],
                    message=f"{label} row {i} is not orthogonal to PCM row {j}",
                )
            ],
            name=label,
        )
    expected = h.shape[1] - rank(h)
    if g.shape[0] != expected or rank(g) != g.shape[0]:
        raise CodeValidationError(
            [
                Violation(
                    kind=ViolationKind.RANK_DEFICIENT,
                    matrix=label,
                    message=f"{label} must have {expected} independent rows, got {g.shape[0]} rows of rank {rank(g)}",
                )
            ],
            name=label,
        )


def kernel_from_css_generators(
    css: CssCode, gx: BitMatrix, gz: BitMatrix, verify: bool = True
) -> KernelGenerator:
    """
    Assemble G = [G_x' 0 ; 0 G_z'] from classical generator matrices of the
    codes with PCMs H_x' and H_z'. No elimination over the quantum PCM is
    needed; `verify` checks orthogonality and rank of the given generators.
    """
    if verify:
        _check_classical_generator("gx", gx, css.hx)
        _check_classical_generator("gz", gz, css.hz)
    return KernelGenerator(_block_diagonal(gx, gz))


def standard_form(code: StabilizerCode) -> StandardForm:
    """
    Bring the PCM to

        [ I A1 A2 | B 0 C ]   (r rows)
        [ 0 0  0  | D I E ]   (N-k-r rows)

    using row operations and qubit swaps applied jointly to both halves.
    """
    pcm = np.array(code.pcm, dtype=np.uint8)
    rows, n = pcm.shape[0], code.n
    order = list(range(n))

    def swap_qubits(a: int, b: int) -> None:
        if a == b:
            return
        pcm[:, [a, b]] = pcm[:, [b, a]]
        pcm[:, [n + a, n + b]] = pcm[:, [n + b, n + a]]
        order[a], order[b] = order[b], order[a]

    def pivot_block(start: int, offset: int) -> int:
        row = start
        while row < rows:
            block = pcm[row:, offset + row : offset + n]
            nonzero = np.flatnonzero(block.any(axis=1))
            if nonzero.size == 0:
                break
            found = row + int(nonzero[0])
            qubit = row + int(np.flatnonzero(block[nonzero[0]])[0])
            if found != row:
                pcm[[row, found]] = pcm[[found, row]]
            swap_qubits(row, qubit)
            hits = pcm[:, offset + row].astype(bool)
            hits[row] = False
            pcm[hits] ^= pcm[row]
            row += 1
        return row

    r = pivot_block(0, 0)
    end = pivot_block(r, n)
    if end != rows:
        raise CodeValidationError(
            [
                Violation(
                    kind=ViolationKind.RANK_DEFICIENT,
                    message=f"PCM has rank {end} < {rows}",
                )
            ],
            name=code.name,
        )
    return StandardForm(matrix=pcm, qubit_permutation=tuple(order), r=r)


def logical_operators(code: StabilizerCode) -> LogicalOperatorSet:
    """
    Encoded X and Z operators read off the standard form:

        X_bar = (0 E^T I | C^T 0 0),  Z_bar = (0 0 0 | A2^T 0 I)

    and mapped back to the original qubit order.
    """
    k = code.k
    if k <= 0:
        raise NoLogicalQubitsError()

    form = standard_form(code)
    matrix, r, n, m = form.matrix, form.r, code.n, code.generators
    a2 = matrix[:r, m:n]
    c = matrix[:r, n + m :]
    e = matrix[r:, n + m :]

    x_ops = np.zeros((k, 2 * n), dtype=np.uint8)
    x_ops[:, r:m] = e.T
    x_ops[:, m:n] = np.eye(k, dtype=np.uint8)
    x_ops[:, n : n + r] = c.T

    z_ops = np.zeros((k, 2 * n), dtype=np.uint8)
    z_ops[:, n : n + r] = a2.T
    z_ops[:, n + m :] = np.eye(k, dtype=np.uint8)

    columns = np.array(form.qubit_permutation)
    unpermuted = np.concatenate([columns, n + columns])

    def restore(ops: BitMatrix) -> tuple[PauliError, ...]:
        original = np.zeros_like(ops)
        original[:, unpermuted] = ops
        return tuple(PauliError(row) for row in original)

    return LogicalOperatorSet(xbars=restore(x_ops), zbars=restore(z_ops))


def enumerate_stabilizer(
    code: StabilizerCode, cap: int = DEFAULT_ENUMERATION_CAP
) -> Iterator[BitVector]:
    """
    Every GF(2) combination of PCM rows, zero first, in Gray-code order.
    """
    generators = code.generators
    if generators > cap:
        raise EnumerationCapError(generators, cap)
    return _gray_code_combinations(code.pcm)


def _gray_code_combinations(rows: BitMatrix) -> Iterator[BitVector]:
    current = np.zeros(rows.shape[1], dtype=np.uint8)
    yield current.copy()
    for index in range(1, 1 << rows.shape[0]):
        # consecutive Gray codes differ in the lowest set bit of index
        flipped = (index & -index).bit_length() - 1
        current ^= rows[flipped]
        yield current.copy()
