"""
Effective N-qubit Pauli operators in the binary symplectic picture.

An operator is the length-2N vector (a_x | a_z) with I -> (0|0), X -> (1|0),
Z -> (0|1) and Y -> (1|1). Phases are never tracked, so composition is XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from cosetmeter.internals.errors import (
    DimensionMismatchError,
    ParameterError,
    PauliParseError,
)
from cosetmeter.internals.gf2 import BitMatrix, BitVector, as_bit_vector

Syndrome = BitVector

_SYMBOLS = "IXZY"  # indexed by x + 2*z
_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


@dataclass(frozen=True, eq=False)
class PauliError:
    symplectic: BitVector

    def __post_init__(self) -> None:
        vector = as_bit_vector(self.symplectic)
        if vector.shape[0] % 2:
            raise ParameterError(
                f"symplectic vector must have even length, got {vector.shape[0]}"
            )
        vector.setflags(write=False)
        object.__setattr__(self, "symplectic", vector)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliError":
        return cls(np.zeros(2 * n_qubits, dtype=np.uint8))

    @classmethod
    def from_xz(cls, x: Any, z: Any) -> "PauliError":
        x_part = as_bit_vector(x)
        z_part = as_bit_vector(z)
        if x_part.shape != z_part.shape:
            raise DimensionMismatchError(
                f"x part has {x_part.shape[0]} qubits but z part has {z_part.shape[0]}"
            )
        return cls(np.concatenate([x_part, z_part]))

    @property
    def n_qubits(self) -> int:
        return self.symplectic.shape[0] // 2

    @property
    def x(self) -> BitVector:
        return self.symplectic[: self.n_qubits]

    @property
    def z(self) -> BitVector:
        return self.symplectic[self.n_qubits :]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliError):
            return NotImplemented
        return np.array_equal(self.symplectic, other.symplectic)

    def __hash__(self) -> int:
        return hash(self.symplectic.tobytes())

    def __str__(self) -> str:
        return to_pauli_string(self)

    def __repr__(self) -> str:
        return f"PauliError({to_pauli_string(self)!r})"


def from_pauli_string(text: str) -> PauliError:
    if not text:
        raise PauliParseError(text, 0, "")
    x = np.zeros(len(text), dtype=np.uint8)
    z = np.zeros(len(text), dtype=np.uint8)
    for position, character in enumerate(text):
        bits = _BITS.get(character)
        if bits is None:
            raise PauliParseError(text, position, character)
        x[position], z[position] = bits
    return PauliError.from_xz(x, z)


def to_pauli_string(error: PauliError) -> str:
    codes = error.x.astype(np.int64) + 2 * error.z.astype(np.int64)
    return "".join(_SYMBOLS[code] for code in codes)


def _check_same_size(a: PauliError, b: PauliError) -> None:
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError(
            f"operators act on {a.n_qubits} and {b.n_qubits} qubits"
        )


def compose(a: PauliError, b: PauliError) -> PauliError:
    _check_same_size(a, b)
    return PauliError(a.symplectic ^ b.symplectic)


def symplectic_product(a: PauliError, b: PauliError) -> int:
    """
    0 when the operators commute, 1 when they anticommute.
    """
    _check_same_size(a, b)
    overlap = np.dot(a.x.astype(np.int64), b.z) + np.dot(a.z.astype(np.int64), b.x)
    return int(overlap & 1)


def symplectic_products(rows: BitMatrix, error: PauliError) -> BitVector:
    """
    Symplectic product of `error` with every row of a (m x 2N) matrix.
    """
    n = error.n_qubits
    if rows.shape[1] != 2 * n:
        raise DimensionMismatchError(
            f"rows have {rows.shape[1]} columns but the operator has length {2 * n}"
        )
    wide = rows.astype(np.int64)
    overlap = wide[:, :n] @ error.z.astype(np.int64) + wide[:, n:] @ error.x.astype(
        np.int64
    )
    return (overlap & 1).astype(np.uint8)


def weight(error: PauliError) -> int:
    return int(np.count_nonzero(error.x | error.z))
