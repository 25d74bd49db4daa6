"""
Builtin codes and the `CodeSpec` that names a code on the command line or in a
sweep config.
"""

from __future__ import annotations

import logging
from enum import StrEnum
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from cosetmeter.internals.code_io import read_code
from cosetmeter.internals.errors import (
    CodeValidationError,
    NotCssError,
    ParameterError,
)
from cosetmeter.internals.gf2 import row_basis
from cosetmeter.internals.pauli import from_pauli_string
from cosetmeter.internals.stabilizer import (
    CssCode,
    StabilizerCode,
    css_to_stabilizer,
    validate,
)

HAMMING_7_4 = np.array(
    [
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ],
    dtype=np.uint8,
)

FIVE_QUBIT_GENERATORS = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")


class CodeKind(StrEnum):
    STEANE = "steane"
    SHOR9 = "shor9"
    BICYCLE = "bicycle"
    FIVE_QUBIT = "five_qubit"
    FILE = "file"


class CodeSpec(BaseModel):
    kind: CodeKind
    n_c: int | None = None
    w: int | None = None
    seed: int = Field(default=0, ge=0)
    path: Path | None = None

    @model_validator(mode="after")
    def check_parameters(self) -> "CodeSpec":
        if self.kind == CodeKind.BICYCLE:
            if self.n_c is None or self.w is None:
                raise ValueError("bicycle codes need n_c and w")
            if self.n_c < 1:
                raise ValueError(f"n_c must be positive, got {self.n_c}")
            if self.w < 2 or self.w % 2:
                raise ValueError(f"w must be a positive even number, got {self.w}")
            if self.w > self.n_c:
                raise ValueError(f"w = {self.w} exceeds n_c = {self.n_c}")
        if self.kind == CodeKind.FILE and self.path is None:
            raise ValueError("file codes need a path")
        return self

    @classmethod
    def from_builtin(cls, text: str) -> "CodeSpec":
        """
        Parse `steane`, `shor9`, `five_qubit` or `bicycle:n_c,w,seed`.
        """
        name, _, parameters = text.partition(":")
        try:
            kind = CodeKind(name)
        except ValueError:
            builtins = ", ".join(kind for kind in CodeKind if kind != CodeKind.FILE)
            raise ParameterError(
                f"unknown builtin code {name!r}; expected one of {builtins}"
            ) from None
        if kind == CodeKind.FILE:
            raise ParameterError("use --code to load a code file")

        if kind != CodeKind.BICYCLE:
            if parameters:
                raise ParameterError(f"{name} takes no parameters")
            return cls(kind=kind)

        fields = parameters.split(",")
        if len(fields) != 3 or not all(field.strip().isdigit() for field in fields):
            raise ParameterError(
                f"bicycle expects integer parameters n_c,w,seed, got {parameters!r}"
            )
        n_c, w, seed = (int(field) for field in fields)
        try:
            return cls(kind=kind, n_c=n_c, w=w, seed=seed)
        except ValidationError as error:
            raise ParameterError(error.errors()[0]["msg"]) from None

    @classmethod
    def from_file(cls, path: Path) -> "CodeSpec":
        return cls(kind=CodeKind.FILE, path=path)

    @property
    def label(self) -> str:
        if self.kind == CodeKind.BICYCLE:
            return f"bicycle:{self.n_c},{self.w},{self.seed}"
        if self.kind == CodeKind.FILE:
            return str(self.path)
        return self.kind.value


def steane() -> CssCode:
    return CssCode(HAMMING_7_4, HAMMING_7_4, name="steane")


def shor9() -> CssCode:
    hz = np.zeros((6, 9), dtype=np.uint8)
    for row, (a, b) in enumerate([(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]):
        hz[row, [a, b]] = 1
    hx = np.zeros((2, 9), dtype=np.uint8)
    hx[0, 0:6] = 1
    hx[1, 3:9] = 1
    return CssCode(hx, hz, name="shor9")


def five_qubit() -> StabilizerCode:
    rows = [from_pauli_string(text).symplectic for text in FIVE_QUBIT_GENERATORS]
    return StabilizerCode(np.vstack(rows), name="five_qubit")


def circulant(first_row: np.ndarray) -> np.ndarray:
    return np.stack([np.roll(first_row, shift) for shift in range(first_row.size)])


def bicycle(n_c: int, w: int, seed: int) -> CssCode:
    """
    hx = hz = [C | C^T] for a random circulant C with w/2 ones per row, cut to
    its lowest-index independent rows. Circulants commute, so hx.hz^T = 0.
    """
    if w % 2 or w < 2 or w > n_c:
        raise ParameterError(f"bicycle needs an even 2 <= w <= n_c, got w={w}, n_c={n_c}")
    if seed < 0:
        raise ParameterError(f"bicycle seed must be non-negative, got {seed}")

    rng = np.random.default_rng(seed)
    first_row = np.zeros(n_c, dtype=np.uint8)
    first_row[rng.choice(n_c, size=w // 2, replace=False)] = 1
    c = circulant(first_row)
    h = np.hstack([c, np.ascontiguousarray(c.T)])
    reduced = row_basis(h)
    logging.info(
        f"bicycle({n_c}, {w}, {seed}): kept {reduced.shape[0]} of {n_c} rows"
    )
    return CssCode(reduced, reduced, name=f"bicycle-{n_c}-{w}-{seed}")


def construct(spec: CodeSpec) -> StabilizerCode | CssCode:
    """
    Build the code a spec names without validating it.
    """
    match spec.kind:
        case CodeKind.STEANE:
            return steane()
        case CodeKind.SHOR9:
            return shor9()
        case CodeKind.FIVE_QUBIT:
            return five_qubit()
        case CodeKind.BICYCLE:
            assert spec.n_c is not None and spec.w is not None
            return bicycle(spec.n_c, spec.w, spec.seed)
        case CodeKind.FILE:
            assert spec.path is not None
            return read_code(spec.path)


def validated(code: StabilizerCode | CssCode) -> StabilizerCode:
    if isinstance(code, CssCode):
        return css_to_stabilizer(code)
    violations = validate(code)
    if violations:
        raise CodeValidationError(violations, name=code.name)
    return code


def load(spec: CodeSpec) -> StabilizerCode:
    return validated(construct(spec))


def load_pair(spec: CodeSpec) -> tuple[StabilizerCode, CssCode | None]:
    """
    The validated stabilizer code plus its CSS pair when it has one.
    """
    code = construct(spec)
    return validated(code), code if isinstance(code, CssCode) else None


def load_css(spec: CodeSpec, purpose: str = "this command") -> CssCode:
    code, css = load_pair(spec)
    if css is None:
        raise NotCssError(code.name, purpose)
    return css


def resolve_spec(builtin: str | None, path: Path | None) -> CodeSpec:
    """
    The code named by the mutually exclusive `--builtin` / `--code` options.
    """
    if (builtin is None) == (path is None):
        raise ParameterError("pass exactly one of --builtin or --code")
    if builtin is not None:
        return CodeSpec.from_builtin(builtin)
    assert path is not None
    return CodeSpec.from_file(path)
