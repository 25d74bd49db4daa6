"""
Reading and writing code files.

A code document is JSON:

    {"name": "steane", "n": 7, "k": 1, "format": "css",
     "hx": [[1, 0, 1, 0, 1, 0, 1], ...], "hz": "hz.alist"}

`pcm` (format "stabilizer") or `hx`/`hz` (format "css") hold rows of 0/1
values, or a path to an alist file relative to the document.

alist files follow MacKay's layout: "cols rows", the maximum column and row
weights, the column weights, the row weights, then one line of 1-indexed row
positions per column and one line of 1-indexed column positions per row.
Zero entries are padding. The trailing per-row block may be omitted.
"""

from __future__ import annotations

from enum import StrEnum
from pathlib import Path
from typing import Any, Iterable

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

from cosetmeter.internals.errors import CodeFormatError
from cosetmeter.internals.gf2 import BitMatrix, as_bit_matrix
from cosetmeter.internals.stabilizer import CssCode, StabilizerCode

BitRows = list[list[int]]


class CodeFormat(StrEnum):
    STABILIZER = "stabilizer"
    CSS = "css"


class CodeDocument(BaseModel):
    name: str
    n: int
    k: int
    format: CodeFormat
    pcm: BitRows | str | None = None
    hx: BitRows | str | None = None
    hz: BitRows | str | None = None

    @model_validator(mode="after")
    def check_matrices(self) -> "CodeDocument":
        if self.format == CodeFormat.STABILIZER and self.pcm is None:
            raise ValueError("stabilizer documents need a pcm")
        if self.format == CodeFormat.CSS and (self.hx is None or self.hz is None):
            raise ValueError("css documents need both hx and hz")
        return self


def _rows(matrix: BitMatrix) -> BitRows:
    return [[int(bit) for bit in row] for row in matrix]


def _read_matrix(source: Path, field: str, value: BitRows | str) -> BitMatrix:
    if isinstance(value, str):
        return read_alist(source.parent / value)
    try:
        return as_bit_matrix(value)
    except ValueError as error:
        raise CodeFormatError(str(source), field, str(error)) from None


def _read_text(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as error:
        line = data.count(b"\n", 0, error.start) + 1
        raise CodeFormatError(str(path), f"line {line}", "not valid UTF-8") from None


def read_code(path: Path) -> StabilizerCode | CssCode:
    """
    Parse a code document. The result is not validated.
    """
    text = _read_text(path)
    try:
        document = CodeDocument.model_validate_json(text)
    except ValidationError as error:
        first = error.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise CodeFormatError(str(path), where, first["msg"]) from None

    code: StabilizerCode | CssCode
    try:
        if document.format == CodeFormat.STABILIZER:
            assert document.pcm is not None
            code = StabilizerCode(
                _read_matrix(path, "pcm", document.pcm), name=document.name
            )
        else:
            assert document.hx is not None and document.hz is not None
            code = CssCode(
                _read_matrix(path, "hx", document.hx),
                _read_matrix(path, "hz", document.hz),
                name=document.name,
            )
    except ValueError as error:
        # shape problems found while assembling the code object
        raise CodeFormatError(str(path), document.format.value, str(error)) from None

    if code.n != document.n:
        raise CodeFormatError(
            str(path), "n", f"declares n = {document.n} but the matrices act on {code.n} qubits"
        )
    if code.k != document.k:
        raise CodeFormatError(
            str(path), "k", f"declares k = {document.k} but the matrices give k = {code.k}"
        )
    return code


def to_document(code: StabilizerCode | CssCode) -> CodeDocument:
    if isinstance(code, CssCode):
        return CodeDocument(
            name=code.name,
            n=code.n,
            k=code.k,
            format=CodeFormat.CSS,
            hx=_rows(code.hx),
            hz=_rows(code.hz),
        )
    return CodeDocument(
        name=code.name,
        n=code.n,
        k=code.k,
        format=CodeFormat.STABILIZER,
        pcm=_rows(code.pcm),
    )


def write_code(path: Path, code: StabilizerCode | CssCode) -> None:
    path.write_text(to_document(code).model_dump_json(indent=2, exclude_none=True))


def _numbered_lines(path: Path) -> list[tuple[int, list[int]]]:
    lines: list[tuple[int, list[int]]] = []
    for number, line in enumerate(_read_text(path).splitlines(), start=1):
        words = line.split()
        if not words:
            continue
        try:
            lines.append((number, [int(word) for word in words]))
        except ValueError:
            raise CodeFormatError(
                str(path), f"line {number}", f"expected integers, got {line.strip()!r}"
            ) from None
    return lines


def read_alist(path: Path) -> BitMatrix:
    source = str(path)
    lines = _numbered_lines(path)
    if len(lines) < 4:
        raise CodeFormatError(source, "header", "alist needs at least four lines")

    (header_line, header), (_, _max_weights) = lines[0], lines[1]
    if len(header) != 2 or min(header) < 1:
        raise CodeFormatError(
            source, f"line {header_line}", "first line must be 'cols rows' with positive values"
        )
    cols, rows = header
    (column_line, column_weights), (row_line, row_weights) = lines[2], lines[3]
    if len(column_weights) != cols:
        raise CodeFormatError(
            source, f"line {column_line}", f"expected {cols} column weights, got {len(column_weights)}"
        )
    if len(row_weights) != rows:
        raise CodeFormatError(
            source, f"line {row_line}", f"expected {rows} row weights, got {len(row_weights)}"
        )

    body = lines[4:]
    if len(body) not in (cols, cols + rows):
        raise CodeFormatError(
            source,
            "body",
            f"expected {cols} column lines (optionally followed by {rows} row lines), got {len(body)} lines",
        )

    matrix = np.zeros((rows, cols), dtype=np.uint8)
    for col, (number, positions) in enumerate(body[:cols]):
        entries = [position for position in positions if position != 0]
        if len(entries) != column_weights[col]:
            raise CodeFormatError(
                source,
                f"line {number}",
                f"column {col + 1} lists {len(entries)} positions but its weight is {column_weights[col]}",
            )
        for position in entries:
            if not 1 <= position <= rows:
                raise CodeFormatError(
                    source, f"line {number}", f"row position {position} out of range 1..{rows}"
                )
            matrix[position - 1, col] = 1

    for row, (number, positions) in enumerate(body[cols:]):
        entries = [position for position in positions if position != 0]
        for position in entries:
            if not 1 <= position <= cols:
                raise CodeFormatError(
                    source, f"line {number}", f"column position {position} out of range 1..{cols}"
                )
        if sorted(entries) != list(np.flatnonzero(matrix[row]) + 1):
            raise CodeFormatError(
                source,
                f"line {number}",
                f"row {row + 1} disagrees with the column lists",
            )
    return matrix


def write_alist(path: Path, matrix: BitMatrix) -> None:
    rows, cols = matrix.shape
    column_weights = matrix.sum(axis=0).astype(int)
    row_weights = matrix.sum(axis=1).astype(int)

    def joined(values: Iterable[Any]) -> str:
        return " ".join(str(int(value)) for value in values)

    def positions(values: Iterable[Any]) -> str:
        # an empty list is written as a single padding zero
        return joined(values) or "0"

    lines = [
        f"{cols} {rows}",
        f"{column_weights.max(initial=0)} {row_weights.max(initial=0)}",
        joined(column_weights),
        joined(row_weights),
    ]
    lines += [positions(np.flatnonzero(matrix[:, col]) + 1) for col in range(cols)]
    lines += [positions(np.flatnonzero(matrix[row]) + 1) for row in range(rows)]
    path.write_text("\n".join(lines) + "\n")
