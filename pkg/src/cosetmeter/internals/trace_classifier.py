"""
Classify an externally produced trace. Each non-empty line holds a channel
error and a decoder estimate as Pauli strings separated by a tab.
"""

from collections import Counter
from pathlib import Path

import typer
from rich import print

from cosetmeter.internals.classifier import (
    ClassifierContext,
    ErrorClass,
    MethodKind,
    classify,
)
from cosetmeter.internals.codes import CodeSpec, load
from cosetmeter.internals.errors import PauliParseError, TraceFormatError
from cosetmeter.internals.pauli import PauliError, from_pauli_string


def parse_trace(text: str, n_qubits: int) -> list[tuple[int, PauliError, PauliError]]:
    pairs = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.rstrip("\r\n").split("\t")
        if len(fields) != 2:
            raise TraceFormatError(
                line_number, f"expected two tab-separated Pauli strings, got {len(fields)} fields"
            )
        try:
            e, e_hat = (from_pauli_string(field.strip()) for field in fields)
        except PauliParseError as error:
            raise TraceFormatError(line_number, str(error)) from None
        for operator in (e, e_hat):
            if operator.n_qubits != n_qubits:
                raise TraceFormatError(
                    line_number,
                    f"operator acts on {operator.n_qubits} qubits, the code has {n_qubits}",
                )
        pairs.append((line_number, e, e_hat))
    return pairs


def read_trace(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as error:
        line_number = data.count(b"\n", 0, error.start) + 1
        raise TraceFormatError(line_number, "not valid UTF-8") from None


def main(spec: CodeSpec, trace: Path, method: MethodKind) -> Counter[ErrorClass]:
    code = load(spec)
    pairs = parse_trace(read_trace(trace), code.n)
    ctx = ClassifierContext.from_code(code)

    counts: Counter[ErrorClass] = Counter()
    for _, e, e_hat in pairs:
        error_class = classify(ctx, e, e_hat, method)
        counts[error_class] += 1
        typer.echo(error_class.value)

    summary = ", ".join(f"{kind.value}={counts[kind]}" for kind in ErrorClass)
    print(f"# {len(pairs)} pairs: {summary}")
    return counts
