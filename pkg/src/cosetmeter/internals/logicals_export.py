from pathlib import Path

from pydantic import BaseModel
from rich import print

from cosetmeter.internals.codes import CodeSpec, load
from cosetmeter.internals.pauli import to_pauli_string
from cosetmeter.internals.stabilizer import logical_operators


class LogicalsDocument(BaseModel):
    code: str
    n: int
    k: int
    xbars: list[str]
    zbars: list[str]


def main(spec: CodeSpec, output: Path | None = None) -> None:
    code = load(spec)
    logicals = logical_operators(code)
    document = LogicalsDocument(
        code=code.name,
        n=code.n,
        k=code.k,
        xbars=[to_pauli_string(operator) for operator in logicals.xbars],
        zbars=[to_pauli_string(operator) for operator in logicals.zbars],
    )
    for index, (xbar, zbar) in enumerate(zip(document.xbars, document.zbars)):
        print(f"X{index}: {xbar}")
        print(f"Z{index}: {zbar}")

    if output is not None:
        output.write_text(document.model_dump_json(indent=2))
