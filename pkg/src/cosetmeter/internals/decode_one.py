from rich import print

from cosetmeter.internals.classifier import (
    ErrorClass,
    MethodKind,
    classify,
)
from cosetmeter.internals.codes import CodeSpec
from cosetmeter.internals.config import validate_model
from cosetmeter.internals.decoder import ChannelPrior, DecoderConfig, decode_css
from cosetmeter.internals.errors import DimensionMismatchError
from cosetmeter.internals.pauli import from_pauli_string, to_pauli_string
from cosetmeter.internals.simulation import prepare
from cosetmeter.internals.stabilizer import syndrome


def main(
    spec: CodeSpec,
    error: str,
    p: float,
    decoder: DecoderConfig,
    method: MethodKind = MethodKind.KERNEL,
) -> ErrorClass:
    ctx, css = prepare(spec)
    e = from_pauli_string(error)
    if e.n_qubits != ctx.code.n:
        raise DimensionMismatchError(
            f"error acts on {e.n_qubits} qubits, {ctx.code.name} has {ctx.code.n}"
        )
    w = syndrome(ctx.code, e)
    result = decode_css(css, w, validate_model(ChannelPrior, {"p": p}), decoder)
    error_class = classify(ctx, e, result.estimate, method)

    print(f"syndrome:  {''.join(str(bit) for bit in w)}")
    print(f"estimate:  {to_pauli_string(result.estimate)}")
    print(
        f"converged: {result.converged} after {result.iterations_used[0]} (x) / "
        f"{result.iterations_used[1]} (z) iterations"
    )
    print(f"class:     {error_class.value}")
    return error_class
