import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Iterator

import typer
from rich.console import Console
from rich.markup import escape

from cosetmeter.internals.agreement import main as agreement_main
from cosetmeter.internals.classifier import MethodKind
from cosetmeter.internals.codes import resolve_spec
from cosetmeter.internals.config import validate_model
from cosetmeter.internals.decode_one import main as decode_one_main
from cosetmeter.internals.decoder import DecoderConfig
from cosetmeter.internals.errors import (
    CodeFormatError,
    CodeValidationError,
    ConfigError,
    DimensionMismatchError,
    EnumerationCapError,
    NoLogicalQubitsError,
    NotCssError,
    NotInCentralizerError,
    ParameterError,
    PauliParseError,
    TraceFormatError,
)
from cosetmeter.internals.kernel_export import KernelMode
from cosetmeter.internals.kernel_export import main as kernel_export_main
from cosetmeter.internals.logicals_export import main as logicals_export_main
from cosetmeter.internals.simulation import SimConfig
from cosetmeter.internals.simulator import main as simulator_main
from cosetmeter.internals.sweeper import main as sweeper_main
from cosetmeter.internals.trace_classifier import main as trace_classifier_main
from cosetmeter.internals.validator import main as validator_main

app = typer.Typer(no_args_is_help=True, pretty_exceptions_enable=False)

error_console = Console(stderr=True)

# exit 1
DOMAIN_ERRORS = (
    CodeValidationError,
    EnumerationCapError,
    NotInCentralizerError,
    NoLogicalQubitsError,
    NotCssError,
)
# exit 2
USAGE_ERRORS = (
    OSError,
    CodeFormatError,
    ConfigError,
    TraceFormatError,
    PauliParseError,
    ParameterError,
    DimensionMismatchError,
)

BuiltinOption = Annotated[
    str | None,
    typer.Option(
        "--builtin",
        help="Builtin code: steane, shor9, five_qubit or bicycle:n_c,w,seed.",
    ),
]
CodeOption = Annotated[
    Path | None,
    typer.Option("--code", help="JSON code document to load."),
]
OutputOption = Annotated[
    Path | None,
    typer.Option("--output", "-o", help="Where to write the result."),
]
JsonOutputOption = Annotated[
    Path | None,
    typer.Option(help="Also write the results as JSON to this path."),
]
MethodOption = Annotated[
    MethodKind,
    typer.Option(help="Stabilizer membership test used to split E2 from E3."),
]
WorkersOption = Annotated[
    int,
    typer.Option(min=1, help="Worker threads for trials. Results do not depend on it."),
]


@contextmanager
def exit_codes() -> Iterator[None]:
    try:
        yield
    except DOMAIN_ERRORS as error:
        error_console.print(f"[red]error:[/red] {escape(str(error))}")
        raise typer.Exit(code=1)
    except USAGE_ERRORS as error:
        error_console.print(f"[red]error:[/red] {escape(str(error))}")
        raise typer.Exit(code=2)


@app.callback()
def main(
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Log progress at INFO level.")
    ] = False,
):
    """
    \bcosetmeter measures how often a decoder's mistakes on a stabilizer code are
     harmless. It sorts every (error, estimate) pair into:
    - `SUCCESS` - the estimate equals the error.
    - `E1` - the estimate has a different syndrome.
    - `E2` - same syndrome, different logical coset: a logical failure.
    - `E3` - the estimate differs by a stabilizer: a degenerate error.
    """
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING, force=True
    )


@app.command()
def validate(builtin: BuiltinOption = None, code: CodeOption = None):
    """
    Check that the generators commute and are independent.
    Exits with 1 when any violation is found.
    """
    with exit_codes():
        valid = validator_main(resolve_spec(builtin, code))
    if not valid:
        raise typer.Exit(code=1)


@app.command()
def kernel(
    builtin: BuiltinOption = None,
    code: CodeOption = None,
    output: OutputOption = None,
    mode: Annotated[
        KernelMode,
        typer.Option(help="How to build the kernel generator matrix."),
    ] = KernelMode.BOTH,
):
    """
    Build the kernel generator matrix, print its shape, rank and build time,
    and export it as JSON with `--output`.

    In `both` mode CSS codes are built both ways and checked for row equivalence.
    """
    with exit_codes():
        equivalent = kernel_export_main(resolve_spec(builtin, code), output, mode)
    if not equivalent:
        raise typer.Exit(code=1)


@app.command()
def logicals(
    builtin: BuiltinOption = None,
    code: CodeOption = None,
    output: OutputOption = None,
):
    """
    Print the encoded X and Z operators as Pauli strings.
    """
    with exit_codes():
        logicals_export_main(resolve_spec(builtin, code), output)


@app.command()
def classify(
    trace: Annotated[
        Path,
        typer.Argument(help="File of `error<TAB>estimate` Pauli string lines."),
    ],
    builtin: BuiltinOption = None,
    code: CodeOption = None,
    method: MethodOption = MethodKind.KERNEL,
):
    """
    Print SUCCESS, E1, E2 or E3 for every line of a trace, then the totals.
    Both Pauli strings must act on all n qubits of the code.
    """
    with exit_codes():
        trace_classifier_main(resolve_spec(builtin, code), trace, method)


@app.command()
def decode(
    error: Annotated[str, typer.Argument(help="Channel error, e.g. `XIIIIII`.")],
    builtin: BuiltinOption = None,
    code: CodeOption = None,
    p: Annotated[float, typer.Option(help="Depolarizing probability of the prior.")] = 0.01,
    max_iterations: Annotated[int, typer.Option(min=1)] = 100,
    method: MethodOption = MethodKind.KERNEL,
):
    """
    Decode the syndrome of one error with the sum-product decoder and classify the estimate.
    """
    with exit_codes():
        decode_one_main(
            resolve_spec(builtin, code),
            error,
            p,
            validate_model(DecoderConfig, {"max_iterations": max_iterations}),
            method,
        )


@app.command()
def simulate(
    p: Annotated[float, typer.Option(help="Depolarizing probability.")],
    builtin: BuiltinOption = None,
    code: CodeOption = None,
    target_errors: int = 1000,
    max_trials: int = 1_000_000,
    seed: Annotated[int, typer.Option(min=0)] = 0,
    method: MethodOption = MethodKind.KERNEL,
    max_iterations: Annotated[int, typer.Option(min=1)] = 100,
    workers: WorkersOption = 1,
    output: OutputOption = None,
    json_output: JsonOutputOption = None,
):
    """
    Run one Monte Carlo point until `--target-errors` end-to-end errors are seen.
    """
    with exit_codes():
        config = validate_model(
            SimConfig,
            {
                "code": resolve_spec(builtin, code).model_dump(),
                "p_values": [p],
                "target_errors": target_errors,
                "max_trials": max_trials,
                "master_seed": seed,
                "method": method,
                "decoder": {"max_iterations": max_iterations},
            },
        )
        simulator_main(config, workers, output, json_output)


@app.command()
def sweep(
    config: Annotated[
        Path, typer.Argument(help="Sweep config (YAML or JSON) mirroring SimConfig.")
    ],
    output: OutputOption = None,
    json_output: JsonOutputOption = None,
    workers: WorkersOption = 1,
    seed: Annotated[
        int | None,
        typer.Option(min=0, help="Override the config's master_seed."),
    ] = None,
):
    """
    Run every point of a sweep config and write the CSV (stdout without `--output`).
    """
    with exit_codes():
        sweeper_main(config, output, json_output, workers, seed)


@app.command()
def agree(
    builtin: BuiltinOption = None,
    code: CodeOption = None,
    trials: Annotated[int, typer.Option(min=0)] = 10_000,
    seed: Annotated[int, typer.Option(min=0)] = 0,
    output: OutputOption = None,
):
    """
    Classify random pairs with all four membership tests.
    Exits with 1 if any two tests disagree.
    """
    with exit_codes():
        report = agreement_main(resolve_spec(builtin, code), trials, seed, output)
    if report.disagreements:
        raise typer.Exit(code=1)
