"""
CSV and JSON emitters for sweep results.

CSV layout (schema v0): `#`-prefixed `key: value` metadata lines, then a header
row and one row per depolarizing probability with the columns

    p, trials, e1, e2, e3, successes, r1, r2, r3, per, ler, truncated
"""

import csv
import io

from pydantic import BaseModel

from cosetmeter import __version__
from cosetmeter.internals.classifier import MethodKind
from cosetmeter.internals.decoder import DecoderConfig
from cosetmeter.internals.simulation import SimConfig, SimStats
from cosetmeter.internals.stabilizer import StabilizerCode

SCHEMA_VERSION = "v0"

CSV_COLUMNS = (
    "p",
    "trials",
    "e1",
    "e2",
    "e3",
    "successes",
    "r1",
    "r2",
    "r3",
    "per",
    "ler",
    "truncated",
)


class SweepMetadata(BaseModel):
    schema_version: str = SCHEMA_VERSION
    tool_version: str = __version__
    code: str
    n: int
    k: int
    master_seed: int
    method: MethodKind
    target_errors: int
    max_trials: int
    decoder: DecoderConfig


class SweepReport(BaseModel):
    metadata: SweepMetadata
    points: list[SimStats]


def build_report(
    config: SimConfig, code: StabilizerCode, points: list[SimStats]
) -> SweepReport:
    return SweepReport(
        metadata=SweepMetadata(
            code=config.code.label,
            n=code.n,
            k=code.k,
            master_seed=config.master_seed,
            method=config.method,
            target_errors=config.target_errors,
            max_trials=config.max_trials,
            decoder=config.decoder,
        ),
        points=points,
    )


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def render_csv(report: SweepReport) -> str:
    output = io.StringIO()
    metadata = report.metadata.model_dump(mode="json")
    decoder = metadata.pop("decoder")
    for key, value in metadata.items():
        output.write(f"# {key}: {value}\n")
    for key, value in decoder.items():
        output.write(f"# decoder.{key}: {value}\n")

    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for point in report.points:
        row = point.model_dump()
        writer.writerow([_cell(row[column]) for column in CSV_COLUMNS])
    return output.getvalue()


def render_json(report: SweepReport) -> str:
    return report.model_dump_json(indent=2)


def csv_body(text: str) -> str:
    """
    The CSV without its metadata lines.
    """
    return "".join(
        line for line in text.splitlines(keepends=True) if not line.startswith("#")
    )
