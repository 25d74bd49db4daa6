import logging
from pathlib import Path

import typer

from cosetmeter.internals.codes import load
from cosetmeter.internals.report import build_report, render_csv, render_json
from cosetmeter.internals.simulation import SimConfig, SimStats, sweep


def main(
    config_path: Path,
    output: Path | None = None,
    json_output: Path | None = None,
    workers: int = 1,
    seed: int | None = None,
) -> list[SimStats]:
    config = SimConfig.load_config(config_path)
    if seed is not None:
        config.master_seed = seed

    points = sweep(config, workers=workers)
    report = build_report(config, load(config.code), points)
    for point in points:
        logging.info(
            f"p={point.p}: trials={point.trials} e1={point.e1} e2={point.e2} e3={point.e3}"
        )

    csv_text = render_csv(report)
    if output is None:
        typer.echo(csv_text, nl=False)
    else:
        output.write_text(csv_text)
        logging.info(f"Wrote {len(points)} points to {output}")
    if json_output is not None:
        json_output.write_text(render_json(report))
    return points
