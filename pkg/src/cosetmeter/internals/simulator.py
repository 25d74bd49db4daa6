from pathlib import Path

from rich import print
from rich.table import Table

from cosetmeter.internals.report import build_report, render_csv, render_json
from cosetmeter.internals.simulation import SimConfig, SimStats, prepare, run_point


def stats_table(points: list[SimStats]) -> Table:
    table = Table("p", "trials", "E1", "E2", "E3", "r3", "PER", "LER", "truncated")
    for point in points:
        table.add_row(
            f"{point.p:g}",
            str(point.trials),
            str(point.e1),
            str(point.e2),
            str(point.e3),
            f"{point.r3:.4f}",
            f"{point.per:.3e}",
            f"{point.ler:.3e}",
            "yes" if point.truncated else "no",
        )
    return table


def main(
    config: SimConfig,
    workers: int = 1,
    output: Path | None = None,
    json_output: Path | None = None,
) -> SimStats:
    """
    Run the single point `config.p_values[0]`.
    """
    ctx, css = prepare(config.code)
    stats = run_point(config, 0, config.p_values[0], ctx, css, workers)
    print(stats_table([stats]))
    print(f"mean iterations: {stats.mean_iterations:.2f}, R_Q = {stats.rate:.4f}")

    report = build_report(config, ctx.code, [stats])
    if output is not None:
        output.write_text(render_csv(report))
    if json_output is not None:
        json_output.write_text(render_json(report))
    return stats
