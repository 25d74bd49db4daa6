from pathlib import Path

from rich import print

from cosetmeter.internals.classifier import (
    AgreementReport,
    ClassifierContext,
    methods_agree,
)
from cosetmeter.internals.codes import CodeSpec, load


def main(
    spec: CodeSpec, trials: int, seed: int, output: Path | None = None
) -> AgreementReport:
    ctx = ClassifierContext.from_code(load(spec))
    report = methods_agree(ctx, trials, seed)

    methods = ", ".join(method.value for method in report.methods)
    print(f"{report.code}: {report.trials} pairs checked with {methods}")
    if report.disagreements:
        print(f"[red]{len(report.disagreements)} disagreements[/red]")
        for record in report.disagreements[:10]:
            classes = ", ".join(
                f"{method.value}={error_class.value}"
                for method, error_class in record.classes.items()
            )
            print(f"  trial {record.trial} ({record.kind}): {classes}")
    else:
        print("[green]all methods agree[/green]")

    if output is not None:
        output.write_text(report.model_dump_json(indent=2))
    return report
