from rich import print
from rich.markup import escape

from cosetmeter.internals.codes import CodeSpec, construct
from cosetmeter.internals.stabilizer import (
    CssCode,
    StabilizerCode,
    Violation,
    assemble_css_pcm,
    css_violations,
    validate,
)


def code_violations(code: StabilizerCode | CssCode) -> tuple[StabilizerCode, list[Violation]]:
    """
    Violations of a stabilizer code, or of a CSS pair and its assembled PCM.
    """
    if isinstance(code, CssCode):
        violations = css_violations(code)
        stabilizer = StabilizerCode(assemble_css_pcm(code), name=code.name)
        if not violations:
            violations = validate(stabilizer)
        return stabilizer, violations
    return code, validate(code)


def main(spec: CodeSpec) -> bool:
    stabilizer, violations = code_violations(construct(spec))
    print(
        f"{stabilizer.name}: N = {stabilizer.n}, k = {stabilizer.k}, "
        f"R_Q = {stabilizer.rate:.4f}, {stabilizer.generators} generators"
    )
    if not violations:
        print("[green]valid[/green]")
        return True

    for violation in violations:
        print(f"[red]{violation.kind}[/red] ({violation.matrix}): {escape(violation.message)}")
    return False
