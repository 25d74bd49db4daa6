from pathlib import Path

import pytest

from conftests import row_equivalent
from cosetmeter.internals.codes import CodeKind, CodeSpec, load_pair
from cosetmeter.internals.kernel_export import KernelMode, build_kernels
from cosetmeter.internals.simulation import SimConfig, sweep

pytestmark = pytest.mark.slow


def test_degenerate_errors_show_up_on_a_200_qubit_bicycle_code():
    config = SimConfig.load_config(Path(__file__).parent.parent / "degeneracy.yaml")
    assert config.code.kind == CodeKind.BICYCLE
    assert 2 * config.code.n_c >= 200

    points = sweep(config, workers=4)

    assert [point.p for point in points] == sorted(config.p_values)
    for point in points:
        assert not point.truncated
        assert point.errors == config.target_errors
        assert point.e3 > 0
    assert points[0].r3 >= 0.05


@pytest.mark.parametrize("n_c", [100, 200, 400])
def test_kernel_routes_agree_on_large_bicycle_codes(n_c):
    code, css = load_pair(CodeSpec(kind=CodeKind.BICYCLE, n_c=n_c, w=8, seed=1))

    kernels, timings = build_kernels(code, css, KernelMode.BOTH)

    assert code.n == 2 * n_c
    assert row_equivalent(kernels[KernelMode.NULLSPACE], kernels[KernelMode.CSS_GENERATORS])
    assert timings.nullspace_seconds is not None
    assert timings.assembly_seconds is not None


def test_css_assembly_outpaces_nullspace_elimination_at_800_qubits():
    code, css = load_pair(CodeSpec(kind=CodeKind.BICYCLE, n_c=400, w=8, seed=1))

    runs = [build_kernels(code, css, KernelMode.BOTH)[1] for _ in range(3)]
    nullspace = min(run.nullspace_seconds for run in runs if run.nullspace_seconds)
    assembly = min(run.assembly_seconds or 0.0 for run in runs)

    assert nullspace >= 10 * assembly
