import numpy as np
import pytest

from conftests import (
    ANTICOMMUTING_DOCUMENT,
    HAMMING_ROWS,
    builtin_codes,
    builtin_css_codes,
    row_equivalent,
)
from cosetmeter.internals.codes import steane
from cosetmeter.internals.errors import (
    CodeValidationError,
    DimensionMismatchError,
    EnumerationCapError,
    NoLogicalQubitsError,
    ParameterError,
)
from cosetmeter.internals.gf2 import mat_mat_mul, rank
from cosetmeter.internals.pauli import (
    PauliError,
    from_pauli_string,
    symplectic_products,
)
from cosetmeter.internals.stabilizer import (
    CssCode,
    StabilizerCode,
    ViolationKind,
    classical_generator_from_pcm,
    css_to_stabilizer,
    css_violations,
    enumerate_stabilizer,
    kernel_from_css_generators,
    kernel_from_nullspace,
    logical_operators,
    standard_form,
    syndrome,
    validate,
)

HAMMING = np.array(HAMMING_ROWS, dtype=np.uint8)


def steane_code() -> StabilizerCode:
    return css_to_stabilizer(steane())


def test_steane_parameters():
    code = steane_code()

    assert (code.n, code.k, code.generators) == (7, 1, 6)
    assert code.rate == pytest.approx(1 / 7)
    assert validate(code) == []


def test_anticommuting_rows_are_reported():
    code = StabilizerCode(np.array(ANTICOMMUTING_DOCUMENT["pcm"]), name="pair")

    violations = validate(code)

    assert len(violations) == 1
    assert violations[0].kind == ViolationKind.ANTICOMMUTING_ROWS
    assert violations[0].rows == [0, 1]


def test_duplicated_row_is_rank_deficient():
    pcm = steane_code().pcm
    code = StabilizerCode(np.vstack([pcm, pcm[0]]))

    violations = validate(code)

    assert [violation.kind for violation in violations] == [ViolationKind.RANK_DEFICIENT]
    assert violations[0].rows == [6]


def test_steane_syndrome_of_single_flip():
    code = steane_code()

    np.testing.assert_array_equal(
        syndrome(code, from_pauli_string("XIIIIII")), [0, 0, 0, 1, 0, 0]
    )
    np.testing.assert_array_equal(
        syndrome(code, from_pauli_string("IIIIIIZ")), [1, 1, 1, 0, 0, 0]
    )
    with pytest.raises(DimensionMismatchError):
        syndrome(code, from_pauli_string("XII"))


def test_code_shapes_are_checked():
    with pytest.raises(ParameterError):
        StabilizerCode(np.array([[1, 0, 1]]))
    with pytest.raises(DimensionMismatchError):
        CssCode(HAMMING, HAMMING[:, :6])

    assert StabilizerCode(np.array([[1, 1]])).k == 0


def test_non_orthogonal_css_pair_is_rejected():
    css = CssCode(np.array([[1, 0]]), np.array([[1, 1]]), name="bad")

    with pytest.raises(CodeValidationError) as excinfo:
        css_to_stabilizer(css)

    assert excinfo.value.violations[0].kind == ViolationKind.NON_ORTHOGONAL
    assert "bad" in str(excinfo.value)


def test_dependent_css_rows_are_reported():
    css = CssCode(
        np.array([[1, 1, 0, 0], [1, 1, 0, 0]]), np.array([[1, 1, 1, 1]])
    )

    violations = css_violations(css)

    assert len(violations) == 1
    assert violations[0].kind == ViolationKind.RANK_DEFICIENT
    assert violations[0].matrix == "hx"
    assert violations[0].rows == [1]


@pytest.mark.parametrize("css", builtin_css_codes(), ids=lambda css: css.name)
def test_kernel_routes_agree_on_css_codes(css):
    code = css_to_stabilizer(css)
    kernel = kernel_from_nullspace(code)
    gx = classical_generator_from_pcm(css.hx)
    gz = classical_generator_from_pcm(css.hz)
    assembled = kernel_from_css_generators(css, gx, gz)

    assert kernel.g.shape == (2 * code.n - code.generators, 2 * code.n)
    assert not mat_mat_mul(kernel.g, code.pcm.T).any()
    assert row_equivalent(kernel.g, assembled.g)


def test_steane_kernel_shape():
    assert kernel_from_nullspace(steane_code()).g.shape == (8, 14)


def test_css_generators_are_verified():
    css = steane()
    gx = classical_generator_from_pcm(css.hx)
    gz = classical_generator_from_pcm(css.hz)

    with pytest.raises(CodeValidationError):
        kernel_from_css_generators(css, gx[[0, 0, 1, 2]], gz)
    with pytest.raises(CodeValidationError):
        kernel_from_css_generators(css, np.eye(7, dtype=np.uint8)[:4], gz)
    with pytest.raises(DimensionMismatchError):
        kernel_from_css_generators(css, gx[:, :6], gz)

    # unchecked assembly takes the matrices as given
    unchecked = kernel_from_css_generators(css, gx[[0, 0, 1, 2]], gz, verify=False)
    assert unchecked.g.shape == (8, 14)


def test_classical_generators_of_trivial_pcms():
    assert classical_generator_from_pcm(np.eye(3, dtype=np.uint8)).shape == (0, 3)
    np.testing.assert_array_equal(
        classical_generator_from_pcm(np.zeros((2, 4), dtype=np.uint8)),
        np.eye(4, dtype=np.uint8),
    )


def test_standard_form_of_steane():
    code = steane_code()
    form = standard_form(code)
    n, r = code.n, form.r

    assert r == 3
    np.testing.assert_array_equal(form.matrix[:r, :r], np.eye(r, dtype=np.uint8))
    assert not form.matrix[r:, :n].any()
    np.testing.assert_array_equal(
        form.matrix[r:, n + r : n + code.generators],
        np.eye(code.generators - r, dtype=np.uint8),
    )
    # C1 block is eliminated
    assert not form.matrix[:r, n + r : n + code.generators].any()

    columns = np.array(form.qubit_permutation)
    permuted = code.pcm[:, np.concatenate([columns, n + columns])]
    assert row_equivalent(permuted, form.matrix)


@pytest.mark.parametrize("code", builtin_codes(), ids=lambda code: code.name)
def test_standard_form_is_idempotent(code):
    form = standard_form(code)
    again = standard_form(StabilizerCode(form.matrix))

    assert again.r == form.r
    assert again.qubit_permutation == tuple(range(code.n))
    np.testing.assert_array_equal(again.matrix, form.matrix)


def test_standard_form_rejects_dependent_rows():
    pcm = steane_code().pcm
    with pytest.raises(CodeValidationError):
        standard_form(StabilizerCode(np.vstack([pcm, pcm[0]])))


@pytest.mark.parametrize("code", builtin_codes(), ids=lambda code: code.name)
def test_logical_operators_satisfy_their_contract(code):
    logicals = logical_operators(code)
    k = code.k
    operators = logicals.as_matrix(code.n)

    assert logicals.k == k
    assert operators.shape == (2 * k, 2 * code.n)
    for operator in logicals.xbars + logicals.zbars:
        assert not syndrome(code, operator).any()

    for i, xbar in enumerate(logicals.xbars):
        np.testing.assert_array_equal(
            symplectic_products(np.vstack([z.symplectic for z in logicals.zbars]), xbar),
            np.eye(k, dtype=np.uint8)[i],
        )
        assert not symplectic_products(
            np.vstack([x.symplectic for x in logicals.xbars]), xbar
        ).any()
    for zbar in logicals.zbars:
        assert not symplectic_products(
            np.vstack([z.symplectic for z in logicals.zbars]), zbar
        ).any()

    # independent of each other and of the stabilizer
    assert rank(np.vstack([code.pcm, operators])) == code.generators + 2 * k


def test_steane_logicals_reach_the_code_distance():
    logicals = logical_operators(steane_code())
    xbar, zbar = logicals.xbars[0], logicals.zbars[0]

    assert not zbar.x.any()
    assert xbar.x.sum() >= 3
    assert zbar.z.sum() >= 3


def test_logical_operators_need_logical_qubits():
    with pytest.raises(NoLogicalQubitsError):
        logical_operators(StabilizerCode(np.array([[1, 1]])))


def test_enumeration_lists_every_element_once():
    code = steane_code()
    elements = list(enumerate_stabilizer(code))

    assert len(elements) == 64
    assert not elements[0].any()
    assert len({element.tobytes() for element in elements}) == 64
    for element in elements:
        assert not syndrome(code, PauliError(element)).any()


def test_enumeration_cap_is_checked_before_iterating():
    with pytest.raises(EnumerationCapError) as excinfo:
        enumerate_stabilizer(steane_code(), cap=5)
    assert excinfo.value.generators == 6
