import numpy as np
import pytest
from pydantic import ValidationError

from conftests import HAMMING_ROWS
from cosetmeter.internals.classifier import ClassifierContext, ErrorClass, classify
from cosetmeter.internals.codes import steane
from cosetmeter.internals.decoder import (
    ChannelPrior,
    DecoderConfig,
    decode_css,
    spa_binary,
)
from cosetmeter.internals.errors import DimensionMismatchError, ParameterError
from cosetmeter.internals.gf2 import mat_vec_mul
from cosetmeter.internals.pauli import PauliError, from_pauli_string
from cosetmeter.internals.simulation import sample_depolarizing
from cosetmeter.internals.stabilizer import css_to_stabilizer, syndrome

HAMMING = np.array(HAMMING_ROWS, dtype=np.uint8)
PRIOR = ChannelPrior(p=0.01)


def single_flip(position: int, bits: int = 7) -> np.ndarray:
    vector = np.zeros(bits, dtype=np.uint8)
    vector[position] = 1
    return vector


def test_prior_components():
    assert PRIOR.prob_x_component == pytest.approx(0.02 / 3)
    assert PRIOR.prob_z_component == pytest.approx(0.02 / 3)

    with pytest.raises(ValidationError):
        ChannelPrior(p=0.75)
    with pytest.raises(ValidationError):
        ChannelPrior(p=-0.1)
    with pytest.raises(ValidationError):
        DecoderConfig(max_iterations=0)


def test_zero_syndrome_decodes_to_zero_without_iterating():
    result = spa_binary(HAMMING, np.zeros(3, dtype=np.uint8), 0.01, DecoderConfig())

    assert not result.estimate.any()
    assert result.converged
    assert result.iterations == 0


@pytest.mark.parametrize("position", [2, 4, 5])
def test_hamming_flips_on_two_checks_are_found_at_once(position):
    flip = single_flip(position)

    result = spa_binary(HAMMING, mat_vec_mul(HAMMING, flip), 0.01, DecoderConfig())

    np.testing.assert_array_equal(result.estimate, flip)
    assert result.converged
    assert result.iterations == 1


@pytest.mark.parametrize("position", [0, 1, 3])
def test_hamming_flips_on_one_check_take_two_iterations(position):
    flip = single_flip(position)

    result = spa_binary(HAMMING, mat_vec_mul(HAMMING, flip), 0.01, DecoderConfig())

    np.testing.assert_array_equal(result.estimate, flip)
    assert result.converged
    assert result.iterations == 2


def test_hamming_flip_on_every_check_settles_on_weight_four():
    # the three degree-2 bits outvote the single degree-3 bit
    result = spa_binary(HAMMING, np.ones(3, dtype=np.uint8), 0.01, DecoderConfig())

    assert result.converged
    assert result.iterations == 1
    np.testing.assert_array_equal(np.flatnonzero(result.estimate), [2, 4, 5, 6])


def test_unsatisfiable_syndrome_runs_out_of_iterations():
    hc = np.array([[1, 1], [1, 1]], dtype=np.uint8)

    result = spa_binary(hc, np.array([1, 0], dtype=np.uint8), 0.1, DecoderConfig(max_iterations=7))

    assert not result.converged
    assert result.iterations == 7


def test_spa_checks_its_inputs():
    with pytest.raises(DimensionMismatchError):
        spa_binary(HAMMING, np.zeros(2, dtype=np.uint8), 0.01, DecoderConfig())
    with pytest.raises(ParameterError):
        spa_binary(HAMMING, np.zeros(3, dtype=np.uint8), 0.0, DecoderConfig())
    with pytest.raises(ParameterError):
        spa_binary(HAMMING, np.zeros(3, dtype=np.uint8), 0.6, DecoderConfig())


def test_per_bit_priors_are_accepted():
    priors = np.full(7, 0.01)
    priors[0] = 0.4
    flip = single_flip(0)

    result = spa_binary(HAMMING, mat_vec_mul(HAMMING, flip), priors, DecoderConfig())

    np.testing.assert_array_equal(result.estimate, flip)
    assert result.converged


def test_steane_weight_one_errors():
    css = steane()
    code = css_to_stabilizer(css)
    ctx = ClassifierContext.from_code(code)
    classes: dict[str, ErrorClass] = {}

    for qubit in range(7):
        for symbol in "XYZ":
            text = "I" * qubit + symbol + "I" * (6 - qubit)
            e = from_pauli_string(text)
            result = decode_css(css, syndrome(code, e), PRIOR, DecoderConfig())
            assert result.converged
            assert np.array_equal(syndrome(code, result.estimate), syndrome(code, e))
            classes[text] = classify(ctx, e, result.estimate)

    corrected = [text for text, kind in classes.items() if kind == ErrorClass.SUCCESS]
    assert len(corrected) == 18
    # qubit 6 sits on every check, so its flip is mistaken for the other three
    assert {text for text, kind in classes.items() if kind != ErrorClass.SUCCESS} == {
        "IIIIIIX",
        "IIIIIIY",
        "IIIIIIZ",
    }
    assert classes["IIIIIIX"] == ErrorClass.IDENTICAL_SYNDROME


def test_decode_css_reports_both_halves():
    css = steane()
    code = css_to_stabilizer(css)
    e = from_pauli_string("IYIIIII")

    result = decode_css(css, syndrome(code, e), PRIOR, DecoderConfig())

    assert result.estimate == e
    assert result.iterations_used == (2, 2)
    assert result.iterations == 2

    with pytest.raises(DimensionMismatchError):
        decode_css(css, np.zeros(5, dtype=np.uint8), PRIOR, DecoderConfig())


def test_decoding_is_deterministic():
    css = steane()
    code = css_to_stabilizer(css)
    rng = np.random.default_rng(9)

    for _ in range(20):
        e = PauliError(rng.integers(0, 2, size=14, dtype=np.uint8))
        w = syndrome(code, e)
        first = decode_css(css, w, ChannelPrior(p=0.05), DecoderConfig(max_iterations=30))
        second = decode_css(css, w, ChannelPrior(p=0.05), DecoderConfig(max_iterations=30))

        assert first == second
        if first.converged:
            assert np.array_equal(syndrome(code, first.estimate), w)


def test_hamming_single_flips_against_exhaustive_maximum_likelihood():
    words = ((np.arange(1 << 7)[:, None] >> np.arange(7)) & 1).astype(np.uint8)
    syndromes = (words @ HAMMING.T) % 2

    for position in range(7):
        target = mat_vec_mul(HAMMING, single_flip(position))
        candidates = words[(syndromes == target).all(axis=1)]
        # with a common prior below 1/2 the likeliest word is the lightest one
        lightest = candidates[candidates.sum(axis=1).argmin()]
        np.testing.assert_array_equal(lightest, single_flip(position))

        result = spa_binary(HAMMING, target, 0.01, DecoderConfig())
        if position < 6:
            np.testing.assert_array_equal(result.estimate, lightest)
        else:
            assert result.estimate.sum() == 4


def test_converged_fraction_drops_with_noise():
    css = steane()
    code = css_to_stabilizer(css)
    fractions = []

    for p in (0.001, 0.1):
        rng = np.random.default_rng(12)
        converged = 0
        for _ in range(300):
            e = sample_depolarizing(7, p, rng)
            result = decode_css(css, syndrome(code, e), ChannelPrior(p=p), DecoderConfig(max_iterations=30))
            converged += result.converged
        fractions.append(converged / 300)

    assert fractions[0] >= fractions[1]
    assert fractions[0] > 0.95
