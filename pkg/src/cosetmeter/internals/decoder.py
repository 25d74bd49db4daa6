"""
Syndrome-based sum-product decoding of CSS codes.

Each classical component is decoded on its own Tanner graph with a flooding
schedule. Messages are log-likelihood ratios (positive favours bit = 0) kept on
a flat edge list, so one iteration is a handful of numpy reductions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, Field, field_validator

from cosetmeter.internals.errors import DimensionMismatchError, ParameterError
from cosetmeter.internals.gf2 import BitMatrix, BitVector, as_bit_vector, mat_vec_mul
from cosetmeter.internals.pauli import PauliError, Syndrome
from cosetmeter.internals.stabilizer import CssCode

# keeps 2*atanh finite before magnitudes are clipped
_TANH_LIMIT = 1.0 - 1e-15


class ChannelPrior(BaseModel):
    p: float

    @field_validator("p")
    @classmethod
    def check_probability(cls, p: float) -> float:
        if not 0 <= p < 0.75:
            raise ValueError(f"depolarizing probability must lie in [0, 0.75), got {p}")
        return p

    @property
    def prob_x_component(self) -> float:
        # X or Y flips the x bit
        return 2 * self.p / 3

    @property
    def prob_z_component(self) -> float:
        return 2 * self.p / 3


class DecoderConfig(BaseModel):
    max_iterations: int = Field(default=100, ge=1)
    clip: float = Field(default=25.0, gt=0)


@dataclass(frozen=True)
class DecodeResult:
    estimate: PauliError
    converged: bool
    # (x component, z component)
    iterations_used: tuple[int, int]

    @property
    def iterations(self) -> int:
        return max(self.iterations_used)


class BinaryDecodeResult(NamedTuple):
    estimate: BitVector
    converged: bool
    iterations: int


def _prior_llr(prior: float | npt.ArrayLike, bits: int) -> npt.NDArray[np.float64]:
    probabilities = np.broadcast_to(np.asarray(prior, dtype=np.float64), (bits,))
    if np.any(probabilities <= 0) or np.any(probabilities > 0.5):
        raise ParameterError("bit priors must lie in (0, 1/2]")
    return np.log((1 - probabilities) / probabilities)


def spa_binary(
    hc: BitMatrix,
    target_syndrome: BitVector,
    prior: float | npt.ArrayLike,
    cfg: DecoderConfig,
) -> BinaryDecodeResult:
    """
    Find a low-weight x with hc.x = target_syndrome.

    Check c enforces parity target_syndrome[c], which flips the sign of every
    message it sends when the bit is set. The hard decision is taken after
    every iteration and decoding stops as soon as it reproduces the syndrome.
    """
    checks_count, bits_count = hc.shape
    target = as_bit_vector(target_syndrome)
    if target.shape[0] != checks_count:
        raise DimensionMismatchError(
            f"syndrome has {target.shape[0]} bits, the PCM has {checks_count} checks"
        )
    prior_llr = _prior_llr(prior, bits_count)

    estimate = (prior_llr < 0).astype(np.uint8)
    if np.array_equal(mat_vec_mul(hc, estimate), target):
        return BinaryDecodeResult(estimate, True, 0)

    checks, bits = np.nonzero(hc)
    check_signs = target[checks].astype(np.int64)
    bit_to_check = prior_llr[bits]

    for iteration in range(1, cfg.max_iterations + 1):
        # tanh rule, leaving each edge out via log-magnitude sums and sign parity
        t = np.tanh(bit_to_check / 2)
        magnitude = np.abs(t)
        is_zero = (magnitude == 0).astype(np.float64)
        log_magnitude = np.log(np.where(is_zero > 0, 1.0, magnitude))
        negative = (t < 0).astype(np.int64)

        log_sum = np.bincount(checks, weights=log_magnitude, minlength=checks_count)
        zero_count = np.bincount(checks, weights=is_zero, minlength=checks_count)
        negative_count = np.bincount(checks, weights=negative, minlength=checks_count)

        others_zero = zero_count[checks] - is_zero
        others_negative = (
            negative_count[checks].astype(np.int64) - negative + check_signs
        )
        product = np.where(
            others_zero > 0, 0.0, np.exp(log_sum[checks] - log_magnitude)
        )
        product = np.where(others_negative % 2 == 1, -product, product)
        check_to_bit = 2 * np.arctanh(np.clip(product, -_TANH_LIMIT, _TANH_LIMIT))
        check_to_bit = np.clip(check_to_bit, -cfg.clip, cfg.clip)

        posterior = prior_llr + np.bincount(
            bits, weights=check_to_bit, minlength=bits_count
        )
        # a posterior of exactly zero decides 0
        estimate = (posterior < 0).astype(np.uint8)
        if np.array_equal(mat_vec_mul(hc, estimate), target):
            return BinaryDecodeResult(estimate, True, iteration)

        bit_to_check = np.clip(posterior[bits] - check_to_bit, -cfg.clip, cfg.clip)

    return BinaryDecodeResult(estimate, False, cfg.max_iterations)


def decode_css(
    css: CssCode, w: Syndrome, prior: ChannelPrior, cfg: DecoderConfig
) -> DecodeResult:
    """
    Decode the two halves of a CSS syndrome independently. The hx rows come
    first in the syndrome and locate the z part of the error; the hz rows
    locate the x part.
    """
    syndrome_bits = as_bit_vector(w)
    rx, rz = css.hx.shape[0], css.hz.shape[0]
    if syndrome_bits.shape[0] != rx + rz:
        raise DimensionMismatchError(
            f"syndrome has {syndrome_bits.shape[0]} bits, {css.name} has {rx + rz} generators"
        )

    z_part = spa_binary(css.hx, syndrome_bits[:rx], prior.prob_z_component, cfg)
    x_part = spa_binary(css.hz, syndrome_bits[rx:], prior.prob_x_component, cfg)
    return DecodeResult(
        estimate=PauliError.from_xz(x_part.estimate, z_part.estimate),
        converged=x_part.converged and z_part.converged,
        iterations_used=(x_part.iterations, z_part.iterations),
    )
