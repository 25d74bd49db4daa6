"""
Monte Carlo estimation of end-to-end error ratios over the depolarizing
channel.

A point runs trials until `target_errors` end-to-end errors (E1, E2 or E3) have
been seen or `max_trials` is reached. Every trial draws from its own generator
seeded by (master_seed, p_index, trial_index), and trials are tallied in index
order, so the counters do not depend on the number of workers.
"""

from __future__ import annotations

import concurrent.futures
import logging
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from cosetmeter.internals.classifier import (
    ClassifierContext,
    ErrorClass,
    MethodKind,
    classify,
)
from cosetmeter.internals.codes import CodeSpec, load_pair
from cosetmeter.internals.config import load_model
from cosetmeter.internals.decoder import ChannelPrior, DecoderConfig, decode_css
from cosetmeter.internals.errors import NotCssError, ParameterError
from cosetmeter.internals.pauli import (
    PauliError,
    from_pauli_string,
    to_pauli_string,
    weight,
)
from cosetmeter.internals.stabilizer import CssCode, StabilizerCode, syndrome

TRIALS_PER_BLOCK = 256
PROGRESS_EVERY = 10_000


class SimConfig(BaseModel):
    code: CodeSpec
    p_values: list[float]
    target_errors: int = 1000
    max_trials: int = 1_000_000
    master_seed: int = Field(default=0, ge=0)
    method: MethodKind = MethodKind.KERNEL
    decoder: DecoderConfig = DecoderConfig()
    keep_outcomes: bool = False

    @field_validator("target_errors")
    @classmethod
    def check_target_errors(cls, target_errors: int) -> int:
        if target_errors < 1:
            raise ValueError("target_errors must be ≥ 1")
        return target_errors

    @field_validator("p_values")
    @classmethod
    def check_p_values(cls, p_values: list[float]) -> list[float]:
        for p in p_values:
            if not 0 < p < 0.75:
                raise ValueError(f"depolarizing probabilities must lie in (0, 0.75), got {p}")
        return p_values

    @model_validator(mode="after")
    def check_trial_cap(self) -> "SimConfig":
        if self.max_trials < self.target_errors:
            raise ValueError(
                f"max_trials ({self.max_trials}) must be at least target_errors ({self.target_errors})"
            )
        return self

    @classmethod
    def load_config(cls, file_path: Path) -> "SimConfig":
        config = load_model(cls, file_path)
        # code files are resolved next to the config that names them
        if config.code.path is not None and not config.code.path.is_absolute():
            config.code.path = file_path.parent / config.code.path
        return config


class TrialOutcome(BaseModel):
    trial_index: int
    error_class: ErrorClass
    error_weight: int
    estimate_weight: int
    iterations_used: int
    converged: bool
    # kept only when the config asks for outcomes
    error: str | None = None
    estimate: str | None = None


class SimStats(BaseModel):
    p: float
    trials: int = 0
    e1: int = 0
    e2: int = 0
    e3: int = 0
    successes: int = 0
    truncated: bool = False
    total_iterations: int = 0
    rate: float = 0.0
    outcomes: list[TrialOutcome] = Field(default=[], exclude=True)

    @property
    def errors(self) -> int:
        return self.e1 + self.e2 + self.e3

    def _ratio(self, count: int) -> float:
        return count / self.errors if self.errors else 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def r1(self) -> float:
        return self._ratio(self.e1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def r2(self) -> float:
        return self._ratio(self.e2)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def r3(self) -> float:
        return self._ratio(self.e3)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def per(self) -> float:
        return self.errors / self.trials if self.trials else 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def ler(self) -> float:
        return (self.e1 + self.e2) / self.trials if self.trials else 0.0

    @computed_field  # type: ignore[prop-decorator]
    @property
    def mean_iterations(self) -> float:
        return self.total_iterations / self.trials if self.trials else 0.0

    def record(self, outcome: TrialOutcome, keep: bool = False) -> None:
        self.trials += 1
        self.total_iterations += outcome.iterations_used
        match outcome.error_class:
            case ErrorClass.SUCCESS:
                self.successes += 1
            case ErrorClass.DIFFERENT_SYNDROME:
                self.e1 += 1
            case ErrorClass.IDENTICAL_SYNDROME:
                self.e2 += 1
            case ErrorClass.DEGENERATE:
                self.e3 += 1
        if keep:
            self.outcomes.append(outcome)


def sample_depolarizing(n: int, p: float, rng: np.random.Generator) -> PauliError:
    """
    Per qubit: I with probability 1-p, otherwise X, Y or Z with p/3 each.
    """
    if not 0 <= p < 0.75:
        raise ParameterError(f"depolarizing probability must lie in [0, 0.75), got {p}")
    draws = rng.random(n)
    # [0, p/3) -> X, [p/3, 2p/3) -> Y, [2p/3, p) -> Z
    x = draws < 2 * p / 3
    z = (draws >= p / 3) & (draws < p)
    return PauliError.from_xz(x.astype(np.uint8), z.astype(np.uint8))


def trial_rng(master_seed: int, p_index: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng([master_seed, p_index, trial_index])


def run_trial(
    code: StabilizerCode,
    ctx: ClassifierContext,
    css: CssCode,
    p: float,
    cfg: DecoderConfig,
    rng: np.random.Generator,
    method: MethodKind = MethodKind.KERNEL,
    trial_index: int = 0,
    keep: bool = False,
) -> TrialOutcome:
    error = sample_depolarizing(code.n, p, rng)
    result = decode_css(css, syndrome(code, error), ChannelPrior(p=p), cfg)
    return TrialOutcome(
        trial_index=trial_index,
        error_class=classify(ctx, error, result.estimate, method),
        error_weight=weight(error),
        estimate_weight=weight(result.estimate),
        iterations_used=result.iterations,
        converged=result.converged,
        error=to_pauli_string(error) if keep else None,
        estimate=to_pauli_string(result.estimate) if keep else None,
    )


def prepare(spec: CodeSpec) -> tuple[ClassifierContext, CssCode]:
    code, css = load_pair(spec)
    if css is None:
        raise NotCssError(code.name, "the sum-product decoder")
    return ClassifierContext.from_code(code), css


def run_point(
    config: SimConfig,
    p_index: int,
    p: float,
    ctx: ClassifierContext,
    css: CssCode,
    workers: int = 1,
) -> SimStats:
    stats = SimStats(p=p, rate=ctx.code.rate)

    def trial(trial_index: int) -> TrialOutcome:
        return run_trial(
            ctx.code,
            ctx,
            css,
            p,
            config.decoder,
            trial_rng(config.master_seed, p_index, trial_index),
            method=config.method,
            trial_index=trial_index,
            keep=config.keep_outcomes,
        )

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        start = 0
        while start < config.max_trials and stats.errors < config.target_errors:
            stop = min(start + TRIALS_PER_BLOCK * workers, config.max_trials)
            # map yields in submission order; trials past the target are dropped
            for outcome in executor.map(trial, range(start, stop)):
                stats.record(outcome, keep=config.keep_outcomes)
                if stats.errors == config.target_errors:
                    break
            if stop // PROGRESS_EVERY > start // PROGRESS_EVERY:
                logging.info(
                    f"p={p}: {stats.trials} trials, {stats.errors}/{config.target_errors} errors"
                )
            start = stop

    if stats.errors < config.target_errors:
        stats.truncated = True
        logging.warning(
            f"p={p}: stopped at max_trials={config.max_trials} with {stats.errors} of {config.target_errors} errors"
        )
    return stats


def sweep(config: SimConfig, workers: int = 1) -> list[SimStats]:
    """
    One point per depolarizing probability, in increasing order of p.
    """
    if not config.p_values:
        return []
    ctx, css = prepare(config.code)
    if config.method == MethodKind.BRUTEFORCE:
        # fail before the first trial if enumeration is refused
        _ = ctx.stabilizer_elements
    return [
        run_point(config, p_index, p, ctx, css, workers)
        for p_index, p in enumerate(sorted(config.p_values))
    ]


def reclassify(
    ctx: ClassifierContext, outcomes: list[TrialOutcome], method: MethodKind
) -> list[ErrorClass]:
    classes = []
    for outcome in outcomes:
        if outcome.error is None or outcome.estimate is None:
            raise ParameterError(
                f"trial {outcome.trial_index} was stored without its error and estimate"
            )
        classes.append(
            classify(
                ctx,
                from_pauli_string(outcome.error),
                from_pauli_string(outcome.estimate),
                method,
            )
        )
    return classes

