"""
Classification of (channel error, decoder estimate) pairs.

    SUCCESS  the estimate equals the channel error
    E1       the estimate has a different syndrome
    E2       same syndrome, but the two differ by a non-trivial logical operator
    E3       same syndrome, and they differ by a stabilizer element (degenerate)

Deciding between E2 and E3 is a stabilizer membership test on v = e + e_hat.
Four interchangeable tests are provided; `kernel` is the default and the
others exist to cross-check it.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

import numpy as np
from pydantic import BaseModel

from cosetmeter.internals.errors import (
    DimensionMismatchError,
    NoLogicalQubitsError,
    NotInCentralizerError,
)
from cosetmeter.internals.gf2 import is_in_rowspace, mat_vec_mul
from cosetmeter.internals.pauli import (
    PauliError,
    compose,
    symplectic_products,
    to_pauli_string,
)
from cosetmeter.internals.stabilizer import (
    DEFAULT_ENUMERATION_CAP,
    KernelGenerator,
    LogicalOperatorSet,
    StabilizerCode,
    enumerate_stabilizer,
    kernel_from_nullspace,
    logical_operators,
    syndrome,
)


class ErrorClass(StrEnum):
    SUCCESS = "SUCCESS"
    DIFFERENT_SYNDROME = "E1"
    IDENTICAL_SYNDROME = "E2"
    DEGENERATE = "E3"

    @property
    def physical_failure(self) -> bool:
        return self != ErrorClass.SUCCESS

    @property
    def logical_failure(self) -> bool:
        return self in (ErrorClass.DIFFERENT_SYNDROME, ErrorClass.IDENTICAL_SYNDROME)


class MethodKind(StrEnum):
    KERNEL = "kernel"
    LOGICALS = "logicals"
    RANK = "rank"
    BRUTEFORCE = "bruteforce"


@dataclass(frozen=True)
class ClassifierContext:
    code: StabilizerCode
    kernel: KernelGenerator
    logicals: LogicalOperatorSet
    enumeration_cap: int = field(default=DEFAULT_ENUMERATION_CAP)

    @classmethod
    def from_code(
        cls,
        code: StabilizerCode,
        kernel: KernelGenerator | None = None,
        enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    ) -> "ClassifierContext":
        started = time.perf_counter()
        if kernel is None:
            kernel = kernel_from_nullspace(code)
        if code.k > 0:
            logicals = logical_operators(code)
        else:
            logicals = LogicalOperatorSet(xbars=(), zbars=())
        logging.info(
            f"Certificates for {code.name} built in {time.perf_counter() - started:.3f}s"
        )
        return cls(code, kernel, logicals, enumeration_cap)

    @cached_property
    def logical_matrix(self) -> np.ndarray:
        return self.logicals.as_matrix(self.code.n)

    @cached_property
    def stabilizer_elements(self) -> frozenset[bytes]:
        return frozenset(
            element.tobytes()
            for element in enumerate_stabilizer(self.code, self.enumeration_cap)
        )

    @property
    def bruteforce_feasible(self) -> bool:
        return self.code.generators <= self.enumeration_cap


def _check_size(code: StabilizerCode, v: PauliError) -> None:
    if v.n_qubits != code.n:
        raise DimensionMismatchError(
            f"operator acts on {v.n_qubits} qubits, code has {code.n}"
        )


def is_stabilizer_kernel(ctx: ClassifierContext, v: PauliError) -> bool:
    _check_size(ctx.code, v)
    return not mat_vec_mul(ctx.kernel.g, v.symplectic).any()


def is_stabilizer_logicals(ctx: ClassifierContext, v: PauliError) -> bool:
    """
    Only defined on the centralizer: a centralizer element is a stabilizer iff
    it commutes with every encoded Pauli operator.
    """
    if syndrome(ctx.code, v).any():
        raise NotInCentralizerError()
    return not symplectic_products(ctx.logical_matrix, v).any()


def is_stabilizer_rank(code: StabilizerCode, v: PauliError) -> bool:
    _check_size(code, v)
    return is_in_rowspace(code.pcm, v.symplectic)


def is_stabilizer_bruteforce(
    code: StabilizerCode, v: PauliError, cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    _check_size(code, v)
    elements = enumerate_stabilizer(code, cap)
    if syndrome(code, v).any():
        return False
    return any(np.array_equal(element, v.symplectic) for element in elements)


def is_stabilizer(
    ctx: ClassifierContext, v: PauliError, method: MethodKind = MethodKind.KERNEL
) -> bool:
    match method:
        case MethodKind.KERNEL:
            return is_stabilizer_kernel(ctx, v)
        case MethodKind.LOGICALS:
            return is_stabilizer_logicals(ctx, v)
        case MethodKind.RANK:
            return is_stabilizer_rank(ctx.code, v)
        case MethodKind.BRUTEFORCE:
            _check_size(ctx.code, v)
            # the enumerated set is cached on the context
            return v.symplectic.tobytes() in ctx.stabilizer_elements


def classify(
    ctx: ClassifierContext,
    e: PauliError,
    e_hat: PauliError,
    method: MethodKind = MethodKind.KERNEL,
) -> ErrorClass:
    if e.n_qubits != e_hat.n_qubits:
        raise DimensionMismatchError(
            f"error acts on {e.n_qubits} qubits, estimate on {e_hat.n_qubits}"
        )
    if not np.array_equal(syndrome(ctx.code, e), syndrome(ctx.code, e_hat)):
        return ErrorClass.DIFFERENT_SYNDROME
    if e == e_hat:
        return ErrorClass.SUCCESS
    if is_stabilizer(ctx, compose(e, e_hat), method):
        return ErrorClass.DEGENERATE
    return ErrorClass.IDENTICAL_SYNDROME


def random_pauli(n_qubits: int, rng: np.random.Generator) -> PauliError:
    return PauliError(rng.integers(0, 2, size=2 * n_qubits, dtype=np.uint8))


def random_stabilizer_element(
    code: StabilizerCode, rng: np.random.Generator, nonzero: bool = False
) -> PauliError:
    """
    A uniformly random GF(2) combination of PCM rows.
    """
    generators = code.generators
    while True:
        coefficients = rng.integers(0, 2, size=generators, dtype=np.int64)
        if not nonzero or coefficients.any() or generators == 0:
            break
    element = (coefficients @ code.pcm.astype(np.int64)) & 1
    return PauliError(element.astype(np.uint8))


def random_logical_product(
    logicals: LogicalOperatorSet, n_qubits: int, rng: np.random.Generator
) -> PauliError:
    """
    A random product of encoded Pauli operators, never all-identity.
    """
    if logicals.k == 0:
        raise NoLogicalQubitsError()
    operators = logicals.as_matrix(n_qubits).astype(np.int64)
    while True:
        coefficients = rng.integers(0, 2, size=operators.shape[0], dtype=np.int64)
        if coefficients.any():
            break
    return PauliError(((coefficients @ operators) & 1).astype(np.uint8))


class PairKind(StrEnum):
    STABILIZER_SHIFT = "stabilizer-shift"
    LOGICAL_SHIFT = "logical-shift"
    RANDOM = "random"


class AgreementRecord(BaseModel):
    trial: int
    kind: PairKind
    error: str
    estimate: str
    classes: dict[MethodKind, ErrorClass]

    @property
    def agreed(self) -> bool:
        return len(set(self.classes.values())) <= 1


class AgreementReport(BaseModel):
    code: str
    methods: list[MethodKind]
    records: list[AgreementRecord] = []
    disagreements: list[AgreementRecord] = []

    @property
    def trials(self) -> int:
        return len(self.records)


def _random_pair(
    ctx: ClassifierContext, kind: PairKind, rng: np.random.Generator
) -> tuple[PauliError, PauliError]:
    n = ctx.code.n
    e = random_pauli(n, rng)
    match kind:
        case PairKind.STABILIZER_SHIFT:
            shift = random_stabilizer_element(ctx.code, rng)
        case PairKind.LOGICAL_SHIFT:
            shift = compose(
                random_stabilizer_element(ctx.code, rng),
                random_logical_product(ctx.logicals, n, rng),
            )
        case PairKind.RANDOM:
            shift = random_pauli(n, rng)
    return e, compose(e, shift)


def methods_agree(
    ctx: ClassifierContext,
    trials: int,
    rng_seed: int,
    methods: list[MethodKind] | None = None,
) -> AgreementReport:
    """
    Classify random pairs with every method and collect the pairs on which
    the methods disagree. Pairs cycle through stabilizer-shifted,
    logical-shifted and unrelated estimates.
    """
    if methods is None:
        methods = list(MethodKind)
        if not ctx.bruteforce_feasible:
            logging.warning(
                f"{ctx.code.name} has {ctx.code.generators} generators, above the enumeration cap {ctx.enumeration_cap}; skipping bruteforce"
            )
            methods.remove(MethodKind.BRUTEFORCE)

    kinds = [PairKind.STABILIZER_SHIFT, PairKind.RANDOM]
    if ctx.logicals.k > 0:
        kinds.insert(1, PairKind.LOGICAL_SHIFT)

    rng = np.random.default_rng(rng_seed)
    report = AgreementReport(code=ctx.code.name, methods=methods)
    for trial in range(trials):
        kind = kinds[trial % len(kinds)]
        e, e_hat = _random_pair(ctx, kind, rng)
        record = AgreementRecord(
            trial=trial,
            kind=kind,
            error=to_pauli_string(e),
            estimate=to_pauli_string(e_hat),
            classes={method: classify(ctx, e, e_hat, method) for method in methods},
        )
        report.records.append(record)
        if not record.agreed:
            report.disagreements.append(record)

        if (trial + 1) % 1000 == 0:
            logging.info(
                f"Agreement check: {trial + 1}/{trials} pairs, {len(report.disagreements)} disagreements"
            )
    return report
