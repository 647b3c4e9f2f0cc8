"""
invariant suites behind `main.py verify`: each check reports the largest residual it saw.
"""

from dataclasses import asdict, dataclass
from typing import Callable, Dict, List

import numpy as np
from numpy.typing import NDArray

from .basic.bell_algebra import (
    BELL_STATES,
    PAULI_XOR,
    SIGMA,
    STRUCTURE_F,
    Basis,
    BellOperator,
    bell_matrix_element,
    bell_projector,
    is_unitary,
    magic_basis_matrix,
    partial_trace_bell,
    structure_constant_closed_form,
)
from .basic.errors import BoundaryError, DomainError
from .basic.log import setup_logger
from .basic.metric import Metric
from .basic.preconcurrence import stationary_values
from .basic.pure_state import binary_entropy, entanglement_from_reduced, entanglement_pure, random_coeffs
from .oracle import bell_mixture_eof, eig_hermitian, lagrangian_dense, partial_trace_dense
from .werner import complex_ansatz
from .werner.core import (
    AnsatzParams,
    WernerSpec,
    ansatz_K,
    decomposition_sum,
    delta_deviation,
    lagrangian,
    log_K,
    marginals_and_R,
    trace_identity_residual,
)
from .werner.eq_solver import f_rho, residuals, solve_approx
from .werner.model import LN2, MixedMinimization

SUITES = ("algebra", "werner", "appendices")

_logger = setup_logger(filename=__file__, classname="verify")


@dataclass(frozen=True)
class Check:
    name: str
    max_residual: float
    tolerance: float
    passed: bool

    @classmethod
    def of(cls, name: str, residual: float, tolerance: float) -> "Check":
        residual = float(residual)
        return cls(name, residual, tolerance, bool(np.isfinite(residual) and residual <= tolerance))

    def to_dict(self) -> Dict:
        return asdict(self)


def _flag(name: str, ok: bool) -> Check:
    return Check(name, 0.0 if ok else 1.0, 0.0, bool(ok))


def _random_bell_operator(rng: np.random.Generator) -> NDArray:
    return rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))


def algebra_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    product_error = 0.0
    closed_form_error = 0.0
    for mu in range(4):
        for nu in range(4):
            lhs = SIGMA[mu] @ SIGMA[nu]
            rhs = STRUCTURE_F[mu, nu] * SIGMA[PAULI_XOR[mu, nu]]
            product_error = max(product_error, Metric.max_abs_deviation(lhs, rhs))
            closed_form_error = max(closed_form_error, abs(structure_constant_closed_form(mu, nu) - STRUCTURE_F[mu, nu]))
    symmetry = max(
        abs(np.conj(STRUCTURE_F[PAULI_XOR[a, b], b]) - STRUCTURE_F[a, b]) for a in range(4) for b in range(4)
    )
    dense = np.array(
        [
            [[np.vdot(BELL_STATES[m1], np.kron(SIGMA[0], SIGMA[beta]) @ BELL_STATES[m2]) for m2 in range(4)] for beta in range(4)]
            for m1 in range(4)
        ]
    )
    closed = np.array([[[bell_matrix_element(m1, beta, m2) for m2 in range(4)] for beta in range(4)] for m1 in range(4)])
    trace_error = 0.0
    for _ in range(samples):
        op = BellOperator(_random_bell_operator(rng), Basis.BELL)
        standard = op.to(Basis.STANDARD).entries
        for traced in ("a", "b"):
            trace_error = max(
                trace_error,
                Metric.max_abs_deviation(partial_trace_bell(op, traced).entries, partial_trace_dense(standard, traced)),
            )
    projector_error = Metric.max_abs_deviation(
        sum(bell_projector(mu).to(Basis.STANDARD).entries for mu in range(4)), np.eye(4)
    )
    for mu in range(4):
        outer = np.outer(BELL_STATES[mu], np.conj(BELL_STATES[mu]))
        projector_error = max(
            projector_error, Metric.max_abs_deviation(bell_projector(mu).to(Basis.STANDARD).entries, outer)
        )
    route_error = 0.0
    for _ in range(samples):
        c = random_coeffs(rng)
        route_error = max(route_error, abs(entanglement_pure(c) - entanglement_from_reduced(c)))
    return [
        Check.of("pauli_products", product_error, 0.0),
        Check.of("structure_closed_form", closed_form_error, 0.0),
        Check.of("structure_symmetry", symmetry, 0.0),
        Check.of("bell_matrix_element", Metric.max_abs_deviation(closed, dense), 1e-12),
        _flag("magic_basis_unitary", is_unitary(magic_basis_matrix())),
        Check.of("bell_projectors", projector_error, 1e-14),
        Check.of("partial_trace", trace_error, 1e-12),
        Check.of("pure_entanglement_routes", route_error, 1e-10),
    ]


def _reference_pure(m0: float) -> float:
    concurrence = abs(2.0 * m0 - 1.0)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - concurrence**2)))


def werner_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    pure_error = trace_error = insensitivity = closure = 0.0
    for d_v in (1, 2, 3):
        for m0 in np.linspace(0.0, 1.0, 21):
            spec = WernerSpec(float(m0), d_v)
            p = AnsatzParams.pure_min(spec)
            pure_error = max(pure_error, abs(lagrangian(spec, p) / (2.0 * LN2) - _reference_pure(spec.m0)))
            closure = max(closure, Metric.max_abs_deviation(decomposition_sum(spec, p), np.diag(spec.weights())))
            try:
                trace_error = max(trace_error, trace_identity_residual(spec, p, "pure"))
                insensitivity = max(insensitivity, delta_deviation(spec, p, "pure"))
            except BoundaryError:
                _logger.debug("no pure entanglement operator at m0=%s", spec.m0)
    spectrum_error = dense_error = 0.0
    for _ in range(samples):
        spec = WernerSpec(float(rng.uniform(0.0, 1.0)), int(rng.integers(1, 4)))
        eps = float(rng.uniform(0.0, 1.0))
        q_max = np.sqrt(spec.m0 * spec.m1 * (spec.d_v - eps * (spec.d_v - 1)) / spec.d_v)
        p = AnsatzParams.from_q_eps(spec, float(rng.uniform(0.0, q_max)), eps)
        expected = np.sort(p.eigenvalue_table(spec)) / spec.n_alpha
        values, _ = eig_hermitian(ansatz_K(spec, p, 0).k.entries)
        spectrum_error = max(spectrum_error, Metric.max_abs_deviation(values, expected))
        closure = max(closure, Metric.max_abs_deviation(decomposition_sum(spec, p), np.diag(spec.weights())))
        dense_error = max(dense_error, abs(lagrangian(spec, p) - lagrangian_dense(spec, p)))
    mixed_gap = -np.inf
    minimization = MixedMinimization()
    for m0 in (0.55, 0.7, 0.9):
        spec = WernerSpec(m0, 1)
        mixed = lagrangian(spec, minimization.minimize(spec))
        mixed_gap = max(mixed_gap, mixed - lagrangian(spec, AnsatzParams.pure_min(spec)))
    return [
        Check.of("pure_entanglement", pure_error, 1e-10),
        Check.of("closure", closure, 1e-12),
        Check.of("pure_trace_identity", trace_error, 1e-9),
        Check.of("pure_insensitivity", insensitivity, 1e-8),
        Check.of("spectrum", spectrum_error, 1e-12),
        Check.of("lagrangian_dense", dense_error, 1e-10),
        _flag("mixed_below_pure", mixed_gap < 0.0),
    ]


def appendices_suite(rng: np.random.Generator, samples: int) -> List[Check]:
    spec = WernerSpec(0.55, 3)
    f_zero = abs(f_rho(spec, 0.0) - (spec.y_pure**2 - 0.25))
    trivial = max(abs(r) for r in residuals(spec, 1.0, 0.0))
    root_cases = {(3, 0.55): True, (3, 0.45): False, (2, 0.55): True, (2, 0.45): True}
    roots_ok = all((solve_approx(WernerSpec(m0, d_v)) is not None) == found for (d_v, m0), found in root_cases.items())

    expected = np.array([0.4, 0.6, 0.8, 1.0])
    found = np.array(stationary_values((0.7, 0.1, 0.1, 0.1)).all_values)
    stationary_error = Metric.max_abs_deviation(found, expected) if found.shape == expected.shape else np.inf

    zero_y = zero_delta = 0.0
    orbit_ok = True
    for d_v in (2, 3):
        spec = WernerSpec(0.4, d_v)
        phases = complex_ansatz.zero_gamma_phases(spec)
        p = AnsatzParams.pure_min(spec)
        for alpha in range(spec.n_alpha):
            zero_y = max(zero_y, abs(complex_ansatz.n_vectors(spec, phases, p, alpha)[2] - 0.5))
            zero_delta = max(zero_delta, float(np.linalg.norm(complex_ansatz.delta_tilde(spec, phases, p, "pure", alpha))))
    for d_v, m0 in ((3, 0.7), (3, 0.3), (2, 0.6), (1, 0.8)):
        spec = WernerSpec(m0, d_v)
        orbit_ok &= complex_ansatz.matches_stationary_set(spec, complex_ansatz.classify_orbits(spec, "pure"))

    real_error = 0.0
    for _ in range(samples):
        spec = WernerSpec(float(rng.uniform(0.05, 0.95)), int(rng.integers(1, 4)))
        eps = float(rng.uniform(0.0, 1.0))
        q_max = np.sqrt(spec.m0 * spec.m1 * (spec.d_v - eps * (spec.d_v - 1)) / spec.d_v)
        p = AnsatzParams.from_q_eps(spec, float(rng.uniform(0.0, 0.9 * q_max)), eps)
        phases = complex_ansatz.PhaseFamily.zeros(spec)
        for alpha in range(spec.n_alpha):
            real_error = max(
                real_error,
                Metric.max_abs_deviation(complex_ansatz.K_tilde(spec, p, phases, alpha).entries, ansatz_K(spec, p, alpha).k.entries),
                Metric.max_abs_deviation(complex_ansatz.log_K_tilde(spec, phases, p, alpha).entries, log_K(spec, p, alpha).entries),
                Metric.max_abs_deviation(
                    complex_ansatz.log_R_tilde(spec, phases, p, alpha).entries, marginals_and_R(spec, p, alpha).log_r.entries
                ),
            )

    mixed_spec = WernerSpec(0.7, 1)
    mixed_reports = complex_ansatz.classify_orbits(mixed_spec, "mixed", n_samples=64, seed=int(rng.integers(2**31)))
    mixed_ok = mixed_reports[0].insensitive and not any(r.insensitive for r in mixed_reports[1:])

    counter = WernerSpec(0.4, 3)
    counter_p = AnsatzParams.pure_min(counter)
    counter_ok = (
        delta_deviation(counter, counter_p, "pure") <= 1e-8
        and lagrangian(counter, counter_p) > 0.0
        and bell_mixture_eof(np.sort(counter.weights())[::-1]) == 0.0
    )
    return [
        Check.of("f_rho_at_zero", f_zero, 1e-15),
        Check.of("trivial_root", trivial, 1e-12),
        _flag("f_rho_root_cases", roots_ok),
        Check.of("stationary_values", stationary_error, 1e-12),
        Check.of("zero_gamma_ytilde", zero_y, 1e-12),
        Check.of("zero_gamma_delta", zero_delta, 1e-10),
        _flag("pure_orbits_match_stationary_set", orbit_ok),
        Check.of("real_phases_reproduce_core", real_error, 1e-13),
        _flag("mixed_orbit_scan", mixed_ok),
        _flag("pure_orbit_counterexample", counter_ok),
    ]


RUNNERS: Dict[str, Callable[[np.random.Generator, int], List[Check]]] = {
    "algebra": algebra_suite,
    "werner": werner_suite,
    "appendices": appendices_suite,
}


def run(suite: str = "all", seed: int = 0, samples: int = 100) -> Dict[str, List[Check]]:
    """run one suite or all of them; a fresh generator per suite keeps them independent."""
    if suite != "all" and suite not in RUNNERS:
        raise DomainError(f"unknown suite {suite!r}, choose from {('all',) + SUITES}")
    if samples < 1:
        raise DomainError(f"samples must be positive, got {samples}")
    names = SUITES if suite == "all" else (suite,)
    results = {}
    for name in names:
        _logger.info("running suite %s", name)
        results[name] = RUNNERS[name](np.random.default_rng(seed), samples)
        for check in results[name]:
            if not check.passed:
                _logger.warning("%s/%s failed: %.3e > %.3e", name, check.name, check.max_residual, check.tolerance)
    return results


def summary(results: Dict[str, List[Check]]) -> Dict:
    failures = [f"{name}/{check.name}" for name, checks in results.items() for check in checks if not check.passed]
    return {
        "passed": not failures,
        "failures": failures,
        "suites": {name: [check.to_dict() for check in checks] for name, checks in results.items()},
    }
