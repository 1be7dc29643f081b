"""Density/projection operators, trace probabilities and all closed forms.

Two routes to the same oscillation probabilities are kept deliberately
separate.  The closed forms are plain functions of eta and the phase
phi = delta_omega * dt / 2:

    transition  = eta^2 sin^2(phi)            survival = 1 - transition
    Hermitian   = eta^2 / (1 + eta^2) sin^2(phi)
    naive       = -eta^2 / (1 - eta^2) sin^2(phi)   (pathological, unclamped)

The trace route builds the operators

    rho_1(t0) = |f1(t0)> <f1^C'PT(t0)|,   rho_2(t0) = |f2^C'(t0)> <f2^PT(t0)|

from the normalised mixed-basis states (projection operators are the same
construction anchored at the measurement time) and evaluates
P(i -> j) = tr[rho_i(t0) pi_j(t)] as an explicit 2x2 matrix-product trace,
so trace/closed-form agreement is a real consistency check rather than a
shared code path.

The closed forms stay finite on the whole eta in [0, 1] range, including
the exceptional point where the trace route is undefined.  The Dirac-norm
diagnostics (time-dependent norm, flavour overlap and the polar cardioid)
live here too; they quantify why the plain Hermitian inner product cannot
give time-translation-invariant probabilities in this model.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BrokenPTPhase,
    DomainError,
    ExceptionalPoint,
    NegativeMixing,
    NonRealTrace,
    TachyonicMass,
)
from .model import (
    EXCEPTIONAL_POINT_BAND,
    EigenSystem,
    ModelParams,
    hermitian_eigenvalues,
)
from .states import mixed_basis_pair

# Imaginary parts of traces above this signal a construction bug (an order
# of magnitude above the trace/closed-form agreement tolerance, so rounding
# noise never trips it).
NON_REAL_TRACE_TOLERANCE = 1e-9

CLOSED_FORM = "closed_form"
TRACE = "trace"
HERMITIAN = "hermitian"
NAIVE_CONTINUATION = "naive_continuation"


@dataclass(frozen=True)
class ProbabilityRecord:
    """One (i -> j) probability evaluation with its method tag."""

    from_flavour: int
    to_flavour: int
    t0: float
    t: float
    value: float
    method: str


@dataclass(frozen=True)
class DensityOperator:
    """2x2 operator |ket><bra| from the mixed basis; unit trace and
    idempotent at its own anchor time."""

    entries: np.ndarray
    anchor_time: float


class ProjectionOperator(DensityOperator):
    """Final-state projector; same construction as the density operator,
    anchored at the measurement time."""


def _check_flavour(i: int) -> None:
    if i not in (1, 2):
        raise DomainError(f"flavour index must be 1 or 2, got {i!r}")


def _check_eta_closed_form(eta: float) -> None:
    if eta < 0.0:
        raise NegativeMixing(f"eta must be non-negative, got {eta}")
    if eta > 1.0:
        raise BrokenPTPhase(f"eta = {eta:.6g} > 1: no real-spectrum closed form")


def transition_probability(eta: float, phase: float) -> float:
    """eta^2 sin^2(phase); finite on all of eta in [0, 1]."""
    _check_eta_closed_form(eta)
    return eta * eta * math.sin(phase) ** 2


def survival_probability(eta: float, phase: float) -> float:
    """1 - eta^2 sin^2(phase)."""
    return 1.0 - transition_probability(eta, phase)


def hermitian_transition_probability(eta: float, phase: float) -> float:
    """eta^2 / (1 + eta^2) sin^2(phase); saturates only as eta -> inf."""
    if eta < 0.0:
        raise NegativeMixing(f"eta must be non-negative, got {eta}")
    return eta * eta / (1.0 + eta * eta) * math.sin(phase) ** 2


def naive_continuation_value(eta: float, phase: float) -> float:
    """-eta^2 / (1 - eta^2) sin^2(phase): the mu^4 -> -mu^4 continuation of
    the Hermitian formula.  Deliberately not clamped; its modulus exceeds 1
    for eta > 1/sqrt(2)."""
    if eta < 0.0:
        raise NegativeMixing(f"eta must be non-negative, got {eta}")
    if eta > 1.0:
        raise BrokenPTPhase(f"eta = {eta:.6g} > 1: continuation undefined")
    if eta >= 1.0 - EXCEPTIONAL_POINT_BAND:
        raise ExceptionalPoint(f"eta = {eta:.17g}: 1/(1 - eta^2) diverges")
    return -eta * eta / ((1.0 - eta) * (1.0 + eta)) * math.sin(phase) ** 2


def density_operator(i: int, t0: float, es: EigenSystem) -> DensityOperator:
    """Initial density operator for flavour i prepared at t0."""
    _check_flavour(i)
    ket, bra = mixed_basis_pair(i, t0, es, normalised=True)
    return DensityOperator(np.outer(ket.components, bra.components), t0)


def projection_operator(j: int, t: float, es: EigenSystem) -> ProjectionOperator:
    """Final-state projector for flavour j measured at t."""
    _check_flavour(j)
    ket, bra = mixed_basis_pair(j, t, es, normalised=True)
    return ProjectionOperator(np.outer(ket.components, bra.components), t)


def probability_trace(i: int, j: int, t0: float, t: float, es: EigenSystem) -> ProbabilityRecord:
    """P(i -> j) = tr[rho_i(t0) pi_j(t)] as an explicit matrix-product trace.

    Raises NonRealTrace if the imaginary part exceeds
    NON_REAL_TRACE_TOLERANCE; otherwise it is checked and discarded.
    """
    rho = density_operator(i, t0, es)
    pi = projection_operator(j, t, es)
    value = np.trace(rho.entries @ pi.entries)
    if abs(value.imag) > NON_REAL_TRACE_TOLERANCE:
        raise NonRealTrace(
            f"tr[rho_{i}({t0}) pi_{j}({t})] has imaginary part {value.imag:.3e}"
        )
    return ProbabilityRecord(i, j, t0, t, float(value.real), TRACE)


def probability_closed_form(i: int, j: int, dt: float, es: EigenSystem) -> ProbabilityRecord:
    """Closed-form P(i -> j) after a time separation dt."""
    _check_flavour(i)
    _check_flavour(j)
    phase = 0.5 * es.delta_omega * dt
    if i == j:
        value = survival_probability(es.eta, phase)
    else:
        value = transition_probability(es.eta, phase)
    return ProbabilityRecord(i, j, 0.0, dt, value, CLOSED_FORM)


def probability_hermitian(i: int, j: int, dt: float, params: ModelParams) -> ProbabilityRecord:
    """P(i -> j) in the Hermitian comparison model after dt.

    Note the two models have different delta_omega at equal parameters;
    comparisons against the non-Hermitian result should be made at a fixed
    phase argument, via the *_probability(eta, phase) functions.
    """
    _check_flavour(i)
    _check_flavour(j)
    m_plus_sq, m_minus_sq = hermitian_eigenvalues(params)
    if m_minus_sq <= 0.0:
        raise TachyonicMass(
            f"lower Hermitian squared mass {m_minus_sq:.6g} <= 0 at eta = {params.eta:.6g}"
        )
    omega_plus = math.sqrt(params.p * params.p + m_plus_sq)
    omega_minus = math.sqrt(params.p * params.p + m_minus_sq)
    phase = 0.5 * (m_plus_sq - m_minus_sq) / (omega_plus + omega_minus) * dt
    transition = hermitian_transition_probability(params.eta, phase)
    value = 1.0 - transition if i == j else transition
    return ProbabilityRecord(i, j, 0.0, dt, value, HERMITIAN)


def probability_naive_continuation(i: int, j: int, dt: float, es: EigenSystem) -> ProbabilityRecord:
    """The pathological continuation after dt (negative transition values;
    survival exceeds 1)."""
    _check_flavour(i)
    _check_flavour(j)
    phase = 0.5 * es.delta_omega * dt
    transition = naive_continuation_value(es.eta, phase)
    value = 1.0 - transition if i == j else transition
    return ProbabilityRecord(i, j, 0.0, dt, value, NAIVE_CONTINUATION)


def dirac_norm(i: int, t: float, es: EigenSystem) -> float:
    """<fi(t)|fi(t)> = (1 - eta^2 cos(delta_omega t)) / (1 - eta^2).

    The same for both flavours, equal to 1 at t = 0 and periodically
    pumped above/below 1 otherwise, which is why Dirac-inner-product
    probabilities violate time-translation invariance.
    """
    _check_flavour(i)
    eta_sq = es.eta * es.eta
    return (1.0 - eta_sq * math.cos(es.delta_omega * t)) / (1.0 - eta_sq)


def dirac_overlap(t: float, es: EigenSystem) -> complex:
    """<f1(t)|f2(t)>: zero at t = 0 only.

    Equals eta/(1 - eta^2) [1 - cos(delta_omega t) + i sqrt(1 - eta^2)
    sin(delta_omega t)]; the sign of the imaginary part follows from the
    exp(+i omega t) mode convention, and the heavy-first relabelling of a
    swapped system conjugates it.  The reverse overlap <f2|f1> is the
    complex conjugate.
    """
    eta = es.eta
    x = es.delta_omega * t
    value = eta / ((1.0 - eta) * (1.0 + eta)) * complex(
        1.0 - math.cos(x), math.sqrt((1.0 - eta) * (1.0 + eta)) * math.sin(x)
    )
    return value.conjugate() if es.swapped else value


def cardioid_r(theta_phase: float, eta: float) -> float:
    """Polar radius (1 - eta^2 cos(phase)) / (1 - eta^2) traced by the
    Dirac norm; 2 pi periodic, maximal at phase = pi."""
    if eta < 0.0:
        raise NegativeMixing(f"eta must be non-negative, got {eta}")
    if eta > 1.0:
        raise BrokenPTPhase(f"eta = {eta:.6g} > 1: no real-spectrum norm")
    if eta >= 1.0 - EXCEPTIONAL_POINT_BAND:
        raise ExceptionalPoint(f"eta = {eta:.17g}: 1/(1 - eta^2) diverges")
    eta_sq = eta * eta
    return (1.0 - eta_sq * math.cos(theta_phase)) / (1.0 - eta_sq)
