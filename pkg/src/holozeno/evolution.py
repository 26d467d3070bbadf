"""
Tripod eigensystem, DFS propagator and the nonadiabatic holonomic gate.

All 5-vectors and 5x5 matrices are expressed in the DFS basis
(|00>, |01>, |10>, |11>, |alpha>); gates use (|00>, |01>, |10>, |11>).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dfs import (
    SQRT2,
    AngularParams,
    assert_hermitian,
    effective_hamiltonian_closed_form,
    from_angular,
    frobenius,
)
from .errors import DegenerateDriveError, InvalidInputError

__all__ = [
    "EigenSystem",
    "Propagator",
    "HolonomicGate",
    "cyclic_projector",
    "eigensystem",
    "propagator_oracle",
    "propagator_closed_form",
    "holonomy_run_time",
    "check_cyclicity",
    "check_parallel_transport",
    "explicit_gate_matrix",
    "holonomy_gate",
    "is_unitary",
]

_ALPHA = 4


def _basis(k: int) -> np.ndarray:
    v = np.zeros(5, dtype=complex)
    v[k] = 1.0
    return v


def _require_drive(params: AngularParams):
    if params.omega <= 0.0:
        raise DegenerateDriveError("omega must be positive")


def is_unitary(u, tol=1e-12) -> bool:
    u = np.asarray(u)
    return frobenius(u.conj().T @ u - np.eye(u.shape[0])) <= tol


@dataclass(frozen=True)
class EigenSystem:
    dark1: np.ndarray
    dark2: np.ndarray
    bright_plus: np.ndarray
    bright_minus: np.ndarray
    x: np.ndarray
    y: np.ndarray
    bright_energy: float  # E_{B+} = -E_{B-} = omega / sqrt(2)

    @property
    def energies(self) -> tuple[float, float, float, float]:
        """(E_D1, E_D2, E_B+, E_B-)."""
        return (0.0, 0.0, self.bright_energy, -self.bright_energy)

    def matrix(self) -> np.ndarray:
        """Columns |00>, D1, D2, B+, B-."""
        return np.column_stack([_basis(0), self.dark1, self.dark2,
                                self.bright_plus, self.bright_minus])


@dataclass(frozen=True)
class Propagator:
    matrix: np.ndarray
    t: float
    cycle_phase: float  # a_t = omega t / sqrt(2)


@dataclass(frozen=True)
class HolonomicGate:
    matrix: np.ndarray
    params: AngularParams


def cyclic_projector() -> np.ndarray:
    """P_c = |01><01| + |10><10| + |11><11| on the DFS."""
    return np.diag([0.0, 1.0, 1.0, 1.0, 0.0]).astype(complex)


def eigensystem(params: AngularParams) -> EigenSystem:
    """Dark states D1, D2 and bright states B+- of the tripod Hamiltonian."""
    _require_drive(params)
    th, vp = params.theta, params.varphi
    e1, e2, e3 = (np.exp(1j * p) for p in (params.phi1, params.phi2, params.phi3))
    ket01, ket10, ket11, alpha = _basis(1), _basis(2), _basis(3), _basis(_ALPHA)

    dark1 = np.conj(e2) * math.sin(th) * ket01 + np.conj(e1) * math.cos(th) * ket10
    x = e2 * math.sin(th) * ket10 - e1 * math.cos(th) * ket01
    dark2 = np.conj(e3) * math.cos(vp) * x - math.sin(vp) * ket11
    y = math.sin(vp) * x + e3 * math.cos(vp) * ket11
    return EigenSystem(
        dark1=dark1,
        dark2=dark2,
        bright_plus=(y + alpha) / SQRT2,
        bright_minus=(y - alpha) / SQRT2,
        x=x,
        y=y,
        bright_energy=params.omega / SQRT2,
    )


def propagator_oracle(h, t: float) -> Propagator:
    """exp(-i h t) from the spectral decomposition of the Hermitian h."""
    h = np.asarray(h, dtype=complex)
    assert_hermitian(h, what="effective Hamiltonian")
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise InvalidInputError("run time must be finite and nonnegative")
    w, v = np.linalg.eigh(h)
    u = (v * np.exp(-1j * w * t)) @ v.conj().T
    # omega for the cycle phase: nonzero eigenvalues are +-omega/sqrt(2)
    omega = SQRT2 * float(np.max(np.abs(w))) if w.size else 0.0
    return Propagator(matrix=u, t=t, cycle_phase=omega * t / SQRT2)


def propagator_closed_form(params: AngularParams, t: float) -> Propagator:
    """Propagator assembled from the dark and bright sectors.

    |00><00| + |D1><D1| + |D2><D2| + cos a (|y><y| + |a><a|) - i sin a (|y><a| + |a><y|)
    with a = omega t / sqrt(2).
    """
    _require_drive(params)
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise InvalidInputError("run time must be finite and nonnegative")
    es = eigensystem(params)
    a_t = params.omega * t / SQRT2
    alpha = _basis(_ALPHA)

    def outer(u, v):
        return np.outer(u, v.conj())

    u = (outer(_basis(0), _basis(0)) + outer(es.dark1, es.dark1) + outer(es.dark2, es.dark2)
         + math.cos(a_t) * (outer(es.y, es.y) + outer(alpha, alpha))
         - 1j * math.sin(a_t) * (outer(es.y, alpha) + outer(alpha, es.y)))
    return Propagator(matrix=u, t=t, cycle_phase=a_t)


def holonomy_run_time(omega: float) -> float:
    """Run time tau = sqrt(2) pi / omega closing the loop (a_tau = pi)."""
    omega = float(omega)
    if not omega > 0.0 or not math.isfinite(omega):
        raise DegenerateDriveError("omega must be positive and finite")
    return SQRT2 * math.pi / omega


def check_cyclicity(params: AngularParams, t: float | None = None, h=None) -> float:
    """||U(t) P_c U(t)^+ - P_c||_F with the spectral propagator; t defaults to tau."""
    _require_drive(params)
    if h is None:
        h = effective_hamiltonian_closed_form(from_angular(params))
    if t is None:
        t = holonomy_run_time(params.omega)
    u = propagator_oracle(h, t).matrix
    pc = cyclic_projector()
    return frobenius(u @ pc @ u.conj().T - pc)


def check_parallel_transport(params: AngularParams, n_samples: int = 100, h=None) -> float:
    """Max over t in [0, tau] of ||P_c(t) H P_c(t)||_F, P_c(t) = U(t) P_c U(t)^+.

    ``h`` overrides the tripod Hamiltonian (used for negative controls); the
    propagator is then generated by ``h`` as well.
    """
    _require_drive(params)
    if n_samples < 2:
        raise InvalidInputError("need at least 2 samples")
    if h is None:
        h = effective_hamiltonian_closed_form(from_angular(params))
    h = np.asarray(h, dtype=complex)
    assert_hermitian(h, what="effective Hamiltonian")
    tau = holonomy_run_time(params.omega)
    pc = cyclic_projector()
    w, v = np.linalg.eigh(h)
    worst = 0.0
    for t in np.linspace(0.0, tau, n_samples):
        u = (v * np.exp(-1j * w * t)) @ v.conj().T
        pct = u @ pc @ u.conj().T
        worst = max(worst, frobenius(pct @ h @ pct))
    return worst


def explicit_gate_matrix(params: AngularParams) -> np.ndarray:
    """The 4x4 holonomic gate written entry by entry."""
    th, vp = params.theta, params.varphi
    p21 = params.phi2 - params.phi1
    p31 = params.phi3 - params.phi1
    p32 = params.phi3 - params.phi2
    s2t, s2v = math.sin(2 * th), math.sin(2 * vp)
    sv2 = math.sin(vp) ** 2
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = 1.0
    u[1, 1] = 1 - 2 * sv2 * math.cos(th) ** 2
    u[1, 2] = np.exp(-1j * p21) * s2t * sv2
    u[1, 3] = np.exp(-1j * p31) * s2v * math.cos(th)
    u[2, 1] = np.exp(1j * p21) * s2t * sv2
    u[2, 2] = 1 - 2 * sv2 * math.sin(th) ** 2
    u[2, 3] = -np.exp(-1j * p32) * s2v * math.sin(th)
    u[3, 1] = np.exp(1j * p31) * s2v * math.cos(th)
    u[3, 2] = -np.exp(1j * p32) * s2v * math.sin(th)
    u[3, 3] = -math.cos(2 * vp)
    return u


def holonomy_gate(params: AngularParams, method: str = "closed") -> HolonomicGate:
    """Compress U(tau) onto the computational subspace.

    U = |00><00| + P_c U(tau) P_c. ``method`` selects the closed-form
    propagator ("closed") or the spectral exponential of the tripod
    Hamiltonian ("oracle").
    """
    _require_drive(params)
    tau = holonomy_run_time(params.omega)
    if method == "closed":
        u5 = propagator_closed_form(params, tau).matrix
    elif method == "oracle":
        h = effective_hamiltonian_closed_form(from_angular(params))
        u5 = propagator_oracle(h, tau).matrix
    else:
        raise ValueError(f"unknown method {method!r}")
    pc = cyclic_projector()
    p00 = np.zeros((5, 5), dtype=complex)
    p00[0, 0] = 1.0
    compressed = p00 @ u5 @ p00 + pc @ u5 @ pc
    return HolonomicGate(matrix=compressed[:4, :4].copy(), params=params)
