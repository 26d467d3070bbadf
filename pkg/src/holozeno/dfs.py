"""
Two-atom laser Hamiltonian and its Zeno projection onto the
decoherence-free subspace (DFS).

Conventions
-----------
hbar = 1, so Rabi frequencies and energies share angular-frequency units.

Single-atom levels are ordered (0, 1, e). The two-atom space uses the
product ordering::

    |00>, |01>, |0e>, |10>, |11>, |1e>, |e0>, |e1>, |ee>

and the DFS basis is ordered::

    |00>, |01>, |10>, |11>, |alpha>,   |alpha> = (|1e> - |e1>) / sqrt(2)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDriveError, InvalidInputError, InvalidRegimeError

__all__ = [
    "PulseSet",
    "AngularParams",
    "ZenoRegime",
    "ZenoReport",
    "TWO_ATOM_LABELS",
    "DFS_LABELS",
    "dfs_basis",
    "dfs_projector",
    "build_laser_hamiltonian",
    "project_to_dfs",
    "effective_hamiltonian_closed_form",
    "to_angular",
    "from_angular",
    "zeno_regime_check",
    "frobenius",
    "assert_hermitian",
]

TWO_ATOM_LABELS = ("00", "01", "0e", "10", "11", "1e", "e0", "e1", "ee")
DFS_LABELS = ("00", "01", "10", "11", "alpha")

HERMITIAN_TOL = 1e-12
TWO_PI = 2.0 * math.pi
SQRT2 = math.sqrt(2.0)

# indices into the 9-dim product basis
_IDX = {label: k for k, label in enumerate(TWO_ATOM_LABELS)}
_E = 2  # excited level within one atom


def frobenius(a) -> float:
    return float(np.linalg.norm(a, "fro"))


def assert_hermitian(h, tol=HERMITIAN_TOL, what="operator"):
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise InvalidInputError(f"{what} must be a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise InvalidInputError(f"{what} has non-finite entries")
    dev = frobenius(h - h.conj().T)
    if dev > tol:
        raise InvalidInputError(f"{what} is not Hermitian (|H - H^+|_F = {dev:.3e})")


def _wrap_phase(x: float) -> float:
    """Map an angle into [0, 2pi)."""
    y = math.fmod(x, TWO_PI)
    if y < 0.0:
        y += TWO_PI
    if y >= TWO_PI:
        y = 0.0
    return y


@dataclass(frozen=True)
class PulseSet:
    """Complex Rabi frequencies Omega_j^(i) for transition |j> <-> |e> of atom i."""

    omega0_1: complex
    omega0_2: complex
    omega1_1: complex = 0j
    omega1_2: complex = 0j

    def __post_init__(self):
        for name in ("omega0_1", "omega0_2", "omega1_1", "omega1_2"):
            value = getattr(self, name)
            try:
                value = complex(value)
            except (TypeError, ValueError) as exc:
                raise InvalidInputError(f"{name} is not a number: {value!r}") from exc
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise InvalidInputError(f"{name} is not finite: {value!r}")
            object.__setattr__(self, name, value)

    @property
    def delta1(self) -> complex:
        """The physical combination Omega_1^(2) - Omega_1^(1)."""
        return self.omega1_2 - self.omega1_1

    @property
    def tripod(self) -> tuple[complex, complex, complex]:
        """(Omega_0^(1), Omega_0^(2), Omega_1^(2) - Omega_1^(1))."""
        return (self.omega0_1, self.omega0_2, self.delta1)

    @property
    def omega(self) -> float:
        """Effective drive strength."""
        a, b, d = self.tripod
        return math.sqrt(abs(a) ** 2 + abs(b) ** 2 + abs(d) ** 2)

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return (self.omega0_1, self.omega0_2, self.omega1_1, self.omega1_2)

    def max_amplitude(self) -> float:
        return max(abs(v) for v in self.as_tuple())

    def scaled(self, s: float) -> "PulseSet":
        return PulseSet(*(s * v for v in self.as_tuple()))


@dataclass(frozen=True)
class AngularParams:
    """Angular parametrization (omega, theta, varphi, phi1, phi2, phi3) of the drive.

    theta and varphi live in [0, pi/2]; the phases are wrapped into [0, 2pi).
    """

    omega: float
    theta: float
    varphi: float
    phi1: float = 0.0
    phi2: float = 0.0
    phi3: float = 0.0

    def __post_init__(self):
        values = {}
        for name in ("omega", "theta", "varphi", "phi1", "phi2", "phi3"):
            try:
                v = float(getattr(self, name))
            except (TypeError, ValueError) as exc:
                raise InvalidInputError(f"{name} is not a real number") from exc
            if not math.isfinite(v):
                raise InvalidInputError(f"{name} is not finite")
            values[name] = v
        if values["omega"] < 0.0:
            raise InvalidInputError("omega must be nonnegative")
        half_pi = 0.5 * math.pi
        eps = 1e-9  # admits decimal inputs rounded to ~10 digits
        for name in ("theta", "varphi"):
            v = values[name]
            if v < -eps or v > half_pi + eps:
                raise InvalidInputError(f"{name}={v} outside [0, pi/2]")
            values[name] = min(max(v, 0.0), half_pi)
        for name in ("phi1", "phi2", "phi3"):
            values[name] = _wrap_phase(values[name])
        for name, v in values.items():
            object.__setattr__(self, name, v)

    def with_omega(self, omega: float) -> "AngularParams":
        return AngularParams(omega, self.theta, self.varphi, self.phi1, self.phi2, self.phi3)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.omega, self.theta, self.varphi, self.phi1, self.phi2, self.phi3)


@dataclass(frozen=True)
class ZenoRegime:
    """Cavity coupling g, photon decay rate kappa and the 'much smaller' ratio."""

    g: float
    kappa: float
    threshold: float = 0.1

    def __post_init__(self):
        g, kappa, thr = float(self.g), float(self.kappa), float(self.threshold)
        if not all(math.isfinite(v) for v in (g, kappa, thr)):
            raise InvalidRegimeError("regime parameters must be finite")
        if g < 0.0:
            raise InvalidRegimeError("g must be nonnegative")
        if kappa <= 0.0:
            raise InvalidRegimeError("kappa must be positive")
        if not 0.0 < thr < 1.0:
            raise InvalidRegimeError("threshold must lie in (0, 1)")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "threshold", thr)

    @property
    def rate_scale(self) -> float:
        """min(kappa, g^2/kappa)."""
        return min(self.kappa, self.g ** 2 / self.kappa)


@dataclass(frozen=True)
class ZenoReport:
    ratio: float
    valid: bool
    rate_scale: float
    threshold: float


def _single_atom_lowering(j: int) -> np.ndarray:
    """|j><e| on one three-level atom."""
    op = np.zeros((3, 3), dtype=complex)
    op[j, _E] = 1.0
    return op


def build_laser_hamiltonian(pulses: PulseSet) -> np.ndarray:
    """9x9 laser Hamiltonian sum_i sum_j Omega_j^(i) |j^(i)><e^(i)| + H.c."""
    if not isinstance(pulses, PulseSet):
        pulses = PulseSet(*pulses)
    eye = np.eye(3, dtype=complex)
    couplings = {
        (1, 0): pulses.omega0_1,
        (1, 1): pulses.omega1_1,
        (2, 0): pulses.omega0_2,
        (2, 1): pulses.omega1_2,
    }
    h = np.zeros((9, 9), dtype=complex)
    for (atom, j), omega in couplings.items():
        local = _single_atom_lowering(j)
        term = np.kron(local, eye) if atom == 1 else np.kron(eye, local)
        h += omega * term
    return h + h.conj().T


def dfs_basis() -> np.ndarray:
    """9x5 matrix whose columns embed the DFS basis in the two-atom space."""
    b = np.zeros((9, 5), dtype=complex)
    for col, label in enumerate(DFS_LABELS[:4]):
        b[_IDX[label], col] = 1.0
    b[_IDX["1e"], 4] = 1.0 / SQRT2
    b[_IDX["e1"], 4] = -1.0 / SQRT2
    return b


def dfs_projector() -> np.ndarray:
    """Rank-5 orthogonal projector P onto the DFS."""
    b = dfs_basis()
    return b @ b.conj().T


def project_to_dfs(h) -> np.ndarray:
    """Zeno-projected Hamiltonian: matrix elements <b_i|H|b_j> over the DFS basis."""
    h = np.asarray(h, dtype=complex)
    if h.shape != (9, 9):
        raise InvalidInputError(f"expected a 9x9 two-atom operator, got {h.shape}")
    assert_hermitian(h, what="two-atom Hamiltonian")
    b = dfs_basis()
    return b.conj().T @ h @ b


def effective_hamiltonian_closed_form(pulses: PulseSet) -> np.ndarray:
    """Tripod Hamiltonian on the DFS written out directly.

    Only |01>, |10>, |11> couple, and only to |alpha>::

        H = (-Omega_0^(1)|01> + Omega_0^(2)|10> + (Omega_1^(2)-Omega_1^(1))|11>)<alpha| / sqrt(2) + H.c.
    """
    if not isinstance(pulses, PulseSet):
        pulses = PulseSet(*pulses)
    a, b, d = pulses.tripod
    h = np.zeros((5, 5), dtype=complex)
    h[1, 4] = -a / SQRT2
    h[2, 4] = b / SQRT2
    h[3, 4] = d / SQRT2
    h[4, :] = h[:, 4].conj()
    return h


def to_angular(pulses: PulseSet) -> AngularParams:
    """Invert the angular parametrization.

    Degenerate angles are fixed canonically: phases of vanishing amplitudes
    are 0, and theta = 0 when both Omega_0 amplitudes vanish.
    """
    if not isinstance(pulses, PulseSet):
        pulses = PulseSet(*pulses)
    a, b, d = pulses.tripod
    omega = pulses.omega
    if omega == 0.0:
        raise DegenerateDriveError("effective drive omega = 0; angles undefined")
    r0 = math.hypot(abs(a), abs(b))
    varphi = math.atan2(r0, abs(d))
    theta = math.atan2(abs(b), abs(a)) if r0 > 0.0 else 0.0
    phi1 = math.atan2(a.imag, a.real) if a != 0 else 0.0
    phi2 = math.atan2(b.imag, b.real) if b != 0 else 0.0
    phi3 = math.atan2(d.imag, d.real) if d != 0 else 0.0
    return AngularParams(omega, theta, varphi, phi1, phi2, phi3)


def from_angular(params: AngularParams) -> PulseSet:
    """Pulses realizing the given angles, in the gauge Omega_1^(1) = 0."""
    w, th, vp = params.omega, params.theta, params.varphi
    a = w * np.exp(1j * params.phi1) * math.sin(vp) * math.cos(th)
    b = w * np.exp(1j * params.phi2) * math.sin(vp) * math.sin(th)
    d = w * np.exp(1j * params.phi3) * math.cos(vp)
    return PulseSet(complex(a), complex(b), 0j, complex(d))


def zeno_regime_check(pulses: PulseSet, regime: ZenoRegime) -> ZenoReport:
    """Compare the largest Rabi amplitude against min(kappa, g^2/kappa)."""
    if not isinstance(regime, ZenoRegime):
        raise InvalidRegimeError("regime must be a ZenoRegime")
    scale = regime.rate_scale
    peak = pulses.max_amplitude()
    if scale > 0.0:
        ratio = peak / scale
    else:
        ratio = 0.0 if peak == 0.0 else math.inf
    return ZenoReport(ratio=ratio, valid=ratio < regime.threshold,
                      rate_scale=scale, threshold=regime.threshold)
