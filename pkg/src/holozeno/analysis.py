"""
Entangling characterization of two-qubit gates.

Local invariants (G1, G2) in the magic basis, entangling power (closed form
and Monte-Carlo), Weyl-chamber coordinates, a concurrence-maximization
perfect-entangler test, and identification of the drive-pattern table frequency
patterns for holonomic gates.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .dfs import AngularParams, PulseSet, from_angular, frobenius
from .errors import DegenerateDriveError, InvalidInputError, VerificationError
from .evolution import holonomy_gate

__all__ = [
    "MAGIC",
    "GateInvariants",
    "WeylPoint",
    "TableRowMatch",
    "ClassificationReport",
    "to_magic",
    "makhlin_invariants",
    "invariants_from_weyl",
    "entangling_power_closed",
    "entangling_power_mc",
    "weyl_coordinates",
    "canonicalize_weyl",
    "weyl_c_closed",
    "max_concurrence",
    "is_perfect_entangler",
    "classify_gate",
    "table_row_prediction",
]

EP_MAX = 2.0 / 9.0
UNITARY_TOL = 1e-10
HALF_PI = 0.5 * math.pi

MAGIC = (1.0 / math.sqrt(2.0)) * np.array(
    [[1, 0, 0, 1j],
     [0, 1j, 1, 0],
     [0, 1j, -1, 0],
     [1, 0, 0, -1j]], dtype=complex)


def _check_unitary(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4):
        raise InvalidInputError(f"expected a 4x4 gate, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise InvalidInputError("gate has non-finite entries")
    dev = frobenius(u.conj().T @ u - np.eye(4))
    if dev > UNITARY_TOL:
        raise InvalidInputError(f"gate is not unitary (deviation {dev:.3e})")
    return u


def _gate_array(u) -> np.ndarray:
    return getattr(u, "matrix", u)


def to_magic(u) -> np.ndarray:
    return MAGIC.conj().T @ u @ MAGIC


def _magic_m(u, branch: int = 0) -> np.ndarray:
    """m = u_B^T u_B with u_B the determinant-one magic-basis image of u.

    ``branch`` picks the fourth root of det(u): principal root times i**branch.
    """
    ub = to_magic(u)
    root = np.power(complex(np.linalg.det(ub)), 0.25) * (1j ** branch)
    ub = ub / root
    return ub.T @ ub


@dataclass(frozen=True)
class GateInvariants:
    g1: complex
    g2: float


@dataclass(frozen=True)
class WeylPoint:
    c1: float
    c2: float
    c3: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def distance(self, other) -> float:
        other = other.as_tuple() if isinstance(other, WeylPoint) else tuple(other)
        return max(abs(a - b) for a, b in zip(self.as_tuple(), other))


@dataclass(frozen=True)
class TableRowMatch:
    row: int
    g1: float
    g2: float
    ep: float
    weyl: tuple[float, float, float]
    note: str = ""


@dataclass(frozen=True)
class ClassificationReport:
    invariants: GateInvariants
    ep: float
    weyl: WeylPoint
    perfect_entangler: bool
    special_perfect_entangler: bool
    max_concurrence: float
    ep_mc: tuple[float, float] | None = None
    table_row: TableRowMatch | None = None
    notes: list[str] = field(default_factory=list)


# --------------------------------------------------------------------------
# local invariants and entangling power

def makhlin_invariants(u, branch: int = 0) -> GateInvariants:
    """Makhlin invariants G1 = tr^2(m)/16 and G2 = (tr^2(m) - tr(m^2))/4.

    >>> makhlin_invariants(np.eye(4))
    GateInvariants(g1=(1+0j), g2=3.0)
    """
    u = _check_unitary(_gate_array(u))
    m = _magic_m(u, branch)
    tr = np.trace(m)
    g1 = complex(tr ** 2 / 16.0)
    g2 = complex((tr ** 2 - np.trace(m @ m)) / 4.0)
    if abs(g2.imag) >= 1e-10:
        raise VerificationError(f"G2 has imaginary residue {g2.imag:.3e}")
    # +0.0 turns -0.0 into 0.0
    return GateInvariants(g1=complex(g1.real + 0.0, g1.imag + 0.0), g2=g2.real + 0.0)


def invariants_from_weyl(c1: float, c2: float, c3: float) -> GateInvariants:
    """Local invariants of the canonical gate exp(i/2 (c1 XX + c2 YY + c3 ZZ))."""
    cc = math.cos(c1) ** 2 * math.cos(c2) ** 2 * math.cos(c3) ** 2
    ss = math.sin(c1) ** 2 * math.sin(c2) ** 2 * math.sin(c3) ** 2
    g1 = complex(cc - ss, 0.25 * math.sin(2 * c1) * math.sin(2 * c2) * math.sin(2 * c3))
    g2 = 4 * cc - 4 * ss - math.cos(2 * c1) * math.cos(2 * c2) * math.cos(2 * c3)
    return GateInvariants(g1=g1, g2=g2)


def entangling_power_closed(inv) -> float:
    """e_p = (2/9)(1 - |G1|), clamped to [0, 2/9]."""
    g1 = inv.g1 if isinstance(inv, GateInvariants) else complex(inv)
    ep = EP_MAX * (1.0 - abs(g1))
    return min(max(ep, 0.0), EP_MAX)


_MC_CHUNK = 16384


def _haar_qubits(rng, n) -> tuple[np.ndarray, np.ndarray]:
    g = rng.standard_normal((n, 8))
    a = g[:, 0:2] + 1j * g[:, 2:4]
    b = g[:, 4:6] + 1j * g[:, 6:8]
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b /= np.linalg.norm(b, axis=1, keepdims=True)
    return a, b


def entangling_power_mc(u, n_samples: int = 100_000, seed: int = 0) -> tuple[float, float]:
    """Monte-Carlo mean linear entropy of u acting on Haar-random product states.

    Samples are drawn in fixed chunks, each from its own SeedSequence child
    keyed by the chunk index, so results depend only on (n_samples, seed).
    Returns (estimate, standard error).
    """
    u = _check_unitary(_gate_array(u))
    n_samples = int(n_samples)
    if n_samples < 1000:
        raise InvalidInputError("need at least 1000 samples")
    values = np.empty(n_samples)
    for k, start in enumerate(range(0, n_samples, _MC_CHUNK)):
        m = min(_MC_CHUNK, n_samples - start)
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(k,)))
        a, b = _haar_qubits(rng, m)
        values[start:start + m] = kernels.linear_entropy_batch(u, a, b)
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(n_samples))


# --------------------------------------------------------------------------
# Weyl chamber

_EVEN_SIGNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def _chamber_violation(c) -> float:
    c1, c2, c3 = c
    return (max(0.0, c2 - c1) + max(0.0, c3 - c2) + max(0.0, -c3)
            + max(0.0, c1 + c2 - math.pi) + max(0.0, c1 - math.pi))


def canonicalize_weyl(c, tol: float = 1e-9) -> WeylPoint:
    """Map Cartan angles into pi >= c1 >= c2 >= c3 >= 0, c1 + c2 <= pi.

    The equivalences used are coordinate permutations, simultaneous sign
    flips of two coordinates, and shifts of any coordinate by pi; points on
    the c3 = 0 face are folded to c1 <= pi/2. The search is over the
    24 permutation/sign combinations, so it always terminates.
    """
    c = np.asarray(c, dtype=float)
    best, best_v = None, math.inf
    for perm in itertools.permutations(range(3)):
        for signs in _EVEN_SIGNS:
            v = np.mod(np.array(signs) * c[list(perm)], math.pi)
            v[v > math.pi - 1e-13] -= math.pi
            v = np.sort(v)[::-1]
            viol = _chamber_violation(v)
            if viol < best_v - 1e-15:
                best, best_v = v, viol
    if best_v > 1e-6:
        raise VerificationError(f"Weyl canonicalization failed (violation {best_v:.3e})")
    c1, c2, c3 = (float(x) for x in best)
    c3 = max(c3, 0.0)
    if c3 <= tol and c1 > HALF_PI:
        c1, c2 = math.pi - c1, c2
        c1, c2 = max(c1, c2), min(c1, c2)
    return WeylPoint(c1 + 0.0, c2 + 0.0, c3 + 0.0)


def _raw_cartan_angles(u) -> np.ndarray:
    m = _magic_m(u)
    lam = np.angle(np.linalg.eigvals(m)) / 2.0
    # det(m) = 1, so sum(lam) is a multiple of pi; bring it to zero
    n = int(round(lam.sum() / math.pi))
    order = np.argsort(lam)
    if n > 0:
        lam[order[-n:]] -= math.pi
    elif n < 0:
        lam[order[:-n]] += math.pi
    # eigenphases of the canonical gate are
    # ((c1-c2+c3), (c1+c2-c3), (-c1-c2-c3), (-c1+c2+c3)) / 2
    return np.array([lam[0] + lam[1], lam[1] + lam[3], lam[0] + lam[3]])


def weyl_coordinates(u) -> WeylPoint:
    """Canonical Weyl-chamber point of a two-qubit gate."""
    u = _check_unitary(_gate_array(u))
    return canonicalize_weyl(_raw_cartan_angles(u))


def weyl_c_closed(pulses: PulseSet) -> float:
    """c = arcsin(2 |Omega_0^(1) Omega_0^(2)| / omega^2) for the holonomic gate."""
    if not isinstance(pulses, PulseSet):
        pulses = PulseSet(*pulses)
    omega = pulses.omega
    if omega == 0.0:
        raise DegenerateDriveError("effective drive omega = 0")
    s = 2.0 * abs(pulses.omega0_1 * pulses.omega0_2) / omega ** 2
    return math.asin(min(1.0, s))


# --------------------------------------------------------------------------
# perfect entanglers

def _qubit(theta, phi):
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def _concurrence_at(u, x) -> float:
    psi = u @ np.kron(_qubit(x[0], x[1]), _qubit(x[2], x[3]))
    return 2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2])


def max_concurrence(u, grid: int = 32, refine_steps: int = 50) -> float:
    """Largest concurrence of u|a>|b> over product inputs.

    Dense grid over Bloch angles (grid**4 pairs), then a local quasi-Newton
    refinement from the best grid point.
    """
    u = _check_unitary(_gate_array(u))
    thetas = np.linspace(0.0, math.pi, grid)
    phis = 2.0 * math.pi * np.arange(grid) / grid
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    states = np.column_stack([np.cos(tt / 2), np.exp(1j * pp) * np.sin(tt / 2)])
    best, i, j = kernels.max_concurrence_grid(u, states)
    x0 = np.array([tt[i], pp[i], tt[j], pp[j]])
    res = minimize(lambda x: -_concurrence_at(u, x), x0, method="BFGS",
                   options={"maxiter": refine_steps, "gtol": 1e-12})
    refined = -float(res.fun)
    return min(1.0, max(best, refined))


def is_perfect_entangler(u, tol: float = 1e-6, grid: int = 32, refine_steps: int = 50) -> bool:
    return max_concurrence(u, grid=grid, refine_steps=refine_steps) >= 1.0 - tol


# --------------------------------------------------------------------------
# drive-pattern table

_ROW_PATTERNS = {
    (False, False, True): 1,
    (False, True, False): 2,
    (True, False, False): 3,
    (False, True, True): 4,
    (True, False, True): 5,
    (True, True, False): 6,
    (True, True, True): 7,
}


def _nonzero_pattern(pulses: PulseSet, rel_tol: float = 1e-12) -> tuple[bool, bool, bool]:
    scale = pulses.omega
    return tuple(abs(v) > rel_tol * scale for v in pulses.tripod)


def table_row_prediction(params: AngularParams, notes: list | None = None) -> TableRowMatch | None:
    """Match the drive's zero pattern to a drive-pattern table row and evaluate its formulas.

    Row 7 is only reported at theta = pi/4, where its phi-only formulas hold.
    """
    if notes is None:
        notes = []
    pattern = _nonzero_pattern(from_angular(params))
    row = _ROW_PATTERNS.get(pattern)
    if row is None:
        return None
    if row <= 5:
        return TableRowMatch(row, 0.0, 1.0, EP_MAX, (HALF_PI, 0.0, 0.0))
    th, vp = params.theta, params.varphi
    if row == 6:
        s4 = math.sin(2 * th) ** 4
        note = ""
        c = 2 * th
        if th > math.pi / 4:
            c = math.pi - 2 * th
            note = "theta > pi/4: Weyl point (pi/2, 2theta, 2theta) folded to (pi/2, pi-2theta, pi-2theta)"
            notes.append(note)
        return TableRowMatch(6, -s4, 2 * math.cos(4 * th) - 1, EP_MAX * (1 - s4),
                             (HALF_PI, c, c), note)
    if abs(th - math.pi / 4) > 1e-9:
        notes.append("all three couplings nonzero but theta != pi/4; row 7 formulas "
                     "assume theta = pi/4, so no row is reported")
        return None
    s = math.sin(vp)
    c = math.asin(min(1.0, s ** 2))
    return TableRowMatch(7, -s ** 8, 1 - 4 * s ** 4, EP_MAX * (1 - s ** 8), (HALF_PI, c, c))


def classify_gate(params: AngularParams, mc_samples: int | None = 20_000, seed: int = 0,
                  pe_grid: int = 32) -> ClassificationReport:
    """Full entangling classification of the holonomic gate for ``params``."""
    if params.omega <= 0.0:
        raise DegenerateDriveError("omega must be positive")
    gate = holonomy_gate(params)
    u = gate.matrix
    inv = makhlin_invariants(u)
    weyl = weyl_coordinates(u)
    conc = max_concurrence(u, grid=pe_grid)
    ep_mc = entangling_power_mc(u, mc_samples, seed) if mc_samples else None
    notes: list[str] = []
    row = table_row_prediction(params, notes)
    return ClassificationReport(
        invariants=inv,
        ep=entangling_power_closed(inv),
        weyl=weyl,
        perfect_entangler=conc >= 1.0 - 1e-6,
        special_perfect_entangler=weyl.distance((HALF_PI, 0.0, 0.0)) <= 1e-9,
        max_concurrence=conc,
        ep_mc=ep_mc,
        table_row=row,
        notes=notes,
    )
