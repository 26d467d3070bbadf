"""
Inverse pulse design for target entangling characteristics, drive-pattern table pulse
patterns, and entangling-power sweeps over (theta, varphi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .analysis import (
    EP_MAX,
    HALF_PI,
    entangling_power_closed,
    makhlin_invariants,
)
from .dfs import AngularParams, PulseSet, to_angular
from .errors import InvalidInputError, VerificationError
from .evolution import holonomy_gate

__all__ = [
    "DesignTarget",
    "SweepGrid",
    "SweepRecord",
    "design",
    "design_for_entangling_power",
    "design_for_weyl_c",
    "design_perfect_entangler",
    "table_row_pulses",
    "ep_closed_angles",
    "sweep_entangling_power",
]

TARGET_KINDS = ("entangling_power", "weyl_c", "perfect_entangler", "table_row")


def _check_omega(omega):
    omega = float(omega)
    if not (omega > 0.0 and math.isfinite(omega)):
        raise InvalidInputError("omega must be positive and finite")
    return omega


@dataclass(frozen=True)
class DesignTarget:
    kind: str
    value: float | None = None
    omega: float = 1.0

    def __post_init__(self):
        if self.kind not in TARGET_KINDS:
            raise InvalidInputError(f"unknown target kind {self.kind!r}")
        _check_omega(self.omega)
        v = self.value
        if self.kind == "entangling_power" and not (v is not None and 0.0 <= v <= EP_MAX):
            raise InvalidInputError("entangling-power target must lie in [0, 2/9]")
        if self.kind == "weyl_c" and not (v is not None and 0.0 <= v <= HALF_PI):
            raise InvalidInputError("Weyl target c must lie in [0, pi/2]")
        if self.kind == "table_row" and not (v is not None and int(v) == v and 1 <= v <= 7):
            raise InvalidInputError("table row must be an integer 1..7")


def design_for_entangling_power(target: float, omega: float = 1.0) -> AngularParams:
    """theta = pi/4 and sin^8(varphi) = 1 - 9 e_p / 2."""
    omega = _check_omega(omega)
    target = float(target)
    if not 0.0 <= target <= EP_MAX * (1 + 1e-12):
        raise InvalidInputError(f"target e_p={target} outside [0, 2/9]")
    s8 = min(1.0, max(0.0, 1.0 - 4.5 * target))
    varphi = math.asin(s8 ** 0.125)
    return AngularParams(omega, math.pi / 4, varphi)


def design_for_weyl_c(c: float, omega: float = 1.0) -> AngularParams:
    """theta = pi/4 and sin^2(varphi) = sin(c), landing on (pi/2, c, c)."""
    omega = _check_omega(omega)
    c = float(c)
    if not 0.0 <= c <= HALF_PI * (1 + 1e-12):
        raise InvalidInputError(f"Weyl target c={c} outside [0, pi/2]")
    sc = min(1.0, max(0.0, math.sin(c)))
    return AngularParams(omega, math.pi / 4, math.asin(math.sqrt(sc)))


def design_perfect_entangler(omega: float = 1.0) -> AngularParams:
    """|Omega_0^(1) Omega_0^(2)| = omega^2 / (2 sqrt 2): the point (pi/2, pi/4, pi/4)."""
    return design_for_weyl_c(math.pi / 4, omega)


def _row_params(row, omega, theta, varphi) -> AngularParams:
    q = math.pi / 4
    if row in (1, 2, 3):
        return None
    if row == 4:
        vp = q if varphi is None else varphi
        return AngularParams(omega, HALF_PI, vp)
    if row == 5:
        vp = q if varphi is None else varphi
        return AngularParams(omega, 0.0, vp)
    if row == 6:
        th = math.pi / 8 if theta is None else theta
        if not 0.0 < th <= q + 1e-12:
            raise InvalidInputError("row 6 requires 0 < theta <= pi/4")
        return AngularParams(omega, th, HALF_PI)
    th = q if theta is None else theta
    vp = q if varphi is None else varphi
    return AngularParams(omega, th, vp)


def table_row_pulses(row: int, omega: float = 1.0, theta: float | None = None,
                     varphi: float | None = None, values=None) -> PulseSet:
    """Pulses with the zero/nonzero pattern of (Omega_0^(1), Omega_0^(2), Omega_1^(2) - Omega_1^(1)).

    ``values`` gives the triple explicitly (checked against the pattern);
    otherwise the free angles define it through the angular parametrization.
    The returned set uses Omega_1^(1) = 0.
    """
    patterns = {1: (0, 0, 1), 2: (0, 1, 0), 3: (1, 0, 0), 4: (0, 1, 1),
                5: (1, 0, 1), 6: (1, 1, 0), 7: (1, 1, 1)}
    if row not in patterns:
        raise InvalidInputError(f"table row must be 1..7, got {row!r}")
    pattern = patterns[row]
    if values is not None:
        triple = tuple(complex(v) for v in values)
        if len(triple) != 3:
            raise InvalidInputError("values must be a triple")
    else:
        omega = _check_omega(omega)
        p = _row_params(row, omega, theta, varphi)
        if p is None:
            triple = tuple(omega * k for k in pattern)
        else:
            sv, cv = math.sin(p.varphi), math.cos(p.varphi)
            triple = (omega * sv * math.cos(p.theta), omega * sv * math.sin(p.theta),
                      omega * cv)
        # exact zeros where the pattern demands them
        triple = tuple(complex(v) if k else 0j for v, k in zip(triple, pattern))
    for v, k in zip(triple, pattern):
        if bool(k) != (v != 0):
            raise InvalidInputError(f"values {values!r} do not match the row {row} pattern")
    a, b, d = triple
    return PulseSet(a, b, 0j, d)


def design(target: DesignTarget, theta: float | None = None,
           varphi: float | None = None) -> AngularParams:
    if target.kind == "entangling_power":
        return design_for_entangling_power(target.value, target.omega)
    if target.kind == "weyl_c":
        return design_for_weyl_c(target.value, target.omega)
    if target.kind == "perfect_entangler":
        return design_perfect_entangler(target.omega)
    pulses = table_row_pulses(int(target.value), target.omega, theta=theta, varphi=varphi)
    return to_angular(pulses)


# --------------------------------------------------------------------------
# sweeps

@dataclass(frozen=True)
class SweepGrid:
    theta_range: tuple[float, float] = (0.0, math.pi)
    varphi_range: tuple[float, float] = (0.0, math.pi)
    n_theta: int = 101
    n_varphi: int = 101

    def __post_init__(self):
        for name in ("theta_range", "varphi_range"):
            lo, hi = (float(x) for x in getattr(self, name))
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise InvalidInputError(f"{name} must be finite")
            if not (0.0 <= lo <= hi <= math.pi + 1e-12):
                raise InvalidInputError(f"{name} must satisfy 0 <= lo <= hi <= pi")
            object.__setattr__(self, name, (lo, hi))
        for name in ("n_theta", "n_varphi"):
            n = getattr(self, name)
            if int(n) != n or n < 2:
                raise InvalidInputError(f"{name} must be an integer >= 2")
            object.__setattr__(self, name, int(n))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.linspace(*self.theta_range, self.n_theta),
                np.linspace(*self.varphi_range, self.n_varphi))


class SweepRecord(NamedTuple):
    theta: float
    varphi: float
    ep: float


def ep_closed_angles(theta, varphi):
    """(2/9)(1 - sin^8(varphi) sin^4(2 theta)); broadcasts over arrays."""
    return EP_MAX * (1.0 - np.sin(varphi) ** 8 * np.sin(2 * np.asarray(theta)) ** 4)


def _pipeline_ep(theta: float, varphi: float) -> float:
    # pulses straight from the parametrization, so angles outside [0, pi/2]
    # are folded by to_angular like any other drive
    sv = math.sin(varphi)
    pulses = PulseSet(sv * math.cos(theta), sv * math.sin(theta), 0j, math.cos(varphi))
    gate = holonomy_gate(to_angular(pulses))
    return entangling_power_closed(makhlin_invariants(gate.matrix))


def sweep_entangling_power(grid: SweepGrid | None = None, verify: bool = True,
                           verify_stride: int = 8, tol: float = 1e-9) -> list[SweepRecord]:
    """Closed-form entangling power on a (theta, varphi) grid, theta-outer order.

    With ``verify`` every ``verify_stride``-th node in each direction is
    recomputed through the gate pipeline; a mismatch above ``tol`` raises
    VerificationError.
    """
    grid = grid or SweepGrid()
    thetas, varphis = grid.axes()
    ep = ep_closed_angles(thetas[:, None], varphis[None, :])
    if verify:
        for i in range(0, grid.n_theta, verify_stride):
            for j in range(0, grid.n_varphi, verify_stride):
                ref = _pipeline_ep(thetas[i], varphis[j])
                if abs(ref - ep[i, j]) > tol:
                    raise VerificationError(
                        f"sweep node ({thetas[i]}, {varphis[j]}): closed {ep[i, j]} vs pipeline {ref}")
    return [SweepRecord(float(thetas[i]), float(varphis[j]), float(ep[i, j]))
            for i in range(grid.n_theta) for j in range(grid.n_varphi)]
