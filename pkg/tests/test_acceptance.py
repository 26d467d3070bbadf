"""Acceptance criteria, one test each.

Every test appends a pass/fail line to ``conftest.ACCEPTANCE_LINES``; the
lines are printed in the terminal summary. Run this file directly for the
same report without pytest's other output.
"""
import io
import math
import time

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES, CZ, SWAP, random_params

from holozeno.analysis import (
    EP_MAX,
    entangling_power_closed,
    entangling_power_mc,
    makhlin_invariants,
    max_concurrence,
    weyl_coordinates,
)
from holozeno.cli import run
from holozeno.design import design_for_weyl_c, design_perfect_entangler, table_row_pulses
from holozeno.dfs import (
    AngularParams,
    PulseSet,
    build_laser_hamiltonian,
    effective_hamiltonian_closed_form,
    from_angular,
    frobenius,
    project_to_dfs,
    to_angular,
)
from holozeno.evolution import (
    check_cyclicity,
    check_parallel_transport,
    explicit_gate_matrix,
    holonomy_gate,
    holonomy_run_time,
    propagator_closed_form,
    propagator_oracle,
)

HALF_PI = 0.5 * math.pi
SEED = 7


def record(n, ok, detail, t0):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {n}: {detail} ({time.perf_counter() - t0:.2f} s)")
    return ok


def gate_summary(params):
    u = holonomy_gate(params).matrix
    inv = makhlin_invariants(u)
    return inv, entangling_power_closed(inv), weyl_coordinates(u)


def table_expectation(row, theta=None, varphi=None):
    """(G1, G2, e_p, Weyl point) as tabulated for each drive pattern."""
    if row <= 5:
        return 0.0, 1.0, 2 / 9, (HALF_PI, 0.0, 0.0)
    if row == 6:
        s = math.sin(2 * theta) ** 4
        return -s, 2 * math.cos(4 * theta) - 1, (2 / 9) * (1 - s), (HALF_PI, 2 * theta, 2 * theta)
    s = math.sin(varphi)
    c = math.asin(s ** 2)
    return -s ** 8, 1 - 4 * s ** 4, (2 / 9) * (1 - s ** 8), (HALF_PI, c, c)


def random_pulses(rng):
    z = rng.uniform(-2, 2, 4) + 1j * rng.uniform(-2, 2, 4)
    return PulseSet(*z)


def test_criterion_1_table_rows():
    t0 = time.perf_counter()
    cases = [(row, None, None) for row in range(1, 6)]
    cases += [(6, th, None) for th in np.linspace(0.1, math.pi / 4, 5)]
    cases += [(7, math.pi / 4, vp) for vp in np.linspace(0.2, HALF_PI, 5)]
    worst = 0.0
    for row, th, vp in cases:
        pulses = table_row_pulses(row, omega=1.3, theta=th, varphi=vp)
        inv, ep, weyl = gate_summary(to_angular(pulses))
        g1, g2, ep_t, w_t = table_expectation(row, th, vp)
        worst = max(worst, abs(inv.g1 - g1), abs(inv.g2 - g2), abs(ep - ep_t), weyl.distance(w_t))
    ok = worst <= 1e-9
    record(1, ok, f"{len(cases)} table cases, worst deviation {worst:.2e} <= 1e-9", t0)
    assert ok


def test_criterion_2_projection_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        p = random_pulses(rng)
        dev = frobenius(project_to_dfs(build_laser_hamiltonian(p)) - effective_hamiltonian_closed_form(p))
        worst = max(worst, dev)
    ok = worst <= 1e-13
    record(2, ok, f"projection identity over 200 drives, max {worst:.2e} <= 1e-13", t0)
    assert ok


def test_criterion_3_propagator_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for p in random_params(rng, 1000):
        t = rng.uniform(0.0, 3 * holonomy_run_time(p.omega))
        h = effective_hamiltonian_closed_form(from_angular(p))
        worst = max(worst, frobenius(propagator_closed_form(p, t).matrix - propagator_oracle(h, t).matrix))
    ok = worst <= 1e-12
    record(3, ok, f"closed form vs spectral over 1000 (params, t), max {worst:.2e} <= 1e-12", t0)
    assert ok


def test_criterion_4_holonomy_conditions():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    cyc = pt = 0.0
    for p in random_params(rng, 200):
        cyc = max(cyc, check_cyclicity(p))
        pt = max(pt, check_parallel_transport(p, 100))
    ok = cyc <= 1e-10 and pt <= 1e-10
    record(4, ok, f"cyclicity max {cyc:.2e}, parallel transport max {pt:.2e} (both <= 1e-10)", t0)
    assert ok


def test_criterion_5_gate_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for p in random_params(rng, 200):
        worst = max(worst, frobenius(holonomy_gate(p).matrix - explicit_gate_matrix(p)))
    cz = frobenius(holonomy_gate(AngularParams(0.7, 0.4, 0.0)).matrix - CZ)
    swap = frobenius(holonomy_gate(AngularParams(0.7, math.pi / 4, HALF_PI)).matrix - SWAP)
    ok = worst <= 1e-12 and cz <= 1e-12 and swap <= 1e-12
    record(5, ok, f"gate vs explicit max {worst:.2e}, diag(1,1,1,-1) {cz:.2e}, SWAP {swap:.2e} "
                  "(all <= 1e-12)", t0)
    assert ok


def test_criterion_6_entangling_power():
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst_z = 0.0
    for k, p in enumerate(random_params(rng, 20)):
        u = holonomy_gate(p).matrix
        closed = entangling_power_closed(makhlin_invariants(u))
        mean, se = entangling_power_mc(u, 100_000, seed=SEED + k)
        worst_z = max(worst_z, abs(mean - closed) / se)
    _, ep_max, _ = gate_summary(AngularParams(1.0, 0.3, 0.0))
    _, ep_min, _ = gate_summary(AngularParams(1.0, math.pi / 4, HALF_PI))
    ok = worst_z <= 3.0 and abs(ep_max - EP_MAX) <= 1e-12 and abs(ep_min) <= 1e-12
    record(6, ok, f"MC within {worst_z:.2f} standard errors (<= 3) for 20 gates, "
                  f"max |e_p - 2/9| {abs(ep_max - EP_MAX):.1e}, min |e_p| {abs(ep_min):.1e}", t0)
    assert ok


def test_criterion_7_weyl_line():
    t0 = time.perf_counter()
    worst = 0.0
    for c in (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, HALF_PI):
        u = holonomy_gate(design_for_weyl_c(c)).matrix
        worst = max(worst, weyl_coordinates(u).distance((HALF_PI, c, c)))
    omega = 1.7
    p = design_perfect_entangler(omega)
    pulses = from_angular(p)
    prod = abs(abs(pulses.omega0_1 * pulses.omega0_2) - omega ** 2 / (2 * math.sqrt(2)))
    conc = max_concurrence(holonomy_gate(p).matrix)
    ok = worst <= 1e-9 and prod <= 1e-12 and conc >= 1 - 1e-6
    record(7, ok, f"Weyl line max {worst:.2e} <= 1e-9, product condition {prod:.1e} <= 1e-12, "
                  f"max concurrence {conc:.9f} >= 1 - 1e-6", t0)
    assert ok


def test_criterion_8_sweep_surface():
    t0 = time.perf_counter()
    out, err = io.StringIO(), io.StringIO()
    code = run(["sweep", "--grid", "101,101", "--format", "csv"], stdout=out, stderr=err)
    lines = out.getvalue().splitlines()
    data = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    ep = data[:, 2].reshape(101, 101)
    theta = data[:, 0].reshape(101, 101)
    sym = np.max(np.abs(ep - ep[::-1, :]))
    mirrored = np.max(np.abs(theta + theta[::-1, :] - math.pi))
    hi, lo = abs(ep.max() - EP_MAX), abs(ep.min())
    ok = code == 0 and data.shape == (10201, 3) and hi <= 1e-12 and lo <= 1e-12 \
        and sym <= 1e-12 and mirrored <= 1e-12
    record(8, ok, f"101x101 CSV, |max - 2/9| {hi:.1e}, |min| {lo:.1e}, "
                  f"theta -> pi - theta asymmetry {sym:.1e} (all <= 1e-12)", t0)
    assert ok


@pytest.mark.parametrize("theta,varphi", [(0.37, 1.05)])
def test_criterion_9_phase_independence(theta, varphi):
    t0 = time.perf_counter()
    rng = np.random.default_rng(SEED)
    inv0, ep0, w0 = gate_summary(AngularParams(1.0, theta, varphi))
    worst = 0.0
    for phases in rng.uniform(0, 2 * math.pi, (50, 3)):
        inv, ep, w = gate_summary(AngularParams(1.0, theta, varphi, *phases))
        worst = max(worst, abs(inv.g1 - inv0.g1), abs(inv.g2 - inv0.g2), abs(ep - ep0), w.distance(w0))
    ok = worst <= 1e-9
    record(9, ok, f"50 phase triples at (theta, varphi) = ({theta}, {varphi}), "
                  f"max spread {worst:.2e} <= 1e-9", t0)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
