import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holozeno.dfs import (
    DFS_LABELS,
    TWO_ATOM_LABELS,
    AngularParams,
    PulseSet,
    ZenoRegime,
    build_laser_hamiltonian,
    dfs_basis,
    dfs_projector,
    effective_hamiltonian_closed_form,
    frobenius,
    from_angular,
    project_to_dfs,
    to_angular,
    zeno_regime_check,
)
from holozeno.errors import DegenerateDriveError, InvalidInputError, InvalidRegimeError

finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)
pulse_sets = st.builds(PulseSet, complexes, complexes, complexes, complexes)


def laser_by_labels(pulses):
    """Independent construction: loop over product labels and apply each |j><e| by hand."""
    omegas = {(1, "0"): pulses.omega0_1, (1, "1"): pulses.omega1_1,
              (2, "0"): pulses.omega0_2, (2, "1"): pulses.omega1_2}
    idx = {lab: k for k, lab in enumerate(TWO_ATOM_LABELS)}
    h = np.zeros((9, 9), dtype=complex)
    for ket in TWO_ATOM_LABELS:
        for (atom, j), om in omegas.items():
            pos = atom - 1
            if ket[pos] == "e":
                bra = ket[:pos] + j + ket[pos + 1:]
                h[idx[bra], idx[ket]] += om
                h[idx[ket], idx[bra]] += np.conj(om)
    return h


def test_zero_drive_gives_zero_hamiltonian():
    assert np.count_nonzero(build_laser_hamiltonian(PulseSet(0, 0, 0, 0))) == 0


def test_single_drive_matrix_elements():
    h = build_laser_hamiltonian(PulseSet(1, 0, 0, 0))
    idx = {lab: k for k, lab in enumerate(TWO_ATOM_LABELS)}
    assert h[idx["01"], idx["e1"]] == 1
    assert h[idx["00"], idx["e0"]] == 1
    assert h[idx["0e"], idx["ee"]] == 1
    upper = np.triu(h, 1)
    assert np.count_nonzero(upper) == 3


@settings(max_examples=200)
@given(pulse_sets)
def test_laser_hamiltonian_matches_label_construction(p):
    h = build_laser_hamiltonian(p)
    assert frobenius(h - h.conj().T) == 0.0
    assert frobenius(h - laser_by_labels(p)) < 1e-14


def test_dfs_basis_orthonormal_and_alpha():
    b = dfs_basis()
    assert frobenius(b.conj().T @ b - np.eye(5)) < 1e-14
    alpha = b[:, 4]
    assert np.count_nonzero(alpha) == 2
    assert alpha[TWO_ATOM_LABELS.index("1e")] == pytest.approx(1 / math.sqrt(2))
    assert alpha[TWO_ATOM_LABELS.index("e1")] == pytest.approx(-1 / math.sqrt(2))


def test_projector_properties():
    p = dfs_projector()
    assert np.trace(p).real == pytest.approx(5.0)
    assert frobenius(p @ p - p) < 1e-14
    assert frobenius(p - p.conj().T) == 0.0
    alpha = dfs_basis()[:, 4]
    assert np.linalg.norm(p @ alpha - alpha) < 1e-15
    ket0e = np.zeros(9)
    ket0e[TWO_ATOM_LABELS.index("0e")] = 1.0
    assert np.linalg.norm(p @ ket0e) == 0.0


def test_projection_tripod_elements():
    p = PulseSet(0.3 - 0.2j, 1.1 + 0.4j, -0.7j, 0.25 + 0.5j)
    h = project_to_dfs(build_laser_hamiltonian(p))
    s = math.sqrt(2)
    assert h[1, 4] == pytest.approx(-p.omega0_1 / s, abs=1e-15)
    assert h[2, 4] == pytest.approx(p.omega0_2 / s, abs=1e-15)
    assert h[3, 4] == pytest.approx((p.omega1_2 - p.omega1_1) / s, abs=1e-15)
    assert np.all(h[0] == 0) and np.all(h[:, 0] == 0)


def test_projection_zero_and_rejects_non_hermitian():
    assert np.count_nonzero(project_to_dfs(np.zeros((9, 9)))) == 0
    bad = np.zeros((9, 9), dtype=complex)
    bad[0, 1] = 1.0
    with pytest.raises(InvalidInputError):
        project_to_dfs(bad)


@settings(max_examples=200)
@given(pulse_sets)
def test_projection_equals_closed_form(p):
    h_proj = project_to_dfs(build_laser_hamiltonian(p))
    h_closed = effective_hamiltonian_closed_form(p)
    assert frobenius(h_proj - h_closed) <= 1e-14
    # tripod shape: zero diagonal, zero computational block, |00> decoupled
    assert np.all(np.diag(h_closed) == 0)
    assert np.all(h_closed[:4, :4] == 0)
    assert np.all(h_closed[0] == 0)


@settings(max_examples=100)
@given(pulse_sets)
def test_nonzero_energies_are_plus_minus_omega_over_root2(p):
    h = effective_hamiltonian_closed_form(p)
    w = np.linalg.eigvalsh(h)
    expected = np.array([-1, 0, 0, 0, 1]) * p.omega / math.sqrt(2)
    assert np.max(np.abs(np.sort(w) - expected)) < 1e-12


def test_equal_omega1_decouples_11():
    h = effective_hamiltonian_closed_form(PulseSet(0.4, 0.2j, 0.9, 0.9))
    assert np.all(h[3] == 0) and np.all(h[:, 3] == 0)


def test_linearity_in_real_scale():
    p = PulseSet(0.4 + 0.1j, -0.3j, 0.2, 1.0 - 0.5j)
    h = effective_hamiltonian_closed_form(p)
    assert frobenius(effective_hamiltonian_closed_form(p.scaled(-2.5)) + 2.5 * h) < 1e-15


def test_non_finite_pulses_rejected():
    with pytest.raises(InvalidInputError):
        PulseSet(float("nan"), 0, 0, 0)
    with pytest.raises(InvalidInputError):
        PulseSet(0, complex(0, float("inf")), 0, 0)


def test_to_angular_symmetric_drive():
    a = to_angular(PulseSet(1, 1, 0, 0))
    assert a.omega == pytest.approx(math.sqrt(2))
    assert a.varphi == pytest.approx(math.pi / 2)
    assert a.theta == pytest.approx(math.pi / 4)
    assert (a.phi1, a.phi2, a.phi3) == (0.0, 0.0, 0.0)


def test_to_angular_only_omega1_difference():
    a = to_angular(PulseSet(0, 0, 0.2, 0.7))
    assert a.omega == pytest.approx(0.5)
    assert (a.theta, a.varphi, a.phi1, a.phi2, a.phi3) == (0.0, 0.0, 0.0, 0.0, 0.0)
    assert to_angular(PulseSet(0, 0, 1.0, 1.5)) == to_angular(PulseSet(0, 0, 0, 0.5))


def test_to_angular_imaginary_drive():
    a = to_angular(PulseSet(1j, 0, 0, 0))
    assert a.omega == pytest.approx(1.0)
    assert a.varphi == pytest.approx(math.pi / 2)
    assert a.theta == 0.0
    assert a.phi1 == pytest.approx(math.pi / 2)
    back = from_angular(a)
    assert abs(back.omega0_1 - 1j) < 1e-15 and abs(back.omega1_2) < 1e-15


def test_to_angular_degenerate_drive():
    with pytest.raises(DegenerateDriveError):
        to_angular(PulseSet(0, 0, 0.3, 0.3))


def test_from_angular_examples():
    p = from_angular(AngularParams(math.sqrt(2), math.pi / 4, math.pi / 2))
    assert p.omega1_1 == 0
    np.testing.assert_allclose(p.as_tuple(), (1, 1, 0, 0), atol=1e-15)
    p = from_angular(AngularParams(1, 0, math.pi / 2, math.pi / 2))
    np.testing.assert_allclose(p.as_tuple(), (1j, 0, 0, 0), atol=1e-15)


def test_angular_round_trip_random(rng):
    for _ in range(100):
        params = AngularParams(rng.uniform(0.1, 10), rng.uniform(0.01, 1.56), rng.uniform(0.01, 1.56),
                               *rng.uniform(0, 2 * math.pi, 3))
        back = to_angular(from_angular(params))
        assert np.allclose(back.as_tuple()[:3], params.as_tuple()[:3], rtol=0, atol=1e-12)
        for a, b in zip(back.as_tuple()[3:], params.as_tuple()[3:]):
            assert abs(np.exp(1j * a) - np.exp(1j * b)) < 1e-12


@settings(max_examples=200)
@given(pulse_sets)
def test_pulses_round_trip_through_angles(p):
    if p.omega < 1e-6:
        return
    q = from_angular(to_angular(p))
    np.testing.assert_allclose(q.tripod, p.tripod, atol=1e-12 * max(1.0, p.omega))


def test_angular_params_validation():
    with pytest.raises(InvalidInputError):
        AngularParams(-1, 0, 0)
    with pytest.raises(InvalidInputError):
        AngularParams(1, 2.0, 0)
    assert AngularParams(1, 0, 0, -0.5).phi1 == pytest.approx(2 * math.pi - 0.5)


def test_zeno_regime_examples():
    r = zeno_regime_check(PulseSet(0.01, 0, 0, 0), ZenoRegime(1, 1, 0.1))
    assert r.ratio == pytest.approx(0.01) and r.valid
    r = zeno_regime_check(PulseSet(0.5, 0.1, 0, 0), ZenoRegime(1, 1, 0.1))
    assert not r.valid and r.ratio == pytest.approx(0.5)
    assert ZenoRegime(2, 8).rate_scale == pytest.approx(0.5)
    assert ZenoRegime(1, 1).threshold == 0.1


def test_zeno_regime_validation():
    with pytest.raises(InvalidRegimeError):
        ZenoRegime(1, 0)
    with pytest.raises(InvalidRegimeError):
        ZenoRegime(1, -2)
    with pytest.raises(InvalidRegimeError):
        ZenoRegime(1, 1, 1.5)


def test_dfs_labels_order():
    assert DFS_LABELS == ("00", "01", "10", "11", "alpha")
