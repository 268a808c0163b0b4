import numpy as np
import pytest

from conftest import random_channel, random_qubit_state
from gadcsim import linalg
from gadcsim.channels import KrausChannel, gadc, identity_channel
from gadcsim.dilation import (
    CLOSED_FORM_ORDER,
    build_dilation,
    closed_form_inverse_one,
    closed_form_inverse_two,
    closed_form_unitary_one,
    closed_form_unitary_two,
    extract_kraus,
    inverse_channel_kraus,
    povm_elements,
    unitary_two_matrix,
    verification_report,
    worst_residual,
)
from gadcsim.errors import SingularParameterError

GRID = [(nu, eta) for nu in np.linspace(0, 1, 5) for eta in np.linspace(0, 1, 5)]
CLOSED_FORMS = [
    (closed_form_unitary_one, closed_form_inverse_one),
    (closed_form_unitary_two, closed_form_inverse_two),
]


def literal_inverse_kraus(u, m=4):
    """J_i = sum_{k,l} conj(u[(k,1),(l,i)]) |l><k|, written out index by index."""
    ops = []
    for i in range(m):
        j = np.zeros((2, 2), dtype=complex)
        for k in range(2):
            for l in range(2):
                j[l, k] = np.conj(u[k * m + 0, l * m + i])
        ops.append(j)
    return ops


def test_identity_channel_dilation_is_identity():
    dil = build_dilation(identity_channel())
    np.testing.assert_array_equal(dil.matrix, np.eye(2))
    inv = inverse_channel_kraus(dil)
    assert len(inv) == 1
    np.testing.assert_array_equal(inv[0], np.eye(2))
    assert len(povm_elements(inv)) == 1
    np.testing.assert_allclose(povm_elements(inv)[0], np.eye(2), atol=1e-15)


def test_built_gadc_fixed_columns():
    nu, eta = 0.3, 0.7
    u = build_dilation(gadc(nu, eta)).matrix
    col0 = np.zeros(8)
    col0[[0, 2, 7]] = [np.sqrt(nu), np.sqrt((1 - nu) * eta), np.sqrt((1 - nu) * (1 - eta))]
    col4 = np.zeros(8)
    col4[[1, 4, 6]] = [np.sqrt(nu * (1 - eta)), np.sqrt(nu * eta), np.sqrt(1 - nu)]
    np.testing.assert_allclose(u[:, 0], col0, atol=1e-15)
    np.testing.assert_allclose(u[:, 4], col4, atol=1e-15)


@pytest.mark.parametrize("n_kraus", [2, 3, 4])
def test_built_dilation_round_trip(rng, n_kraus):
    ch = random_channel(rng, n_kraus)
    dil = build_dilation(ch)
    assert linalg.unitarity_residual(dil.matrix) < 1e-10
    for _ in range(20):
        rho = random_qubit_state(rng)
        np.testing.assert_allclose(dil.channel_action(rho), ch.apply(rho), atol=1e-10)


def test_built_dilation_gadc_round_trip(rng):
    ch = gadc(0.4, 0.25)
    u = build_dilation(ch).matrix
    anc = np.zeros((4, 4))
    anc[0, 0] = 1
    for _ in range(20):
        rho = random_qubit_state(rng)
        lhs = linalg.partial_trace_second(u @ np.kron(rho, anc) @ u.conj().T, 2, 4)
        np.testing.assert_allclose(lhs, ch.apply(rho), atol=1e-10)


@pytest.mark.parametrize("ctor", [closed_form_unitary_one, closed_form_unitary_two])
def test_closed_form_unitaries_at_identity_point(ctor):
    u = ctor(1.0, 1.0).matrix
    np.testing.assert_allclose(u, np.eye(8), atol=1e-15)
    probe = random_qubit_state(np.random.default_rng(3))
    np.testing.assert_allclose(ctor(1.0, 1.0).channel_action(probe), probe, atol=1e-15)


@pytest.mark.parametrize("ctor", [closed_form_unitary_one, closed_form_unitary_two])
@pytest.mark.parametrize("nu,eta", [(0.5, 0.5), (0.3, 0.7), (0.9, 0.2), (0.05, 0.95)])
def test_closed_form_unitaries_are_dilations(ctor, nu, eta):
    dil = ctor(nu, eta)
    assert linalg.unitarity_residual(dil.matrix) < 1e-10
    ref = gadc(nu, eta)
    for k_ext, k_ref in zip(extract_kraus(dil), ref):
        np.testing.assert_allclose(k_ext, k_ref, atol=1e-15)


@pytest.mark.parametrize("unitary,closed", CLOSED_FORMS)
def test_inverse_kraus_matches_closed_form(unitary, closed):
    checked = 0
    for nu, eta in GRID:
        try:
            dil, ref = unitary(nu, eta), closed(nu, eta)
        except SingularParameterError:
            continue
        checked += 1
        extracted = inverse_channel_kraus(dil)
        for i, j in enumerate(extracted):
            np.testing.assert_allclose(j, ref[CLOSED_FORM_ORDER[i]], atol=1e-10)
        for j_lit, j in zip(literal_inverse_kraus(dil.matrix), extracted):
            np.testing.assert_allclose(j_lit, j, atol=1e-15)
    assert checked == 24


def test_singular_points_rejected():
    with pytest.raises(SingularParameterError):
        closed_form_unitary_one(0.0, 0.0)
    with pytest.raises(SingularParameterError):
        closed_form_unitary_two(0.0, 1.0)
    with pytest.raises(SingularParameterError):
        closed_form_inverse_one(0.0, 0.0)


def test_removable_singularity_at_zero_nu():
    u = unitary_two_matrix(0.0, 0.3)
    assert linalg.unitarity_residual(u) < 1e-12
    # entries move by O(sqrt(nu)) away from the limit
    near = unitary_two_matrix(1e-8, 0.3)
    np.testing.assert_allclose(u, near, atol=1e-3)


@pytest.mark.parametrize("unitary", [closed_form_unitary_one, closed_form_unitary_two])
def test_inverse_channel_action(rng, unitary):
    dil = unitary(0.35, 0.6)
    inv = inverse_channel_kraus(dil)
    assert inv.completeness_residual() < 1e-10
    for _ in range(10):
        sigma = random_qubit_state(rng)
        np.testing.assert_allclose(dil.channel_action(sigma, inverse=True), inv.apply(sigma), atol=1e-10)


def test_inverse_extraction_idempotent(rng):
    dil = closed_form_unitary_one(0.45, 0.3)
    inv = inverse_channel_kraus(dil)
    again = extract_kraus(build_dilation(inv))
    for a, b in zip(inv, again):
        np.testing.assert_allclose(a, b, atol=1e-10)
    ch = random_channel(rng, 3)
    inv = inverse_channel_kraus(build_dilation(ch))
    again = inverse_channel_kraus(build_dilation(extract_kraus(build_dilation(ch))))
    for a, b in zip(inv, again):
        np.testing.assert_allclose(a, b, atol=1e-10)


def test_povm_elements_closed_form_one():
    nu, eta = 0.4, 0.7
    elems = povm_elements(closed_form_inverse_one(nu, eta))
    np.testing.assert_allclose(elems[0], np.diag([np.sqrt(nu), np.sqrt(eta * nu)]), atol=1e-12)
    np.testing.assert_allclose(elems[2], np.diag([0, np.sqrt(1 - eta)]), atol=1e-12)
    total = sum(m.conj().T @ m for m in elems)
    np.testing.assert_allclose(total, np.eye(2), atol=1e-10)


def test_composition_is_not_identity_generically(rng):
    def composed(nu, eta, rho):
        inv = closed_form_inverse_one(nu, eta)
        return inv.apply(gadc(nu, eta).apply(rho))

    dev = max(np.max(np.abs(composed(0.5, 0.5, r) - r))
              for r in (random_qubit_state(rng) for _ in range(20)))
    assert dev > 1e-3
    for _ in range(20):
        rho = random_qubit_state(rng)
        np.testing.assert_allclose(composed(1.0, 1.0, rho), rho, atol=1e-10)


def test_verification_report_flags_bad_matrix():
    good = verification_report(closed_form_unitary_one(0.5, 0.5).matrix, gadc(0.5, 0.5))
    assert worst_residual(good) < 1e-10
    bad = closed_form_unitary_one(0.5, 0.5).matrix.copy()
    bad[0, 0] += 1e-3
    assert worst_residual(verification_report(bad, gadc(0.5, 0.5))) > 1e-8


def test_kraus_channel_label_defaults():
    ch = KrausChannel([np.eye(2)])
    assert ch.label == ""
    assert "built" in build_dilation(ch).label
