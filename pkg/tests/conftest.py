import numpy as np
import pytest

from gadcsim.channels import KrausChannel
from gadcsim.states import QubitPairState


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_channel(rng, n_kraus):
    """Qubit channel from a random isometry C^2 -> C^(2k), sliced into k blocks."""
    v = random_unitary(rng, 2 * n_kraus)[:, :2]
    return KrausChannel([v[2 * i:2 * i + 2, :] for i in range(n_kraus)], label=f"random{n_kraus}")


def random_qubit_state(rng):
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(rng):
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    return QubitPairState(np.outer(psi, psi.conj())), psi


def local_unitary(rng):
    return np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
