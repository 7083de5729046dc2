"""Shared oracles and helpers built directly on 4x4 matrices,
independent of the Bloch-form production code paths."""

import numpy as np
import pytest

from ccdiscord import BlochForm, random_state

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)
I2 = np.eye(2, dtype=complex)


def projectors(n):
    """The two projectors of the measurement n.sigma on one qubit."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    op = n[0] * SX + n[1] * SY + n[2] * SZ
    return (I2 + op) / 2, (I2 - op) / 2


def sandwich_a(rho, n):
    """Projector-sandwich measurement of qubit A on the 4x4 matrix."""
    pp, pm = projectors(n)
    out = np.zeros_like(rho)
    for p in (pp, pm):
        k = np.kron(p, I2)
        out += k @ rho @ k
    return out


def sandwich_b(rho, m):
    pp, pm = projectors(m)
    out = np.zeros_like(rho)
    for p in (pp, pm):
        k = np.kron(I2, p)
        out += k @ rho @ k
    return out


def trace_bloch(rho):
    """Extract (x, y, T) by explicit Pauli traces (test-side oracle)."""
    x = np.array([np.trace(rho @ np.kron(s, I2)).real for s in PAULIS])
    y = np.array([np.trace(rho @ np.kron(I2, s)).real for s in PAULIS])
    T = np.array(
        [
            [np.trace(rho @ np.kron(si, sj)).real for sj in PAULIS]
            for si in PAULIS
        ]
    )
    return BlochForm(x, y, T)


def h_state_matrix(p, phi):
    """rho(p, phi) assembled from kets, bypassing the Bloch machinery."""
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1 / np.sqrt(2)
    psi[2] = np.exp(1j * phi) / np.sqrt(2)
    ket00 = np.zeros(4, dtype=complex)
    ket00[0] = 1
    return p * np.outer(psi, psi.conj()) + (1 - p) * np.outer(ket00, ket00.conj())


def random_unit(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def random_states():
    return [random_state(4, seed) for seed in range(40)]
