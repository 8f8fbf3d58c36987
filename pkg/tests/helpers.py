"""Independent oracles and samplers for the test suite.

Everything here deliberately avoids the library's own code paths: partial
traces are raw index loops, spectra come from numpy's LAPACK bindings,
divergences from scipy. That keeps every dual-route check honest.
"""

import numpy as np
from scipy.spatial.transform import Rotation
from scipy.special import rel_entr

import dichoq


def random_hermitian(n, rng, scale=1.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T) / 2.0


def random_state_array(n, rng):
    """Ginibre-style mixed state as a bare array (bypasses genstates)."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def random_state(n, rng):
    return dichoq.validate_density(dichoq.make_hermitian(n, random_state_array(n, rng)))


def random_rotation(rng):
    """Haar-random SO(3) matrix from scipy (independent of frames code)."""
    return Rotation.random(rng=rng).as_matrix()


# ---------------------------------------------------------------------------
# brute-force partial-trace contractions (raw quadruple loops, 1-based math)


def oracle_rho1(mat, n, m):
    out = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            for p in range(m):
                out[j, k] += mat[j * m + p, k * m + p]
    return out


def oracle_rho2(mat, n, m):
    out = np.zeros((m, m), dtype=complex)
    for p in range(m):
        for q in range(m):
            for j in range(n):
                out[p, q] += mat[j * m + p, j * m + q]
    return out


def oracle_rho1_tilde(mat, n, m):
    """Sum of diagonal n x n blocks of the swapped (stride-n) partition."""
    out = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            for p in range(m):
                out[j, k] += mat[p * n + j, p * n + k]
    return out


def oracle_rho2_tilde(mat, n, m):
    """Traces of the n x n blocks of the swapped partition."""
    out = np.zeros((m, m), dtype=complex)
    for p in range(m):
        for q in range(m):
            for j in range(n):
                out[p, q] += mat[p * n + j, q * n + j]
    return out


# ---------------------------------------------------------------------------
# spectral and entropic oracles


def lapack_spectrum(mat):
    return np.sort(np.linalg.eigvalsh(mat))[::-1]


def charpoly_from_eigs(mat):
    """det(A - x I) coefficients via numpy's root-to-poly expansion."""
    eigs = np.linalg.eigvalsh(mat)
    n = len(eigs)
    monic = np.poly(eigs)  # x^n + ..., highest power first
    coeffs = ((-1.0) ** n) * monic[::-1]  # index = power of x
    return coeffs


def kl_oracle(p, r):
    return float(rel_entr(np.array([p, 1 - p]), np.array([r, 1 - r])).sum())


def tsallis_oracle(p, r, q):
    """Direct power-mean evaluation, written without shared code."""
    pv = np.array([p, 1 - p])
    rv = np.array([r, 1 - r])
    mask = pv > 0
    if np.any((rv == 0) & mask):
        return np.inf if q > 1 else (np.sum(pv[mask & (rv > 0)] ** q * rv[mask & (rv > 0)] ** (1 - q)) - 1) / (q - 1)
    total = np.sum(pv[mask] ** q * rv[mask] ** (1 - q))
    return float((total - 1) / (q - 1))


def encode_by_trace(state, frame):
    """p = Tr(rho P) evaluated literally against every frame projector."""
    mat = np.asarray(state)
    values = {}
    for plane, axis, proj in frame.items():
        values[(plane.j, plane.k, axis)] = float(np.trace(mat @ proj).real)
    return values


# ---------------------------------------------------------------------------
# special states


def bell_state():
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    return np.outer(psi, psi.conj())


def near_state_negative_eig(dim=4, epsilon=1e-3):
    """Hermitian, trace-one, with an eigenvalue exactly -epsilon.

    Built in the (1, 2) plane so the defect shows up in an audited
    probability: rho_12 = -(rho_11 + rho_22)/2 - epsilon makes the plane's
    first dichotomic probability equal to -epsilon.
    """
    diag = np.array([0.3, 0.3, 0.2, 0.2])[:dim]
    diag = diag / diag.sum()
    mat = np.diag(diag).astype(complex)
    off = -(diag[0] + diag[1]) / 2.0 - epsilon
    mat[0, 1] = off
    mat[1, 0] = off
    return mat
