"""Dense complex-matrix foundation.

Hermitian matrices and density matrices as validated value types, a
dependency-free cyclic Jacobi eigensolver for complex Hermitian matrices,
determinant and purity, and the JSON schema for matrices:

    {"dim": N, "entries": [[re, im], ...]}   # row-major, N^2 pairs
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    NotTraceOne,
)

TOL_HERM = 1e-12
TOL_TRACE = 1e-12
TOL_PSD = 1e-10

# Jacobi sweep controls: off-diagonal Frobenius threshold scales with the
# dimension and with the matrix norm so the stopping test is meaningful for
# non-unit-scale input.
MAX_SWEEPS = 100
OFF_DIAG_FACTOR = 1e-14


def _as_complex_array(entries, dim: int) -> np.ndarray:
    arr = np.asarray(entries, dtype=np.complex128)
    if arr.size != dim * dim:
        raise DimensionMismatch(
            f"expected {dim * dim} entries for dim {dim}, got {arr.size}"
        )
    arr = arr.reshape(dim, dim)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise DimensionMismatch("entries must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Immutable N x N complex matrix equal to its conjugate transpose."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(self.entries.trace().real)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated quantum state: Hermitian, trace one, positive semidefinite.

    Carries the eigenvalue vector computed during validation (descending,
    clamped to [0, 1]) so downstream spectral queries need no second solve.
    """

    matrix: HermitianMatrix
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries

    def __array__(self, dtype=None, copy=None):
        return self.matrix.__array__(dtype)


@dataclass(frozen=True, eq=False)
class EigenProbability:
    """Eigenvalues of a state, sorted descending: a probability vector."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if np.any(vals < -TOL_PSD) or np.any(vals > 1.0 + TOL_PSD):
            raise NotPositive(float(vals.min()))
        if abs(vals.sum() - 1.0) > 1e-10:
            raise NotTraceOne(float(vals.sum()))
        if np.any(np.diff(vals) > 0):
            raise ValueError("eigen-probabilities must be sorted descending")
        clamped = np.clip(vals, 0.0, 1.0)
        clamped.setflags(write=False)
        object.__setattr__(self, "values", clamped)

    def __len__(self) -> int:
        return len(self.values)


def make_hermitian(dim: int, entries) -> HermitianMatrix:
    """Build a HermitianMatrix, symmetrizing sub-tolerance asymmetry.

    Deviations from conjugate symmetry below TOL_HERM are averaged away;
    anything larger raises NotHermitian with the worst deviation.
    """
    if dim < 1:
        raise DimensionMismatch(f"dim must be >= 1, got {dim}")
    arr = _as_complex_array(entries, dim)
    deviation = float(np.abs(arr - arr.conj().T).max())
    if deviation > TOL_HERM:
        raise NotHermitian(deviation)
    sym = (arr + arr.conj().T) / 2.0
    sym.setflags(write=False)
    return HermitianMatrix(sym)


def _jacobi_sweeps(a: np.ndarray, compute_vectors: bool):
    """Cyclic Jacobi on a Hermitian matrix with complex plane rotations.

    Returns (diagonal eigenvalues in solver order, accumulated unitary or
    None). The working copy stays exactly Hermitian: each rotation zeroes
    the target pair and re-realifies the touched diagonal entries.
    """
    n = a.shape[0]
    a = a.astype(np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128) if compute_vectors else None
    if n == 1:
        return a.real.diagonal().copy(), v

    scale = max(1.0, float(np.linalg.norm(a)))
    off_thresh = OFF_DIAG_FACTOR * n * scale
    rot_eps = off_thresh / (n * n)

    def off_norm() -> float:
        # summed directly over off-diagonal entries; the norm-minus-diagonal
        # shortcut cancels catastrophically near convergence
        sq = np.abs(a) ** 2
        np.fill_diagonal(sq, 0.0)
        return math.sqrt(float(sq.sum()))

    for _ in range(MAX_SWEEPS):
        if off_norm() <= off_thresh:
            return a.real.diagonal().copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                beta = abs(apq)
                if beta <= rot_eps:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / beta
                tau = (app - aqq) / (2.0 * beta)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                # U mixes columns p,q; U^dag the rows. Column p picks up the
                # phase so the rotated (p,q) entry is exactly real-zeroable.
                u = np.array(
                    [[c, -s * phase], [s * np.conj(phase), c]],
                    dtype=np.complex128,
                )
                a[:, [p, q]] = a[:, [p, q]] @ u
                a[[p, q], :] = u.conj().T @ a[[p, q], :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if compute_vectors:
                    v[:, [p, q]] = v[:, [p, q]] @ u
    final = off_norm()
    if final <= off_thresh:
        return a.real.diagonal().copy(), v
    raise ConvergenceFailure(MAX_SWEEPS, final)


def _sorted_spectrum(vals: np.ndarray, vecs: np.ndarray | None):
    order = np.argsort(-vals, kind="stable")
    if vecs is None:
        return vals[order], None
    return vals[order], vecs[:, order]


def eig_hermitian(m: HermitianMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and unitary eigenvector matrix of m.

    Reconstruction U diag(w) U^dag reproduces m to solver accuracy; ties in
    the ordering keep the solver's subspace order.
    """
    vals, vecs = _jacobi_sweeps(m.entries, compute_vectors=True)
    w, u = _sorted_spectrum(vals, vecs)
    return w, u


def eigvals_hermitian(m: HermitianMatrix) -> np.ndarray:
    """Descending eigenvalues only (skips eigenvector accumulation)."""
    vals, _ = _jacobi_sweeps(m.entries, compute_vectors=False)
    w, _ = _sorted_spectrum(vals, None)
    return w


def determinant(m: HermitianMatrix) -> float:
    """Determinant as the product of the (real) eigenvalues."""
    return float(np.prod(eigvals_hermitian(m)))


def purity(d: DensityMatrix) -> float:
    """Tr(rho^2); equals the squared Frobenius norm for Hermitian rho."""
    return float((np.abs(d.entries) ** 2).sum())


def validate_density(m: HermitianMatrix) -> DensityMatrix:
    """Accept m as a quantum state or raise the specific violation.

    Positivity is tested through the eigenvalues (robust, and the spectrum
    is retained on the result); near-zero negatives inside the tolerance
    are clamped to 0.
    """
    tr = m.trace()
    if abs(tr - 1.0) > TOL_TRACE:
        raise NotTraceOne(tr)
    vals = eigvals_hermitian(m)
    min_eig = float(vals[-1])
    if min_eig < -TOL_PSD:
        raise NotPositive(min_eig)
    clamped = np.clip(vals, 0.0, None)
    clamped.setflags(write=False)
    return DensityMatrix(m, clamped)


def matrix_to_json_dict(m: HermitianMatrix | DensityMatrix) -> dict:
    arr = np.asarray(m)
    pairs = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    return {"dim": int(arr.shape[0]), "entries": pairs}


def matrix_from_json_dict(payload: dict) -> HermitianMatrix:
    if not isinstance(payload, dict) or "dim" not in payload or "entries" not in payload:
        raise DimensionMismatch("matrix JSON needs 'dim' and 'entries'")
    dim = int(payload["dim"])
    pairs = payload["entries"]
    if len(pairs) != dim * dim or any(len(p) != 2 for p in pairs):
        raise DimensionMismatch(
            f"matrix JSON needs {dim * dim} [re, im] pairs, got {len(pairs)}"
        )
    entries = [complex(float(re), float(im)) for re, im in pairs]
    return make_hermitian(dim, entries)
