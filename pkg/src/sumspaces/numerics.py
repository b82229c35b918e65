"""Dense complex linear algebra kernel and the global tolerance policy.

Everything downstream goes through these wrappers so the rank and eigenvalue
conventions stay in one place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ComputationFailed, EigenvalueOnBoundary, NonSquare, NotHermitian


@dataclass(frozen=True)
class Tolerances:
    """Global numerical policy.

    rank_tol is relative to the largest singular value; eig_tol bounds
    decomposition residuals; margin_tol is the decision threshold that turns
    a raw margin into a verdict.
    """

    rank_tol: float = 1e-10
    eig_tol: float = 1e-10
    margin_tol: float = 1e-8

    def __post_init__(self):
        if not (self.rank_tol > 0 and self.eig_tol > 0 and self.margin_tol > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerances()


@dataclass
class HermitianSpectrum:
    """Eigenvalues (ascending) and a unitary of eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitize(M: np.ndarray) -> np.ndarray:
    """Explicit symmetrization (M + M*)/2; stops drift accumulation."""
    return (M + M.conj().T) / 2.0


def operator_norm(M: np.ndarray) -> float:
    """Spectral norm; 0 for empty matrices."""
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def eig_hermitian(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix, ascending eigenvalues."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NonSquare(f"expected square matrix, got shape {M.shape}")
    if M.shape[0] == 0:
        return HermitianSpectrum(np.zeros(0), np.zeros((0, 0), dtype=complex))
    asym = operator_norm(M - M.conj().T)
    if asym > tol.eig_tol * max(1.0, operator_norm(M)):
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds tolerance")
    try:
        w, v = np.linalg.eigh(hermitize(M))
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ComputationFailed(str(exc)) from exc
    return HermitianSpectrum(w, v)


def svd(M: np.ndarray, tol: Tolerances = DEFAULT_TOL):
    """Full SVD with descending singular values, plus V (not V*)."""
    M = np.asarray(M, dtype=complex)
    try:
        U, s, Vh = np.linalg.svd(M)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ComputationFailed(str(exc)) from exc
    return U, s, Vh.conj().T


def numerical_rank(s: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> int:
    """Count of singular values above the relative cutoff."""
    if len(s) == 0 or s[0] <= 0:
        return 0
    return int(np.sum(s > tol.rank_tol * s[0]))


def smallest_nonzero_singular_value(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
    """Smallest singular value above the rank cutoff; +inf when rank 0."""
    if M.size == 0:
        return float("inf")
    s = np.linalg.svd(M, compute_uv=False)
    r = numerical_rank(s, tol)
    if r == 0:
        return float("inf")
    return float(s[r - 1])


def pinv(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse with the shared rank cutoff."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return np.zeros((M.shape[1], M.shape[0]), dtype=complex)
    return np.linalg.pinv(M, rcond=tol.rank_tol)


def spectral_projector(M: np.ndarray, interval, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthoprojector onto the eigenspaces with eigenvalue in [lo, hi).

    Raises EigenvalueOnBoundary when an endpoint sits within eig_tol of the
    spectrum, since then the selection is not numerically well defined.
    """
    lo, hi = float(interval[0]), float(interval[1])
    spec = eig_hermitian(M, tol)
    w, v = spec.eigenvalues, spec.eigenvectors
    for endpoint in (lo, hi):
        if np.any(np.abs(w - endpoint) <= tol.eig_tol):
            raise EigenvalueOnBoundary(f"endpoint {endpoint} within eig_tol of spectrum")
    mask = (w >= lo) & (w < hi)
    cols = v[:, mask]
    return cols @ cols.conj().T


def matrix_function(M: np.ndarray, f, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix via eigendecomposition."""
    spec = eig_hermitian(M, tol)
    vals = np.array([f(x) for x in spec.eigenvalues], dtype=complex)
    V = spec.eigenvectors
    return (V * vals) @ V.conj().T
