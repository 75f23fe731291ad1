"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The helpers here
validate their inputs and fix conventions (ordering, eigenvector phases) so
that downstream results are reproducible.
"""
from typing import NamedTuple

import numpy as np

from .errors import (DimensionMismatch, NonFinite, NonHermitian, NonRealTrace,
                     NotPSD)

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
IMAG_TOL = 1e-12


class HermitianEigenSystem(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, square=True):
    """Return `a` as a finite complex128 2-d array."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
    if square and a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return a


def hermitian_asymmetry(a):
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def check_hermitian(a, tol=HERMITIAN_TOL):
    a = as_matrix(a)
    asym = hermitian_asymmetry(a)
    if asym > tol:
        raise NonHermitian(f"max |H - H^dag| = {asym:.3e} exceeds {tol:.1e}")
    return a


def fix_phases(vectors):
    """Rotate each column so its largest-magnitude entry is real positive.

    Ties (within 1e-12 relative) go to the lowest index, which keeps the
    choice stable against rounding noise.
    """
    vectors = np.array(vectors, dtype=np.complex128, copy=True)
    mags = np.abs(vectors)
    for k in range(vectors.shape[1]):
        col = mags[:, k]
        top = col.max()
        if top == 0.0:
            continue
        idx = int(np.flatnonzero(col >= top * (1 - 1e-12))[0])
        vectors[:, k] *= np.conj(vectors[idx, k]) / mags[idx, k]
        vectors[idx, k] = mags[idx, k]
    return vectors


def hermitian_eig(h, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned ascending. The input is symmetrised before the
    LAPACK call so that the tolerated asymmetry does not leak into the result.
    """
    h = check_hermitian(h, tol)
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    return HermitianEigenSystem(w, fix_phases(v))


def matrix_sqrt(rho, tol=PSD_TOL):
    """Principal square root of a positive semidefinite Hermitian matrix."""
    w, v = hermitian_eig(rho)
    if w.size and w[0] < -tol:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is below -{tol:.0e}")
    # eigenvalues at rounding level are indistinguishable from zero; left in,
    # sqrt would inflate them to ~1e-8
    floor = w.size * np.finfo(float).eps * float(np.max(np.abs(w)))
    root = np.sqrt(np.where(w > floor, w, 0.0))
    s = (v * root) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def kron(a, b):
    return np.kron(as_matrix(a, square=False), as_matrix(b, square=False))


def commutator(a, b):
    return a @ b - b @ a


def commutator_trace_sq(s, k):
    """Tr([S, K]^2) as a real number."""
    s = as_matrix(s)
    k = as_matrix(k)
    if s.shape != k.shape:
        raise DimensionMismatch(f"shapes {s.shape} and {k.shape} differ")
    c = commutator(s, k)
    # Tr(C C) without forming the product
    t = np.sum(c * c.T)
    scale = max(1.0, float(np.sum(np.abs(c) ** 2)))
    if abs(t.imag) > IMAG_TOL * scale:
        raise NonRealTrace(f"Tr([S,K]^2) has imaginary part {t.imag:.3e}")
    return float(t.real)


def is_unitary(u, tol=1e-10):
    u = np.asarray(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))) <= tol)
