"""Skew information, fixed-basis MIN evaluation and the Fisher-information bound."""
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import BasisNotCommuting, DimensionMismatch, InternalInconsistency
from .states import partial_trace_b

CONSISTENCY_TOL = 1e-10
QFI_NULL_TOL = 1e-12


@dataclass(frozen=True)
class BrokenObservable:
    """The projector set {|k><k| ⊗ I_n} built from the columns of `basis`."""
    basis: np.ndarray
    dim_b: int

    def __post_init__(self):
        basis = linalg.as_matrix(self.basis)
        if not linalg.is_unitary(basis, 1e-10):
            raise DimensionMismatch("basis columns are not orthonormal")
        object.__setattr__(self, "basis", basis)

    @property
    def dim_a(self):
        return self.basis.shape[0]

    def projector(self, k):
        col = self.basis[:, k]
        return np.kron(np.outer(col, col.conj()), np.eye(self.dim_b))

    def projectors(self):
        return [self.projector(k) for k in range(self.dim_a)]


@dataclass(frozen=True)
class MetrologyCheck:
    qfi: float
    skew: float
    bound_satisfied: bool
    slack: float


def skew_information(sqrt_rho, k):
    """I(rho, K) = -1/2 Tr([sqrt(rho), K]^2), clipped at zero."""
    return max(0.0, -0.5 * linalg.commutator_trace_sq(sqrt_rho, k))


def a_blocks(sqrt_rho, m, n, basis_b=None):
    """A_ij = (I ⊗ <psi_i|) sqrt(rho) (I ⊗ |psi_j>) as an (n, n, m, m) array."""
    s = np.asarray(sqrt_rho).reshape(m, n, m, n)
    if basis_b is None:
        return np.ascontiguousarray(s.transpose(1, 3, 0, 2))
    b = np.asarray(basis_b, dtype=np.complex128)
    return np.einsum("ai,kalb,bj->ijkl", b.conj(), s, b, optimize=True)


def _check_obs(state, obs):
    if obs.dim_a != state.dim_a or obs.dim_b != state.dim_b:
        raise DimensionMismatch(
            f"observable is {obs.dim_a}x{obs.dim_b}, state is "
            f"{state.dim_a}x{state.dim_b}")


def min_direct(state, obs, sqrt_rho=None):
    """Sum of skew informations over a fixed broken observable.

    Evaluated once term by term from the commutator definition and once from
    the projected-block form 1 - sum_ijk |<k|A_ij|k>|^2; the two must agree.
    """
    _check_obs(state, obs)
    if sqrt_rho is None:
        sqrt_rho = linalg.matrix_sqrt(state.rho)
    by_commutator = sum(skew_information(sqrt_rho, kk) for kk in obs.projectors())
    blocks = a_blocks(sqrt_rho, state.dim_a, state.dim_b)
    u = obs.basis
    diag = np.einsum("ak,ijab,bk->ijk", u.conj(), blocks, u, optimize=True)
    by_blocks = 1.0 - float(np.sum(np.abs(diag) ** 2))
    if abs(by_commutator - by_blocks) > CONSISTENCY_TOL:
        raise InternalInconsistency(
            f"commutator sum {by_commutator!r} vs block form {by_blocks!r}")
    return by_blocks


def quantum_fisher_information(state, k):
    """QFI of the family exp(-i K phi) rho exp(i K phi), spectral formula."""
    k = linalg.as_matrix(k)
    if k.shape != state.rho.shape:
        raise DimensionMismatch(f"K has shape {k.shape}, rho {state.rho.shape}")
    w, v = np.linalg.eigh(state.rho)
    w = np.clip(w, 0.0, None)
    kk = v.conj().T @ k @ v
    lsum = w[:, None] + w[None, :]
    ldiff = w[:, None] - w[None, :]
    keep = lsum > QFI_NULL_TOL
    terms = np.zeros_like(lsum)
    terms[keep] = ldiff[keep] ** 2 / lsum[keep]
    return float(2.0 * np.sum(terms * np.abs(kk) ** 2))


def variance(state, k):
    k = np.asarray(k)
    mean = np.trace(state.rho @ k).real
    return float(np.trace(state.rho @ k @ k).real - mean ** 2)


def commutes_with_reduced(state, obs, tol=1e-8):
    rho_a = partial_trace_b(state)
    for col in obs.basis.T:
        proj = np.outer(col, col.conj())
        if np.max(np.abs(linalg.commutator(proj, rho_a))) > tol:
            return False
    return True


def metrology_bound_check(state, obs, tol=1e-10):
    """Check F_Q / 4 <= 2 I(rho, K_k) for every projector of `obs`.

    The basis must diagonalise Tr_B rho.
    """
    _check_obs(state, obs)
    if not commutes_with_reduced(state, obs):
        raise BasisNotCommuting("basis does not commute with the reduced state")
    sqrt_rho = linalg.matrix_sqrt(state.rho)
    checks = []
    for kk in obs.projectors():
        qfi = quantum_fisher_information(state, kk)
        skew = skew_information(sqrt_rho, kk)
        slack = 2.0 * skew - qfi / 4.0
        checks.append(MetrologyCheck(qfi, skew, slack >= -tol, slack))
    return checks
