"""Approximate joint diagonalization by complex Givens (Jacobi) sweeps.

Given matrices M_1..M_K of size D x D, find a unitary that maximises
(``mode="max"``) or minimises (``mode="min"``) the sum of squared moduli of
the diagonal entries of all transformed matrices.

For one pair of indices (p, q), the rotation

    R(theta, phi) = [[cos theta,              e^{i phi} sin theta],
                     [-e^{-i phi} sin theta,  cos theta          ]]

acts as M -> R^dag M R on rows/columns p and q. Writing the 2 x 2 block of
each matrix as [[a, b], [c, d]], the new difference of diagonals is
a' - d' = g . v with g = (a - d, b + c, i(c - b)) and the unit vector
v = (cos 2theta, -sin 2theta cos phi, -sin 2theta sin phi). As a' + d' is
invariant, the pair objective is the quadratic form v^T Re(G^H G) v (rows of
G are the g's), optimised in closed form by an extreme eigenvector.
"""
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple

import numpy as np

from .errors import DimensionMismatch

TIE_TOL = 1e-13


class GivensRotation(NamedTuple):
    p: int
    q: int
    theta: float
    phi: float

    @property
    def sin(self):
        return math.sin(self.theta)

    def block(self):
        c, s = math.cos(self.theta), math.sin(self.theta)
        e = complex(math.cos(self.phi), math.sin(self.phi))
        return np.array([[c, e * s], [-e.conjugate() * s, c]])


@dataclass
class RotationWorkspace:
    """Per-pair data feeding the closed-form rotation solve."""
    blocks: np.ndarray      # (K, 2, 2)
    g_matrix: np.ndarray    # (K, 3), row k is g_k
    rayleigh: np.ndarray    # (3, 3) real symmetric Re(G^H G)
    # squared Frobenius mass of the blocks; the yardstick for eigenvalue ties
    scale: float = 0.0

    @classmethod
    def from_matrices(cls, mats, p, q):
        idx = np.array([p, q])
        blocks = mats[:, idx[:, None], idx[None, :]]
        a, b = blocks[:, 0, 0], blocks[:, 0, 1]
        c, d = blocks[:, 1, 0], blocks[:, 1, 1]
        g = np.stack([a - d, b + c, 1j * (c - b)], axis=1)
        rayleigh = (g.conj().T @ g).real
        return cls(blocks, g, 0.5 * (rayleigh + rayleigh.T),
                   float(np.sum(np.abs(blocks) ** 2)))


@dataclass(frozen=True)
class JointDiagProblem:
    matrices: np.ndarray
    mode: str = "max"
    sweep_tolerance: float = 1e-12
    max_sweeps: int = 100

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=np.complex128)
        if mats.ndim == 2:
            mats = mats[None]
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2] or mats.shape[1] < 1:
            raise DimensionMismatch(
                f"expected a stack of square matrices, got shape {mats.shape}")
        if self.mode not in ("max", "min"):
            raise ValueError(f"mode must be 'max' or 'min', got {self.mode!r}")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be positive")
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self):
        return self.matrices.shape[1]


@dataclass
class JointDiagResult:
    """Outcome of a sweep run.

    ``unitary`` is U_o with ``joint_eigenvalues[i] = diag(U_o M_i U_o^dag)``;
    its conjugate transpose ``basis`` holds the optimal vectors as columns.
    """
    unitary: np.ndarray
    joint_eigenvalues: np.ndarray
    objective: float
    sweeps_used: int
    rotations_applied: int
    converged: bool
    objective_trace: List[float] = field(default_factory=list)
    rotation_trace: List[float] = field(default_factory=list)
    max_sin_trace: List[float] = field(default_factory=list)
    rotations_per_sweep: List[int] = field(default_factory=list)

    @property
    def basis(self):
        return self.unitary.conj().T


def objective(matrices):
    mats = np.asarray(matrices)
    if mats.ndim == 2:
        mats = mats[None]
    return float(np.sum(np.abs(np.diagonal(mats, axis1=1, axis2=2)) ** 2))


def _extreme_vector(rayleigh, mode, scale=0.0):
    """Optimal unit v for the quadratic form, nearest to e1 among ties.

    When the extreme eigenvalue is (numerically) degenerate every vector in
    its eigenspace is optimal; taking the normalised projection of e1 picks
    the smallest rotation, so a pair that is already optimal stays put.
    Ties are judged against `scale` as well as the spectrum itself, so a
    Rayleigh matrix made only of rounding noise counts as fully degenerate.
    """
    w, vecs = np.linalg.eigh(rayleigh)
    scale = max(float(np.max(np.abs(w))), scale, np.finfo(float).tiny)
    target = w[-1] if mode == "max" else w[0]
    cluster = vecs[:, np.abs(w - target) <= TIE_TOL * scale]
    proj = cluster @ cluster[0]
    norm = float(np.linalg.norm(proj))
    if norm > 1e-8:
        v = proj / norm
    else:
        v = cluster[:, 0]
    if v[0] < 0 or (v[0] == 0 and (v[1] < 0 or (v[1] == 0 and v[2] < 0))):
        v = -v
    return v


def solve_rotation(workspace, mode, p=0, q=1):
    """Closed-form optimal Givens rotation for one index pair."""
    v = _extreme_vector(workspace.rayleigh, mode, workspace.scale)
    v1 = min(1.0, max(-1.0, float(v[0])))
    r = math.hypot(float(v[1]), float(v[2]))
    theta = 0.5 * math.atan2(r, v1)
    if math.sin(2 * theta) < 1e-15:
        return GivensRotation(p, q, 0.0, 0.0)
    phi = math.atan2(-float(v[2]), -float(v[1]))
    return GivensRotation(p, q, theta, phi)


def apply_rotation(mats, rotation, basis=None):
    """In-place M -> R^dag M R for every matrix, and V -> V R.

    `mats` has shape (K, D, D); only rows/columns p, q change.
    """
    p, q = rotation.p, rotation.q
    r = rotation.block()
    idx = [p, q]
    mats[:, :, idx] = mats[:, :, idx] @ r
    mats[:, idx, :] = r.conj().T @ mats[:, idx, :]
    if basis is not None:
        basis[:, idx] = basis[:, idx] @ r
    return mats


def joint_diagonalize(problem, trace_rotations=False):
    """Cyclic sweeps until every rotation in a sweep has |sin theta| below
    ``problem.sweep_tolerance`` (converged) or ``max_sweeps`` is reached.

    With ``trace_rotations`` the objective after each rotation is recorded in
    ``rotation_trace``; otherwise only per-sweep values are kept.
    """
    mats = problem.matrices.copy()
    dim = problem.dim
    basis = np.eye(dim, dtype=np.complex128)
    obj = objective(mats)
    result = JointDiagResult(basis, np.diagonal(mats, axis1=1, axis2=2).copy(),
                             obj, 0, 0, True, [obj])
    if dim == 1:
        return result
    if trace_rotations:
        result.rotation_trace.append(obj)

    converged = False
    sweeps = 0
    applied = 0
    while sweeps < problem.max_sweeps:
        sweeps += 1
        max_sin = 0.0
        solved = 0
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                ws = RotationWorkspace.from_matrices(mats, p, q)
                rot = solve_rotation(ws, problem.mode, p, q)
                solved += 1
                s = abs(rot.sin)
                max_sin = max(max_sin, s)
                if s > 0.0:
                    apply_rotation(mats, rot, basis)
                    applied += 1
                if trace_rotations:
                    result.rotation_trace.append(objective(mats))
        result.objective_trace.append(objective(mats))
        result.max_sin_trace.append(max_sin)
        result.rotations_per_sweep.append(solved)
        if max_sin < problem.sweep_tolerance:
            converged = True
            break

    result.unitary = basis.conj().T
    result.joint_eigenvalues = np.diagonal(mats, axis1=1, axis2=2).copy()
    result.objective = objective(mats)
    result.sweeps_used = sweeps
    result.rotations_applied = applied
    result.converged = converged
    return result


def jacobi_eigh(h, tol=1e-14, max_sweeps=100):
    """Eigendecomposition of one Hermitian matrix by max-mode sweeps.

    A reference solver independent of LAPACK; eigenvalues ascending.
    """
    res = joint_diagonalize(JointDiagProblem(h, "max", tol, max_sweeps))
    w = res.joint_eigenvalues[0].real
    order = np.argsort(w, kind="stable")
    return w[order], res.basis[:, order]
