"""Skew-information MIN of a bipartite state via degeneracy splitting.

Only the eigenbasis of rho_A within degenerate eigenspaces is free. Each
degenerate block is optimised independently by a min-mode joint
diagonalization of the projected matrices Phi_D^dag A_ij Phi_D; the
non-degenerate eigenvectors contribute a fixed term.
"""
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InternalInconsistency, NotConverged
from .jointdiag import JointDiagProblem, joint_diagonalize
from .skew import BrokenObservable, a_blocks, min_direct
from .states import haar_unitary, make_rng, partial_trace_b

CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class DegeneracyPartition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    phi_n: np.ndarray
    blocks: Tuple[Tuple[float, np.ndarray], ...]
    degeneracy_tolerance: float
    # indices (into the ascending spectrum) of each cluster, in order
    clusters: Tuple[Tuple[int, ...], ...]
    # smallest gap between neighbouring clusters; small values flag
    # spectra that straddle the tolerance
    min_cluster_gap: float

    @property
    def n_nondegenerate(self):
        return self.phi_n.shape[1]


@dataclass(frozen=True)
class ProjectedMatrixSet:
    a_matrices: np.ndarray  # (n, n, m, m)
    basis_b: np.ndarray


@dataclass(frozen=True)
class MinConfig:
    degeneracy_tol: float = 1e-8
    sweep_tol: float = 1e-12
    max_sweeps: int = 200
    basis_b: Optional[np.ndarray] = None
    strict: bool = False


@dataclass
class SubspaceReport:
    eigenvalue: float
    dimension: int
    objective: float
    sweeps: int
    rotations: int
    converged: bool
    max_sin_trace: List[float] = field(default_factory=list)


@dataclass
class MinReport:
    value: float
    nondegenerate_contribution: float
    subspace_reports: List[SubspaceReport]
    optimal_basis: BrokenObservable
    cross_check: float
    wall_time: float
    min_cluster_gap: float

    @property
    def converged(self):
        return all(r.converged for r in self.subspace_reports)

    @property
    def sweeps(self):
        return max((r.sweeps for r in self.subspace_reports), default=0)

    @property
    def rotations(self):
        return sum(r.rotations for r in self.subspace_reports)

    def to_dict(self):
        return {
            "value": self.value,
            "nondegenerate_contribution": self.nondegenerate_contribution,
            "cross_check": self.cross_check,
            "converged": self.converged,
            "wall_time": self.wall_time,
            "min_cluster_gap": (None if math.isinf(self.min_cluster_gap)
                                else self.min_cluster_gap),
            "subspaces": [
                {"eigenvalue": r.eigenvalue, "dimension": r.dimension,
                 "objective": r.objective, "sweeps": r.sweeps,
                 "rotations": r.rotations, "converged": r.converged}
                for r in self.subspace_reports
            ],
            "optimal_basis": [[[float(z.real), float(z.imag)] for z in row]
                              for row in self.optimal_basis.basis],
        }


def partition_degeneracies(rho_a, tol=1e-8):
    """Split the eigenbasis of rho_a into singletons and degenerate blocks.

    Neighbours in the ascending spectrum closer than `tol` are chained into
    one cluster, so the result does not depend on where a cluster starts.
    """
    w, v = linalg.hermitian_eig(rho_a)
    clusters = [[0]] if w.size else []
    for k in range(1, w.size):
        if w[k] - w[k - 1] < tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    gaps = [w[c[0]] - w[prev[-1]] for prev, c in zip(clusters, clusters[1:])]
    single = [c[0] for c in clusters if len(c) == 1]
    blocks = tuple((float(np.mean(w[c])), v[:, c]) for c in clusters if len(c) > 1)
    return DegeneracyPartition(
        eigenvalues=w, eigenvectors=v, phi_n=v[:, single], blocks=blocks,
        degeneracy_tolerance=tol, clusters=tuple(tuple(c) for c in clusters),
        min_cluster_gap=float(min(gaps)) if gaps else math.inf)


def build_a_matrices(sqrt_rho, m, n, basis_b=None):
    sqrt_rho = np.asarray(sqrt_rho)
    if sqrt_rho.shape != (m * n, m * n):
        raise DimensionMismatch(
            f"sqrt_rho has shape {sqrt_rho.shape}, expected {(m * n,) * 2}")
    if basis_b is None:
        basis_b = np.eye(n, dtype=np.complex128)
    basis_b = np.asarray(basis_b, dtype=np.complex128)
    if basis_b.shape != (n, n) or not linalg.is_unitary(basis_b):
        raise DimensionMismatch("basis_b must be an n x n unitary")
    return ProjectedMatrixSet(a_blocks(sqrt_rho, m, n, basis_b), basis_b)


def _project(a, phi):
    """Phi^dag A_ij Phi for every (i, j), flattened to a (n*n, D, D) stack."""
    n, m = a.shape[0], a.shape[2]
    flat = a.reshape(n * n, m, m)
    return phi.conj().T[None] @ flat @ phi[None]


def _diag_mass(stack):
    return float(np.sum(np.abs(np.diagonal(stack, axis1=1, axis2=2)) ** 2))


def min_skew(state, config=MinConfig()):
    """MIN of `state` with full optimisation provenance."""
    t0 = time.perf_counter()
    m, n = state.dim_a, state.dim_b
    sqrt_rho = linalg.matrix_sqrt(state.rho)
    partition = partition_degeneracies(partial_trace_b(state), config.degeneracy_tol)
    a = build_a_matrices(sqrt_rho, m, n, config.basis_b).a_matrices

    nondeg = _diag_mass(_project(a, partition.phi_n)) if partition.n_nondegenerate else 0.0

    # reassemble the optimal basis in ascending-eigenvalue order
    basis = partition.eigenvectors.copy()
    reports = []
    total = nondeg
    block_iter = iter(partition.blocks)
    for cluster in partition.clusters:
        if len(cluster) == 1:
            continue
        eigval, phi_d = next(block_iter)
        problem = JointDiagProblem(_project(a, phi_d), "min",
                                   config.sweep_tol, config.max_sweeps)
        res = joint_diagonalize(problem)
        basis[:, list(cluster)] = phi_d @ res.basis
        total += res.objective
        reports.append(SubspaceReport(eigval, len(cluster), res.objective,
                                      res.sweeps_used, res.rotations_applied,
                                      res.converged, res.max_sin_trace))
    if config.strict and not all(r.converged for r in reports):
        raise NotConverged("a degenerate subspace did not reach the sweep tolerance")

    value = 1.0 - total
    obs = BrokenObservable(basis, n)
    check = min_direct(state, obs, sqrt_rho)
    if abs(value - check) > CROSS_CHECK_TOL:
        raise InternalInconsistency(f"engine value {value!r} vs re-evaluation {check!r}")
    return MinReport(value, nondeg, reports, obs, check,
                     time.perf_counter() - t0, partition.min_cluster_gap)


def _best_block_mass(stack, samples, rng, grid=0):
    """Smallest diagonal mass of W^dag B W over random (and gridded) W."""
    d = stack.shape[1]
    best = _diag_mass(stack)
    batch = 2048
    done = 0
    while done < samples:
        k = min(batch, samples - done)
        ws = np.stack([haar_unitary(d, rng) for _ in range(k)])
        diag = np.einsum("sak,iab,sbk->sik", ws.conj(), stack, ws, optimize=True)
        best = min(best, float(np.min(np.sum(np.abs(diag) ** 2, axis=(1, 2)))))
        done += k
    if d == 2 and grid:
        theta = np.linspace(0.0, np.pi / 2, grid)
        phi = np.linspace(-np.pi, np.pi, grid, endpoint=False)
        th, ph = np.meshgrid(theta, phi, indexing="ij")
        c, s = np.cos(th).ravel(), np.sin(th).ravel()
        e = np.exp(1j * ph.ravel())
        ws = np.empty((c.size, 2, 2), dtype=np.complex128)
        ws[:, 0, 0] = c
        ws[:, 0, 1] = e * s
        ws[:, 1, 0] = -e.conj() * s
        ws[:, 1, 1] = c
        for start in range(0, c.size, 8192):
            chunk = ws[start:start + 8192]
            diag = np.einsum("sak,iab,sbk->sik", chunk.conj(), stack, chunk,
                             optimize=True)
            best = min(best, float(np.min(np.sum(np.abs(diag) ** 2, axis=(1, 2)))))
    return best


def brute_force_min(state, samples=10_000, seed=0, grid=360, degeneracy_tol=1e-8):
    """Random-search lower bound on the MIN.

    Each degenerate block is searched separately (the objective is a sum of
    per-block terms) over `samples` Haar unitaries and, for 2-dimensional
    blocks, a `grid` x `grid` (theta, phi) mesh of Givens rotations.
    """
    rng = make_rng(seed)
    m, n = state.dim_a, state.dim_b
    sqrt_rho = linalg.matrix_sqrt(state.rho)
    partition = partition_degeneracies(partial_trace_b(state), degeneracy_tol)
    a = build_a_matrices(sqrt_rho, m, n).a_matrices
    total = _diag_mass(_project(a, partition.phi_n)) if partition.n_nondegenerate else 0.0
    for _, phi_d in partition.blocks:
        total += _best_block_mass(_project(a, phi_d), samples, rng, grid)
    return 1.0 - total
