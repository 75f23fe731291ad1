"""Bipartite density matrices, the benchmark state families, random states.

Subsystem ordering is A ⊗ B throughout: the basis ket |k, j> (k on A, j on B)
sits at row ``k * dim_b + j``.

Random generators draw from ``numpy.random.Generator`` backed by PCG64,
seeded explicitly; there is no module-level RNG state.
"""
import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (DimensionMismatch, NonUnitNorm, NotNormalized, NotPSD,
                     ParamOutOfRange, SkewMinError)

STATE_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteState:
    """A validated density matrix on an (m ⊗ n)-dimensional space."""
    dim_a: int
    dim_b: int
    rho: np.ndarray

    def __post_init__(self):
        if int(self.dim_a) < 1 or int(self.dim_b) < 1:
            raise DimensionMismatch("subsystem dimensions must be positive")
        rho = linalg.as_matrix(self.rho)
        d = self.dim_a * self.dim_b
        if rho.shape != (d, d):
            raise DimensionMismatch(
                f"rho has shape {rho.shape}, expected ({d}, {d}) for "
                f"{self.dim_a}x{self.dim_b}")
        linalg.check_hermitian(rho, STATE_TOL)
        tr = np.trace(rho).real
        if abs(tr - 1.0) > STATE_TOL:
            raise NotNormalized(f"trace is {tr!r}, expected 1")
        w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        if w[0] < -STATE_TOL:
            raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is negative")
        rho = 0.5 * (rho + rho.conj().T)
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dim_a", int(self.dim_a))
        object.__setattr__(self, "dim_b", int(self.dim_b))

    @property
    def dim(self):
        return self.dim_a * self.dim_b

    def transformed(self, u_a, u_b):
        """The state (U_A ⊗ U_B) rho (U_A ⊗ U_B)^dag."""
        u = np.kron(u_a, u_b)
        return BipartiteState(self.dim_a, self.dim_b, u @ self.rho @ u.conj().T)


class SchmidtForm(NamedTuple):
    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray


def partial_trace_b(state):
    m, n = state.dim_a, state.dim_b
    return np.einsum("kjlj->kl", state.rho.reshape(m, n, m, n))


def partial_trace_a(state):
    m, n = state.dim_a, state.dim_b
    return np.einsum("kikj->ij", state.rho.reshape(m, n, m, n))


def product_state(rho_a, rho_b):
    rho_a = linalg.as_matrix(rho_a)
    rho_b = linalg.as_matrix(rho_b)
    return BipartiteState(rho_a.shape[0], rho_b.shape[0], np.kron(rho_a, rho_b))


def _unit_amplitudes(amplitudes, m, n):
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if psi.size != m * n:
        raise DimensionMismatch(f"{psi.size} amplitudes for a {m}x{n} system")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > STATE_TOL:
        raise NonUnitNorm(f"amplitude vector has norm {norm!r}")
    return psi


def pure_state(amplitudes, m, n):
    psi = _unit_amplitudes(amplitudes, m, n)
    return BipartiteState(m, n, np.outer(psi, psi.conj()))


def schmidt(amplitudes, m, n):
    """Schmidt decomposition: psi = sum_i u_i |a_i>|b_i>, kets as columns."""
    psi = _unit_amplitudes(amplitudes, m, n)
    u, s, vh = np.linalg.svd(psi.reshape(m, n))
    return SchmidtForm(s, u, vh.T)


def bell_state():
    return pure_state(np.array([1, 0, 0, 1]) / np.sqrt(2), 2, 2)


def maximally_entangled(m):
    """The ket |Phi_m> = sum_k |kk> / sqrt(m) as a vector."""
    phi = np.zeros(m * m, dtype=np.complex128)
    phi[np.arange(m) * (m + 1)] = 1 / np.sqrt(m)
    return phi


def swap_operator(m):
    v = np.zeros((m * m, m * m), dtype=np.complex128)
    k, l = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    v[(k * m + l).ravel(), (l * m + k).ravel()] = 1.0
    return v


def _check_range(name, value, lo, hi):
    if not lo - 1e-12 <= value <= hi + 1e-12:
        raise ParamOutOfRange(f"{name}={value!r} outside [{lo}, {hi}]")


def ppt_state(alpha):
    """3 ⊗ 3 family mixing |Phi_3> with two shifted classical mixtures."""
    _check_range("alpha", alpha, 2.0, 5.0)
    phi = maximally_entangled(3)
    rho_plus = np.zeros((9, 9))
    rho_minus = np.zeros((9, 9))
    for k in range(3):
        i = 3 * k + (k + 1) % 3
        j = 3 * ((k + 1) % 3) + k
        rho_plus[i, i] += 1 / 3
        rho_minus[j, j] += 1 / 3
    rho = (2 / 7) * np.outer(phi, phi.conj()) + (alpha / 7) * rho_plus \
        + ((5 - alpha) / 7) * rho_minus
    return BipartiteState(3, 3, rho)


def isotropic_state(m, x):
    # the |Phi> eigenvalue is x, so x < 0 is not a state
    _check_range("x", x, 0.0, 1.0)
    phi = maximally_entangled(m)
    d = m * m
    rho = (1 - x) / (d - 1) * np.eye(d) \
        + (d * x - 1) / (d - 1) * np.outer(phi, phi.conj())
    return BipartiteState(m, m, rho)


def werner_state(m, x):
    _check_range("x", x, -1.0, 1.0)
    if m < 2:
        raise ParamOutOfRange("Werner states need m >= 2")
    d = m * m
    rho = (m - x) / (m ** 3 - m) * np.eye(d) \
        + (m * x - 1) / (m ** 3 - m) * swap_operator(m)
    return BipartiteState(m, m, rho)


def hybrid_state(m, n, x):
    """Werner state mixed with a partially degenerate classical part.

    Kets are labelled |1>..|m> as in the usual presentation of this family;
    here they map to 0-based indices, so |11> is index 0 and the projector P
    covers |kk> for k = 1..n (0-based).
    """
    if m < 3:
        raise ParamOutOfRange(f"hybrid states need m >= 3, got {m}")
    if not 2 <= n <= m - 1:
        raise ParamOutOfRange(f"n={n} outside [2, {m - 1}]")
    _check_range("x", x, -1.0, 1.0)
    d = m * m
    p = np.zeros((d, d))
    for k in range(1, n + 1):
        p[k * m + k, k * m + k] = 1 / n
    e11 = np.zeros((d, d))
    e11[0, 0] = 1.0
    rho_w = werner_state(m, x).rho
    rho = (rho_w + p) / 2 + (1 - m + x) / (2 * (m * m - 1)) * (p - e11)
    return BipartiteState(m, m, rho)


def hybrid_reduced_spectrum(m, n, x):
    """Closed-form eigenvalues of Tr_B of :func:`hybrid_state`.

    Returns ``(nondegenerate, n_fold, remaining)`` where ``remaining`` has
    multiplicity m - n - 1.
    """
    q = m * m - 1
    single = (2 * m * m - m * x - m - 1) / (2 * m * q)
    n_fold = 1 / (2 * m) + (m * m - m + x) / (2 * n * q)
    return single, n_fold, 1 / (2 * m)


# -- random states -----------------------------------------------------------

def make_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def ginibre_matrix(rows, cols, rng):
    rng = make_rng(rng)
    return (rng.standard_normal((rows, cols))
            + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def ginibre_density(d, seed, rank=None):
    """Random density matrix G G^dag / Tr(G G^dag), G of shape d x rank."""
    g = ginibre_matrix(d, d if rank is None else rank, seed)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def haar_unitary(d, seed):
    z = ginibre_matrix(d, d, seed)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_amplitudes(m, n, seed):
    psi = ginibre_matrix(m * n, 1, seed).ravel()
    return psi / np.linalg.norm(psi)


def random_pure(m, n, seed):
    return pure_state(random_amplitudes(m, n, seed), m, n)


def random_mixed(m, n, seed, rank=None):
    return BipartiteState(m, n, ginibre_density(m * n, seed, rank))


def mixed_interpolation(d, x, seed, dim_b=None):
    """(1 - x) I / D + x G with G a seeded Ginibre density matrix, D = d*dim_b.

    The same seed gives the same G for every x.
    """
    _check_range("x", x, 0.0, 1.0)
    n = d if dim_b is None else dim_b
    D = d * n
    rho = (1 - x) / D * np.eye(D)
    if x != 0:
        rho = rho + x * ginibre_density(D, seed)
    return BipartiteState(d, n, rho)


def with_reduced_spectrum(state, spectrum, seed):
    """Locally reshape `state` so Tr_B has the given eigenvalues.

    Applies (S ⊗ I) rho (S ⊗ I)^dag with S = W diag(sqrt(spectrum)) rho_A^(-1/2)
    for a Haar-random W. Requires a full-rank rho_A. Used to build states
    whose reduced matrix is exactly degenerate.
    """
    spectrum = np.asarray(spectrum, dtype=float)
    m = state.dim_a
    if spectrum.shape != (m,) or np.any(spectrum < 0) \
            or abs(spectrum.sum() - 1) > STATE_TOL:
        raise ParamOutOfRange("spectrum must be a probability vector of length m")
    w, v = linalg.hermitian_eig(partial_trace_b(state))
    if w[0] <= 1e-12:
        raise SkewMinError("reduced matrix must be full rank")
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    s = haar_unitary(m, seed) @ np.diag(np.sqrt(spectrum)) @ inv_sqrt
    k = np.kron(s, np.eye(state.dim_b))
    rho = k @ state.rho @ k.conj().T
    return BipartiteState(m, state.dim_b, rho / np.trace(rho).real)


# -- JSON state files --------------------------------------------------------

def state_to_dict(state):
    return {
        "dim_a": state.dim_a,
        "dim_b": state.dim_b,
        "matrix": [[[float(z.real), float(z.imag)] for z in row]
                   for row in state.rho],
    }


def state_from_dict(obj):
    """Parse the JSON state format; raises KeyError/TypeError/ValueError
    naming the offending field on malformed input."""
    if not isinstance(obj, dict):
        raise TypeError("state file must contain a JSON object")
    for key in ("dim_a", "dim_b", "matrix"):
        if key not in obj:
            raise KeyError(f"missing field '{key}'")
    m, n = obj["dim_a"], obj["dim_b"]
    for key, val in (("dim_a", m), ("dim_b", n)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise TypeError(f"field '{key}' must be a positive integer")
    rows = obj["matrix"]
    d = m * n
    if not isinstance(rows, list) or len(rows) != d:
        raise TypeError(f"field 'matrix' must be a list of {d} rows")
    rho = np.empty((d, d), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise TypeError(f"field 'matrix[{i}]' must hold {d} entries")
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(t, (int, float))
                               and not isinstance(t, bool) for t in entry)):
                raise TypeError(f"field 'matrix[{i}][{j}]' must be [re, im]")
            rho[i, j] = complex(entry[0], entry[1])
    return BipartiteState(m, n, rho)


def load_state(path):
    with open(path) as fh:
        return state_from_dict(json.load(fh))


def save_state(state, path):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh)
