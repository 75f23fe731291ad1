"""Closed-form MIN values for the benchmark state families.

These are evaluated independently of the sweep engine and serve as ground
truth in the test-suite and the reproduction suites.
"""
import math
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import ParamOutOfRange, WrongDimension

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

# sudden-change point of the PPT curve
PPT_NT = (5 + math.sqrt(25 - 4 * (383 - 34 * math.sqrt(94)) / 9)) / 2

HYBRID_SWITCH = -14 / 15


class QubitQuditWitness(NamedTuple):
    t_matrix: np.ndarray
    bloch_r: np.ndarray
    v_min: float


def _clamp(value, eps=1e-12):
    return 0.0 if -eps < value < 0.0 else value


def _check_range(name, value, lo, hi):
    if not lo - 1e-12 <= value <= hi + 1e-12:
        raise ParamOutOfRange(f"{name}={value!r} outside [{lo}, {hi}]")


def pure_min(coefficients):
    """1 - sum u_k^4 from Schmidt coefficients (or a SchmidtForm)."""
    u = np.asarray(getattr(coefficients, "coefficients", coefficients), dtype=float)
    return _clamp(float(1.0 - np.sum(u ** 4)))


def qubit_qudit_witness(state):
    if state.dim_a != 2:
        raise WrongDimension(f"subsystem A has dimension {state.dim_a}, need 2")
    s = linalg.matrix_sqrt(state.rho)
    eye = np.eye(state.dim_b)
    ops = [np.kron(p, eye) for p in PAULI]
    half = [s @ o for o in ops]
    t = np.array([[np.trace(half[i] @ half[j]).real for j in range(3)]
                  for i in range(3)])
    t = 0.5 * (t + t.T)
    r = np.array([np.trace(state.rho @ o).real for o in ops])
    return QubitQuditWitness(t, r, float(np.linalg.eigvalsh(t)[0]))


def qubit_qudit_min(state, r_zero_tol=1e-9):
    w = qubit_qudit_witness(state)
    r2 = float(w.bloch_r @ w.bloch_r)
    if math.sqrt(r2) < r_zero_tol:
        return _clamp(0.5 * (1.0 - w.v_min))
    return _clamp(0.5 * (1.0 - float(w.bloch_r @ w.t_matrix @ w.bloch_r) / r2))


def ppt_min(alpha):
    _check_range("alpha", alpha, 2.0, 5.0)
    if alpha <= PPT_NT:
        return 4 / 21
    return ppt_min_upper(alpha)


def ppt_min_upper(alpha):
    """The alpha > N_T branch, defined on all of [2, 5]."""
    a = min(max(alpha, 0.0), 5.0)
    return (21 - math.sqrt(6 * (5 - a)) - math.sqrt(6 * a)
            - 3 * math.sqrt(a * (5 - a))) / 31.5


def isotropic_min(m, x):
    _check_range("x", x, 0.0, 1.0)
    x = min(max(x, 0.0), 1.0)
    val = (m * m * x - 2 * x + 1 - 2 * math.sqrt(x * (1 - x) * (m * m - 1))) \
        / (m * (1 + m))
    return _clamp(val)


def werner_min(m, x):
    _check_range("x", x, -1.0, 1.0)
    x = min(max(x, -1.0), 1.0)
    val = (m - x - math.sqrt((m * m - 1) * (1 - x * x))) / (2 * (1 + m))
    return _clamp(val)


def _hybrid_f(x):
    return (11 + 3.5 * x - math.sqrt((7 * x + 22) * (x + 1))
            + 2 * math.sqrt(2 - 2 * x * x) - math.sqrt((4 * x + 44) * (1 - x)))


def hybrid_min_m3(x, t=None):
    """m = 3 closed form as usually printed.

    `t` overrides the piecewise switch: t = 3 for x <= -14/15 (the endpoint
    x = -1 is included), t = 1 above.
    """
    _check_range("x", x, -1.0, 1.0)
    x = min(max(x, -1.0), 1.0)
    if t is None:
        t = 3 if x <= HYBRID_SWITCH else 1
    val = (9 - 3 * x - 6 * math.sqrt(2 - 2 * x * x) + (2 - t) * _hybrid_f(x)) / 48
    return _clamp(val)


def hybrid_min_branches(x):
    """Both m = 3 branch values at `x`, keyed by t."""
    return {3: hybrid_min_m3(x, t=3), 1: hybrid_min_m3(x, t=1)}


def hybrid_min_m3_corrected(x):
    """m = 3 closed form re-derived from the general-m expression.

    Differs from :func:`hybrid_min_m3` in two places: the last root of f
    reads sqrt((14x + 44)(1 - x)), and below the switch the f term drops out
    entirely. The corrected f vanishes exactly at x = -14/15, so the value is
    continuous there.
    """
    _check_range("x", x, -1.0, 1.0)
    x = min(max(x, -1.0), 1.0)
    f = (11 + 3.5 * x - math.sqrt((7 * x + 22) * (x + 1))
         + 2 * math.sqrt(2 - 2 * x * x) - math.sqrt((14 * x + 44) * (1 - x)))
    coef = 0 if x <= HYBRID_SWITCH else 1
    return _clamp((9 - 3 * x - 6 * math.sqrt(2 - 2 * x * x) + coef * f) / 48)


def hybrid_collision_point(m, n):
    """x at which the single and n-fold eigenvalues of Tr_B rho_H coincide.

    There the reduced state has one (n + 1)-fold block, the set of admissible
    broken observables grows, and the closed forms (built for an n-fold
    block) no longer give the MIN. Returns None when outside [-1, 1].
    """
    q = m * m - 1
    x = (2 * m * m - m - 1 - q - m * (m * m - m) / n) / (m + m / n)
    return x if -1.0 <= x <= 1.0 else None


def hybrid_min(m, n, x):
    if m < 3 or not 2 <= n <= m - 1:
        raise ParamOutOfRange(f"hybrid oracle needs m >= 3 and 2 <= n <= m-1, got m={m}, n={n}")
    if m == 3:
        return hybrid_min_m3(x)
    _check_range("x", x, -1.0, 1.0)
    x = min(max(x, -1.0), 1.0)
    xp = (m - 1) * (1 + x)
    xm = (m + 1) * (1 - x)
    y = (m * m + x - m) * m / n
    bracket = (2 * (m * m - x - 1) + xp * (m - 2 * n) + 2 * y
               + (m * m - m - 2 * n + 2) * math.sqrt(xp * xm)
               + (2 * n - 2) * math.sqrt(xp + y) * (math.sqrt(xp) + math.sqrt(xm)))
    return _clamp(0.75 - bracket / (4 * (m ** 3 - m)))
