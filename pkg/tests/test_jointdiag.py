import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from skewmin import linalg, states
from skewmin.errors import DimensionMismatch
from skewmin.jointdiag import (GivensRotation, JointDiagProblem, RotationWorkspace,
                               apply_rotation, jacobi_eigh, joint_diagonalize,
                               objective, solve_rotation)

from conftest import random_hermitian


def stack(*mats):
    return np.array(mats, dtype=complex)


def random_set(rng, k, d):
    return rng.normal(size=(k, d, d)) + 1j * rng.normal(size=(k, d, d))


def commuting_set(seed, k, d):
    q = states.haar_unitary(d, seed)
    r = np.random.default_rng(seed)
    diags = r.normal(size=(k, d))
    return np.array([(q * w) @ q.conj().T for w in diags]), diags


class TestWorkspace:
    def test_g_vectors(self, rng):
        mats = random_set(rng, 3, 4)
        ws = RotationWorkspace.from_matrices(mats, 1, 3)
        for i, m in enumerate(mats):
            a, b, c, d = m[1, 1], m[1, 3], m[3, 1], m[3, 3]
            assert_allclose(ws.g_matrix[i], [a - d, b + c, 1j * (c - b)])
        assert np.array_equal(ws.rayleigh, ws.rayleigh.T)

    def test_quadratic_form_matches_rotated_pair(self, rng):
        mats = random_set(rng, 4, 2)
        ws = RotationWorkspace.from_matrices(mats, 0, 1)
        for _ in range(10):
            rot = GivensRotation(0, 1, rng.uniform(0, math.pi / 4), rng.uniform(-math.pi, math.pi))
            out = apply_rotation(mats.copy(), rot)
            v = np.array([math.cos(2 * rot.theta), -math.sin(2 * rot.theta) * math.cos(rot.phi),
                          -math.sin(2 * rot.theta) * math.sin(rot.phi)])
            assert_allclose(out[:, 0, 0] - out[:, 1, 1], ws.g_matrix @ v, atol=1e-12)


class TestSolveRotation:
    def test_diagonal_max_stays(self):
        ws = RotationWorkspace.from_matrices(stack(np.diag([1, 0])), 0, 1)
        assert solve_rotation(ws, "max").theta == 0

    def test_diagonal_min_equal_split(self):
        mats = stack(np.diag([1, 0]))
        rot = solve_rotation(RotationWorkspace.from_matrices(mats, 0, 1), "min")
        assert rot.theta == pytest.approx(math.pi / 4)
        apply_rotation(mats, rot)
        assert_allclose(np.diag(mats[0]), [0.5, 0.5], atol=1e-15)

    def test_pauli_x_max(self):
        mats = stack([[0, 1], [1, 0]])
        rot = solve_rotation(RotationWorkspace.from_matrices(mats, 0, 1), "max")
        assert rot.theta == pytest.approx(math.pi / 4)
        apply_rotation(mats, rot)
        assert_allclose(mats[0], np.diag([1, -1]), atol=1e-15)

    @given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["max", "min"]))
    def test_angle_range_and_optimality(self, seed, mode):
        r = np.random.default_rng(seed)
        mats = random_set(r, 3, 2)
        rot = solve_rotation(RotationWorkspace.from_matrices(mats, 0, 1), mode)
        assert 0 <= rot.theta <= math.pi / 4 + 1e-15
        best = objective(apply_rotation(mats.copy(), rot))
        sign = 1 if mode == "max" else -1
        for _ in range(50):
            cand = GivensRotation(0, 1, r.uniform(0, math.pi / 2), r.uniform(-math.pi, math.pi))
            assert sign * (best - objective(apply_rotation(mats.copy(), cand))) >= -1e-12


class TestApplyRotation:
    def test_zero_angle(self, rng):
        mats = random_set(rng, 2, 3)
        assert_allclose(apply_rotation(mats.copy(), GivensRotation(0, 2, 0.0, 1.0)), mats)

    def test_only_p_q_change_and_traces_kept(self, rng):
        mats = random_set(rng, 3, 5)
        out = apply_rotation(mats.copy(), GivensRotation(1, 3, 0.3, 0.7))
        keep = [0, 2, 4]
        assert_allclose(out[:, keep][:, :, keep], mats[:, keep][:, :, keep])
        assert_allclose(np.trace(out, axis1=1, axis2=2), np.trace(mats, axis1=1, axis2=2),
                        atol=1e-12)


class TestObjective:
    def test_trivial(self, rng):
        assert objective(np.zeros((2, 3, 3))) == 0
        assert objective(np.eye(3)) == 3

    def test_direct_sum(self, rng):
        mats = random_set(rng, 4, 5)
        want = sum(abs(m[k, k]) ** 2 for m in mats for k in range(5))
        assert objective(mats) == pytest.approx(want, rel=1e-14)


class TestJointDiagonalize:
    def test_already_diagonal(self, rng):
        mats = np.array([np.diag(rng.normal(size=4)) for _ in range(3)])
        res = joint_diagonalize(JointDiagProblem(mats))
        assert res.converged and res.sweeps_used == 1 and res.rotations_applied == 0
        assert np.array_equal(res.unitary, np.eye(4))

    def test_commuting_pair(self):
        mats, diags = commuting_set(3, 2, 6)
        res = joint_diagonalize(JointDiagProblem(mats))
        assert res.converged
        out = np.array([res.unitary @ m @ res.unitary.conj().T for m in mats])
        off = out - np.array([np.diag(np.diag(o)) for o in out])
        assert np.max(np.abs(off)) < 1e-10
        for got, want in zip(res.joint_eigenvalues, diags):
            assert_allclose(np.sort(got.real), np.sort(want), atol=1e-10)

    def test_min_single_diag(self):
        res = joint_diagonalize(JointDiagProblem(np.diag([1.0, 0.0]), "min"))
        assert res.objective == pytest.approx(0.5)
        assert_allclose(res.joint_eigenvalues[0], [0.5, 0.5], atol=1e-15)

    def test_min_schur_horn(self, rng):
        # a single Hermitian matrix can always be brought to a constant diagonal
        h = random_hermitian(rng, 4)
        res = joint_diagonalize(JointDiagProblem(h, "min", max_sweeps=500))
        assert res.objective == pytest.approx(np.trace(h).real ** 2 / 4, abs=1e-9)

    def test_single_matrix_gives_eigenvalues(self, rng):
        h = random_hermitian(rng, 7)
        w, _ = jacobi_eigh(h)
        assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-12)

    def test_dimension_one(self):
        res = joint_diagonalize(JointDiagProblem(np.array([[[2.0]], [[1j]]]), "min"))
        assert res.objective == pytest.approx(5.0)
        assert res.converged and res.sweeps_used == 0

    def test_bad_shapes(self):
        with pytest.raises(DimensionMismatch):
            JointDiagProblem(np.zeros((2, 3, 4)))
        with pytest.raises(ValueError):
            JointDiagProblem(np.eye(2), mode="sideways")

    def test_result_consistency(self, rng):
        mats = random_set(rng, 4, 6)
        res = joint_diagonalize(JointDiagProblem(mats, "min", max_sweeps=10))
        u = res.unitary
        assert linalg.is_unitary(u, 1e-10)
        diag = np.array([np.diag(u @ m @ u.conj().T) for m in mats])
        assert np.max(np.abs(diag - res.joint_eigenvalues)) < 1e-12

    @given(st.integers(0, 2 ** 32 - 1), st.integers(2, 7), st.integers(1, 5),
           st.sampled_from(["max", "min"]))
    def test_monotone_unitary_invariants(self, seed, d, k, mode):
        r = np.random.default_rng(seed)
        mats = random_set(r, k, d)
        res = joint_diagonalize(JointDiagProblem(mats, mode, max_sweeps=8),
                                trace_rotations=True)
        steps = np.diff(res.rotation_trace)
        if mode == "max":
            assert np.all(steps >= -1e-12)
        else:
            assert np.all(steps <= 1e-12)
        assert all(n == d * (d - 1) // 2 for n in res.rotations_per_sweep)
        u = res.unitary
        assert np.max(np.abs(u @ u.conj().T - np.eye(d))) < 1e-10
        out = np.array([u @ m @ u.conj().T for m in mats])
        assert abs(np.trace(out, axis1=1, axis2=2).sum() - np.trace(mats, axis1=1, axis2=2).sum()) < 1e-10
        assert abs(np.sum(np.abs(out) ** 2) - np.sum(np.abs(mats) ** 2)) < 1e-10 * max(1, np.sum(np.abs(mats) ** 2))

    def test_deterministic(self, rng):
        mats = random_set(rng, 3, 5)
        a = joint_diagonalize(JointDiagProblem(mats, "min"))
        b = joint_diagonalize(JointDiagProblem(mats.copy(), "min"))
        assert np.array_equal(a.unitary, b.unitary)
