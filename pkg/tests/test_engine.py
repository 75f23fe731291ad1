import numpy as np
import pytest
from numpy.testing import assert_allclose

from skewmin import linalg, oracles, states
from skewmin.engine import (MinConfig, brute_force_min, build_a_matrices, min_skew,
                            partition_degeneracies)
from skewmin.errors import DimensionMismatch, NotConverged
from skewmin.skew import BrokenObservable, min_direct


def spectrum_matrix(values, seed=0):
    u = states.haar_unitary(len(values), seed)
    return (u * np.asarray(values)) @ u.conj().T


class TestPartition:
    def test_two_fold_block(self):
        p = partition_degeneracies(spectrum_matrix([0.5, 0.5, 0.0]))
        assert p.n_nondegenerate == 1 and len(p.blocks) == 1
        assert p.blocks[0][1].shape == (3, 2)
        assert p.blocks[0][0] == pytest.approx(0.5)

    def test_maximally_mixed(self):
        p = partition_degeneracies(np.eye(4) / 4)
        assert p.n_nondegenerate == 0 and p.blocks[0][1].shape == (4, 4)

    def test_transitive_clusters(self):
        p = partition_degeneracies(np.diag([0.3, 0.3 + 5e-9, 0.4 - 5e-9, 0.4]), 1e-8)
        assert [len(c) for c in p.clusters] == [2, 2]
        assert p.min_cluster_gap == pytest.approx(0.1 - 1e-8)

    def test_chain_longer_than_tol(self):
        # neighbours each within tol so all three chain together
        p = partition_degeneracies(np.diag([0.2, 0.2 + 8e-9, 0.2 + 1.6e-8, 0.6 - 3.2e-8]))
        assert [len(c) for c in p.clusters] == [3, 1]

    def test_columns_orthonormal_and_complete(self):
        rho_a = spectrum_matrix([0.1, 0.2, 0.2, 0.25, 0.25], 3)
        p = partition_degeneracies(rho_a)
        cols = np.hstack([p.phi_n] + [b for _, b in p.blocks])
        assert cols.shape == (5, 5)
        assert np.max(np.abs(cols.conj().T @ cols - np.eye(5))) < 1e-10


class TestBuildA:
    def test_product(self):
        a = build_a_matrices(np.diag([1.0, 0, 0, 0]), 2, 2).a_matrices
        assert_allclose(a[0, 0], np.diag([1, 0]))
        assert np.all(a[1] == 0) and np.all(a[0, 1] == 0)

    def test_bell(self):
        a = build_a_matrices(states.bell_state().rho, 2, 2).a_matrices
        assert_allclose(a[0, 1], [[0, 0.5], [0, 0]])

    def test_invariants(self):
        st_ = states.random_mixed(2, 3, 1)
        s = linalg.matrix_sqrt(st_.rho)
        ps = build_a_matrices(s, 2, 3, states.haar_unitary(3, 2))
        a = ps.a_matrices
        assert np.max(np.abs(a - a.transpose(1, 0, 3, 2).conj())) < 1e-12
        assert abs(sum(np.trace(a[i, i]) for i in range(3)) - np.trace(s)) < 1e-10

    def test_rejects_bad_basis(self):
        with pytest.raises(DimensionMismatch):
            build_a_matrices(np.eye(4) / 2, 2, 2, np.ones((2, 2)))
        with pytest.raises(DimensionMismatch):
            build_a_matrices(np.eye(4), 2, 3)


class TestMinSkew:
    def test_product_zero(self):
        st_ = states.product_state(states.ginibre_density(3, 1), states.ginibre_density(2, 2))
        assert abs(min_skew(st_).value) < 1e-10

    def test_ppt_flat(self):
        assert min_skew(states.ppt_state(2.5)).value == pytest.approx(4 / 21, abs=1e-12)

    def test_werner_zero(self):
        assert abs(min_skew(states.werner_state(3, 1 / 3)).value) < 1e-12

    def test_bell(self):
        r = min_skew(states.bell_state())
        assert r.value == pytest.approx(0.5, abs=1e-12)
        assert len(r.subspace_reports) == 1 and r.subspace_reports[0].dimension == 2

    def test_report_fields(self):
        r = min_skew(states.random_mixed(3, 2, 0))
        assert r.subspace_reports == [] and r.converged and r.sweeps == 0
        assert abs(r.value - r.cross_check) <= 1e-9
        assert r.value == pytest.approx(1 - r.nondegenerate_contribution)
        assert 0 <= r.value <= 1
        d = r.to_dict()
        assert set(d) >= {"value", "nondegenerate_contribution", "cross_check",
                          "subspaces", "wall_time"}

    def test_optimal_basis_commutes(self):
        st_ = states.with_reduced_spectrum(states.random_mixed(3, 3, 2), [0.4, 0.3, 0.3], 3)
        r = min_skew(st_)
        rho_a = states.partial_trace_b(st_)
        u = r.optimal_basis.basis
        rotated = u.conj().T @ rho_a @ u
        assert np.max(np.abs(rotated - np.diag(np.diag(rotated)))) < 1e-10

    def test_pure_state_law(self):
        for seed in range(10):
            st_ = states.random_pure(3, 4, seed)
            rho_a = states.partial_trace_b(st_)
            assert min_skew(st_).value == pytest.approx(1 - np.trace(rho_a @ rho_a).real,
                                                        abs=1e-9)

    def test_iajd_beats_eigenbasis(self):
        # the raw eigenbasis is feasible, so the optimum can only be larger
        st_ = states.with_reduced_spectrum(states.random_mixed(3, 3, 5), [0.4, 0.3, 0.3], 6)
        p = partition_degeneracies(states.partial_trace_b(st_))
        raw = min_direct(st_, BrokenObservable(p.eigenvectors, 3))
        assert min_skew(st_).value >= raw - 1e-12

    def test_strict_non_convergence(self):
        st_ = states.with_reduced_spectrum(states.random_mixed(3, 3, 1), [1 / 3] * 3, 1)
        loose = min_skew(st_, MinConfig(max_sweeps=1))
        assert not loose.converged
        with pytest.raises(NotConverged):
            min_skew(st_, MinConfig(max_sweeps=1, strict=True))

    def test_deterministic(self):
        st_ = states.with_reduced_spectrum(states.random_mixed(3, 3, 7), [1 / 3] * 3, 7)
        assert min_skew(st_).value == min_skew(st_).value

    def test_b_basis_invariance(self):
        st_ = states.with_reduced_spectrum(states.random_mixed(3, 3, 9), [0.5, 0.25, 0.25], 1)
        ref = min_skew(st_).value
        for seed in range(3):
            got = min_skew(st_, MinConfig(basis_b=states.haar_unitary(3, seed))).value
            assert abs(got - ref) < 1e-9


class TestBruteForce:
    def test_nondegenerate_equal(self):
        st_ = states.random_mixed(3, 2, 3)
        assert brute_force_min(st_, samples=1000) == min_skew(st_).value

    def test_isotropic_qubit(self):
        st_ = states.isotropic_state(2, 0.5)
        assert brute_force_min(st_, samples=2000) == pytest.approx(
            oracles.isotropic_min(2, 0.5), abs=1e-6)

    def test_degenerate_two_qubit(self):
        for seed in range(10):
            st_ = states.with_reduced_spectrum(states.random_mixed(2, 2, seed), [0.5, 0.5], seed)
            bf = brute_force_min(st_, samples=2000, seed=seed, grid=120)
            val = min_skew(st_).value
            assert bf <= val + 1e-9
            assert val - bf < 1e-3
