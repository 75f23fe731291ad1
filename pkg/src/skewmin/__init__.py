"""Measurement-induced non-locality from skew information, computed by
inverse approximate joint diagonalization."""
from .engine import MinConfig, MinReport, brute_force_min, min_skew, partition_degeneracies
from .jointdiag import JointDiagProblem, JointDiagResult, joint_diagonalize
from .skew import BrokenObservable, min_direct, quantum_fisher_information, skew_information
from .states import BipartiteState

__all__ = [
    "BipartiteState", "BrokenObservable", "JointDiagProblem", "JointDiagResult",
    "MinConfig", "MinReport", "brute_force_min", "joint_diagonalize", "min_direct",
    "min_skew", "partition_degeneracies", "quantum_fisher_information",
    "skew_information",
]
