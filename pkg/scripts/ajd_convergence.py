#!/usr/bin/env python3
"""Sweeps to reach |sin theta| < tol for random Hermitian sets.

Prints generic sets beside jointly diagonalizable ones (shared eigenbasis),
against the ceil(log2 D) + 6 budget.
"""
import argparse
import math

import numpy as np

from skewmin.jointdiag import JointDiagProblem, joint_diagonalize
from skewmin.states import haar_unitary


def generic(rng, k, d):
    a = rng.normal(size=(k, d, d)) + 1j * rng.normal(size=(k, d, d))
    return (a + a.conj().transpose(0, 2, 1)) / 2


def commuting(rng, k, d):
    q = haar_unitary(d, rng)
    return np.array([(q * w) @ q.conj().T for w in rng.normal(size=(k, d))])


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-sweeps", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)
    print("mode\tD\tK\tbudget\tgeneric\tcommuting")
    for mode in ("max", "min"):
        for d in (2, 4, 8, 16, 32):
            for k in (1, 2, 4, 16):
                cells = []
                for make in (generic, commuting):
                    res = joint_diagonalize(JointDiagProblem(make(rng, k, d), mode, 1e-12,
                                                             args.max_sweeps))
                    cells.append(str(res.sweeps_used) if res.converged else f">{args.max_sweeps}")
                print(f"{mode}\t{d}\t{k}\t{math.ceil(math.log2(d)) + 6}\t" + "\t".join(cells),
                      flush=True)


if __name__ == "__main__":
    main()
