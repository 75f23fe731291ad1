#!/usr/bin/env python3
"""Wall time and sweep counts of the MIN pipeline against dimension.

Random states are (1 - x) I / D + x G; with --degenerate the reduced state
is reshaped to carry one k-fold eigenvalue so the sweep path is exercised.
"""
import argparse
import statistics
import time
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from skewmin import states
from skewmin.engine import MinConfig, min_skew


@dataclass(frozen=True)
class BenchConfig:
    dims: Tuple[int, ...] = (2, 4, 8, 12, 16, 20)
    samples: int = 3
    x: float = 0.5
    seed: int = 0
    degenerate: bool = False


def sample_state(m, cfg, child):
    st_ = states.mixed_interpolation(m, cfg.x, child, m)
    if cfg.degenerate:
        spectrum = np.full(m, 1.0 / m)
        spectrum[0] *= 1.5
        spectrum[1:] = (1 - spectrum[0]) / (m - 1)
        st_ = states.with_reduced_spectrum(st_, spectrum, child)
    return st_


def run(cfg):
    print("m\tn\tmean_s\tstdev_s\tmax_sweeps")
    for m in cfg.dims:
        times, sweeps = [], []
        for child in np.random.SeedSequence([cfg.seed, m]).spawn(cfg.samples):
            st_ = sample_state(m, cfg, child)
            t0 = time.perf_counter()
            rep = min_skew(st_, MinConfig())
            times.append(time.perf_counter() - t0)
            sweeps.append(rep.sweeps)
        sd = statistics.stdev(times) if len(times) > 1 else 0.0
        print(f"{m}\t{m}\t{statistics.fmean(times):.4f}\t{sd:.4f}\t{max(sweeps)}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dims", type=int, nargs="+", default=list(BenchConfig.dims))
    p.add_argument("--samples", type=int, default=BenchConfig.samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degenerate", action="store_true")
    args = p.parse_args()
    run(BenchConfig(tuple(args.dims), args.samples, seed=args.seed, degenerate=args.degenerate))


if __name__ == "__main__":
    main()
