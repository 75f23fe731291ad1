#!/usr/bin/env python3
"""Run every benchmark family and write one CSV and one SVG per curve."""
import argparse
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

from skewmin.engine import MinConfig
from skewmin.suites import SuiteSpec, max_abs_error, run_suite, write_csv
from skewmin.svg import suite_chart

log = logging.getLogger("reproduce")


@dataclass(frozen=True)
class Curve:
    name: str
    spec: SuiteSpec


@dataclass
class RunConfig:
    out_dir: Path = Path("results")
    timing: bool = True
    solver: MinConfig = MinConfig()
    curves: List[Curve] = field(default_factory=lambda: [
        Curve("pure_3x3", SuiteSpec("pure", 3, 3, 20, seed=7)),
        Curve("qubit_qudit_2x4", SuiteSpec("qubit-qudit", 2, 4, 20, seed=7)),
        Curve("ppt", SuiteSpec("ppt", points=51)),
        *(Curve(f"isotropic_m{m}", SuiteSpec("isotropic", m, m, 21)) for m in (2, 3, 4)),
        *(Curve(f"werner_m{m}", SuiteSpec("werner", m, m, 21)) for m in (2, 3, 4)),
        Curve("hybrid_m3", SuiteSpec("hybrid", 3, 2, 21)),
        Curve("hybrid_m3_reworked", SuiteSpec("hybrid", 3, 2, 21, hybrid_oracle="corrected")),
        Curve("hybrid_m4", SuiteSpec("hybrid", 4, 2, 21)),
        Curve("hybrid_m5", SuiteSpec("hybrid", 5, 2, 21)),
        Curve("random_20x20", SuiteSpec("random", 20, 20, 51, seed=5)),
    ])


def run(cfg):
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for curve in cfg.curves:
        t0 = time.perf_counter()
        rows = run_suite(curve.spec, cfg.solver)
        with open(cfg.out_dir / f"{curve.name}.csv", "w", newline="") as fh:
            write_csv(rows, fh, timing=cfg.timing)
        (cfg.out_dir / f"{curve.name}.svg").write_text(suite_chart(rows, curve.name))
        for r in rows:
            if r.note:
                log.warning("%s %s=%.6g: %s", curve.name, r.param_name, r.param_value, r.note)
        print(f"{curve.name:28s} points={len(rows):3d} max_abs_error={max_abs_error(rows):.3e} "
              f"time={time.perf_counter() - t0:.1f}s")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=RunConfig.out_dir)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--skip-random", action="store_true", help="leave out the 20x20 curve")
    args = p.parse_args()
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    cfg = RunConfig(out_dir=args.out, timing=not args.no_timing)
    if args.skip_random:
        cfg.curves = [c for c in cfg.curves if c.spec.family != "random"]
    run(cfg)


if __name__ == "__main__":
    main()
