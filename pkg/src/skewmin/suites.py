"""Parameter sweeps over the benchmark families, numeric vs closed form.

Each grid point is an independent task; points may run in worker processes
(capped by ``MIN_SKEW_THREADS``) and rows always come back in grid order.
Random families derive one child seed per point from ``SeedSequence(seed)``
so a point's state does not depend on scheduling.
"""
import csv
import io
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import oracles, states
from .engine import MinConfig, min_skew
from .errors import NotPSD, ParamOutOfRange

log = logging.getLogger(__name__)

FAMILIES = ("pure", "qubit-qudit", "ppt", "isotropic", "werner", "hybrid", "random")
CSV_COLUMNS = ("family", "param_name", "param_value", "analytic", "numeric",
               "abs_error", "sweeps", "wall_time_s")


@dataclass(frozen=True)
class SuiteSpec:
    family: str
    m: Optional[int] = None
    n: Optional[int] = None
    points: Optional[int] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    seed: int = 0
    # hybrid, m = 3 only: "printed" or "corrected" closed form
    hybrid_oracle: str = "printed"

    def resolved(self):
        """Fill family defaults."""
        f = self.family
        if f not in FAMILIES:
            raise ParamOutOfRange(f"unknown family {f!r}")
        defaults = {
            "pure": (3, 3, 20, None, None),
            "qubit-qudit": (2, 4, 20, None, None),
            "ppt": (3, 3, 51, 2.0, 5.0),
            "isotropic": (3, 3, 21, 0.0, 1.0),
            "werner": (3, 3, 21, -1.0, 1.0),
            "hybrid": (3, 2, 21, -1.0, 1.0),
            "random": (20, 20, 51, 0.0, 1.0),
        }[f]
        m, n, points, lo, hi = defaults
        m = self.m if self.m is not None else m
        n = self.n if self.n is not None else n
        if f in ("isotropic", "werner") and self.n is None:
            n = m
        spec = SuiteSpec(f, m, n, self.points or points,
                         lo if self.lo is None else self.lo,
                         hi if self.hi is None else self.hi,
                         self.seed, self.hybrid_oracle)
        spec._validate()
        return spec

    def _validate(self):
        if self.points < 1:
            raise ParamOutOfRange("points must be positive")
        f = self.family
        if f == "qubit-qudit" and self.m != 2:
            raise ParamOutOfRange("qubit-qudit suite needs m = 2")
        if f == "ppt":
            if self.m != 3 or self.n != 3:
                raise ParamOutOfRange("PPT states are 3x3")
            for a in (self.lo, self.hi):
                if not 2.0 <= a <= 5.0:
                    raise ParamOutOfRange(f"alpha={a} outside [2, 5]")
        if f in ("isotropic", "werner") and self.n != self.m:
            raise ParamOutOfRange(f"{f} states need m = n")
        if f == "isotropic" and not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ParamOutOfRange("isotropic x range must lie in [0, 1]")
        if f in ("werner", "hybrid") and not (-1.0 <= self.lo <= self.hi <= 1.0):
            raise ParamOutOfRange(f"{f} x range must lie in [-1, 1]")
        if f == "hybrid" and (self.m < 3 or not 2 <= self.n <= self.m - 1):
            raise ParamOutOfRange("hybrid needs m >= 3 and 2 <= n <= m-1")
        if f == "random" and not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ParamOutOfRange("random x range must lie in [0, 1]")
        if self.hybrid_oracle not in ("printed", "corrected"):
            raise ParamOutOfRange("hybrid oracle must be 'printed' or 'corrected'")

    @property
    def param_name(self):
        return {"pure": "sample", "qubit-qudit": "sample", "ppt": "alpha"}.get(
            self.family, "x")

    def grid(self):
        if self.family in ("pure", "qubit-qudit"):
            return [float(i) for i in range(self.points)]
        if self.points == 1:
            return [float(self.lo)]
        return [float(v) for v in np.linspace(self.lo, self.hi, self.points)]


@dataclass(frozen=True)
class SuiteRow:
    family: str
    param_name: str
    param_value: float
    analytic: Optional[float]
    numeric: Optional[float]
    abs_error: Optional[float]
    sweeps: int
    wall_time: float
    note: str = ""

    def csv_fields(self, timing=True):
        return [self.family, self.param_name, fmt(self.param_value),
                fmt(self.analytic), fmt(self.numeric), fmt(self.abs_error),
                str(self.sweeps), fmt(self.wall_time) if timing else ""]


def fmt(value):
    if value is None:
        return ""
    return f"{value:.17g}"


def _state_and_oracle(spec, index, value, child_seed):
    f = spec.family
    if f == "pure":
        amps = states.random_amplitudes(spec.m, spec.n, child_seed)
        return (states.pure_state(amps, spec.m, spec.n),
                oracles.pure_min(states.schmidt(amps, spec.m, spec.n)))
    if f == "qubit-qudit":
        st = states.random_mixed(2, spec.n, child_seed)
        return st, oracles.qubit_qudit_min(st)
    if f == "ppt":
        return states.ppt_state(value), oracles.ppt_min(value)
    if f == "isotropic":
        return states.isotropic_state(spec.m, value), oracles.isotropic_min(spec.m, value)
    if f == "werner":
        return states.werner_state(spec.m, value), oracles.werner_min(spec.m, value)
    if f == "hybrid":
        if spec.m == 3 and spec.hybrid_oracle == "corrected":
            analytic = oracles.hybrid_min_m3_corrected(value)
        else:
            analytic = oracles.hybrid_min(spec.m, spec.n, value)
        return states.hybrid_state(spec.m, spec.n, value), analytic
    # one Ginibre G for the whole curve
    return states.mixed_interpolation(spec.m, value, spec.seed, spec.n), None


def _run_point(task):
    spec, index, value, child_seed, config = task
    note = ""
    if spec.family == "hybrid" and spec.m == 3 and value <= oracles.HYBRID_SWITCH:
        b = oracles.hybrid_min_branches(value)
        note = f"t-branch interval: t=3 -> {b[3]:.17g}, t=1 -> {b[1]:.17g}"
    if spec.family == "hybrid":
        xc = oracles.hybrid_collision_point(spec.m, spec.n)
        if xc is not None and abs(value - xc) < 1e-8:
            note = (note + "; " if note else "") + \
                "reduced-state eigenvalues collide; closed form does not apply"
    try:
        state, analytic = _state_and_oracle(spec, index, value, child_seed)
    except NotPSD as exc:
        return SuiteRow(spec.family, spec.param_name, value, None, None, None, 0,
                        0.0, f"state not PSD: {exc}")
    t0 = time.perf_counter()
    report = min_skew(state, config)
    elapsed = time.perf_counter() - t0
    err = None if analytic is None else abs(analytic - report.value)
    if not report.converged:
        note = (note + "; " if note else "") + "subspace did not converge"
    return SuiteRow(spec.family, spec.param_name, value, analytic, report.value,
                    err, report.sweeps, elapsed, note)


def worker_count():
    env = os.environ.get("MIN_SKEW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer MIN_SKEW_THREADS=%r", env)
    return os.cpu_count() or 1


def iter_suite(spec, config=MinConfig(), workers=None):
    """Yield SuiteRows in grid order."""
    spec = spec.resolved()
    grid = spec.grid()
    children = np.random.SeedSequence(spec.seed).spawn(len(grid))
    tasks = [(spec, i, v, children[i], config) for i, v in enumerate(grid)]
    workers = min(worker_count() if workers is None else workers, len(tasks))
    if workers <= 1:
        for t in tasks:
            yield _run_point(t)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_point, tasks)


def run_suite(spec, config=MinConfig(), workers=None):
    return list(iter_suite(spec, config, workers))


def write_csv(rows, fh, timing=True):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields(timing))
        fh.flush()


def rows_to_csv(rows, timing=True):
    buf = io.StringIO()
    write_csv(rows, buf, timing)
    return buf.getvalue()


def max_abs_error(rows):
    errs = [r.abs_error for r in rows if r.abs_error is not None]
    return max(errs) if errs else math.nan
