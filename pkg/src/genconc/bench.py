"""Timing the wedge route against the trace route.

Both routes compute the same ``E_M``; the wedge route touches every bivector
coefficient, ``C(D_m, 2) * C(D_rest, 2)`` of them, while the trace route
needs ``O(D_m^2 * D_rest)`` work for the reduced density matrix. Each
configuration gets one seeded random state, one discarded warm-up
evaluation and ``reps`` timed evaluations; the median is reported. Times come
from ``time.perf_counter_ns``.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimTooLarge
from .measure import MAX_WEDGE_TOTAL_DIM, ROUTES, Bipartition, concurrence
from .qstate import random_state, total_dim, validate_dims

BENCH_ROUTES = ("wedge", "trace")


@dataclass(frozen=True)
class BenchRow:
    dims: tuple[int, ...]
    cut: Bipartition
    route: str
    wall_ns: int  # median over reps
    reps: int
    E: float


def timer_resolution_ns() -> float:
    return time.get_clock_info("perf_counter").resolution * 1e9


def _to_cut(n: int, cut) -> Bipartition:
    if isinstance(cut, Bipartition):
        return Bipartition(n, cut.members)
    if isinstance(cut, str):
        return Bipartition.parse(n, cut)
    return Bipartition(n, tuple(cut))


def time_route(state, cut: Bipartition, route: str, reps: int) -> tuple[int, float]:
    """Median wall time in ns over ``reps`` calls after one warm-up call."""
    value = concurrence(state, cut, route)
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        value = concurrence(state, cut, route)
        samples.append(time.perf_counter_ns() - t0)
    return max(1, int(statistics.median(samples))), value


def run_bench(
    dims_list: Iterable[Sequence[int]],
    cuts: Iterable,
    reps: int = 5,
    seed: int = 0,
    routes: Sequence[str] = BENCH_ROUTES,
) -> list[BenchRow]:
    """Time every route on every (dims, cut) pair, rows in input order.

    ``cuts`` are applied to each entry of ``dims_list`` and may be
    :class:`Bipartition` objects, index tuples or ``"0+1"`` strings.
    """
    if reps < 3:
        raise ValueError("reps must be >= 3")
    for r in routes:
        if r not in ROUTES:
            raise ValueError(f"unknown route {r!r}")
    dims_list = [validate_dims(d) for d in dims_list]
    cuts = list(cuts)
    plan = []
    for dims in dims_list:
        if "wedge" in routes and total_dim(dims) > MAX_WEDGE_TOTAL_DIM:
            raise DimTooLarge(f"dims {dims} exceed the wedge route cap D <= {MAX_WEDGE_TOTAL_DIM}")
        plan.append((dims, [_to_cut(len(dims), c) for c in cuts]))

    rows = []
    for dims, dim_cuts in plan:
        state = random_state(dims, np.random.default_rng(seed))
        for cut in dim_cuts:
            for route in routes:
                wall, value = time_route(state, cut, route, reps)
                rows.append(BenchRow(dims, cut, route, wall, reps, value))
    return rows


def echo_gap(rows: Sequence[BenchRow]) -> float:
    """Largest disagreement in E between routes on the same configuration."""
    by_key: dict = {}
    for row in rows:
        by_key.setdefault((row.dims, row.cut), []).append(row.E)
    return max((max(v) - min(v) for v in by_key.values()), default=0.0)


def speed_ratio(rows: Sequence[BenchRow], dims, cut, slow: str = "wedge", fast: str = "trace") -> float:
    dims = tuple(dims)
    cut = _to_cut(len(dims), cut)
    times = {r.route: r.wall_ns for r in rows if r.dims == dims and r.cut == cut}
    return times[slow] / times[fast]


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dims", "cut", "route", "reps", "median_ns", "E"])
    for r in rows:
        writer.writerow(["x".join(map(str, r.dims)), r.cut.label, r.route, r.reps, r.wall_ns, repr(r.E)])
    return buf.getvalue()
