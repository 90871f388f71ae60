"""Random-restart hill climbing for highly entangled pure states.

Each restart owns a ``numpy.random.Generator`` (PCG64) seeded with
``seed + restart``. A restart starts from a Gaussian-normalized random state
and repeatedly proposes ``perturb(current, step)``; a proposal is kept only if
the global measure strictly increases. After every run of 20 consecutive
rejections the step shrinks by ``decay``.

Restarts are independent, so they are advanced in lockstep as one batch. The
per-restart random streams and acceptance rule are exactly those of running
each restart on its own, which keeps results independent of batching.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimTooLarge
from .measure import (
    DEFAULT_ROUTE,
    ROUTES,
    EntanglementReport,
    canonical_bipartitions,
    global_report,
    max_concurrence,
)
from .qstate import PureState, make_state, random_state, total_dim, validate_dims

logger = logging.getLogger(__name__)

STALL_WINDOW = 20
MAX_SEARCH_DIM = 2**12


@dataclass(frozen=True)
class SearchConfig:
    dims: tuple[int, ...]
    restarts: int = 16
    iters_per_restart: int = 5000
    initial_step: float = 0.3
    decay: float = 0.97
    seed: int = 0
    route: str = DEFAULT_ROUTE

    def __post_init__(self):
        object.__setattr__(self, "dims", validate_dims(self.dims))
        if len(self.dims) < 2:
            raise ValueError("search needs at least two particles")
        if self.restarts < 1 or self.iters_per_restart < 1:
            raise ValueError("restarts and iters_per_restart must be >= 1")
        if not self.initial_step > 0:
            raise ValueError("initial_step must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("decay must lie in (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if total_dim(self.dims) > MAX_SEARCH_DIM:
            raise DimTooLarge(f"search is limited to D <= {MAX_SEARCH_DIM}")


@dataclass(frozen=True, eq=False)
class SearchResult:
    best_state: PureState
    best_report: EntanglementReport
    best_restart: int
    trajectory: list[float]  # best value reached by each restart
    evaluations: int
    max_evaluated: float  # largest global E seen in any evaluation
    accepted: list[list[float]] = field(repr=False)  # accepted values per restart, in order


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    return np.random.default_rng((seed + restart) % 2**64)


def perturb(state: PureState, step: float, rng: np.random.Generator) -> PureState:
    """Add complex Gaussian noise of scale ``step / sqrt(2D)`` and renormalize."""
    if step < 0:
        raise ValueError("step must be non-negative")
    if step == 0:
        return state
    z = rng.standard_normal((2, state.D))
    scale = step / math.sqrt(2 * state.D)
    return make_state(state.dims, state.amplitudes + scale * (z[0] + 1j * z[1]))


class _BatchGlobalE:
    """Global measure (trace route) for a stack of state vectors at once."""

    def __init__(self, dims: tuple[int, ...]):
        self.dims = dims
        self.plans = []
        for cut in canonical_bipartitions(len(dims)):
            axes = (0,) + tuple(1 + p for p in cut.members + cut.rest)
            d_m = math.prod(dims[p] for p in cut.members)
            self.plans.append((axes, d_m))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        r = x.shape[0]
        t = x.reshape((r,) + self.dims)
        total = np.zeros(r)
        for axes, d_m in self.plans:
            m = np.transpose(t, axes).reshape(r, d_m, -1)
            rho = m @ np.conj(np.swapaxes(m, 1, 2))
            pur = np.sum(rho.real**2 + rho.imag**2, axis=(1, 2))
            total += np.sqrt(np.maximum(2.0 * (1.0 - pur), 0.0))
        return total


def _evaluator(config: SearchConfig):
    if config.route == "trace":
        return _BatchGlobalE(config.dims)

    def slow(x: np.ndarray) -> np.ndarray:
        return np.array([
            global_report(make_state(config.dims, row), config.route).global_E for row in x
        ])

    return slow


def global_upper_bound(dims) -> float:
    """Sum of per-cut maxima; no state can exceed it."""
    return sum(max_concurrence(dims, c) for c in canonical_bipartitions(len(dims)))


def maximize(config: SearchConfig, block: int | None = None) -> SearchResult:
    """Hill-climb the global measure from ``config.restarts`` random starts.

    Deterministic for a given config. Ties between restarts go to the lowest
    restart index. One ``restart=<k> best=<E> evals=<n>`` line per restart is
    logged at INFO level.
    """
    dims = config.dims
    D = total_dim(dims)
    R = config.restarts
    evaluate = _evaluator(config)
    rngs = [restart_rng(config.seed, r) for r in range(R)]

    x = np.stack([random_state(dims, g).amplitudes for g in rngs]).astype(np.complex128)
    cur = evaluate(x)
    accepted = [[float(v)] for v in cur]
    max_evaluated = float(cur.max())
    evaluations = R

    step = np.full(R, float(config.initial_step))
    streak = np.zeros(R, dtype=np.int64)
    root = math.sqrt(2 * D)
    if block is None:
        block = max(1, min(256, 2**21 // (R * 2 * D)))

    done = 0
    while done < config.iters_per_restart:
        b = min(block, config.iters_per_restart - done)
        noise = np.stack([g.standard_normal((b, 2, D)) for g in rngs])
        for k in range(b):
            scale = step / root
            cand = x + scale[:, None] * (noise[:, k, 0] + 1j * noise[:, k, 1])
            cand /= np.linalg.norm(cand, axis=1)[:, None]
            vals = evaluate(cand)
            evaluations += R
            max_evaluated = max(max_evaluated, float(vals.max()))
            take = vals > cur
            if take.any():
                x[take] = cand[take]
                cur[take] = vals[take]
                for r in np.flatnonzero(take):
                    accepted[r].append(float(vals[r]))
            streak[take] = 0
            streak[~take] += 1
            stalled = streak >= STALL_WINDOW
            step[stalled] *= config.decay
            streak[stalled] = 0
        done += b

    for r in range(R):
        logger.info("restart=%d best=%.12g evals=%d", r, cur[r], 1 + config.iters_per_restart)

    best_r = int(np.argmax(cur))
    best_state = make_state(dims, x[best_r])
    return SearchResult(
        best_state=best_state,
        best_report=global_report(best_state, config.route),
        best_restart=best_r,
        trajectory=[float(v) for v in cur],
        evaluations=evaluations,
        max_evaluated=max_evaluated,
        accepted=accepted,
    )
