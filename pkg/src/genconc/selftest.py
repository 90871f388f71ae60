"""Randomized self-checks run by ``genconc selftest``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import relative_lagrange_gap
from .measure import canonical_bipartitions, concurrence
from .qstate import random_state

LAGRANGE_TOL = 1e-10
ROUTE_TOL = 1e-9
ROUTE_DIMS = ((2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 2, 2, 2), (2, 3, 4))


def unit_disc_vector(rng: np.random.Generator, m: int) -> np.ndarray:
    """``m`` complex entries uniform on the closed unit disc."""
    radius = np.sqrt(rng.random(m))
    angle = rng.uniform(0.0, 2.0 * np.pi, m)
    return radius * np.exp(1j * angle)


@dataclass(frozen=True)
class FuzzOutcome:
    samples: int
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol


def lagrange_fuzz(samples: int = 10_000, max_m: int = 64, seed: int = 0) -> FuzzOutcome:
    """Largest relative Lagrange gap over random pairs with ``2 <= m <= max_m``."""
    if max_m < 2:
        raise ValueError("max_m must be >= 2")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        m = int(rng.integers(2, max_m + 1))
        a = unit_disc_vector(rng, m)
        b = unit_disc_vector(rng, m)
        worst = max(worst, relative_lagrange_gap(a, b))
    return FuzzOutcome(samples, worst, LAGRANGE_TOL)


def route_fuzz(samples: int = 1000, seed: int = 0, dims_pool=ROUTE_DIMS) -> FuzzOutcome:
    """Largest disagreement of the wedge and eigen routes from the trace route."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(samples):
        dims = dims_pool[k % len(dims_pool)]
        state = random_state(dims, rng)
        for cut in canonical_bipartitions(len(dims)):
            ref = concurrence(state, cut, "trace")
            worst = max(
                worst,
                abs(concurrence(state, cut, "wedge") - ref),
                abs(concurrence(state, cut, "eigen") - ref),
            )
    return FuzzOutcome(samples, worst, ROUTE_TOL)
