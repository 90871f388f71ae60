import itertools
import math

import numpy as np
import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


# -- independent oracles: explicit index loops, no reshape/transpose --------

def brute_flat(dims, labels):
    idx = 0
    for j, d in zip(labels, dims):
        idx = idx * d + j
    return idx


def brute_reduced_density(amps, dims, keep):
    """rho_M[j, i] = sum_k a[j,k] conj(a[i,k]) by enumerating every label tuple."""
    keep = sorted(keep)
    rest = [p for p in range(len(dims)) if p not in keep]
    kept_labels = list(itertools.product(*[range(dims[p]) for p in keep]))
    rest_labels = list(itertools.product(*[range(dims[p]) for p in rest]))
    rho = np.zeros((len(kept_labels), len(kept_labels)), dtype=complex)

    def full(klab, rlab):
        labels = [0] * len(dims)
        for p, v in zip(keep, klab):
            labels[p] = v
        for p, v in zip(rest, rlab):
            labels[p] = v
        return amps[brute_flat(dims, labels)]

    for j, jl in enumerate(kept_labels):
        for i, il in enumerate(kept_labels):
            rho[j, i] = sum(full(jl, k) * np.conj(full(il, k)) for k in rest_labels)
    return rho


def brute_concurrence(amps, dims, keep):
    rho = brute_reduced_density(amps, dims, keep)
    pur = sum(abs(rho[a, b]) ** 2 for a in range(len(rho)) for b in range(len(rho)))
    return math.sqrt(max(2 * (1 - pur), 0.0))


def givens_unitary(d, rng, rotations=None):
    """Random d x d unitary as a product of complex Givens rotations and phases."""
    u = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, d)))
    for _ in range(rotations or 3 * d * d):
        p, q = sorted(rng.choice(d, size=2, replace=False))
        theta = rng.uniform(0, 2 * np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        g = np.eye(d, dtype=complex)
        g[p, p] = math.cos(theta)
        g[q, q] = math.cos(theta)
        g[p, q] = -np.exp(1j * phi) * math.sin(theta)
        g[q, p] = np.exp(-1j * phi) * math.sin(theta)
        u = g @ u
    return u


def gaussian_vector(rng, d):
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def record_acceptance(line):
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
