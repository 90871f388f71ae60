"""Reduced density matrices, purity and a Hermitian Jacobi eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimTooLarge, NoConvergence
from .qstate import PureState, check_subset, complement

MAX_REDUCED_DIM = 4096
JACOBI_MAX_SWEEPS = 100
CLAMP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    dim: int
    entries: np.ndarray = field(repr=False)

    def check(self, herm_tol: float = 1e-12, trace_tol: float = 1e-10, eig_tol: float = 1e-10) -> None:
        """Raise ``ValueError`` unless Hermitian, unit trace and PSD."""
        m = self.entries
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"entries have shape {m.shape}, expected {(self.dim, self.dim)}")
        herm = float(np.max(np.abs(m - m.conj().T))) if self.dim else 0.0
        if herm > herm_tol:
            raise ValueError(f"not Hermitian: max |rho - rho^H| = {herm:.3g}")
        tr = np.trace(m)
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"trace {tr} differs from 1")
        lam = eigs_hermitian(self)
        if lam[-1] < -eig_tol:
            raise ValueError(f"negative eigenvalue {lam[-1]:.3g}")


def as_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.entries
    m = np.asarray(rho, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def reduced_density(state: PureState, keep) -> DensityMatrix:
    """Partial trace of ``|psi><psi|`` over every particle not in ``keep``.

    Built straight from the amplitudes: with ``X`` the ``D_m x D_rest``
    matrix of amplitudes (rows indexed by the kept labels), ``rho = X X^H``.
    The full ``D x D`` projector is never formed.
    """
    members = check_subset(state.n, keep)
    rest = complement(state.n, members)
    d_m = math.prod(state.dims[p] for p in members)
    if d_m > MAX_REDUCED_DIM:
        raise DimTooLarge(f"reduced dimension {d_m} exceeds {MAX_REDUCED_DIM}")
    x = np.transpose(state.tensor(), members + rest).reshape(d_m, -1)
    rho = x @ x.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(d_m, rho)


def purity(rho) -> float:
    """``tr(rho^2)``, computed as the sum of ``|rho_ij|^2``."""
    m = as_matrix(rho)
    return float(np.sum(m.real**2 + m.imag**2))


def char_coeff2(rho) -> float:
    """Second characteristic-polynomial coefficient ``((tr rho)^2 - tr rho^2) / 2``."""
    m = as_matrix(rho)
    tr = float(np.trace(m).real)
    return 0.5 * (tr * tr - purity(m))


def det2(rho) -> float:
    m = as_matrix(rho)
    if m.shape != (2, 2):
        raise ValueError("det2 needs a 2x2 matrix")
    return float((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)


@dataclass(frozen=True, eq=False)
class EigenResult:
    values: np.ndarray  # descending, raw (not clamped)
    vectors: np.ndarray  # columns, matching ``values``
    sweeps: int


def _offdiag_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_eigh(rho, tol: float | None = None, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenResult:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of ``a[p, q]`` and then applies a
    real Givens rotation, so ``U = diag(1, e^{-i phi}) R``. Sweeps stop once
    the off-diagonal Frobenius norm drops below ``tol`` (default
    ``1e-13 * dim``).

    Raises
    ------
    NoConvergence
        If ``max_sweeps`` sweeps leave the off-diagonal norm above ``tol``.
    """
    a = np.array(as_matrix(rho), dtype=np.complex128)
    n = a.shape[0]
    if tol is None:
        tol = 1e-13 * max(n, 1)
    v = np.eye(n, dtype=np.complex128)
    sweeps = 0
    while _offdiag_norm(a) >= tol:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"off-diagonal norm {_offdiag_norm(a):.3g} above {tol:.3g} after {max_sweeps} sweeps"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                # subnormal entries would overflow apq / g
                if g < 1e-300:
                    continue
                phase = apq / g
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                u = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                v[:, idx] = v[:, idx] @ u
    values = np.diagonal(a).real.copy()
    order = np.argsort(-values, kind="stable")
    return EigenResult(values[order], v[:, order], sweeps)


def eigs_hermitian(rho) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in descending order (unclamped)."""
    return jacobi_eigh(rho).values


def clamp_eigenvalues(values: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Zero out tiny negative eigenvalues in ``[-tol, 0)`` for reporting.

    Anything more negative is left alone so real defects stay visible.
    """
    out = np.array(values, dtype=float)
    out[(out < 0.0) & (out >= -tol)] = 0.0
    return out


def sum_pair_products(values) -> float:
    """``sum_{i<j} l_i l_j``, as ``sum_i l_i * (l_{i+1} + ... + l_m)``."""
    lam = np.asarray(values, dtype=float)
    if lam.size < 2:
        return 0.0
    tails = np.cumsum(lam[::-1])[::-1]
    return float(np.dot(lam[:-1], tails[1:]))
