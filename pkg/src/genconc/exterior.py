"""Wedge products of complex vectors and Lagrange's identity.

For ``a, b`` in C^m the bivector ``a ^ b`` has one coefficient
``a_i b_j - a_j b_i`` per pair ``i < j``, stored in lexicographic pair order
(0,1), (0,2), ..., (m-2, m-1). Lagrange's identity

    |a|^2 |b|^2 - |sum_k a_k conj(b_k)|^2 = |a ^ b|^2

relates the O(m^2) coefficient sum on the right to an O(m) evaluation on the
left; :func:`lagrange_gap` returns the numerical residual between the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimTooLarge, LengthMismatch

MAX_WEDGE_DIM = 4096


@dataclass(frozen=True, eq=False)
class Bivector:
    dim: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        expected = self.dim * (self.dim - 1) // 2
        if self.coeffs.shape != (expected,):
            raise LengthMismatch(f"bivector in dimension {self.dim} needs {expected} coefficients")

    def pairs(self):
        """Index pairs ``(i, j)`` matching ``coeffs``, in storage order."""
        return [(i, j) for i in range(self.dim) for j in range(i + 1, self.dim)]

    def coeff(self, i: int, j: int) -> complex:
        if i == j:
            return 0j
        if i > j:
            return -self.coeff(j, i)
        m = self.dim
        offset = i * m - i * (i + 1) // 2 + (j - i - 1)
        return complex(self.coeffs[offset])


def _as_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    if a.shape != b.shape:
        raise LengthMismatch(f"vectors have lengths {a.shape[0]} and {b.shape[0]}")
    return a, b


def wedge(a, b) -> Bivector:
    """Bivector ``a ^ b``; empty when the vectors have length 1."""
    a, b = _as_pair(a, b)
    m = a.shape[0]
    if m < 1:
        raise LengthMismatch("vectors must have length >= 1")
    if m > MAX_WEDGE_DIM:
        raise DimTooLarge(f"dense bivector storage is capped at m = {MAX_WEDGE_DIM}")
    coeffs = np.empty(m * (m - 1) // 2, dtype=np.complex128)
    offset = 0
    # row i holds the pairs (i, i+1), ..., (i, m-1)
    for i in range(m - 1):
        width = m - 1 - i
        coeffs[offset:offset + width] = a[i] * b[i + 1:] - a[i + 1:] * b[i]
        offset += width
    return Bivector(m, coeffs)


def norm_sq(bv: Bivector) -> float:
    c = bv.coeffs
    return float(np.dot(c.real, c.real) + np.dot(c.imag, c.imag))


def inner(a, b) -> complex:
    """``sum_k a_k conj(b_k)``; conjugation is on the second argument."""
    a, b = _as_pair(a, b)
    return complex(np.dot(a, b.conj()))


def lagrange_lhs(a, b) -> float:
    a, b = _as_pair(a, b)
    na = float(np.vdot(a, a).real)
    nb = float(np.vdot(b, b).real)
    return na * nb - abs(inner(a, b)) ** 2


def lagrange_gap(a, b) -> float:
    """``(|a|^2|b|^2 - |a.conj(b)|^2) - |a ^ b|^2``; zero up to round-off."""
    return lagrange_lhs(a, b) - norm_sq(wedge(a, b))


def relative_lagrange_gap(a, b) -> float:
    lhs = lagrange_lhs(a, b)
    return abs(lhs - norm_sq(wedge(a, b))) / max(1.0, abs(lhs))
