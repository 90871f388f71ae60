"""Pure multiparticle states over mixed local dimensions.

Amplitudes are stored as a flat complex vector. The flat index is mixed-radix
with particle 0 as the most significant digit, so ``|j0 j1 ... j_{n-1}>`` sits
at ``((j0*d1 + j1)*d2 + j2)...``. This is the left-to-right tensor order
``|j0> (x) |j1> (x) ...`` and is what ``numpy.reshape`` gives with ``order='C'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubset,
    DimensionMismatch,
    DimTooLarge,
    LengthMismatch,
    StateFileError,
    UnsupportedParams,
    ZeroState,
)

MAX_TOTAL_DIM = 2**24
NORM_WARN_TOL = 1e-6


def validate_dims(dims: Iterable[int]) -> tuple[int, ...]:
    """Return ``dims`` as a tuple of ints after checking it describes qudits."""
    dims = tuple(int(d) for d in dims)
    if len(dims) < 1:
        raise DimensionMismatch("need at least one particle")
    if any(d < 2 for d in dims):
        raise DimensionMismatch(f"every local dimension must be >= 2, got {dims}")
    total = 1
    for d in dims:
        total *= d
        if total > MAX_TOTAL_DIM:
            raise DimTooLarge(f"total dimension of {dims} exceeds {MAX_TOTAL_DIM}")
    return dims


def total_dim(dims: Sequence[int]) -> int:
    return math.prod(dims)


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector. Build with :func:`make_state` rather than directly."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray = field(repr=False)
    was_normalized: bool = False

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def D(self) -> int:
        return self.amplitudes.shape[0]

    def tensor(self) -> np.ndarray:
        """Amplitudes viewed as an n-way array, one axis per particle."""
        return self.amplitudes.reshape(self.dims)

    def amplitude(self, labels: Sequence[int]) -> complex:
        return complex(self.amplitudes[flat_index(self.dims, labels)])

    def __repr__(self) -> str:
        return f"PureState(dims={self.dims}, D={self.D})"


def make_state(dims: Iterable[int], amplitudes) -> PureState:
    """Normalize ``amplitudes`` into a :class:`PureState`.

    ``was_normalized`` records whether the input norm was off from 1 by more
    than ``NORM_WARN_TOL``.
    """
    dims = validate_dims(dims)
    amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    D = total_dim(dims)
    if amps.shape[0] != D:
        raise LengthMismatch(f"expected {D} amplitudes for dims {dims}, got {amps.shape[0]}")
    if not np.all(np.isfinite(amps)):
        raise ValueError("amplitudes must be finite")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise ZeroState("all amplitudes are zero")
    flagged = abs(norm - 1.0) > NORM_WARN_TOL
    if norm != 1.0:
        amps = amps / norm
    amps.setflags(write=False)
    return PureState(dims, amps, flagged)


def flat_index(dims: Sequence[int], labels: Sequence[int]) -> int:
    if len(labels) != len(dims):
        raise DimensionMismatch(f"{len(labels)} labels for {len(dims)} particles")
    idx = 0
    for j, d in zip(labels, dims):
        if not 0 <= j < d:
            raise DimensionMismatch(f"label {j} out of range for local dimension {d}")
        idx = idx * d + j
    return idx


def labels_of(dims: Sequence[int], index: int) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        index, j = divmod(index, d)
        out.append(j)
    return tuple(reversed(out))


def check_subset(n: int, subset: Iterable[int]) -> tuple[int, ...]:
    """Sorted tuple of a strict, nonempty subset of ``range(n)``."""
    members = tuple(sorted(set(int(i) for i in subset)))
    if not members or len(members) >= n:
        raise BadSubset(f"subset {members} must be a strict nonempty subset of {n} particles")
    if members[0] < 0 or members[-1] >= n:
        raise BadSubset(f"subset {members} has indices outside 0..{n - 1}")
    return members


def complement(n: int, subset: Iterable[int]) -> tuple[int, ...]:
    s = set(subset)
    return tuple(i for i in range(n) if i not in s)


def conditional_vector(state: PureState, subset: Sequence[int], values: Sequence[int]) -> np.ndarray:
    """Amplitudes left over after fixing the particles in ``subset`` to ``values``.

    The result is the (unnormalized) vector ``<k_M|psi>`` over the remaining
    particles, row-major in increasing particle index. ``subset`` need not be
    a prefix.
    """
    members = check_subset(state.n, subset)
    if list(members) != [int(i) for i in subset]:
        raise BadSubset(f"subset indices must be strictly increasing, got {tuple(subset)}")
    if len(values) != len(members):
        raise DimensionMismatch(f"{len(values)} values for subset of size {len(members)}")
    index: list = [slice(None)] * state.n
    for p, v in zip(members, values):
        if not 0 <= v < state.dims[p]:
            raise DimensionMismatch(f"label {v} out of range for particle {p}")
        index[p] = int(v)
    return state.tensor()[tuple(index)].reshape(-1).copy()


def conditional_vectors(state: PureState, subset: Sequence[int]) -> list[np.ndarray]:
    """All conditional vectors for ``subset``, ordered row-major over its labels."""
    members = check_subset(state.n, subset)
    ranges = [range(state.dims[p]) for p in members]
    return [conditional_vector(state, members, vals) for vals in product(*ranges)]


def random_state(dims: Iterable[int], rng: np.random.Generator) -> PureState:
    """Gaussian-normalized (Haar-distributed) random pure state."""
    dims = validate_dims(dims)
    z = rng.standard_normal((2, total_dim(dims)))
    return make_state(dims, z[0] + 1j * z[1])


def product_state(*factors: PureState) -> PureState:
    """Tensor product of states, in argument order."""
    if not factors:
        raise ValueError("need at least one factor")
    amps = factors[0].amplitudes
    dims = factors[0].dims
    for f in factors[1:]:
        amps = np.kron(amps, f.amplitudes)
        dims = dims + f.dims
    return make_state(dims, amps)


def permute_particles(state: PureState, perm: Sequence[int]) -> PureState:
    """Relabel particles: old particle ``i`` becomes new particle ``perm[i]``."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(state.n)):
        raise ValueError(f"{perm} is not a permutation of 0..{state.n - 1}")
    inverse = [0] * state.n
    for old, new in enumerate(perm):
        inverse[new] = old
    new_dims = tuple(state.dims[inverse[k]] for k in range(state.n))
    amps = np.transpose(state.tensor(), inverse).reshape(-1)
    return make_state(new_dims, amps)


def apply_local_unitary(state: PureState, particle: int, unitary) -> PureState:
    d = state.dims[particle]
    u = np.asarray(unitary, dtype=np.complex128)
    if u.shape != (d, d):
        raise DimensionMismatch(f"unitary shape {u.shape} does not match local dimension {d}")
    t = np.tensordot(u, state.tensor(), axes=([1], [particle]))
    t = np.moveaxis(t, 0, particle)
    return make_state(state.dims, t.reshape(-1))


def standard_state(name: str, n: int = 2, d: int = 2) -> PureState:
    """Named benchmark states: ``bell``, ``ghz``, ``w`` and ``hs``.

    ``ghz`` is generalized to qudits as ``sum_k |k...k> / sqrt(d)``. ``w`` is
    qubit-only and ``hs`` is the four-qubit Higuchi-Sudbery state.
    """
    name = name.lower()
    if name == "bell":
        if (n, d) != (2, 2):
            raise UnsupportedParams("bell is the two-qubit state; use ghz for other sizes")
        return standard_state("ghz", 2, 2)
    if name == "ghz":
        if n < 2 or d < 2:
            raise UnsupportedParams(f"ghz needs n >= 2 and d >= 2, got n={n}, d={d}")
        dims = (d,) * n
        validate_dims(dims)
        amps = np.zeros(total_dim(dims), dtype=np.complex128)
        for k in range(d):
            amps[flat_index(dims, (k,) * n)] = 1.0
        return make_state(dims, amps)
    if name == "w":
        if d != 2 or n < 2:
            raise UnsupportedParams(f"w needs d = 2 and n >= 2, got n={n}, d={d}")
        dims = (2,) * n
        validate_dims(dims)
        amps = np.zeros(total_dim(dims), dtype=np.complex128)
        for k in range(n):
            amps[1 << (n - 1 - k)] = 1.0
        return make_state(dims, amps)
    if name == "hs":
        if (n, d) != (4, 2):
            raise UnsupportedParams("hs is defined for four qubits only")
        omega = np.exp(2j * np.pi / 3)
        dims = (2, 2, 2, 2)
        amps = np.zeros(16, dtype=np.complex128)
        for labels, c in [
            ("0011", 1.0), ("1100", 1.0),
            ("1010", omega), ("0101", omega),
            ("1001", omega**2), ("0110", omega**2),
        ]:
            amps[int(labels, 2)] = c
        return make_state(dims, amps)
    raise UnsupportedParams(f"unknown state {name!r}; choose bell, ghz, w or hs")


STANDARD_NAMES = ("bell", "ghz", "w", "hs")


# -- .qs state files ---------------------------------------------------------

def format_qs(state: PureState, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append("dims: " + " ".join(str(d) for d in state.dims))
    for idx in np.flatnonzero(state.amplitudes):
        a = state.amplitudes[idx]
        lines.append(f"{idx} {float(a.real)!r} {float(a.imag)!r}")
    return "\n".join(lines) + "\n"


def parse_qs(text: str) -> PureState:
    dims = None
    entries: dict[int, complex] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dims is None:
            key, sep, rest = line.partition(":")
            if not sep or key.strip() != "dims":
                raise StateFileError(f"line {lineno}: expected 'dims: d1 d2 ...'")
            try:
                dims = validate_dims(int(tok) for tok in rest.split())
            except ValueError as exc:
                if isinstance(exc, (DimensionMismatch, DimTooLarge)):
                    raise
                raise StateFileError(f"line {lineno}: bad dims {rest.strip()!r}") from None
            continue
        parts = line.split()
        if len(parts) != 3:
            raise StateFileError(f"line {lineno}: expected 'flat_index re im'")
        try:
            idx = int(parts[0])
            value = complex(float(parts[1]), float(parts[2]))
        except ValueError:
            raise StateFileError(f"line {lineno}: cannot parse {line!r}") from None
        if idx in entries:
            raise StateFileError(f"line {lineno}: duplicate index {idx}")
        entries[idx] = value
    if dims is None:
        raise StateFileError("missing 'dims:' line")
    D = total_dim(dims)
    amps = np.zeros(D, dtype=np.complex128)
    for idx, value in entries.items():
        if not 0 <= idx < D:
            raise StateFileError(f"index {idx} outside 0..{D - 1}")
        amps[idx] = value
    return make_state(dims, amps)


def read_qs(path) -> PureState:
    with open(path, encoding="utf-8") as fh:
        return parse_qs(fh.read())


def write_qs(path, state: PureState, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_qs(state, comment))
