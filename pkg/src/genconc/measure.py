"""Generalized concurrence of pure states across bipartitions.

For a cut ``M | M-bar`` the squared concurrence can be evaluated three ways,
which agree exactly in exact arithmetic:

``wedge``
    ``4 * sum_{i<j} |v_i ^ v_j|^2`` over the conditional vectors
    ``v_k = <k_M|psi>``, summing every bivector coefficient.
``trace``
    ``2 * (1 - tr(rho_M^2))`` from the reduced density matrix.
``eigen``
    ``4 * sum_{i<j} l_i l_j`` over the eigenvalues of ``rho_M``.

The global measure is the plain sum of ``E_M`` over the canonical cuts, one
per unordered pair ``{M, M-bar}``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import exterior
from .density import clamp_eigenvalues, jacobi_eigh, purity, reduced_density, sum_pair_products
from .errors import BadSubset, DimTooLarge, WrongDims
from .qstate import PureState, check_subset, complement, conditional_vectors

ROUTES = ("wedge", "trace", "eigen")
DEFAULT_ROUTE = "trace"
DEFAULT_SEP_EPSILON = 1e-8
MAX_WEDGE_TOTAL_DIM = 2**16


@dataclass(frozen=True, order=True)
class Bipartition:
    """A kept subset ``members`` of ``range(n)``; the cut is members | rest."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = check_subset(self.n, self.members)
        object.__setattr__(self, "members", members)

    @classmethod
    def parse(cls, n: int, text: str) -> "Bipartition":
        """Read the ``0+2+3`` form used on the command line."""
        try:
            members = [int(tok) for tok in text.split("+")]
        except ValueError:
            raise BadSubset(f"cannot parse cut {text!r}; use indices joined by '+'") from None
        if len(set(members)) != len(members):
            raise BadSubset(f"cut {text!r} repeats a particle")
        return cls(n, tuple(members))

    @property
    def rest(self) -> tuple[int, ...]:
        return complement(self.n, self.members)

    def complement(self) -> "Bipartition":
        return Bipartition(self.n, self.rest)

    @property
    def is_canonical(self) -> bool:
        k = len(self.members)
        return 2 * k < self.n or (2 * k == self.n and self.members[0] == 0)

    def canonical(self) -> "Bipartition":
        return self if self.is_canonical else self.complement()

    @property
    def label(self) -> str:
        return "+".join(str(i) for i in self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members) + "}"


def _as_cut(state: PureState, cut) -> Bipartition:
    if isinstance(cut, Bipartition):
        if cut.n != state.n:
            raise BadSubset(f"cut is over {cut.n} particles, state has {state.n}")
        return cut
    return Bipartition(state.n, tuple(cut))


def canonical_bipartitions(n: int) -> list[Bipartition]:
    """Every cut up to complement, ordered by size then lexicographically.

    ``n = 4`` gives {0},{1},{2},{3},{0,1},{0,2},{0,3}.
    """
    if n < 2:
        raise BadSubset("bipartitions need at least two particles")
    cuts = []
    for k in range(1, n // 2 + 1):
        for members in combinations(range(n), k):
            if 2 * k < n or members[0] == 0:
                cuts.append(Bipartition(n, members))
    return cuts


def _side_dims(dims: Sequence[int], cut: Bipartition) -> tuple[int, int]:
    d_m = math.prod(dims[p] for p in cut.members)
    return d_m, math.prod(dims) // d_m


def concurrence_sq(state: PureState, cut, route: str = DEFAULT_ROUTE) -> float:
    """Squared concurrence ``E_M^2``, clipped at zero against round-off."""
    cut = _as_cut(state, cut)
    if route == "wedge":
        if state.D > MAX_WEDGE_TOTAL_DIM:
            raise DimTooLarge(f"wedge route is capped at D = {MAX_WEDGE_TOTAL_DIM}, state has D = {state.D}")
        vecs = conditional_vectors(state, cut.members)
        total = 0.0
        for i in range(len(vecs) - 1):
            for j in range(i + 1, len(vecs)):
                total += exterior.norm_sq(exterior.wedge(vecs[i], vecs[j]))
        value = 4.0 * total
    elif route == "trace":
        value = 2.0 * (1.0 - purity(reduced_density(state, cut.members)))
    elif route == "eigen":
        lam = jacobi_eigh(reduced_density(state, cut.members)).values
        value = 4.0 * sum_pair_products(lam)
    else:
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")
    return max(value, 0.0)


def concurrence(state: PureState, cut, route: str = DEFAULT_ROUTE) -> float:
    """Generalized concurrence ``E_M`` of ``state`` across ``cut``.

    Parameters
    ----------
    state : PureState
    cut : Bipartition or iterable of int
        The kept subset ``M``; need not be canonical.
    route : {'wedge', 'trace', 'eigen'}
        Evaluation route. ``trace`` is the cheap one; ``wedge`` costs
        ``C(D_m, 2) * C(D_rest, 2)`` and is limited to ``D <= 2**16``.
    """
    return math.sqrt(concurrence_sq(state, cut, route))


def max_concurrence(dims: Sequence[int], cut) -> float:
    """Largest attainable ``E_M``: ``sqrt(2 - 2/min(D_m, D_rest))``."""
    if not isinstance(cut, Bipartition):
        cut = Bipartition(len(dims), tuple(cut))
    d_m, d_rest = _side_dims(dims, cut)
    return math.sqrt(2.0 - 2.0 / min(d_m, d_rest))


@dataclass(frozen=True)
class CutResult:
    cut: Bipartition
    E: float
    E_max: float
    separable: bool

    @property
    def members(self) -> tuple[int, ...]:
        return self.cut.members


@dataclass(frozen=True)
class EntanglementReport:
    dims: tuple[int, ...]
    route: str
    cuts: list[CutResult] = field(repr=False)
    global_E: float
    residual: float
    sep_epsilon: float

    @property
    def max_E(self) -> float:
        return max(c.E for c in self.cuts)

    @property
    def fully_separable(self) -> bool:
        return self.residual <= self.sep_epsilon

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "route": self.route,
            "cuts": [
                {"members": list(c.members), "E": c.E, "E_max": c.E_max, "separable": c.separable}
                for c in self.cuts
            ],
            "global_E": self.global_E,
            "residual": self.residual,
            "sep_epsilon": self.sep_epsilon,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["members", "E", "E_max", "separable"])
        for c in self.cuts:
            writer.writerow([c.cut.label, repr(c.E), repr(c.E_max), "true" if c.separable else "false"])
        return buf.getvalue()

    def format_text(self) -> str:
        lines = [f"dims {'x'.join(map(str, self.dims))}  route {self.route}"]
        width = max(len(str(c.cut)) for c in self.cuts)
        for c in self.cuts:
            flag = "separable" if c.separable else "entangled"
            lines.append(f"  E{str(c.cut):<{width}}  {c.E:.12f}  (max {c.E_max:.12f})  {flag}")
        lines.append(f"global E  {self.global_E:.12f}")
        lines.append(f"residual  {self.residual:.12g}  (sum of single-particle E^2)")
        return "\n".join(lines)

    @classmethod
    def from_dict(cls, data: dict) -> "EntanglementReport":
        dims = tuple(data["dims"])
        cuts = [
            CutResult(Bipartition(len(dims), tuple(c["members"])), c["E"], c["E_max"], c["separable"])
            for c in data["cuts"]
        ]
        return cls(dims, data["route"], cuts, data["global_E"], data["residual"], data["sep_epsilon"])


def separability_residual(state: PureState) -> float:
    """``sum_k E_(k)^2`` over single-particle cuts; zero iff fully product."""
    if state.n < 2:
        raise BadSubset("need at least two particles")
    return sum(concurrence_sq(state, (k,), "trace") for k in range(state.n))


def global_report(
    state: PureState,
    route: str = DEFAULT_ROUTE,
    sep_epsilon: float = DEFAULT_SEP_EPSILON,
    cuts: Iterable | None = None,
    max_workers: int | None = None,
) -> EntanglementReport:
    """Concurrence over every canonical cut (or the given ``cuts``) and their sum.

    ``separable`` on each cut means ``E^2 <= sep_epsilon``. With
    ``max_workers > 1`` the cuts are evaluated on a thread pool; results keep
    the cut order either way.
    """
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}")
    if not sep_epsilon > 0:
        raise ValueError("sep_epsilon must be positive")
    if cuts is None:
        cut_list = canonical_bipartitions(state.n)
    else:
        cut_list = [_as_cut(state, c) for c in cuts]

    def one(cut: Bipartition) -> CutResult:
        e2 = concurrence_sq(state, cut, route)
        return CutResult(cut, math.sqrt(e2), max_concurrence(state.dims, cut), e2 <= sep_epsilon)

    if max_workers is not None and max_workers > 1 and len(cut_list) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = list(pool.map(one, cut_list))
    else:
        results = [one(c) for c in cut_list]
    return EntanglementReport(
        dims=state.dims,
        route=route,
        cuts=results,
        global_E=float(sum(r.E for r in results)),
        residual=separability_residual(state),
        sep_epsilon=sep_epsilon,
    )


_SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)


def wootters_2qubit(state: PureState) -> float:
    """Two-qubit concurrence ``|<psi|psi~>|`` with ``psi~ = (sy x sy) conj(psi)``."""
    if state.dims != (2, 2):
        raise WrongDims(f"wootters concurrence needs dims (2, 2), got {state.dims}")
    flipped = _SPIN_FLIP @ state.amplitudes.conj()
    return float(abs(np.vdot(state.amplitudes, flipped)))


@dataclass(frozen=True, eq=False)
class SeparabilityWitness:
    separable: bool
    E: float
    factor: np.ndarray | None = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.separable


def is_separable(state: PureState, cut, sep_epsilon: float = DEFAULT_SEP_EPSILON) -> SeparabilityWitness:
    """Test separability across ``cut``; when separable, return the M-side factor.

    The factor is the dominant eigenvector of ``rho_M``, phased so its largest
    component is real and positive.
    """
    cut = _as_cut(state, cut)
    rho = reduced_density(state, cut.members)
    e2 = max(2.0 * (1.0 - purity(rho)), 0.0)
    if e2 > sep_epsilon:
        return SeparabilityWitness(False, math.sqrt(e2))
    eig = jacobi_eigh(rho)
    vec = eig.vectors[:, 0]
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k])
    vec = vec / np.linalg.norm(vec)
    return SeparabilityWitness(True, math.sqrt(e2), vec)


def report_eigenvalues(state: PureState, cut) -> np.ndarray:
    """Eigenvalues of ``rho_M`` with round-off negatives clamped, for display."""
    cut = _as_cut(state, cut)
    return clamp_eigenvalues(jacobi_eigh(reduced_density(state, cut.members)).values)
