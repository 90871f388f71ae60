"""Generalized concurrence for multiparticle pure states in mixed dimensions."""

from .errors import (
    BadSubset,
    DimensionMismatch,
    DimTooLarge,
    GenConcError,
    KetSyntaxError,
    LengthMismatch,
    NoConvergence,
    StateFileError,
    UnsupportedParams,
    WrongDims,
    ZeroState,
)
from .exterior import Bivector, lagrange_gap, norm_sq, wedge
from .density import DensityMatrix, char_coeff2, eigs_hermitian, purity, reduced_density
from .ketparse import parse_ket, render_ket
from .measure import (
    Bipartition,
    EntanglementReport,
    canonical_bipartitions,
    concurrence,
    global_report,
    is_separable,
    max_concurrence,
    separability_residual,
    wootters_2qubit,
)
from .qstate import PureState, conditional_vector, make_state, random_state, read_qs, standard_state, write_qs

__version__ = "0.1.0"
