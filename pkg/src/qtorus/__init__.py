"""Exact invariants of quantum tori and GK dimensions of their simple modules."""

from .algebra import (
    LaurentElement,
    PairingForms,
    QTorusPresentation,
    ScalarAutomorphismSpec,
    cocycle,
    commutator_lambda,
    is_commutative_sublattice,
    multiply,
    pairing,
    skew_extension,
)
from .errors import (
    BudgetExceeded,
    HypothesisFailed,
    InexactKdim,
    MissingVSet,
    ParseError,
    QTorusError,
)
from .formats import parse_presentation, read_presentation
from .invariants import KdimEstimate, center_lattice, gk_algebra, holonomic_bound, kdim, lambda_group_rank
from .lattice import IntegerMatrix, Sublattice, hnf, kernel, member, snf
from .predict import DimSet, dichotomy_set, extension_superset, forbidden_dims
from .scalars import GeneratorBasis

__version__ = "0.1.0"
