"""Candidate GK dimensions of simple modules.

Two predictions are available:

* when K.dim = n - 1, a simple module has GK dimension 1 or
  ``gk(algebra) - gk(center) - 1`` (:func:`dichotomy_set`);
* for ``Q[Y^+-1; sigma]`` with ``sigma(X_i) = p_i X_i``, if the subgroups
  generated by the ``q_ij`` and by the ``p_i`` meet trivially, every simple
  module has GK dimension in ``{rk(H), ..., n} U (V + 1)`` where ``V`` is the
  set for the base torus (:func:`extension_superset`).

The second is only a containment: values in the set need not occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import lattice, scalars
from .algebra import QTorusPresentation, ScalarAutomorphismSpec, merge_bases
from .errors import HypothesisFailed, InternalConsistencyError, MissingVSet
from .invariants import KdimEstimate, center_lattice
from .lattice import IntegerMatrix

DICHOTOMY = "dichotomy_candidates"
SUPERSET = "superset"
USER_SUPPLIED = "user_supplied"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    satisfied: bool
    detail: str


@dataclass(frozen=True)
class DimSet:
    values: tuple[int, ...]
    semantics: str
    hypotheses: tuple[Hypothesis, ...] = ()

    def __post_init__(self):
        vals = tuple(sorted(set(int(v) for v in self.values)))
        if any(v < 0 for v in vals):
            raise ValueError("GK dimensions are non-negative")
        if self.semantics not in (DICHOTOMY, SUPERSET, USER_SUPPLIED):
            raise ValueError(f"unknown semantics {self.semantics!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))

    @classmethod
    def supplied(cls, values: Iterable[int]) -> DimSet:
        return cls(tuple(values), USER_SUPPLIED, (Hypothesis("supplied by the user", True, "taken as given"),))


def dichotomy_set(Q: QTorusPresentation, kd: KdimEstimate) -> DimSet:
    n = Q.n
    value = kd.value
    if value != n - 1:
        err = HypothesisFailed(f"K.dim = {value} but the dichotomy needs K.dim = n - 1 = {n - 1}")
        err.kdim, err.n = value, n
        raise err
    z = center_lattice(Q).rank
    if z > n - 2:
        raise InternalConsistencyError(f"center of rank {z} with K.dim = n - 1 = {n - 1}")
    return DimSet(
        (1, n - z - 1),
        DICHOTOMY,
        (Hypothesis("K.dim = n - 1", True, f"K.dim = {value}, n = {n}, rk(center) = {z}"),),
    )


def scalar_group_rank(sigma: ScalarAutomorphismSpec) -> int:
    return scalars.subgroup_rank(sigma.p)


def trivial_intersection(Q: QTorusPresentation, sigma: ScalarAutomorphismSpec) -> bool:
    """Do the groups generated by the ``q_ij`` and by the ``p_i`` meet only in 1?"""
    basis, eq, ep = merge_bases(Q.basis, sigma.basis)
    G = IntegerMatrix.from_rows([eq(v) for v in Q.upper_entries()], basis.m)
    H = IntegerMatrix.from_rows([ep(v) for v in sigma.p], basis.m)
    return lattice.intersect_trivially(G, H)


def extension_superset(Q: QTorusPresentation, sigma: ScalarAutomorphismSpec, V: DimSet) -> DimSet:
    if not trivial_intersection(Q, sigma):
        raise HypothesisFailed("the q_ij and the p_i generate subgroups of k^x that intersect nontrivially")
    h = scalar_group_rank(sigma)
    values = set(range(h, Q.n + 1)) | {v + 1 for v in V.values}
    return DimSet(
        tuple(values),
        SUPERSET,
        (
            Hypothesis("G and H_sigma intersect trivially", True, f"rk(H_sigma) = {h}"),
            Hypothesis("V of the base torus", True, f"{V.semantics}: {list(V.values)}"),
        ),
    )


def forbidden_dims(S: DimSet, n_star: int) -> tuple[int, ...]:
    """Dimensions in ``1..n_star`` that no simple module can have."""
    if S.semantics != SUPERSET:
        raise ValueError("forbidden dimensions are read off a superset")
    return tuple(d for d in range(1, n_star + 1) if d not in S.values)


def base_vset(Q: QTorusPresentation, kd: KdimEstimate, supplied: Iterable[int] | None = None) -> DimSet:
    """The set V for the base torus: user-supplied first, else the dichotomy."""
    if supplied is not None:
        return DimSet.supplied(supplied)
    try:
        return dichotomy_set(Q, kd)
    except HypothesisFailed as exc:
        raise MissingVSet(f"no V for the base torus ({exc}); pass one with --vset") from exc
