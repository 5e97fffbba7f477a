"""Algebra-level invariants of a quantum torus.

Krull dimension is the largest rank of a sublattice ``B`` of Z^n on which
every pairing form vanishes (a commutative sub-torus).  For one form, or
several proportional ones, that is ``n - rank/2``.  For genuinely several
forms there is no closed form, so :func:`kdim` returns certified bounds:
a witness sublattice from a bounded search for the lower bound, and for the
upper bound the rank bounds of single forms and of random combinations
together with a dimension count on the span of the forms.  Three forms on
Q^4 can leave the bounds open: an isotropic plane there is a rational point
on a conic, which no bound of this kind decides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import lattice, scalars
from .algebra import PairingForms, QTorusPresentation, is_commutative_sublattice, joint_orthogonal, pairing
from .errors import InexactKdim, InternalConsistencyError
from .lattice import IntegerMatrix, Sublattice

KDIM_SEED = 1729
DEFAULT_SEARCH_BOUND = 2
DEFAULT_SAMPLES = 64
DEFAULT_BUDGET = 400
_COMBINATION_RANGE = 7
_MAX_PENCILS = 16


@dataclass(frozen=True)
class KdimEstimate:
    lower: int
    upper: int
    witness: Sublattice
    method: str = "search"
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise InternalConsistencyError(f"kdim bounds out of order: {self.lower} > {self.upper}")
        if self.witness.rank != self.lower:
            raise InternalConsistencyError("kdim witness rank differs from the lower bound")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise InexactKdim(f"Krull dimension only bracketed: {self.lower} <= K.dim <= {self.upper}")
        return self.lower


def lambda_group_rank(Q: QTorusPresentation) -> int:
    return scalars.subgroup_rank(Q.upper_entries())


def center_lattice(Q: QTorusPresentation) -> Sublattice:
    """Exponents ``a`` with ``X^a`` central, i.e. the radical of all forms."""
    forms = pairing(Q)
    rows = [r for C in forms.forms for r in C.rows]
    if not rows:
        return Sublattice.full(Q.n)
    return lattice.kernel(IntegerMatrix.from_rows(rows, Q.n))


def gk_algebra(Q: QTorusPresentation) -> int:
    return Q.n


def _half_rank_bound(n: int, C: IntegerMatrix) -> int:
    r = lattice.rank(C)
    if r % 2:
        raise InternalConsistencyError("an alternating form has odd rank")
    return n - r // 2


def _combination(forms: PairingForms, coeffs) -> IntegerMatrix:
    n = forms.n
    return IntegerMatrix(
        tuple(
            tuple(sum(c * C.rows[i][j] for c, C in zip(coeffs, forms.forms)) for j in range(n))
            for i in range(n)
        ),
        n,
    )


def _upper_bound(forms: PairingForms, samples: int, seed: int) -> tuple[int, str]:
    n = forms.n
    best, how = n, "ambient"
    for C in forms.forms:
        b = _half_rank_bound(n, C)
        if b < best:
            best, how = b, "single_form"
    rng = random.Random(seed)
    for _ in range(samples):
        coeffs = [rng.randint(-_COMBINATION_RANGE, _COMBINATION_RANGE) for _ in forms.forms]
        b = _half_rank_bound(n, _combination(forms, coeffs))
        if b < best:
            best, how = b, "combination"
    b = _dimension_count_bound(forms)
    if b < best:
        best, how = b, "dimension_count"
    return best, how


def _dimension_count_bound(forms: PairingForms) -> int:
    """Largest r with C(r,2) <= C(n,2) - s, s the dimension of the span of the forms.

    Alternating forms vanishing on a fixed r-dimensional subspace have
    codimension C(r,2), and the span of the forms must fit inside them.
    """
    n = forms.n
    flat = [C.entries for C in forms.forms]
    s = lattice.rank(IntegerMatrix.from_rows(flat, n * n)) if flat else 0
    r = n
    while r * (r - 1) // 2 > n * (n - 1) // 2 - s:
        r -= 1
    return r


def _pencil_combinations(forms: PairingForms) -> list[IntegerMatrix]:
    """Single forms and small pencils ``C_k + t C_l``.

    Kernel vectors of these combinations span the isotropic subspaces of
    pencils on odd dimension, which are usually not short.
    """
    idx = [k for k, C in enumerate(forms.forms) if not C.is_zero()]
    coeffs = []
    for k in idx:
        coeffs.append({k: 1})
    for a in idx:
        for b in idx:
            if a < b:
                coeffs += [{a: 1, b: t} for t in (-2, -1, 1, 2)]
    return [_combination(forms, [c.get(k, 0) for k in range(forms.m)]) for c in coeffs[:_MAX_PENCILS]]


def _extend(U: Sublattice, v) -> Sublattice:
    return Sublattice.span(U.rows + (tuple(v),), U.ambient_rank).saturate()


def greedy_isotropic(forms: PairingForms, start: Sublattice) -> Sublattice:
    """Extend ``start`` one kernel basis vector at a time until maximal.

    Maximal and maximum agree when there is a single form.
    """
    U = start
    while True:
        K = joint_orthogonal(U.rows, forms)
        if K == U:
            return U
        v = next(r for r in K.rows if not lattice.member(r, U))
        U = _extend(U, v)


def short_vectors(K: Sublattice, bound: int) -> list[tuple[int, ...]]:
    """Primitive ``v`` in ``K`` with entries in ``[-bound, bound]``, one per sign pair.

    Backtracks over the coefficients of the HNF basis; columns left of the
    next pivot are final once a coefficient is chosen, which prunes early.
    """
    rows, n = K.rows, K.ambient_rank
    pivots = [next(j for j, x in enumerate(r) if x) for r in rows]
    found: list[tuple[int, ...]] = []

    def rec(i: int, partial: list[int]) -> None:
        if i == len(rows):
            if any(partial):
                found.append(tuple(partial))
            return
        p = pivots[i]
        h = rows[i][p]
        lo = -((bound + partial[p]) // h)
        hi = (bound - partial[p]) // h
        stop = pivots[i + 1] if i + 1 < len(rows) else n
        for c in range(lo, hi + 1):
            nxt = [x + c * y for x, y in zip(partial, rows[i])] if c else partial
            if all(-bound <= nxt[j] <= bound for j in range(p, stop)):
                rec(i + 1, nxt)

    rec(0, [0] * n)
    out = []
    for v in found:
        first = next(x for x in v if x)
        g = 0
        for x in v:
            g = lattice.xgcd(g, x)[0]
        if first > 0 and g == 1 and all(abs(x) <= bound for x in v):
            out.append(v)
    out.sort(key=lambda v: (max(map(abs, v)), sum(map(abs, v)), tuple(-x for x in v)))
    return out


class _Stop(Exception):
    pass


class _Best:
    def __init__(self, U: Sublattice):
        self.U = U

    def offer(self, U: Sublattice) -> None:
        if (U.rank, _neg_rows(U)) > (self.U.rank, _neg_rows(self.U)):
            self.U = U


def _neg_rows(U: Sublattice):
    # larger is better: prefer the lexicographically smallest basis among equal ranks
    return tuple(tuple(-x for x in r) for r in U.rows)


def _orthogonality_rows(U: Sublattice, forms: PairingForms) -> list[tuple[int, ...]]:
    n = forms.n
    return [
        tuple(sum(x * C.rows[i][j] for i, x in enumerate(u)) for j in range(n)) for u in U.rows for C in forms.forms
    ]


def _pencil_vectors(U: Sublattice, forms: PairingForms, pencils: list[IntegerMatrix]) -> list[tuple[int, ...]]:
    """Basis vectors of ``ker(P)`` inside the joint orthogonal of ``U``, for each pencil ``P``."""
    conds = _orthogonality_rows(U, forms)
    out: list[tuple[int, ...]] = []
    for P in pencils:
        for r in lattice.kernel(IntegerMatrix.from_rows(conds + list(P.rows), forms.n)).rows:
            if r not in out:
                out.append(r)
    return out


def _search(
    forms: PairingForms,
    start: Sublattice,
    upper: int,
    bound: int,
    budget: int,
    best: _Best,
    pencils: list[IntegerMatrix] = (),
) -> bool:
    """Depth-first extension over short kernel vectors.  Returns True if cut by budget."""
    visited: set = set()

    def visit(U: Sublattice) -> None:
        key = U.rows
        if key in visited:
            return
        if len(visited) >= budget:
            raise _Stop("budget")
        visited.add(key)
        best.offer(U)
        if best.U.rank >= upper:
            raise _Stop("closed")
        K = joint_orthogonal(U.rows, forms)
        if K.rank <= best.U.rank:
            return
        cands = [v for v in short_vectors(K, bound) if not lattice.member(v, U)]
        for r in _pencil_vectors(U, forms, pencils) + list(K.rows):
            if r not in cands and not lattice.member(r, U):
                cands.append(r)
        for v in cands:
            visit(_extend(U, v))

    try:
        visit(start)
    except _Stop as stop:
        return stop.args[0] == "budget"
    return False


def kdim(
    Q: QTorusPresentation,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = KDIM_SEED,
    budget: int = DEFAULT_BUDGET,
) -> KdimEstimate:
    if search_bound < 1:
        raise ValueError("search_bound must be at least 1")
    forms = pairing(Q)
    n = Q.n
    center = center_lattice(Q)
    flat = [C.entries for C in forms.forms if not C.is_zero()]
    span_rank = lattice.rank(IntegerMatrix.from_rows(flat, n * n)) if flat else 0
    if span_rank <= 1:
        value = n if not flat else _half_rank_bound(n, IntegerMatrix.from_rows(
            [flat[0][i * n:(i + 1) * n] for i in range(n)], n))
        witness = greedy_isotropic(forms, center)
        if witness.rank != value or not is_commutative_sublattice(witness, Q):
            raise InternalConsistencyError("closed-form Krull dimension not attained by greedy witness")
        return KdimEstimate(value, value, witness, "closed_form")

    upper, how = _upper_bound(forms, samples, seed)
    pencils = _pencil_combinations(forms)
    best = _Best(center)
    best.offer(greedy_isotropic(forms, center))
    truncated = False
    for b in range(1, search_bound + 1):
        if best.U.rank >= upper:
            break
        truncated = _search(forms, center, upper, b, budget, best, pencils) or truncated
    witness = best.U
    if not is_commutative_sublattice(witness, Q):
        raise InternalConsistencyError("kdim witness is not commutative")
    if witness.rank > upper:
        raise InternalConsistencyError("kdim witness beats a certified upper bound")
    return KdimEstimate(witness.rank, upper, witness, how if witness.rank == upper else "bounds", truncated)


def holonomic_bound(Q: QTorusPresentation, kd: KdimEstimate) -> int:
    """Smallest GK dimension a finitely generated module can have."""
    return Q.n - kd.value
