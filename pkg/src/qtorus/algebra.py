"""Quantum torus presentations and exact arithmetic in them.

The algebra on invertible ``X_1..X_n`` with ``X_i X_j = q_ij X_j X_i`` has
k-basis the ordered monomials ``X^a = X_1^a_1 ... X_n^a_n`` (``a`` in Z^n),
multiplied by

    X^a X^b = gamma(a, b) X^(a+b),   gamma(a, b) = prod_{i>j} q_ij^(a_i b_j).

Scalars are exponent vectors over a :class:`~qtorus.scalars.GeneratorBasis`,
so the commutator pairing ``lambda(a, b)`` is a family of integer
alternating forms, one per generator of the basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import lattice, scalars
from .errors import LengthMismatch, NonUnitDiagonal, NotAntisymmetric, OverlappingGenerators
from .lattice import IntegerMatrix, Sublattice
from .scalars import ExponentVector, GeneratorBasis, UnitMonomial

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class QTorusPresentation:
    n: int
    basis: GeneratorBasis
    Q: tuple[tuple[ExponentVector, ...], ...]

    def __post_init__(self):
        Q = tuple(tuple(tuple(e) for e in row) for row in self.Q)
        object.__setattr__(self, "Q", Q)
        n, m = self.n, self.basis.m
        if n < 1:
            raise ValueError("a quantum torus needs at least one generator")
        if len(Q) != n or any(len(row) != n for row in Q):
            raise LengthMismatch(f"expected a {n}x{n} matrix of multiparameters")
        for i in range(n):
            for j in range(n):
                if len(Q[i][j]) != m:
                    raise LengthMismatch(f"q_{i + 1}{j + 1} is not over the {m}-generator basis")
        for i in range(n):
            if any(Q[i][i]):
                raise NonUnitDiagonal(f"q_{i + 1}{i + 1} must be 1")
            for j in range(i + 1, n):
                if Q[j][i] != scalars.inv(Q[i][j]):
                    raise NotAntisymmetric(f"q_{j + 1}{i + 1} must be the inverse of q_{i + 1}{j + 1}")

    @classmethod
    def from_upper(cls, n: int, basis: GeneratorBasis, entries: Mapping[tuple[int, int], ExponentVector]):
        """Build from ``{(i, j): q_ij}`` with ``i < j`` (0-based); missing entries are 1."""
        Q = [[basis.zero() for _ in range(n)] for _ in range(n)]
        for (i, j), e in entries.items():
            if not 0 <= i < j < n:
                raise ValueError(f"entry ({i}, {j}) is not strictly above the diagonal")
            Q[i][j] = tuple(e)
            Q[j][i] = scalars.inv(e)
        return cls(n, basis, tuple(tuple(r) for r in Q))

    @property
    def m(self) -> int:
        return self.basis.m

    def q(self, i: int, j: int) -> ExponentVector:
        return self.Q[i][j]

    def upper_entries(self) -> list[ExponentVector]:
        return [self.Q[i][j] for i in range(self.n) for j in range(i + 1, self.n)]


def validate(entries: Sequence[Sequence[ExponentVector]], basis: GeneratorBasis) -> QTorusPresentation:
    """Check multiplicative antisymmetry of a full matrix of parsed scalars."""
    rows = [list(r) for r in entries]
    return QTorusPresentation(len(rows), basis, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class PairingForms:
    """``forms[k][i][j]`` is the exponent of generator ``k`` in ``q_ij``."""

    n: int
    forms: tuple[IntegerMatrix, ...]

    @property
    def m(self) -> int:
        return len(self.forms)

    def value(self, a: Sequence[int], b: Sequence[int]) -> ExponentVector:
        return tuple(
            sum(x * sum(c * y for c, y in zip(row, b)) for x, row in zip(a, C.rows)) for C in self.forms
        )


def pairing(Q: QTorusPresentation) -> PairingForms:
    forms = tuple(
        IntegerMatrix(tuple(tuple(Q.Q[i][j][k] for j in range(Q.n)) for i in range(Q.n)), Q.n)
        for k in range(Q.m)
    )
    return PairingForms(Q.n, forms)


def cocycle(a: Monomial, b: Monomial, Q: QTorusPresentation) -> UnitMonomial:
    """The scalar in ``X^a X^b = gamma(a, b) X^(a+b)``."""
    out = [0] * Q.m
    for i in range(Q.n):
        ai = a[i]
        if not ai:
            continue
        for j in range(i):
            c = ai * b[j]
            if c:
                for k, e in enumerate(Q.Q[i][j]):
                    out[k] += c * e
    return UnitMonomial(1, tuple(out))


def commutator_lambda(a: Monomial, b: Monomial, Q: QTorusPresentation) -> ExponentVector:
    """``lambda(a, b)`` with ``X^a X^b = lambda(a, b) X^b X^a``."""
    out = [0] * Q.m
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            c = ai * bj
            if c:
                for k, e in enumerate(Q.Q[i][j]):
                    out[k] += c * e
    return tuple(out)


def is_commutative_sublattice(B: Sublattice, Q: QTorusPresentation) -> bool:
    if B.ambient_rank != Q.n:
        raise ValueError("sublattice lives in the wrong ambient rank")
    rows = B.rows
    return all(not any(commutator_lambda(rows[i], rows[j], Q)) for i in range(len(rows)) for j in range(i + 1, len(rows)))


# -- Laurent elements ----------------------------------------------------------

Term = tuple[Monomial, ExponentVector, Fraction]


@dataclass(frozen=True, eq=False)
class LaurentElement:
    """Finite k-combination of ordered monomials ``X^a``.

    A term is ``(a, e, c)`` meaning ``c * g^e * X^a``.  Symbolic mode keeps
    ``g^e`` formal, so coefficients live in Q[g_1^+-1, ..., g_m^+-1]; in
    rational mode the scalar part is evaluated and ``e`` is always zero.
    """

    presentation: QTorusPresentation
    terms: tuple[Term, ...]

    @classmethod
    def build(cls, Q: QTorusPresentation, acc: Mapping[tuple[Monomial, ExponentVector], Fraction]) -> LaurentElement:
        if Q.basis.mode == scalars.RATIONAL:
            zero = Q.basis.zero()
            collapsed: dict[tuple[Monomial, ExponentVector], Fraction] = {}
            for (a, e), c in acc.items():
                key = (a, zero)
                collapsed[key] = collapsed.get(key, 0) + c * scalars.evaluate(e, Q.basis)
            acc = collapsed
        terms = tuple(sorted((a, e, Fraction(c)) for (a, e), c in acc.items() if c))
        return cls(Q, terms)

    @classmethod
    def zero(cls, Q: QTorusPresentation) -> LaurentElement:
        return cls(Q, ())

    @classmethod
    def monomial(cls, Q: QTorusPresentation, a: Monomial, coeff=1, scalar: ExponentVector | None = None):
        a = tuple(a)
        if len(a) != Q.n:
            raise LengthMismatch(f"monomial of length {len(a)} in an {Q.n}-generator torus")
        e = Q.basis.zero() if scalar is None else tuple(scalar)
        return cls.build(Q, {(a, e): Fraction(coeff)})

    @classmethod
    def generator(cls, Q: QTorusPresentation, i: int, power: int = 1) -> LaurentElement:
        return cls.monomial(Q, tuple(power if k == i else 0 for k in range(Q.n)))

    @classmethod
    def one(cls, Q: QTorusPresentation) -> LaurentElement:
        return cls.monomial(Q, (0,) * Q.n)

    def _acc(self) -> dict[tuple[Monomial, ExponentVector], Fraction]:
        return {(a, e): c for a, e, c in self.terms}

    def _check(self, other: LaurentElement) -> None:
        if other.presentation != self.presentation:
            raise ValueError("elements of different quantum tori")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.terms == other.terms and self.presentation == other.presentation

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: LaurentElement) -> LaurentElement:
        self._check(other)
        acc = self._acc()
        for a, e, c in other.terms:
            acc[(a, e)] = acc.get((a, e), 0) + c
        return LaurentElement.build(self.presentation, acc)

    def __neg__(self) -> LaurentElement:
        return LaurentElement(self.presentation, tuple((a, e, -c) for a, e, c in self.terms))

    def __sub__(self, other: LaurentElement) -> LaurentElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            return multiply(self, other)
        c = Fraction(other)
        return LaurentElement.build(self.presentation, {k: v * c for k, v in self._acc().items()})

    __rmul__ = __mul__

    def scaled(self, scalar: ExponentVector) -> LaurentElement:
        """Multiply by the scalar ``g^scalar`` of k^x."""
        acc: dict[tuple[Monomial, ExponentVector], Fraction] = {}
        for a, e, c in self.terms:
            key = (a, scalars.mul(e, scalar))
            acc[key] = acc.get(key, 0) + c
        return LaurentElement.build(self.presentation, acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, e, c in self.terms:
            s = scalars.render(e, self.presentation.basis) if self.presentation.basis.mode == scalars.SYMBOLIC else "1"
            coeff = "" if c == 1 else f"{c}*"
            scal = "" if s == "1" else f"{s}*"
            parts.append(f"{coeff}{scal}X^{list(a)}")
        return " + ".join(parts)


def multiply(x: LaurentElement, y: LaurentElement) -> LaurentElement:
    x._check(y)
    Q = x.presentation
    acc: dict[tuple[Monomial, ExponentVector], Fraction] = {}
    for a, e, c in x.terms:
        for b, f, d in y.terms:
            g = cocycle(a, b, Q).exps
            key = (tuple(p + q for p, q in zip(a, b)), tuple(u + v + w for u, v, w in zip(e, f, g)))
            acc[key] = acc.get(key, 0) + c * d
    return LaurentElement.build(Q, acc)


# -- skew-Laurent extension ----------------------------------------------------

@dataclass(frozen=True)
class ScalarAutomorphismSpec:
    """``sigma(X_i) = p_i X_i``."""

    p: tuple[ExponentVector, ...]
    basis: GeneratorBasis

    def __post_init__(self):
        p = tuple(tuple(v) for v in self.p)
        object.__setattr__(self, "p", p)
        if any(len(v) != self.basis.m for v in p):
            raise LengthMismatch("scalar p_i is not over the automorphism's basis")

    @classmethod
    def identity(cls, n: int, basis: GeneratorBasis) -> ScalarAutomorphismSpec:
        return cls(tuple(basis.zero() for _ in range(n)), basis)


def merge_bases(first: GeneratorBasis, second: GeneratorBasis):
    """Common basis for two sets of scalars, with embeddings of each.

    Symbolic bases are concatenated and must be disjoint; rational bases
    take the union of their primes.
    """
    if first == second:
        ident = lambda v: tuple(v)  # noqa: E731
        return first, ident, ident
    if first.mode != second.mode:
        raise ValueError("cannot merge a symbolic basis with a rational one")
    if first.mode == scalars.SYMBOLIC:
        shared = set(first.labels) & set(second.labels)
        if shared:
            raise OverlappingGenerators(f"generators {sorted(shared)} are declared twice")
        merged = GeneratorBasis.symbolic(first.labels + second.labels)
        m1, m2 = first.m, second.m
        return merged, (lambda v: tuple(v) + (0,) * m2), (lambda v: (0,) * m1 + tuple(v))
    merged = GeneratorBasis.rational(first.labels + second.labels)

    def embed(src: GeneratorBasis):
        pos = [merged.labels.index(p) for p in src.labels]

        def f(v):
            out = [0] * merged.m
            for k, e in zip(pos, v):
                out[k] = e
            return tuple(out)

        return f

    return merged, embed(first), embed(second)


def skew_extension(Q: QTorusPresentation, sigma: ScalarAutomorphismSpec) -> QTorusPresentation:
    """The torus ``Q[Y^+-1; sigma]`` with ``Y X_i = p_i X_i Y`` as generator n+1."""
    if len(sigma.p) != Q.n:
        raise LengthMismatch(f"sigma has {len(sigma.p)} scalars for {Q.n} generators")
    basis, eq, ep = merge_bases(Q.basis, sigma.basis)
    n = Q.n
    rows = [[eq(Q.Q[i][j]) for j in range(n)] + [scalars.inv(ep(sigma.p[i]))] for i in range(n)]
    rows.append([ep(sigma.p[i]) for i in range(n)] + [basis.zero()])
    return QTorusPresentation(n + 1, basis, tuple(tuple(r) for r in rows))


def lambda_generators(Q: QTorusPresentation) -> list[ExponentVector]:
    return Q.upper_entries()


def joint_orthogonal(rows: Sequence[Sequence[int]], forms: PairingForms) -> Sublattice:
    """Saturated lattice of ``v`` with ``lambda(b, v) = 0`` for every given ``b``."""
    conds = []
    for b in rows:
        for C in forms.forms:
            conds.append(tuple(sum(x * C.rows[i][j] for i, x in enumerate(b)) for j in range(forms.n)))
    if not conds:
        return Sublattice.full(forms.n)
    return lattice.kernel(IntegerMatrix.from_rows(conds, forms.n))
