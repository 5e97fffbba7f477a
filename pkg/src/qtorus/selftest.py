"""Seeded self-certification suites run by ``qtorus selftest``.

Each suite draws its cases from ``random.Random(SEED + k)`` and checks the
library against an independent oracle or an algebraic identity.  Output
lists only counts, so it is byte-identical across runs, backends and
``--jobs`` settings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import algebra, invariants, lattice, oracle
from .algebra import LaurentElement, QTorusPresentation, multiply
from .lattice import IntegerMatrix
from .scalars import GeneratorBasis

SEED = 20240917


# -- random instances (shared with the test suite) -------------------------

def random_matrix(rng: random.Random, max_dim: int = 6, lo: int = -9, hi: int = 9) -> IntegerMatrix:
    r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
    return IntegerMatrix.from_rows([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], c)


def random_alternating(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> IntegerMatrix:
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            A[i][j] = rng.randint(lo, hi)
            A[j][i] = -A[i][j]
    return IntegerMatrix.from_rows(A, n)


def random_presentation(rng: random.Random, max_n: int = 4, max_m: int = 3, lo: int = -3, hi: int = 3) -> QTorusPresentation:
    n, m = rng.randint(1, max_n), rng.randint(1, max_m)
    basis = GeneratorBasis.symbolic([f"g{k + 1}" for k in range(m)])
    entries = {(i, j): tuple(rng.randint(lo, hi) for _ in range(m)) for i in range(n) for j in range(i + 1, n)}
    return QTorusPresentation.from_upper(n, basis, entries)


def single_form_presentation(C: IntegerMatrix) -> QTorusPresentation:
    """Torus with one scalar generator ``g`` and ``q_ij = g^C_ij``."""
    n = C.nrows
    basis = GeneratorBasis.symbolic(["g"])
    return QTorusPresentation.from_upper(n, basis, {(i, j): (C.rows[i][j],) for i in range(n) for j in range(i + 1, n)})


def random_vector(rng: random.Random, n: int, bound: int) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(n))


# -- checks ------------------------------------------------------------------

def divides_chain(d: tuple[int, ...]) -> bool:
    nz = [x for x in d if x]
    if any(x < 0 for x in nz) or any(d[k] == 0 and any(d[k + 1:]) for k in range(len(d))):
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def check_snf(A: IntegerMatrix) -> bool:
    S = lattice.snf(A)
    O = oracle.snf_oracle(A)
    D = S.D
    off_diag = any(D.rows[i][j] for i in range(D.nrows) for j in range(D.ncols) if i != j)
    return (
        S.U @ A @ S.V == D
        and not off_diag
        and lattice.is_unimodular(S.U)
        and lattice.is_unimodular(S.V)
        and divides_chain(S.diagonal)
        and O.U @ A @ O.V == O.D
        and S.D == O.D
        and lattice.rank(A) == oracle.bareiss_rank(A.rows)
    )


def check_hnf(A: IntegerMatrix) -> bool:
    H = lattice.hnf(A)
    return H.U @ A == H.H and lattice.is_unimodular(H.U) and H.rank == oracle.bareiss_rank(A.rows)


def check_cocycle(Q: QTorusPresentation, x, y, z) -> bool:
    add = lambda a, b: tuple(p + q for p, q in zip(a, b))  # noqa: E731
    lhs = algebra.cocycle(x, y, Q) * algebra.cocycle(add(x, y), z, Q)
    rhs = algebra.cocycle(y, z, Q) * algebra.cocycle(x, add(y, z), Q)
    return lhs == rhs


def check_relations(Q: QTorusPresentation, pairs) -> bool:
    n = Q.n
    X = [LaurentElement.generator(Q, i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if multiply(X[i], X[j]) != multiply(X[j], X[i]).scaled(Q.q(i, j)):
                return False
    for a, b in pairs:
        Xa, Xb = LaurentElement.monomial(Q, a), LaurentElement.monomial(Q, b)
        if multiply(Xa, Xb) != multiply(Xb, Xa).scaled(algebra.commutator_lambda(a, b, Q)):
            return False
    return True


def check_center(Q: QTorusPresentation, outside) -> bool:
    Z = invariants.center_lattice(Q)
    n = Q.n
    E = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    zero = Q.basis.zero()
    if any(algebra.commutator_lambda(z, e, Q) != zero for z in Z.rows for e in E):
        return False
    for v in outside:
        if lattice.member(v, Z):
            continue
        if all(algebra.commutator_lambda(v, e, Q) == zero for e in E):
            return False
    return True


def check_isotropic(C: IntegerMatrix, jobs: int = 1) -> bool:
    n = C.nrows
    closed = n - lattice.rank(C) // 2
    return oracle.isotropic_rank_enum([C], 2, n, jobs=jobs) == closed


# -- suites -------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{self.name}: {'PASS' if self.ok else 'FAIL'} {self.passed}/{self.total}"


def _run(name: str, count: int, seed: int, case: Callable[[random.Random], bool]) -> SuiteResult:
    rng = random.Random(seed)
    passed = sum(bool(case(rng)) for _ in range(count))
    return SuiteResult(name, passed, count)


def _cocycle_case(rng):
    Q = random_presentation(rng, max_n=5)
    return check_cocycle(Q, *(random_vector(rng, Q.n, 4) for _ in range(3)))


def _relations_case(rng):
    Q = random_presentation(rng, max_n=4)
    return check_relations(Q, [(random_vector(rng, Q.n, 3), random_vector(rng, Q.n, 3)) for _ in range(5)])


def _center_case(rng):
    Q = random_presentation(rng, max_n=4)
    return check_center(Q, [random_vector(rng, Q.n, 3) for _ in range(5)])


def _membership_case(rng):
    n, k = rng.randint(1, 4), rng.randint(1, 3)
    rows = [random_vector(rng, n, 4) for _ in range(k)]
    if rng.random() < 0.5:
        coeffs = [rng.randint(-3, 3) for _ in range(k)]
        v = tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n))
    else:
        v = random_vector(rng, n, 6)
    return oracle.membership_oracle(v, rows) == lattice.member(v, lattice.Sublattice.span(rows, n))


def run_all(quick: bool = False, jobs: int = 1) -> list[SuiteResult]:
    scale = 5 if quick else 1
    iso_n = 4 if quick else 6
    return [
        _run("hnf", 500 // scale, SEED + 1, lambda r: check_hnf(random_matrix(r))),
        _run("snf", 500 // scale, SEED + 2, lambda r: check_snf(random_matrix(r))),
        _run("membership", 500 // scale, SEED + 3, _membership_case),
        _run("cocycle", 1000 // scale, SEED + 4, _cocycle_case),
        _run("relations", 100 // scale, SEED + 5, _relations_case),
        _run("center", 200 // scale, SEED + 6, _center_case),
        _run(
            "isotropic_rank",
            100 // scale,
            SEED + 7,
            lambda r: check_isotropic(random_alternating(r, r.randint(2, iso_n)), jobs),
        ),
    ]
