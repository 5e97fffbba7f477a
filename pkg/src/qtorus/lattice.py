"""Exact integer matrices and sublattices of Z^n.

Everything here works on Python ints, so there is no overflow and no
floating point.  Sublattices are stored by their row-style Hermite normal
form, which makes equality of subgroups a plain comparison of bases.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Sequence

Row = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntegerMatrix:
    rows: tuple[Row, ...]
    ncols: int

    def __post_init__(self):
        rows = tuple(tuple(operator.index(x) for x in r) for r in self.rows)
        ncols = operator.index(self.ncols)
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntegerMatrix:
        rows = [tuple(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntegerMatrix:
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"entry {ij} outside a {self.nrows}x{self.ncols} matrix")
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> IntegerMatrix:
        if not self.rows:
            return IntegerMatrix(((),) * self.ncols, 0)
        return IntegerMatrix(tuple(zip(*self.rows)), self.nrows)

    T = property(transpose)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return IntegerMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def stack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.ncols != other.ncols:
            raise ValueError("stacked matrices need the same column count")
        return IntegerMatrix(self.rows + other.rows, self.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def det(self) -> int:
        """Exact determinant by Bareiss fraction-free elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        M = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if M[k][k] == 0:
                for i in range(k + 1, n):
                    if M[i][k]:
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            prev = M[k][k]
        return sign * M[n - 1][n - 1]


def as_matrix(A, ncols: int | None = None) -> IntegerMatrix:
    if isinstance(A, IntegerMatrix):
        return A
    return IntegerMatrix.from_rows(A, ncols)


# -- elementary operations on mutable row lists ------------------------------

def _combine_rows(M: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
    ri, rj = M[i], M[j]
    M[i] = [a * x + b * y for x, y in zip(ri, rj)]
    M[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _combine_cols(M: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (col_i, col_j) <- (a*col_i + b*col_j, c*col_i + d*col_j)
    for r in M:
        x, y = r[i], r[j]
        r[i] = a * x + b * y
        r[j] = c * x + d * y


@dataclass(frozen=True)
class HNFResult:
    H: IntegerMatrix
    U: IntegerMatrix
    rank: int

    @property
    def basis(self) -> tuple[Row, ...]:
        return self.H.rows[: self.rank]

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)


@dataclass(frozen=True)
class SNFResult:
    U: IntegerMatrix
    V: IntegerMatrix
    D: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D.rows[i][i] for i in range(min(self.D.shape)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


def hnf(A) -> HNFResult:
    """Row-style Hermite normal form with its unimodular transform.

    ``U @ A == H``; ``H`` is upper echelon, pivots are positive and the
    entries above each pivot lie in ``[0, pivot)``.  Zero rows sit at the
    bottom.
    """
    A = as_matrix(A)
    m, n = A.shape
    H = A.tolist()
    U = IntegerMatrix.identity(m).tolist()
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b:
                a = H[r][c]
                g, s, t = xgcd(a, b)
                _combine_rows(H, r, i, s, t, -b // g, a // g)
                _combine_rows(U, r, i, s, t, -b // g, a // g)
        p = H[r][c]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            p = -p
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return HNFResult(IntegerMatrix.from_rows(H, n), IntegerMatrix.from_rows(U, m), r)


def snf(A) -> SNFResult:
    """Smith normal form ``U @ A @ V == D`` by Bezout row/column steps."""
    A = as_matrix(A)
    m, n = A.shape
    D = A.tolist()
    U = IntegerMatrix.identity(m).tolist()
    # column operations are applied to V's columns, i.e. V is kept as rows of V^T
    Vt = IntegerMatrix.identity(n).tolist()
    for t in range(min(m, n)):
        pos = next(((i, j) for j in range(t, n) for i in range(t, m) if D[i][j]), None)
        if pos is None:
            break
        i, j = pos
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for r in D:
                r[t], r[j] = r[j], r[t]
            Vt[t], Vt[j] = Vt[j], Vt[t]
        while True:
            for i in range(t + 1, m):
                b = D[i][t]
                if b:
                    a = D[t][t]
                    if b % a == 0:  # plain elimination keeps the pivot, so no cycling
                        _combine_rows(D, t, i, 1, 0, -(b // a), 1)
                        _combine_rows(U, t, i, 1, 0, -(b // a), 1)
                        continue
                    g, s, u = xgcd(a, b)
                    _combine_rows(D, t, i, s, u, -b // g, a // g)
                    _combine_rows(U, t, i, s, u, -b // g, a // g)
            for j in range(t + 1, n):
                b = D[t][j]
                if b:
                    a = D[t][t]
                    if b % a == 0:
                        _combine_cols(D, t, j, 1, 0, -(b // a), 1)
                        _combine_rows(Vt, t, j, 1, 0, -(b // a), 1)
                        continue
                    g, s, u = xgcd(a, b)
                    _combine_cols(D, t, j, s, u, -b // g, a // g)
                    _combine_rows(Vt, t, j, s, u, -b // g, a // g)
            if any(D[i][t] for i in range(t + 1, m)):
                continue
            p = D[t][t]
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            D[t] = [x + y for x, y in zip(D[t], D[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    V = IntegerMatrix.from_rows(Vt, n).transpose()
    return SNFResult(IntegerMatrix.from_rows(U, m), V, IntegerMatrix.from_rows(D, n))


def rank(A) -> int:
    return hnf(A).rank


# -- sublattices -------------------------------------------------------------

def _is_hnf_basis(rows: Sequence[Row]) -> bool:
    last = -1
    for k, r in enumerate(rows):
        p = next((j for j, x in enumerate(r) if x), None)
        if p is None or p <= last or r[p] <= 0:
            return False
        if any(not 0 <= rows[i][p] < r[p] for i in range(k)):
            return False
        last = p
    return True


@dataclass(frozen=True)
class Sublattice:
    """A subgroup of Z^n held by its HNF basis."""

    ambient_rank: int
    basis: IntegerMatrix

    def __post_init__(self):
        if self.basis.ncols != self.ambient_rank:
            raise ValueError("basis width differs from the ambient rank")
        if not _is_hnf_basis(self.basis.rows):
            raise ValueError("basis is not in Hermite normal form; use Sublattice.span")

    @classmethod
    def span(cls, rows: Iterable[Sequence[int]], ambient_rank: int) -> Sublattice:
        M = IntegerMatrix.from_rows(rows, ambient_rank)
        res = hnf(M)
        return cls(ambient_rank, IntegerMatrix(res.basis, ambient_rank))

    @classmethod
    def zero(cls, n: int) -> Sublattice:
        return cls(n, IntegerMatrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> Sublattice:
        return cls(n, IntegerMatrix.identity(n))

    @property
    def rank(self) -> int:
        return self.basis.nrows

    @property
    def rows(self) -> tuple[Row, ...]:
        return self.basis.rows

    def __contains__(self, v: Sequence[int]) -> bool:
        return member(v, self)

    def __add__(self, other: Sublattice) -> Sublattice:
        return Sublattice.span(self.rows + other.rows, self.ambient_rank)

    def issubset(self, other: Sublattice) -> bool:
        return all(member(r, other) for r in self.rows)

    def saturate(self) -> Sublattice:
        """The lattice points of the rational span."""
        ann = kernel(self.basis)
        return kernel(ann.basis)

    def is_saturated(self) -> bool:
        return self.saturate() == self


def kernel(A) -> Sublattice:
    """Saturated integer kernel ``{v : A v = 0}`` in HNF."""
    A = as_matrix(A)
    n = A.ncols
    res = hnf(A.transpose())
    return Sublattice.span(res.U.rows[res.rank:], n)


def member(v: Sequence[int], L: Sublattice) -> bool:
    """Integer membership by back-substitution against the HNF basis."""
    if len(v) != L.ambient_rank:
        raise ValueError(f"vector of length {len(v)} tested against Z^{L.ambient_rank}")
    r = [operator.index(x) for x in v]
    for row in L.rows:
        p = next(j for j, x in enumerate(row) if x)
        if any(r[:p]):
            return False
        q, rem = divmod(r[p], row[p])
        if rem:
            return False
        if q:
            r = [x - q * y for x, y in zip(r, row)]
    return not any(r)


def intersect_trivially(A, B) -> bool:
    """True iff the row lattices of ``A`` and ``B`` meet only in 0."""
    A, B = as_matrix(A), as_matrix(B)
    if A.ncols != B.ncols:
        raise ValueError("matrices live in different ambient spaces")
    return rank(A.stack(B)) == rank(A) + rank(B)


def is_unimodular(M: IntegerMatrix) -> bool:
    return M.nrows == M.ncols and abs(M.det()) == 1
