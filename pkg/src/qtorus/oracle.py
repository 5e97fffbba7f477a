"""Brute-force certifiers for the lattice algorithms and the Krull dimension search.

Nothing here calls into :mod:`qtorus.lattice` beyond its data types, so the
results are independent cross-checks rather than restatements.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded
from .lattice import IntegerMatrix, SNFResult

DEFAULT_NODE_LIMIT = 10**7
MAX_ENUM_N = 6
MAX_ENUM_BOUND = 3


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free Gaussian elimination (Bareiss)."""
    M = [list(r) for r in rows]
    if not M or not M[0]:
        return 0
    nr, nc = len(M), len(M[0])
    r, prev = 0, 1
    for c in range(nc):
        p = next((i for i in range(r, nr) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == nr:
            break
    return r


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k]), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------- Smith form

def snf_oracle(A) -> SNFResult:
    """Smith form by elementary operations with a smallest-entry pivot.

    Repeated division with remainder shrinks the pivot until it clears its
    row and column; a remaining entry it does not divide is folded into the
    pivot row and the loop resumes.  Returns ``U, V, D`` with ``U A V = D``.
    """
    A = A if isinstance(A, IntegerMatrix) else IntegerMatrix.from_rows(A)
    nr, nc = A.shape
    M = A.tolist()
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in M:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for R in M:
            R[dst] += q * R[src]
        for R in V:
            R[dst] += q * R[src]

    for t in range(min(nr, nc)):
        nz = [(abs(M[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if M[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, nr):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
            for j in range(t + 1, nc):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
            line = [(abs(M[i][t]), i, 0) for i in range(t + 1, nr) if M[i][t]]
            line += [(abs(M[t][j]), j, 1) for j in range(t + 1, nc) if M[t][j]]
            if line:
                _, k, is_col = min(line)
                (swap_cols if is_col else swap_rows)(t, k)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if M[i][j] % M[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(
        IntegerMatrix.from_rows(U, nr),
        IntegerMatrix.from_rows(V, nc),
        IntegerMatrix.from_rows(M, nc),
    )


# ---------------------------------------------------------------- membership

def _determinantal_divisor(rows: list[list[int]], r: int) -> int:
    g = 0
    ncols = len(rows[0])
    for I in itertools.combinations(range(len(rows)), r):
        for J in itertools.combinations(range(ncols), r):
            g = math.gcd(g, bareiss_det([[rows[i][j] for j in J] for i in I]))
            if g == 1:
                return 1
    return g


def membership_oracle(v: Sequence[int], rows: Sequence[Sequence[int]], max_terms: int = 729) -> bool:
    """Is ``v`` an integer combination of ``rows``?

    First enumerates coefficient vectors with growing bound.  If that finds
    nothing, the answer is settled exactly: ``v`` must lie in the rational
    span (equal ranks), and then ``v`` is in the lattice iff adjoining it
    does not change the gcd of the maximal minors, which is the index of the
    lattice in its saturation.
    """
    v = [int(x) for x in v]
    rows = [list(map(int, r)) for r in rows if any(r)]
    if not any(v):
        return True
    if not rows:
        return False
    k, b = len(rows), 1
    while (2 * b + 1) ** k <= max_terms:
        for c in itertools.product(range(-b, b + 1), repeat=k):
            if max(map(abs, c)) == b and all(
                sum(ci * r[j] for ci, r in zip(c, rows)) == v[j] for j in range(len(v))
            ):
                return True
        b += 1
    r = bareiss_rank(rows)
    if bareiss_rank(rows + [v]) != r:
        return False
    return _determinantal_divisor(rows, r) == _determinantal_divisor(rows + [v], r)


# ---------------------------------------------------------------- isotropic rank

def box_vectors(n: int, bound: int) -> np.ndarray:
    """Primitive vectors with entries in ``[-bound, bound]``, one per sign pair.

    Ordered by sup norm, then l1 norm, then descending lexicographic, so
    coordinate vectors come first.
    """
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        first = next((x for x in v if x), 0)
        if first <= 0 or math.gcd(*v) != 1:
            continue
        out.append(v)
    out.sort(key=lambda v: (max(map(abs, v)), sum(map(abs, v)), tuple(-x for x in v)))
    return np.array(out, dtype=np.int64).reshape(len(out), n)


def _form_array(forms) -> np.ndarray:
    mats = getattr(forms, "forms", forms)
    arr = [m.tolist() if isinstance(m, IntegerMatrix) else m for m in mats]
    if not arr:
        n = getattr(forms, "n", None)
        if n is None:
            raise ValueError("cannot infer n from an empty form list; pass PairingForms")
        return np.zeros((0, n, n), dtype=np.int64)
    return np.array(arr, dtype=np.int64)


@dataclass(frozen=True)
class EnumResult:
    rank: int
    witness: tuple[tuple[int, ...], ...]
    nodes: int


def _shard(args):
    V, F, max_rank, node_limit, roots, backend = args
    return kernels.isotropic_search(V, F, max_rank, node_limit, roots, backend=backend)


def isotropic_enum(
    forms,
    bound: int,
    max_rank: int | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
    jobs: int = 1,
    backend: str | None = None,
) -> EnumResult:
    """Exhaustive search for pairwise-orthogonal independent box vectors.

    With ``jobs > 1`` the first-level branches are dealt round-robin to worker
    processes.  The merged rank and witness equal the sequential ones: the
    witness is the first maximal node in search order, and the shard that
    owns its root finds it.  ``node_limit`` applies per shard.
    """
    F = _form_array(forms)
    n = F.shape[1]
    if n > MAX_ENUM_N or bound > MAX_ENUM_BOUND or bound < 0:
        raise ValueError(f"enumeration is limited to n <= {MAX_ENUM_N}, 0 <= bound <= {MAX_ENUM_BOUND}")
    max_rank = n if max_rank is None else min(max_rank, n)
    V = box_vectors(n, bound)
    if jobs <= 1 or len(V) < 2:
        results = [kernels.isotropic_search(V, F, max_rank, node_limit, None, backend=backend)]
    else:
        shards = [(V, F, max_rank, node_limit, list(range(s, len(V), jobs)), backend) for s in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_shard, shards))
    if any(r[3] for r in results):
        raise BudgetExceeded(f"isotropic enumeration exceeded {node_limit} nodes")
    best = max(r[0] for r in results)
    witness = min((r[2] for r in results if r[0] == best), default=())
    return EnumResult(best, tuple(tuple(int(x) for x in V[i]) for i in witness), sum(r[1] for r in results))


def isotropic_rank_enum(forms, bound: int, max_rank: int | None = None, node_limit: int = DEFAULT_NODE_LIMIT, jobs: int = 1) -> int:
    """Largest number of independent, pairwise orthogonal vectors in the box.

    A lower bound on the maximal isotropic rank; exact whenever a maximal
    isotropic subspace is spanned by box vectors.
    """
    return isotropic_enum(forms, bound, max_rank, node_limit, jobs).rank
