"""Pure-Python (numpy) isotropic subspace search; twin of ``_isotropic.pyx``.

Both implementations visit the same nodes in the same order and must return
identical ``(best, nodes, witness, aborted)`` tuples.

The search runs over a fixed ordered list ``V`` of primitive, sign-normalised
vectors.  A node is a set ``S`` of chosen vectors that are pairwise
orthogonal for every form; its candidates are the vectors orthogonal to all
of ``S``.  Each rational subspace is reached once, through its *greedy
basis* (each chosen vector is the first vector of ``V`` that enlarges the
span), so a child ``c`` is taken only if it is the smallest index in its
class of candidates parallel modulo ``span(S)``, and larger than the last
chosen index.  A node is pruned when ``|S| + rank(later candidates mod S)``
cannot beat the best rank found so far.
"""

from __future__ import annotations

import math

import numpy as np

_SAFE = 1 << 30


def _as_object_if_large(R: np.ndarray) -> np.ndarray:
    if R.dtype != object and R.size and np.abs(R).max() >= _SAFE:
        return R.astype(object)
    return R


def _normalize(R: np.ndarray) -> np.ndarray:
    """Divide each row by its content and make its first nonzero entry positive."""
    if not R.size:
        return R
    if R.dtype == object:
        out = []
        for row in R.tolist():
            g = 0
            for x in row:
                g = math.gcd(g, x)
            first = next((x for x in row if x), 1)
            s = -1 if first < 0 else 1
            out.append([s * x // g if g else 0 for x in row])
        return np.array(out, dtype=object).reshape(R.shape)
    g = np.gcd.reduce(R, axis=1)
    g[g == 0] = 1
    R = R // g[:, None]
    first = R[np.arange(R.shape[0]), np.argmax(R != 0, axis=1)]
    return R * np.where(first < 0, -1, 1)[:, None]


def _reduce(R: np.ndarray, echelon: list[tuple[int, np.ndarray]]) -> np.ndarray:
    """Residues of rows of ``R`` modulo the span of the echelon rows."""
    for p, E in echelon:
        R = _as_object_if_large(R)
        b = R[:, p].copy()
        hit = b != 0
        if hit.any():
            R = R.copy()
            R[hit] = E[p] * R[hit] - b[hit][:, None] * E[None, :]
            R[hit] = _normalize(R[hit])
    return R


def _rank(R: np.ndarray) -> int:
    """Exact rank by fraction-free elimination, one column at a time."""
    r = 0
    R = R[R.any(axis=1)] if R.size else R
    for col in range(R.shape[1] if R.ndim == 2 else 0):
        if not R.shape[0]:
            break
        nz = np.nonzero(R[:, col])[0]
        if not nz.size:
            continue
        piv = R[nz[0]].copy()
        rest = np.delete(R, nz[0], axis=0)
        rest = _as_object_if_large(rest)
        if rest.dtype == object:
            piv = piv.astype(object)
        rest = piv[col] * rest - rest[:, col][:, None] * piv[None, :]
        rest = rest[rest.any(axis=1)]
        R = _normalize(rest) if rest.size else rest
        r += 1
    return r


def isotropic_search(V, forms, max_rank: int, node_limit: int, roots=None):
    V = np.ascontiguousarray(V, dtype=np.int64)
    forms = np.ascontiguousarray(forms, dtype=np.int64)
    N, n = V.shape
    m = forms.shape[0]
    if m and V.size and int(np.abs(V).max()) * int(np.abs(forms).max()) * n >= _SAFE:
        VC = np.einsum("uj,kji->kui", V.astype(object), forms.astype(object))
    else:
        VC = np.einsum("uj,kji->kui", V, forms) if m else np.zeros((0, N, n), dtype=np.int64)
    root_set = None if roots is None else set(int(r) for r in roots)

    st = {"best": 0, "witness": (), "nodes": 0, "aborted": False, "stop": False}
    chosen: list[int] = []

    def orthogonal(c: int, cand: np.ndarray) -> np.ndarray:
        if not m:
            return cand
        ok = np.ones(cand.size, dtype=bool)
        for k in range(m):
            ok &= VC[k][cand] @ V[c] == 0
        return cand[ok]

    def node(cand: np.ndarray, echelon: list, last: int) -> None:
        st["nodes"] += 1
        if st["nodes"] > node_limit:
            st["aborted"] = st["stop"] = True
            return
        j = len(chosen)
        if j > st["best"]:
            st["best"], st["witness"] = j, tuple(chosen)
        if st["best"] >= max_rank:
            st["stop"] = True
            return
        if not cand.size:
            return
        R = _reduce(V[cand], echelon)
        live = R.any(axis=1)
        cand, R = cand[live], R[live]
        later = cand > last
        need = st["best"] - j  # prune unless the later residues have rank > need
        if need >= 0 and _rank(R[later]) <= need:
            return
        if j == 0:
            reps = cand
        else:
            keys = _normalize(R)
            if keys.dtype == object:
                seen: dict = {}
                for idx, key in zip(cand.tolist(), map(tuple, keys.tolist())):
                    seen.setdefault(key, idx)
                reps = np.array(sorted(seen.values()), dtype=np.int64)
            else:
                _, first = np.unique(keys, axis=0, return_index=True)
                reps = np.sort(cand[first])
        reps = reps[reps > last]
        for c in reps.tolist():
            if j == 0 and root_set is not None and c not in root_set:
                continue
            row = _normalize(_reduce(V[c:c + 1], echelon))[0]
            p = int(np.nonzero(row)[0][0])
            chosen.append(c)
            node(orthogonal(c, cand), echelon + [(p, row)], c)
            chosen.pop()
            if st["stop"]:
                return

    node(np.arange(N), [], -1)
    return st["best"], st["nodes"], st["witness"], st["aborted"]
