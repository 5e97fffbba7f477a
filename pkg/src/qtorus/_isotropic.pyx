# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled isotropic subspace search.

Same algorithm, node order and return value as ``_isotropic_py``; see that
module for the description.  Arithmetic is in 64-bit integers with overflow
checks; on overflow the search raises OverflowError and the caller falls back
to the exact pure-Python backend.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, qsort

ctypedef long long i64

cdef extern from *:
    """
    static inline int qt_mul_sub(long long a, long long x, long long b, long long y, long long* out) {
        long long p, q;
        return __builtin_mul_overflow(a, x, &p) | __builtin_mul_overflow(b, y, &q) | __builtin_sub_overflow(p, q, out);
    }
    static inline int qt_mul_add(long long s, long long x, long long y, long long* out) {
        long long p;
        return __builtin_mul_overflow(x, y, &p) | __builtin_add_overflow(s, p, out);
    }
    """
    int qt_mul_sub(i64 a, i64 x, i64 b, i64 y, i64* out) noexcept nogil
    int qt_mul_add(i64 s, i64 x, i64 y, i64* out) noexcept nogil

cdef int _overflow = 0

cdef enum:
    MAXN = 16


cdef struct Ctx:
    int N
    int n
    int m
    i64* V
    i64* VC
    int max_rank
    int checked_dot
    i64 nodes
    i64 limit
    int best
    int aborted
    int stop
    int witness[MAXN]
    int chosen[MAXN]
    char* root_mask
    int** cand
    i64** res
    int** order
    int** reps
    i64 ech[MAXN][MAXN]
    int piv[MAXN]


cdef void _flag_overflow() noexcept nogil:
    global _overflow
    _overflow = 1


cdef inline i64 _gcd(i64 a, i64 b) noexcept nogil:
    cdef i64 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _normalize(i64* r, int n) noexcept nogil:
    cdef i64 g = 0
    cdef int i, s = 0
    for i in range(n):
        g = _gcd(g, r[i])
        if s == 0 and r[i] != 0:
            s = -1 if r[i] < 0 else 1
    if g == 0:
        return
    for i in range(n):
        r[i] = s * (r[i] / g)


cdef inline int _nonzero(const i64* r, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        if r[i] != 0:
            return 1
    return 0


cdef void _reduce(Ctx* c, int depth, i64* r) noexcept nogil:
    cdef int i, t, p
    cdef i64 a, b
    for i in range(depth):
        p = c.piv[i]
        b = r[p]
        if b != 0:
            a = c.ech[i][p]
            for t in range(c.n):
                if qt_mul_sub(a, r[t], b, c.ech[i][t], &r[t]):
                    _flag_overflow()
            _normalize(r, c.n)


cdef int _rank_exceeds(const i64* rows, int count, int n, int need) noexcept nogil:
    # 1 if the rows have rank > need
    cdef i64 E[MAXN][MAXN]
    cdef int P[MAXN]
    cdef i64 tmp[MAXN]
    cdef int r = 0, q, i, t, p
    cdef i64 a, b
    if need < 0:
        return 1
    for q in range(count):
        for t in range(n):
            tmp[t] = rows[q * n + t]
        for i in range(r):
            p = P[i]
            b = tmp[p]
            if b != 0:
                a = E[i][p]
                for t in range(n):
                    if qt_mul_sub(a, tmp[t], b, E[i][t], &tmp[t]):
                        _flag_overflow()
                _normalize(tmp, n)
        if _nonzero(tmp, n):
            for t in range(n):
                E[r][t] = tmp[t]
            t = 0
            while tmp[t] == 0:
                t += 1
            P[r] = t
            r += 1
            if r > need:
                return 1
    return 0


cdef const i64* _sort_keys = NULL
cdef const int* _sort_cand = NULL
cdef int _sort_n = 0


cdef int _cmp_keys(const void* pa, const void* pb) noexcept nogil:
    cdef int ia = (<const int*>pa)[0]
    cdef int ib = (<const int*>pb)[0]
    cdef const i64* ka = _sort_keys + ia * _sort_n
    cdef const i64* kb = _sort_keys + ib * _sort_n
    cdef int t
    for t in range(_sort_n):
        if ka[t] != kb[t]:
            return -1 if ka[t] < kb[t] else 1
    return (_sort_cand[ia] > _sort_cand[ib]) - (_sort_cand[ia] < _sort_cand[ib])


cdef int _cmp_int(const void* pa, const void* pb) noexcept nogil:
    cdef int a = (<const int*>pa)[0]
    cdef int b = (<const int*>pb)[0]
    return (a > b) - (a < b)


cdef inline int _orth(Ctx* c, int w, int u) noexcept nogil:
    cdef int k, t
    cdef i64 s
    cdef const i64* vu = c.V + u * c.n
    cdef const i64* row
    for k in range(c.m):
        row = c.VC + (k * c.N + w) * c.n
        s = 0
        if c.checked_dot:
            for t in range(c.n):
                if qt_mul_add(s, row[t], vu[t], &s):
                    _flag_overflow()
        else:
            for t in range(c.n):
                s += row[t] * vu[t]
        if s != 0:
            return 0
    return 1


cdef inline int _cmp_keys_eq(const i64* R, int a, int b, int n) noexcept nogil:
    cdef int t
    for t in range(n):
        if R[a * n + t] != R[b * n + t]:
            return 0
    return 1


cdef void _node(Ctx* c, int depth, int count, int last) noexcept nogil:
    global _sort_keys, _sort_cand, _sort_n
    cdef int n = c.n
    cdef int q, t, u, w, L, start, nreps, k, g
    cdef int* cand = c.cand[depth]
    cdef i64* R = c.res[depth]
    cdef int* order = c.order[depth]
    cdef int* reps = c.reps[depth]
    cdef int* child
    cdef i64* r

    c.nodes += 1
    if c.nodes > c.limit:
        c.aborted = 1
        c.stop = 1
        return
    if depth > c.best:
        c.best = depth
        for t in range(depth):
            c.witness[t] = c.chosen[t]
    if c.best >= c.max_rank:
        c.stop = 1
        return
    if count == 0:
        return

    L = 0
    for q in range(count):
        u = cand[q]
        r = R + L * n
        for t in range(n):
            r[t] = c.V[u * n + t]
        _reduce(c, depth, r)
        if _nonzero(r, n):
            cand[L] = u
            L += 1
    count = L

    start = 0
    while start < count and cand[start] <= last:
        start += 1
    if not _rank_exceeds(R + start * n, count - start, n, c.best - depth):
        return

    if depth == 0:
        nreps = 0
        for q in range(count):
            reps[nreps] = cand[q]
            nreps += 1
    else:
        for q in range(count):
            order[q] = q
        _sort_keys = R
        _sort_cand = cand
        _sort_n = n
        qsort(order, count, sizeof(int), _cmp_keys)
        nreps = 0
        g = 0
        while g < count:
            reps[nreps] = cand[order[g]]
            nreps += 1
            k = g + 1
            while k < count and _cmp_keys_eq(R, order[g], order[k], n):
                k += 1
            g = k
        qsort(reps, nreps, sizeof(int), _cmp_int)

    child = c.cand[depth + 1]
    for q in range(nreps):
        u = reps[q]
        if u <= last:
            continue
        if depth == 0 and c.root_mask != NULL and not c.root_mask[u]:
            continue
        k = 0
        for t in range(count):
            w = cand[t]
            if _orth(c, w, u):
                child[k] = w
                k += 1
        for t in range(n):
            c.ech[depth][t] = c.V[u * n + t]
        _reduce(c, depth, c.ech[depth])
        _normalize(c.ech[depth], n)
        t = 0
        while c.ech[depth][t] == 0:
            t += 1
        c.piv[depth] = t
        c.chosen[depth] = u
        _node(c, depth + 1, k, u)
        if c.stop:
            return


def isotropic_search(V, forms, int max_rank, long long node_limit, roots=None):
    cdef cnp.ndarray[i64, ndim=2, mode="c"] Va = np.ascontiguousarray(V, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=3, mode="c"] Fa = np.ascontiguousarray(forms, dtype=np.int64)
    cdef int N = Va.shape[0]
    cdef int n = Va.shape[1]
    cdef int m = Fa.shape[0]
    if n > MAXN - 1:
        raise ValueError(f"compiled search supports n <= {MAXN - 1}")
    cdef cnp.ndarray[i64, ndim=3, mode="c"] VC
    global _overflow
    if m:
        if N and int(np.abs(Va).max()) * int(np.abs(Fa).max()) * n >= (1 << 62):
            exact = np.einsum("uj,kji->kui", Va.astype(object), Fa.astype(object))
            if max(abs(int(x)) for x in exact.flat) >= (1 << 62):
                raise OverflowError("form products exceed 64 bits")
        VC = np.ascontiguousarray(np.einsum("uj,kji->kui", Va, Fa), dtype=np.int64)
    else:
        VC = np.zeros((1, max(N, 1), max(n, 1)), dtype=np.int64)
    cdef cnp.ndarray[cnp.int8_t, ndim=1, mode="c"] mask
    cdef Ctx c
    cdef int d, i
    c.N = N
    c.n = n
    c.m = m
    c.V = <i64*>Va.data
    c.VC = <i64*>VC.data
    c.max_rank = max_rank
    # dot products of VC rows with box vectors cannot overflow below this bound
    c.checked_dot = 1
    if N and m:
        c.checked_dot = int(np.abs(VC).max()) * int(np.abs(Va).max()) * n >= (1 << 62)
    c.nodes = 0
    c.limit = node_limit
    c.best = 0
    c.aborted = 0
    c.stop = 0
    c.root_mask = NULL
    if roots is not None:
        mask = np.zeros(max(N, 1), dtype=np.int8)
        for i in roots:
            mask[i] = 1
        c.root_mask = <char*>mask.data
    c.cand = <int**>malloc((n + 2) * sizeof(int*))
    c.res = <i64**>malloc((n + 2) * sizeof(i64*))
    c.order = <int**>malloc((n + 2) * sizeof(int*))
    c.reps = <int**>malloc((n + 2) * sizeof(int*))
    for d in range(n + 2):
        c.cand[d] = <int*>malloc((N + 1) * sizeof(int))
        c.res[d] = <i64*>malloc((N + 1) * (n + 1) * sizeof(i64))
        c.order[d] = <int*>malloc((N + 1) * sizeof(int))
        c.reps[d] = <int*>malloc((N + 1) * sizeof(int))
    try:
        for i in range(N):
            c.cand[0][i] = i
        _overflow = 0
        with nogil:
            _node(&c, 0, N, -1)
    finally:
        for d in range(n + 2):
            free(c.cand[d])
            free(c.res[d])
            free(c.order[d])
            free(c.reps[d])
        free(c.cand)
        free(c.res)
        free(c.order)
        free(c.reps)
    if _overflow:
        raise OverflowError("64-bit overflow in the isotropic search")
    witness = tuple(c.witness[i] for i in range(c.best))
    return c.best, c.nodes, witness, bool(c.aborted)
