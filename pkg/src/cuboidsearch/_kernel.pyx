# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel with exact 128-bit arithmetic.

Every intermediate stays below 2**127 while the edge is below 2**32: the
largest hypotenuse is (N**2 + 1) / 2 < 2**63, and a condition sums at most
two such squares.
"""
from libc.stdlib cimport malloc, free, qsort
from libc.math cimport sqrt
from libc.stdint cimport uint64_t

from .errors import CapacityError

ctypedef uint64_t u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

NAME = "compiled"
MAX_EDGE = 2 ** 32 - 1

cdef bint qr64[64]
cdef bint qr63[63]
cdef bint qr65[65]
cdef bint qr11[11]


cdef void _init_tables():
    cdef int m, x
    for m in range(64):
        qr64[m] = 0
    for m in range(63):
        qr63[m] = 0
    for m in range(65):
        qr65[m] = 0
    for m in range(11):
        qr11[m] = 0
    for x in range(64):
        qr64[x * x % 64] = 1
    for x in range(63):
        qr63[x * x % 63] = 1
    for x in range(65):
        qr65[x * x % 65] = 1
    for x in range(11):
        qr11[x * x % 11] = 1


_init_tables()


cdef inline bint _is_square(u128 v, u64 *root, bint prefilter) noexcept nogil:
    # Cython sees u128 as unsigned long long: keep every operand below u128
    # so no implicit narrowing cast is generated.
    cdef unsigned int r
    cdef u128 q, one = 1
    if prefilter:
        if not qr64[<unsigned int>(v & 63)]:
            return 0
        r = <unsigned int>(v % 45045)
        if not (qr63[r % 63] and qr65[r % 65] and qr11[r % 11]):
            return 0
    q = <u128><u64>sqrt(<double>v)
    if q > 0:
        # one Newton step repairs the double-precision estimate
        q = (q + v / q) >> 1
    while q * q > v:
        q -= one
    while (q + one) * (q + one) <= v:
        q += one
    if q * q == v:
        root[0] = <u64>q
        return 1
    return 0


cdef int _cmp_u64(const void *x, const void *y) noexcept nogil:
    cdef u64 a = (<const u64 *>x)[0]
    cdef u64 b = (<const u64 *>y)[0]
    return (a > b) - (a < b)


cdef Py_ssize_t _divisors(u64 n, u64 **out) except -1:
    """Fill *out with the ascending generating divisors of edge n; return count."""
    cdef u64 m = n, scale = 1, bound = n
    cdef u64 primes[64]
    cdef int exps[64]
    cdef int nf = 0, f, e, t
    cdef u64 p, q
    cdef Py_ssize_t total = 1, cnt, c, start
    cdef u64 *divs
    if n % 2 == 0:
        m = n // 2
        scale = 2
        bound = n // 2
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            primes[nf] = p
            exps[nf] = 2 * e
            nf += 1
        p += 1 if p == 2 else 2
    if m > 1:
        primes[nf] = m
        exps[nf] = 2
        nf += 1
    for f in range(nf):
        total *= exps[f] + 1
    divs = <u64 *>malloc(total * sizeof(u64))
    if divs == NULL:
        raise MemoryError()
    divs[0] = 1
    cnt = 1
    for f in range(nf):
        p = primes[f]
        start = cnt
        for c in range(start):
            q = divs[c]
            for t in range(exps[f]):
                # q * p < bound, written to avoid overflow
                if q >= (bound + p - 1) // p:
                    break
                q *= p
                divs[cnt] = q
                cnt += 1
    # divs holds every divisor < bound exactly once
    c = 0
    for t in range(cnt):
        if divs[t] < bound:
            divs[c] = divs[t] * scale
            c += 1
    qsort(divs, c, sizeof(u64), _cmp_u64)
    out[0] = divs
    return c


cdef list _scan(u64 n, u64 *a, u64 *A, Py_ssize_t k, bint prefilter):
    cdef list hits = []
    cdef Py_ssize_t i, j
    cdef u128 ai2, Ai2, aj2, Aj2
    cdef u64 s
    cdef u128 *sa
    cdef u128 *sA
    if k < 2:
        return hits
    sa = <u128 *>malloc(k * sizeof(u128))
    sA = <u128 *>malloc(k * sizeof(u128))
    if sa == NULL or sA == NULL:
        free(sa)
        free(sA)
        raise MemoryError()
    for i in range(k):
        sa[i] = (<u128>a[i]) * a[i]
        sA[i] = (<u128>A[i]) * A[i]
    try:
        for i in range(k):
            ai2 = sa[i]
            Ai2 = sA[i]
            for j in range(i + 1, k):
                aj2 = sa[j]
                Aj2 = sA[j]
                if _is_square(Ai2 + aj2, &s, prefilter):
                    hits.append((1, i, j, s, a[i], A[i], a[j], A[j]))
                if _is_square(Ai2 - Aj2, &s, prefilter):
                    hits.append((2, i, j, s, a[i], A[i], a[j], A[j]))
                if _is_square(Ai2 - aj2, &s, prefilter):
                    hits.append((4, i, j, s, a[i], A[i], a[j], A[j]))
                if Aj2 > ai2:
                    if _is_square(Aj2 - ai2, &s, prefilter):
                        hits.append((6, i, j, s, a[i], A[i], a[j], A[j]))
                elif Aj2 < ai2:
                    if _is_square(ai2 - Aj2, &s, prefilter):
                        hits.append((7, i, j, s, a[i], A[i], a[j], A[j]))
                if _is_square(ai2 + aj2, &s, prefilter):
                    hits.append((8, i, j, s, a[i], A[i], a[j], A[j]))
    finally:
        free(sa)
        free(sA)
    return hits


def square_root(v, bint prefilter=True):
    """Exact root of 0 <= v < 2**127 if it is a perfect square, else None."""
    cdef u64 r
    cdef u128 w
    if v < 0:
        return None
    if v >= 2 ** 127:
        raise OverflowError(f"{v} exceeds the kernel square-test range (< 2**127)")
    w = (<u128><u64>(v >> 64)) << 64
    w |= <u64>(v & 0xFFFFFFFFFFFFFFFF)
    if _is_square(w, &r, prefilter):
        return r
    return None


def scan_values(n, a, A, bint prefilter=True):
    """Pair scan over a group given as parallel lists (ascending divisor order)."""
    cdef Py_ssize_t k = len(a), i
    cdef u64 *va
    cdef u64 *vA
    if n < 1 or n > MAX_EDGE:
        raise CapacityError(n, MAX_EDGE)
    if len(A) != k:
        raise ValueError("a and A must have equal length")
    va = <u64 *>malloc((k + 1) * sizeof(u64))
    vA = <u64 *>malloc((k + 1) * sizeof(u64))
    try:
        for i in range(k):
            if not (0 < a[i] < A[i] < 2 ** 63):
                raise ValueError(f"invalid group entry a={a[i]}, A={A[i]}")
            va[i] = a[i]
            vA[i] = A[i]
        return _scan(n, va, vA, k, prefilter)
    finally:
        free(va)
        free(vA)


def edge_hits(n, bint prefilter=True):
    """Factor, build the group and scan it for edge n, all in fixed width."""
    cdef u64 nn, n2, d
    cdef u64 *divs = NULL
    cdef u64 *va
    cdef u64 *vA
    cdef Py_ssize_t k, i
    if n < 1 or n > MAX_EDGE:
        raise CapacityError(n, MAX_EDGE)
    nn = n
    n2 = nn * nn
    k = _divisors(nn, &divs)
    va = <u64 *>malloc((k + 1) * sizeof(u64))
    vA = <u64 *>malloc((k + 1) * sizeof(u64))
    try:
        if va == NULL or vA == NULL:
            raise MemoryError()
        for i in range(k):
            d = divs[i]
            va[i] = (n2 - d * d) // (2 * d)
            vA[i] = va[i] + d
        return _scan(nn, va, vA, k, prefilter)
    finally:
        free(divs)
        free(va)
        free(vA)


def divisors(n):
    """Generating divisors of edge n as computed by the kernel (for testing)."""
    cdef u64 *divs = NULL
    cdef Py_ssize_t k, i
    if n < 1 or n > MAX_EDGE:
        raise CapacityError(n, MAX_EDGE)
    k = _divisors(n, &divs)
    try:
        return [divs[i] for i in range(k)]
    finally:
        free(divs)
