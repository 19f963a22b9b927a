"""Pure-Python scan kernel; used when the compiled extension is unavailable."""
from __future__ import annotations

from math import isqrt

from .pythagorean import py_group

NAME = "python"
MAX_EDGE = None  # unbounded: Python integers are exact

# residue tables, True where the residue is a square mod m
QR64 = tuple(any(x * x % 64 == r for x in range(64)) for r in range(64))
QR63 = tuple(any(x * x % 63 == r for x in range(63)) for r in range(63))
QR65 = tuple(any(x * x % 65 == r for x in range(65)) for r in range(65))
QR11 = tuple(any(x * x % 11 == r for x in range(11)) for r in range(11))


def square_root(v: int, prefilter: bool = True) -> int | None:
    if v < 0:
        return None
    if prefilter:
        if not QR64[v & 63]:
            return None
        r = v % 45045  # 63 * 65 * 11
        if not (QR63[r % 63] and QR65[r % 65] and QR11[r % 11]):
            return None
    r = isqrt(v)
    return r if r * r == v else None


def scan_values(n: int, a: list[int], A: list[int], prefilter: bool = True) -> list[tuple]:
    """Pair scan over a group given as parallel lists (ascending divisor order).

    Returns ``(code, i, j, s, a_i, A_i, a_j, A_j)`` for every satisfied
    condition, with ``i < j`` and ``code`` the condition row number.
    """
    sq = square_root
    k = len(a)
    a2 = [x * x for x in a]
    A2 = [x * x for x in A]
    hits = []
    for i in range(k):
        ai2 = a2[i]
        Ai2 = A2[i]
        for j in range(i + 1, k):
            aj2 = a2[j]
            Aj2 = A2[j]
            s = sq(Ai2 + aj2, prefilter)
            if s is not None:
                hits.append((1, i, j, s, a[i], A[i], a[j], A[j]))
            s = sq(Ai2 - Aj2, prefilter)
            if s is not None:
                hits.append((2, i, j, s, a[i], A[i], a[j], A[j]))
            s = sq(Ai2 - aj2, prefilter)
            if s is not None:
                hits.append((4, i, j, s, a[i], A[i], a[j], A[j]))
            diff = Aj2 - ai2
            if diff > 0:
                s = sq(diff, prefilter)
                if s is not None:
                    hits.append((6, i, j, s, a[i], A[i], a[j], A[j]))
            elif diff < 0:
                s = sq(-diff, prefilter)
                if s is not None:
                    hits.append((7, i, j, s, a[i], A[i], a[j], A[j]))
            s = sq(ai2 + aj2, prefilter)
            if s is not None:
                hits.append((8, i, j, s, a[i], A[i], a[j], A[j]))
    return hits


def edge_hits(n: int, prefilter: bool = True) -> list[tuple]:
    g = py_group(n)
    return scan_values(n, g.a, g.A, prefilter)
