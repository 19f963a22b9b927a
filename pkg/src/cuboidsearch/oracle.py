"""Brute-force reference search, independent of the divisor/condition path.

Partners come from a direct scan of every ``m`` (vectorised with numpy,
roots confirmed exactly in int64), and cuboids are recognised from their
defining equations rather than from the condition table.  Only for tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from .cuboid_model import Cuboid, CuboidType, RadicalLength

_CHUNK = 1 << 18
_EXACT_LIMIT = 2 ** 52  # float64 roots stay exact-rounded below this


@dataclass(frozen=True)
class OracleLimit:
    max_edge: int

    def __post_init__(self):
        if self.max_edge < 1:
            raise ValueError("max_edge must be >= 1")


def _square(v: int) -> int | None:
    # deliberately plain, no residue filtering
    if v < 0:
        return None
    r = isqrt(v)
    return r if r * r == v else None


def partners_bruteforce(n: int) -> list[int]:
    """Every ``m`` in ``1..(n**2-1)//2`` with ``m**2 + n**2`` a perfect square."""
    top = (n * n - 1) // 2
    if top < 1:
        return []
    if top * top + n * n >= _EXACT_LIMIT:
        return [m for m in range(1, top + 1) if _square(m * m + n * n) is not None]
    n2 = np.int64(n) * np.int64(n)
    size = min(_CHUNK, top)
    m = np.empty(size, dtype=np.int64)
    v = np.empty(size, dtype=np.int64)
    f = np.empty(size, dtype=np.float64)
    r = np.empty(size, dtype=np.int64)
    found = []
    for lo in range(1, top + 1, _CHUNK):
        cnt = min(_CHUNK, top + 1 - lo)
        mm, vv, ff, rr = m[:cnt], v[:cnt], f[:cnt], r[:cnt]
        mm[:] = np.arange(lo, lo + cnt, dtype=np.int64)
        np.multiply(mm, mm, out=vv)
        vv += n2
        np.sqrt(vv, out=ff)
        np.rint(ff, out=ff)
        rr[:] = ff
        np.multiply(rr, rr, out=rr)
        found.append(mm[rr == vv].copy())
    return [int(x) for x in np.concatenate(found)]


def _primitive(*ints: int) -> bool:
    g = 0
    for v in ints:
        g = gcd(g, v)
    return g == 1


def cuboids_at(n: int, partners: list[int] | None = None) -> list[Cuboid]:
    """Primitive cuboids with smallest integer edge exactly ``n``."""
    plist = partners_bruteforce(n) if partners is None else partners
    hyp = {m: _square(m * m + n * n) for m in plist}
    big = [m for m in plist if m > n]
    n2 = n * n
    out = set()

    # body: two partners > n whose squares sum to a square, irrational diagonal
    # face with n as the shared edge: same pair, rational diagonal, irrational third face
    for i, y in enumerate(big):
        for z in big[i:]:
            yz = y * y + z * z
            d2 = n2 + yz
            rational_yz = _square(yz) is not None
            rational_d = _square(d2) is not None
            if rational_yz and not rational_d:
                x1, x2, x3 = sorted((n, y, z))
                if _primitive(n, y, z):
                    out.add(Cuboid(CuboidType.BODY, x1, x2, x3, RadicalLength(d2)))
            elif rational_d and not rational_yz and _primitive(n, y, z, _square(d2)):
                a, b = sorted((y, z))
                out.add(Cuboid(CuboidType.FACE, a, b, n, _square(d2)))

    # face with n not shared: z and c partners (c**2 = y**2 + z**2), d = hyp(n, c),
    # y**2 = c**2 - z**2 an integer square, n**2 + y**2 irrational
    for z in big:
        for c in plist:
            if c <= z:
                continue
            y = _square(c * c - z * z)
            if y is None or y <= n:
                continue
            if _square(n2 + y * y) is not None:
                continue
            d = hyp[c]
            if _primitive(n, y, z, d):
                a, b = sorted((n, y))
                out.add(Cuboid(CuboidType.FACE, a, b, z, d))

    # edge: y a partner > n, c a partner with c**2 = y**2 + z**2 (z**2 may be negative),
    # d = hyp(n, c), and n**2 + z**2 a nonzero signed square
    for y in big:
        for c in plist:
            z2 = c * c - y * y
            if z2 == 0:
                continue
            b2 = n2 + z2
            if b2 == 0 or _square(abs(b2)) is None:
                continue
            if _square(z2) is not None:
                continue  # rational edge would make a perfect cuboid
            d = hyp[c]
            if _primitive(n, y, d):
                kind = CuboidType.REAL_EDGE if z2 > 0 else CuboidType.COMPLEX_EDGE
                out.add(Cuboid(kind, n, y, RadicalLength(z2), d))
    return list(out)


def cuboids_bruteforce(limit: OracleLimit | int) -> list[Cuboid]:
    """All primitive cuboids whose smallest integer edge is at most ``max_edge``."""
    max_edge = limit.max_edge if isinstance(limit, OracleLimit) else limit
    found = []
    for n in range(1, max_edge + 1):
        found.extend(cuboids_at(n))
    return found
