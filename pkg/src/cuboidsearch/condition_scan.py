"""Pair scan of a Pythagorean group against the eight cuboid conditions.

Pairs are visited as ``i < j`` in ascending-divisor order, so ``A_i > A_j``
and ``a_i > a_j``.  A condition is tested only in the orientation whose
left-hand side is nonnegative; rows 3 and 5 are therefore never satisfied
(each is the mirror of row 2 / row 7 for the swapped pair).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _pykernel
from .backend import kernel as _default_kernel
from .cuboid_model import Cuboid, CuboidType, RadicalLength, Slot, is_square
from .pythagorean import PyGroup


class SearchCondition(enum.IntEnum):
    FACE_SUM = 1        # A_i^2 + a_j^2 = s^2  -> a_i, a_j, N, s
    FACE_DIFF_IJ = 2    # A_i^2 - A_j^2 = s^2  -> s, N, a_j, A_i
    FACE_DIFF_JI = 3    # A_j^2 - A_i^2 = s^2  -> s, N, a_i, A_j
    EDGE_DIFF_AI = 4    # A_i^2 - a_j^2 = s^2  -> N, a_j, sqrt(s^2-N^2), A_i
    EDGE_NEG_AI = 5     # a_j^2 - A_i^2 = s^2  -> N, a_j, sqrt(-s^2-N^2), A_i
    EDGE_DIFF_AJ = 6    # A_j^2 - a_i^2 = s^2  -> N, a_i, sqrt(s^2-N^2), A_j
    EDGE_NEG_AJ = 7     # a_i^2 - A_j^2 = s^2  -> N, a_i, sqrt(-s^2-N^2), A_j
    BODY_SUM = 8        # a_i^2 + a_j^2 = s^2  -> a_i, a_j, N, sqrt(s^2+N^2)

    @property
    def kind(self) -> str:
        if self in (SearchCondition.FACE_SUM, SearchCondition.FACE_DIFF_IJ, SearchCondition.FACE_DIFF_JI):
            return "face"
        if self is SearchCondition.BODY_SUM:
            return "body"
        return "edge"


@dataclass(frozen=True)
class RawCandidate:
    condition: SearchCondition
    n: int
    lhs1: int
    lhs2: int
    s: int
    quadruple: tuple[Slot, Slot, Slot, Slot]
    i: int = -1
    j: int = -1

    def signed_squares(self) -> tuple[int, int, int, int]:
        return tuple(v.radicand if isinstance(v, RadicalLength) else v * v for v in self.quadruple)

    def is_perfect(self) -> bool:
        """Would this candidate be a perfect cuboid (all seven lengths rational)?"""
        x2, y2, z2, d2 = self.signed_squares()
        c = self.condition
        if c.kind == "body":
            return is_square(d2)
        if c.kind == "edge":
            return z2 > 0 and is_square(z2)
        return is_square(x2 + y2)

    def to_cuboid(self) -> Cuboid:
        """The (possibly non-primitive) cuboid this candidate describes."""
        c = self.condition
        if c.kind == "face":
            kind = CuboidType.FACE
        elif c.kind == "body":
            kind = CuboidType.BODY
        else:
            z = self.quadruple[2]
            kind = CuboidType.REAL_EDGE if z.radicand > 0 else CuboidType.COMPLEX_EDGE
        return Cuboid(kind, *self.quadruple)


def test_square(v: int, prefilter: bool = True) -> int | None:
    """Integer square root of ``v`` if ``v`` is a perfect square, else ``None``.

    Candidates are first screened by quadratic residues modulo 64, 63, 65
    and 11 before the exact root is taken.
    """
    if v >= 2 ** 127:
        return _pykernel.square_root(v, prefilter)
    return _default_kernel.square_root(v, prefilter)


test_square.__test__ = False  # not a pytest test


def build_candidate(n: int, hit: tuple) -> RawCandidate:
    """Turn a kernel hit ``(code, i, j, s, a_i, A_i, a_j, A_j)`` into a candidate."""
    code, i, j, s, ai, Ai, aj, Aj = hit
    cond = SearchCondition(code)
    if cond is SearchCondition.FACE_SUM:
        lhs, quad = (Ai, aj), (ai, aj, n, s)
    elif cond is SearchCondition.FACE_DIFF_IJ:
        lhs, quad = (Ai, Aj), (s, n, aj, Ai)
    elif cond is SearchCondition.FACE_DIFF_JI:
        lhs, quad = (Aj, Ai), (s, n, ai, Aj)
    elif cond is SearchCondition.EDGE_DIFF_AI:
        lhs, quad = (Ai, aj), (n, aj, RadicalLength(s * s - n * n), Ai)
    elif cond is SearchCondition.EDGE_NEG_AI:
        lhs, quad = (aj, Ai), (n, aj, RadicalLength(-s * s - n * n), Ai)
    elif cond is SearchCondition.EDGE_DIFF_AJ:
        lhs, quad = (Aj, ai), (n, ai, RadicalLength(s * s - n * n), Aj)
    elif cond is SearchCondition.EDGE_NEG_AJ:
        lhs, quad = (ai, Aj), (n, ai, RadicalLength(-s * s - n * n), Aj)
    else:
        lhs, quad = (ai, aj), (ai, aj, n, RadicalLength(s * s + n * n))
    return RawCandidate(cond, n, lhs[0], lhs[1], s, quad, i, j)


def scan_edge(group: PyGroup, prefilter: bool = True, kernel=None) -> list[RawCandidate]:
    """Evaluate every unordered pair of ``group`` against the condition table."""
    kernel = kernel or _default_kernel
    hits = kernel.scan_values(group.n, group.a, group.A, prefilter)
    return [build_candidate(group.n, h) for h in hits]


def scan_n(n: int, prefilter: bool = True, kernel=None) -> list[RawCandidate]:
    """Build and scan the group of edge ``n`` inside the kernel."""
    kernel = kernel or _default_kernel
    return [build_candidate(n, h) for h in kernel.edge_hits(n, prefilter)]
