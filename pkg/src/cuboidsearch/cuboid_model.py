"""Cuboid values: reduction to primitive terms, canonical layout, verification.

A cuboid is stored as four slots ``(x, y, z, d)``.  Body and edge cuboids
carry exactly one :class:`RadicalLength` (``d`` and ``z`` respectively);
face cuboids have four integer slots, their irrational length being the
face diagonal ``sqrt(x**2 + y**2)``, which is not stored.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt
from typing import Union

from .errors import InconsistentCuboidError


class CuboidType(enum.Enum):
    BODY = "B"
    COMPLEX_EDGE = "e"
    REAL_EDGE = "E"
    FACE = "F"

    @property
    def letter(self) -> str:
        return self.value

    @classmethod
    def from_letter(cls, letter: str) -> "CuboidType":
        return cls(letter)

    @property
    def is_edge(self) -> bool:
        return self in (CuboidType.COMPLEX_EDGE, CuboidType.REAL_EDGE)


# table sort order for kinds sharing the same edges
KIND_ORDER = {CuboidType.BODY: 0, CuboidType.COMPLEX_EDGE: 1, CuboidType.REAL_EDGE: 2, CuboidType.FACE: 3}


@dataclass(frozen=True, order=True)
class RadicalLength:
    """The length ``sqrt(radicand)``; a negative radicand is an imaginary length."""

    radicand: int

    def __post_init__(self):
        if self.radicand == 0:
            raise ValueError("radicand must be nonzero")

    def __str__(self) -> str:
        return f"({self.radicand})"


Slot = Union[int, RadicalLength]


def signed_square(v: Slot) -> int:
    """Square of a slot value; a radical contributes its (signed) radicand."""
    if isinstance(v, RadicalLength):
        return v.radicand
    return v * v


def slot_value(v: Slot) -> int:
    return v.radicand if isinstance(v, RadicalLength) else v


def is_square(v: int) -> bool:
    return v >= 0 and isqrt(v) ** 2 == v


def is_signed_square(v: int) -> bool:
    """True when ``v`` or ``-v`` is a nonzero perfect square."""
    return v != 0 and is_square(abs(v))


@dataclass(frozen=True)
class Cuboid:
    kind: CuboidType
    x: Slot
    y: Slot
    z: Slot
    d: Slot

    @property
    def slots(self) -> tuple[Slot, Slot, Slot, Slot]:
        return (self.x, self.y, self.z, self.d)

    @property
    def edges(self) -> tuple[Slot, Slot, Slot]:
        return (self.x, self.y, self.z)

    def integer_slots(self) -> list[int]:
        return [v for v in self.slots if not isinstance(v, RadicalLength)]

    def integer_edges(self) -> list[int]:
        return [v for v in self.edges if not isinstance(v, RadicalLength)]

    def key(self) -> tuple:
        """Sort and dedup key: (ss, x, y, z, kind, d) with radicals by radicand."""
        return (sorted_side(self), slot_value(self.x), slot_value(self.y), slot_value(self.z),
                KIND_ORDER[self.kind], slot_value(self.d))

    def __str__(self) -> str:
        return f"{self.kind.letter}," + ",".join(str(v) for v in self.slots)


def reduce_primitive(c: Cuboid) -> Cuboid:
    """Divide out the common factor of the integer slots (and its square from the radicand)."""
    g = reduce(gcd, c.integer_slots(), 0)
    if g <= 1:
        return c
    out = []
    for v in c.slots:
        if isinstance(v, RadicalLength):
            q, rem = divmod(v.radicand, g * g)
            if rem:
                raise InconsistentCuboidError(f"radicand {v.radicand} not divisible by {g}**2 in {c}")
            out.append(RadicalLength(q))
        else:
            out.append(v // g)
    return Cuboid(c.kind, *out)


def _face_shared_edge(edges: list[int]) -> int:
    # index of the edge whose two face diagonals are both rational
    shared = []
    for i in range(3):
        others = [edges[j] for j in range(3) if j != i]
        if all(is_square(edges[i] ** 2 + o * o) for o in others):
            shared.append(i)
    if not shared:
        raise InconsistentCuboidError(f"face cuboid with edges {edges} has no edge shared by two rational faces")
    return shared[0]


def canonicalize(c: Cuboid) -> Cuboid:
    """Put a valid primitive cuboid in table layout.

    Body: ascending edges, radical diagonal.  Edge: ascending integer edges,
    radical in ``z``.  Face: the edge shared by both rational face diagonals
    in ``z``, the other two ascending.
    """
    if c.kind is CuboidType.BODY:
        radical = [v for v in c.slots if isinstance(v, RadicalLength)]
        x, y, z = sorted(c.integer_slots())
        return Cuboid(c.kind, x, y, z, radical[0])
    if c.kind.is_edge:
        radical = [v for v in c.edges if isinstance(v, RadicalLength)]
        x, y = sorted(c.integer_edges())
        return Cuboid(c.kind, x, y, radical[0], c.d)
    edges = list(c.edges)
    i = _face_shared_edge(edges)
    z = edges.pop(i)
    x, y = sorted(edges)
    return Cuboid(c.kind, x, y, z, c.d)


def sorted_side(c: Cuboid) -> int:
    """Smallest integer edge; the diagonal never counts."""
    return min(c.integer_edges())


def verify(c: Cuboid) -> bool:
    """Check the quadruple identity, the type letter and primitivity."""
    try:
        return not violations(c)
    except (TypeError, ValueError):
        return False


def violations(c: Cuboid) -> list[str]:
    """Every invariant the cuboid breaks (empty if valid)."""
    problems = []
    if not isinstance(c.kind, CuboidType):
        return [f"unknown kind {c.kind!r}"]
    radical_at = [i for i, v in enumerate(c.slots) if isinstance(v, RadicalLength)]
    for v in c.integer_slots():
        if not isinstance(v, int) or v <= 0:
            problems.append(f"integer slot {v!r} is not a positive integer")
    if problems:
        return problems
    expected = {CuboidType.BODY: [3], CuboidType.REAL_EDGE: [2], CuboidType.COMPLEX_EDGE: [2],
                CuboidType.FACE: []}[c.kind]
    if radical_at != expected:
        names = "xyzd"
        where = ",".join(names[i] for i in radical_at) or "none"
        return [f"kind {c.kind.letter} needs radical slot "
                f"{','.join(names[i] for i in expected) or 'none'}, found {where}"]

    x2, y2, z2, d2 = (signed_square(v) for v in c.slots)
    if x2 + y2 + z2 != d2:
        problems.append(f"x^2+y^2+z^2 = {x2 + y2 + z2} != d^2 = {d2}")
    xy, xz, yz = x2 + y2, x2 + z2, y2 + z2

    if c.kind is CuboidType.BODY:
        for name, v in (("x^2+y^2", xy), ("x^2+z^2", xz), ("y^2+z^2", yz)):
            if not is_square(v):
                problems.append(f"{name} = {v} is not a perfect square")
        if is_square(d2):
            problems.append(f"body diagonal radicand {d2} is a perfect square (perfect cuboid)")
    elif c.kind.is_edge:
        if c.kind is CuboidType.REAL_EDGE and z2 <= 0:
            problems.append(f"real edge cuboid with radicand {z2} <= 0")
        if c.kind is CuboidType.COMPLEX_EDGE and z2 >= 0:
            problems.append(f"complex edge cuboid with radicand {z2} >= 0")
        if is_square(z2):
            problems.append(f"edge radicand {z2} is a perfect square (perfect cuboid)")
        if not is_square(xy):
            problems.append(f"x^2+y^2 = {xy} is not a perfect square")
        for name, v in (("x^2+z^2", xz), ("y^2+z^2", yz)):
            if not is_signed_square(v):
                problems.append(f"{name} = {v} is not a signed perfect square")
    else:
        if not (is_square(xz) and xz > 0 and is_square(yz) and yz > 0):
            problems.append("face cuboid needs x^2+z^2 and y^2+z^2 perfect squares")
        if is_square(xy):
            problems.append(f"x^2+y^2 = {xy} is a perfect square (perfect cuboid)")

    if reduce(gcd, c.integer_slots(), 0) != 1:
        problems.append(f"not primitive: gcd of integer slots is {reduce(gcd, c.integer_slots(), 0)}")
    return problems
