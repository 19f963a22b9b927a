"""Divisor sets and Pythagorean groups.

For an edge ``n`` every positive ``m`` with ``m**2 + n**2`` a perfect square
is produced by a divisor ``d`` of ``n**2`` (odd ``n``) or twice a divisor of
``(n/2)**2`` (even ``n``) via ``m = (n**2 - d**2) / (2*d)``.  The matching
hypotenuse is ``m + d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n`` by trial division."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    factors: dict[int, int] = {}
    while n % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _divisors_below(factors: dict[int, int], bound: int) -> list[int]:
    # all products of prime powers (exponents as given) that stay < bound
    divs = [1] if bound > 1 else []
    for p, e in factors.items():
        grown = []
        for d in divs:
            q = d
            for _ in range(e + 1):
                if q >= bound:
                    break
                grown.append(q)
                q *= p
        divs = grown
    divs.sort()
    return divs


@dataclass(frozen=True)
class DivisorSet:
    n: int
    divisors: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.divisors)

    def __iter__(self) -> Iterator[int]:
        return iter(self.divisors)

    def __len__(self) -> int:
        return len(self.divisors)


def divisor_set(n: int) -> DivisorSet:
    """Return the ascending divisors ``d < n`` that generate partners of ``n``.

    ``n`` is factored once; the divisors of ``n**2`` (or ``(n/2)**2``) come
    from the doubled exponents, so ``n**2`` itself is never factored.

    >>> divisor_set(44).divisors
    (2, 4, 8, 22)
    """
    if n < 1:
        raise ValueError(f"edge must be positive, got {n}")
    if n % 2:
        base = {p: 2 * e for p, e in factorize(n).items()} if n > 1 else {}
        return DivisorSet(n, tuple(_divisors_below(base, n)))
    half = n // 2
    base = {p: 2 * e for p, e in factorize(half).items()} if half > 1 else {}
    # d = 2e < n  <=>  e < n/2
    return DivisorSet(n, tuple(2 * e for e in _divisors_below(base, half)))


@dataclass(frozen=True)
class PyEntry:
    d: int
    a: int
    A: int


@dataclass(frozen=True)
class PyGroup:
    """The Pythagorean group of an edge: entries ordered by ascending ``d``."""

    n: int
    entries: tuple[PyEntry, ...]

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def a(self) -> list[int]:
        return [e.a for e in self.entries]

    @property
    def A(self) -> list[int]:
        return [e.A for e in self.entries]

    @property
    def d(self) -> list[int]:
        return [e.d for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[PyEntry]:
        return iter(self.entries)


def py_group(n: int) -> PyGroup:
    """Build the Pythagorean group of ``n``.

    Arithmetic is exact Python integers, so there is no capacity limit here;
    the compiled scan kernel enforces its own bound.
    """
    n2 = n * n
    entries = []
    for d in divisor_set(n):
        num = n2 - d * d
        a, rem = divmod(num, 2 * d)
        if rem:
            raise ArithmeticError(f"divisor {d} of edge {n} does not yield an integer partner")
        entries.append(PyEntry(d, a, a + d))
    return PyGroup(n, tuple(entries))


def format_py(group: PyGroup) -> str:
    """Human-readable listing of a group, one ``d a A`` triple per line."""
    lines = [f"Py({group.n})  k={group.k}"]
    if group.k:
        w = max(len(str(group.entries[0].A)), 1)
        lines.append(f"{'i':>4}  {'d':>{w}}  {'a':>{w}}  {'A':>{w}}")
        for i, e in enumerate(group.entries, 1):
            lines.append(f"{i:>4}  {e.d:>{w}}  {e.a:>{w}}  {e.A:>{w}}")
    return "\n".join(lines)
