"""Partitions and Lusztig symbols of even defect.

Partitions label unipotent characters of type A; symbols label those of
types D (defect divisible by 4) and twisted D (defect 2 mod 4).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

__all__ = [
    "Partition",
    "LusztigSymbol",
    "enumerate_partitions",
    "partition_count",
    "enumerate_symbols",
    "rank",
    "shift",
    "reduce",
    "parse_partition",
    "parse_symbol",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition with parts stored in ascending order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(int(p) for p in self.parts))
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def beta(self, pad: int = 0) -> tuple[int, ...]:
        """Strictly increasing beta-numbers ``alpha_i + i - 1`` (1-based i).

        ``pad`` prepends that many zero parts first.
        """
        seq = (0,) * pad + self.parts
        return tuple(a + i for i, a in enumerate(seq))

    def descending(self) -> tuple[int, ...]:
        return self.parts[::-1]

    def conjugate(self) -> "Partition":
        desc = self.descending()
        return Partition(
            tuple(sum(1 for p in desc if p > j) for j in range(desc[0] if desc else 0))
        )

    def hooks(self) -> list[int]:
        desc = self.descending()
        conj = self.conjugate().descending()
        return [
            (desc[i] - j - 1) + (conj[j] - i - 1) + 1
            for i in range(len(desc))
            for j in range(desc[i])
        ]

    def __str__(self) -> str:
        return "+".join(map(str, self.descending())) or "0"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0"):
        return Partition(())
    return Partition(tuple(int(t) for t in text.split("+")))


def _partitions_desc(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse lexicographic order of descending parts."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions_desc(n, n)]


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


@dataclass(frozen=True)
class LusztigSymbol:
    """An unordered pair of strictly increasing rows of nonnegative integers.

    Canonical orientation: the longer row is ``x``; rows of equal length put
    the lexicographically larger one first.  The defect ``len(x) - len(y)``
    is therefore never negative.
    """

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        x, y = tuple(map(int, self.x)), tuple(map(int, self.y))
        for row in (x, y):
            if any(v < 0 for v in row) or any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError(f"symbol rows must be strictly increasing: {x}|{y}")
        if (len(y), y) > (len(x), x):
            x, y = y, x
        if (len(x) - len(y)) % 2:
            raise ValueError("odd-defect symbols are not supported")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def a(self) -> int:
        return len(self.x)

    @property
    def b(self) -> int:
        return len(self.y)

    @property
    def defect(self) -> int:
        return self.a - self.b

    @property
    def twist_class(self) -> int:
        return self.defect % 4

    @property
    def twisted(self) -> bool:
        return self.twist_class == 2

    @property
    def degenerate(self) -> bool:
        """Equal rows; such a symbol labels two unipotent characters."""
        return self.x == self.y

    @property
    def is_reduced(self) -> bool:
        return not (self.x and self.y and self.x[0] == 0 and self.y[0] == 0)

    @property
    def rank(self) -> int:
        return rank(self)

    def __str__(self) -> str:
        return f"[{','.join(map(str, self.x))}|{','.join(map(str, self.y))}]"


def parse_symbol(text: str) -> LusztigSymbol:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")) or body.count("|") != 1:
        raise ValueError(f"bad symbol text {text!r}")
    left, right = body[1:-1].split("|")

    def row(s):
        s = s.strip()
        return tuple(int(t) for t in s.split(",")) if s else ()

    return LusztigSymbol(row(left), row(right))


def rank(s: LusztigSymbol) -> int:
    """sum of entries minus floor(((a+b-1)/2)^2)."""
    m = s.a + s.b - 1
    return sum(s.x) + sum(s.y) - (m * m) // 4


def shift(s: LusztigSymbol) -> LusztigSymbol:
    return LusztigSymbol(
        (0,) + tuple(v + 1 for v in s.x), (0,) + tuple(v + 1 for v in s.y)
    )


def reduce(s: LusztigSymbol) -> LusztigSymbol:
    while not s.is_reduced:
        s = LusztigSymbol(
            tuple(v - 1 for v in s.x[1:]), tuple(v - 1 for v in s.y[1:])
        )
    return s


def _ascending_with_at_most(m: int, k: int) -> Iterator[tuple[int, ...]]:
    """Partitions of m into at most k parts, padded with zeros to length k, ascending."""
    if k == 0:
        if m == 0:
            yield ()
        return
    for p in _partitions_desc(m, m):
        if len(p) <= k:
            yield (0,) * (k - len(p)) + p[::-1]


def _rows(nu: Sequence[int]) -> tuple[int, ...]:
    return tuple(v + i for i, v in enumerate(nu))


def enumerate_symbols(n: int, twist_class: int) -> list[LusztigSymbol]:
    """Reduced symbols of rank n with defect congruent to ``twist_class`` mod 4.

    Uses rank = |nu| + |kappa| + (d/2)^2 where the rows are nu_i + i - 1 and
    kappa_j + j - 1 for partitions nu, kappa with at most a and b parts.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if twist_class not in (0, 2):
        raise ValueError("twist class must be 0 or 2 (mod 4)")
    found: set[LusztigSymbol] = set()
    d = twist_class
    while (d // 2) ** 2 <= n:
        m = n - (d // 2) ** 2
        # a reduced symbol has one row whose smallest entry is positive,
        # which bounds the shorter row's length by m
        for b in range(0, m + 1):
            a = b + d
            for mx in range(m + 1):
                for nu in _ascending_with_at_most(mx, a):
                    for ka in _ascending_with_at_most(m - mx, b):
                        s = LusztigSymbol(_rows(nu), _rows(ka))
                        if s.is_reduced:
                            found.add(s)
        d += 4
    return sorted(found, key=lambda s: (s.defect, s.a, s.x, s.y))
