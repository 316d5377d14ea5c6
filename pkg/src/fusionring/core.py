"""Partitions, affine weights and the level-k weight basis.

An affine weight of su(n) at level k is stored as its tuple of Dynkin labels
``(m_1, ..., m_n)`` with the affine label last.  Partitions in the
``(n-1) x k`` box are in bijection with these via ``lambda_i - lambda_{i+1} = m_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

Weight = tuple[int, ...]


class InvalidPartitionError(ValueError):
    """A partition does not fit the bounding box of a fusion context."""


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((3, 1, 0))``
    equals ``Partition((3, 1))`` and also compares equal to the plain tuple
    ``(3, 1)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"not weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def weight(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def transpose(self) -> "Partition":
        return transpose(self)

    def part(self, i: int) -> int:
        """0-based part access that returns 0 past the end."""
        return self[i] if i < len(self) else 0


def transpose(lam: Sequence[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def remove_full_columns(lam: Sequence[int], n: int) -> Partition:
    """Delete every column of height ``n`` (requires ``len(lam) <= n``)."""
    lam = Partition(lam)
    if len(lam) > n:
        raise InvalidPartitionError(f"{list(lam)} has more than {n} rows")
    if len(lam) < n:
        return lam
    c = lam[n - 1]
    return Partition(p - c for p in lam)


@dataclass(frozen=True)
class FusionContext:
    """The pair ``(n, k)`` together with the ordered level-k weight basis.

    Basis order is colexicographic in the Dynkin tuple: weights are compared
    on the affine label first, then on ``m_{n-1}``, and so on.
    """

    n: int
    k: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")

    @cached_property
    def basis(self) -> tuple[Weight, ...]:
        return tuple(enumerate_level(self.n, self.k))

    @cached_property
    def partitions(self) -> tuple[Partition, ...]:
        return tuple(weight_to_partition(w, self) for w in self.basis)

    @cached_property
    def index(self) -> dict[Weight, int]:
        return {w: i for i, w in enumerate(self.basis)}

    @cached_property
    def partition_index(self) -> dict[Partition, int]:
        return {p: i for i, p in enumerate(self.partitions)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vacuum(self) -> Weight:
        return (0,) * (self.n - 1) + (self.k,)

    def at_level(self, k: int) -> "FusionContext":
        return FusionContext(self.n, k)

    def fits(self, lam: Sequence[int]) -> bool:
        lam = Partition(lam)
        return len(lam) <= self.n - 1 and (not lam or lam[0] <= self.k)

    def check(self, lam: Sequence[int]) -> Partition:
        lam = Partition(lam)
        if not self.fits(lam):
            raise InvalidPartitionError(
                f"{list(lam)} does not fit the {self.n - 1}x{self.k} box"
            )
        return lam


def enumerate_level(n: int, k: int) -> list[Weight]:
    """All compositions of ``k`` into ``n`` nonnegative parts, colex order."""
    out = []
    # stars and bars: choose positions of the n-1 bars among k+n-1 slots
    for bars in combinations(range(k + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(k + n - 2 - prev)
        out.append(tuple(parts))
    out.sort(key=lambda m: m[::-1])
    assert len(out) == comb(n + k - 1, k)
    return out


def weight_to_partition(m: Sequence[int], ctx: FusionContext) -> Partition:
    n = ctx.n
    if len(m) != n or sum(m) != ctx.k or min(m) < 0:
        raise ValueError(f"{tuple(m)} is not a level-{ctx.k} weight for n={n}")
    return Partition(sum(m[i:n - 1]) for i in range(n - 1))


def partition_to_weight(lam: Sequence[int], ctx: FusionContext) -> Weight:
    lam = ctx.check(lam)
    parts = list(lam) + [0] * (ctx.n - len(lam))
    labels = [parts[i] - parts[i + 1] for i in range(ctx.n - 1)]
    labels.append(ctx.k - parts[0])
    return tuple(labels)


def dual_weight(lam: Sequence[int], ctx: FusionContext) -> Partition:
    """``(l_1, l_1 - l_{n-1}, ..., l_1 - l_2)``: box complement with full columns removed."""
    lam = ctx.check(lam)
    if not lam:
        return lam
    parts = list(lam) + [0] * (ctx.n - 1 - len(lam))
    first = parts[0]
    return Partition([first] + [first - parts[i] for i in range(ctx.n - 2, 0, -1)])


def hook_content_product(lam: Sequence[int], n: int) -> Fraction:
    """Product over boxes of ``(n - 1 + content) / hook``.

    This is the Schur polynomial in ``n - 1`` variables evaluated at all ones.
    """
    lam = Partition(lam)
    lt = transpose(lam)
    result = Fraction(1)
    for i, row in enumerate(lam):
        for j in range(row):
            hook = row + lt[j] - i - j - 1
            result *= Fraction(n - 1 + j - i, hook)
    return result


def format_partition(lam: Sequence[int]) -> str:
    lam = Partition(lam)
    return ",".join(map(str, lam)) if lam else "0"


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()")
    if text in ("", "0"):
        return Partition()
    try:
        return Partition(int(t) for t in text.split(","))
    except ValueError as exc:
        raise InvalidPartitionError(f"malformed partition {text!r}: {exc}") from None


def format_weight(m: Sequence[int]) -> str:
    return "[" + ",".join(map(str, m)) + "]"


def parse_weight(text: str) -> Weight:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"weight must be bracketed, got {text!r}")
    body = text[1:-1].strip()
    return tuple(int(t) for t in body.split(",")) if body else ()


def partition_sort_key(lam: Sequence[int]):
    """Deterministic order: by size, then reverse lexicographic."""
    return (sum(lam), tuple(-p for p in lam))
