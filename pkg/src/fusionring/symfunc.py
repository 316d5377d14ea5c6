"""Commutative symmetric functions: LR products, straightening, Schur evaluation."""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from itertools import permutations
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .core import Partition, partition_sort_key


class SignedPartition(NamedTuple):
    sign: int
    shape: Partition

    @classmethod
    def zero(cls) -> "SignedPartition":
        return cls(0, Partition())


class SchurExpansion(dict):
    """Finite integer combination of Schur functions, keyed by partition.

    Zero coefficients are never stored.
    """

    def add(self, lam: Sequence[int], coeff: int) -> None:
        lam = Partition(lam)
        c = self.get(lam, 0) + coeff
        if c:
            self[lam] = c
        else:
            self.pop(lam, None)

    def __add__(self, other: "SchurExpansion") -> "SchurExpansion":
        out = type(self)(self)
        for lam, c in other.items():
            out.add(lam, c)
        return out

    def scaled(self, factor: int) -> "SchurExpansion":
        out = type(self)()
        for lam, c in self.items():
            out.add(lam, factor * c)
        return out

    def sorted_items(self) -> list[tuple[Partition, int]]:
        return sorted(self.items(), key=lambda kv: partition_sort_key(kv[0]))

    def to_dict(self) -> dict:
        return {"terms": [{"shape": list(lam), "coeff": int(c)} for lam, c in self.sorted_items()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SchurExpansion":
        out = cls()
        for term in data["terms"]:
            out.add(term["shape"], int(term["coeff"]))
        return out


class FusionExpansion(SchurExpansion):
    """Fusion product result: nonnegative coefficients on the level-k box."""

    def __init__(self, *args, n: int, k: int, **kwargs):
        super().__init__(*args, **kwargs)
        self.n = n
        self.k = k

    def __add__(self, other):
        out = FusionExpansion(self, n=self.n, k=self.k)
        for lam, c in other.items():
            out.add(lam, c)
        return out

    def scaled(self, factor):
        out = FusionExpansion(n=self.n, k=self.k)
        for lam, c in self.items():
            out.add(lam, factor * c)
        return out

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, **super().to_dict()}

    @classmethod
    def from_dict(cls, data: dict) -> "FusionExpansion":
        out = cls(n=int(data["n"]), k=int(data["k"]))
        for term in data["terms"]:
            out.add(term["shape"], int(term["coeff"]))
        return out


# ---------------------------------------------------------------------------
# Littlewood-Richardson rule


@lru_cache(maxsize=None)
def _lr_cached(lam: tuple, mu: tuple) -> tuple:
    """Add the letters of ``mu`` one horizontal strip at a time.

    Letter ``j`` may occupy row ``r`` only while the lattice condition holds:
    letters ``j`` in rows ``<= r`` never outnumber letters ``j - 1`` in rows ``< r``.
    """
    out: Counter = Counter()
    rows = len(lam) + len(mu)

    def add_letter(j, shape, prev_cum):
        if j == len(mu):
            out[tuple(p for p in shape if p)] += 1
            return
        counts = [0] * rows

        def place(r, left, cum):
            if left == 0:
                new_cum, run = [], 0
                for c in counts:
                    run += c
                    new_cum.append(run)
                add_letter(j + 1, [s + c for s, c in zip(shape, counts)], new_cum)
                return
            if r == rows:
                return
            cap = left if r == 0 else min(left, shape[r - 1] - shape[r])
            if prev_cum is not None:
                cap = min(cap, (prev_cum[r - 1] if r > 0 else 0) - cum)
            for c in range(cap, -1, -1):
                counts[r] = c
                place(r + 1, left - c, cum + c)
            counts[r] = 0

        place(0, mu[j], 0)

    add_letter(0, list(lam) + [0] * len(mu), None)
    return tuple(out.items())


def lr_expand(lam: Sequence[int], mu: Sequence[int]) -> SchurExpansion:
    """``s_lam * s_mu`` expanded in Schur functions (LR coefficients)."""
    lam, mu = Partition(lam), Partition(mu)
    return SchurExpansion((Partition(nu), c) for nu, c in _lr_cached(tuple(lam), tuple(mu)))


# ---------------------------------------------------------------------------
# straightening


def straighten(alpha: Sequence[int]) -> SignedPartition:
    """Rewrite ``s_alpha`` for an arbitrary integer sequence as ``sign * s_nu``.

    Uses the alternant description: sort ``alpha_i + (len - i)`` decreasingly;
    a repeated value means the Schur function vanishes.
    """
    L = len(alpha)
    shifted = [a + (L - 1 - i) for i, a in enumerate(alpha)]
    if len(set(shifted)) < L:
        return SignedPartition.zero()
    # sign of the sorting permutation via inversion count
    inversions = sum(1 for i in range(L) for j in range(i + 1, L) if shifted[i] < shifted[j])
    shifted.sort(reverse=True)
    nu = [s - (L - 1 - i) for i, s in enumerate(shifted)]
    if nu and nu[-1] < 0:
        return SignedPartition.zero()
    return SignedPartition(-1 if inversions % 2 else 1, Partition(nu))


# ---------------------------------------------------------------------------
# tableaux and Schur polynomials


def semistandard_tableaux(shape: Sequence[int], m: int) -> Iterator[list[list[int]]]:
    """All SSYT of ``shape`` with entries in ``1..m`` (rows weak, columns strict)."""
    shape = list(Partition(shape))
    if len(shape) > m:
        return
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    grid = [[0] * row for row in shape]

    def rec(idx):
        if idx == len(cells):
            yield [r[:] for r in grid]
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = grid[i][j - 1]
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        # entries in row i are at least i+1; leave room below in this column
        hi = m - (sum(1 for r in shape[i + 1:] if r > j))
        for v in range(lo, hi + 1):
            grid[i][j] = v
            yield from rec(idx + 1)
        grid[i][j] = 0

    yield from rec(0)


@lru_cache(maxsize=None)
def schur_polynomial(shape: tuple, m: int) -> dict[tuple, int]:
    """Monomial expansion ``{exponent vector: coeff}`` of ``s_shape(x_1..x_m)``."""
    poly: Counter = Counter()
    for t in semistandard_tableaux(shape, m):
        exps = [0] * m
        for row in t:
            for v in row:
                exps[v - 1] += 1
        poly[tuple(exps)] += 1
    return dict(poly)


def complete_homogeneous(points: Sequence[complex], degree: int) -> np.ndarray:
    """``[h_0, ..., h_degree]`` evaluated at ``points``."""
    h = np.zeros(degree + 1, dtype=complex)
    h[0] = 1.0
    for x in points:
        # h_r(x_1..x_j) = h_r(x_1..x_{j-1}) + x_j h_{r-1}(x_1..x_j)
        for r in range(1, degree + 1):
            h[r] = h[r] + x * h[r - 1]
    return h


def elementary(points: Sequence[complex], degree: int) -> np.ndarray:
    e = np.zeros(degree + 1, dtype=complex)
    e[0] = 1.0
    for x in points:
        for r in range(degree, 0, -1):
            e[r] = e[r] + x * e[r - 1]
    return e


def _det_by_permutations(mat: list[list[complex]]) -> complex:
    size = len(mat)
    total = 0j
    for perm in permutations(range(size)):
        inv = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        prod = 1 + 0j
        for i, p in enumerate(perm):
            prod *= mat[i][p]
            if prod == 0:
                break
        total += -prod if inv % 2 else prod
    return total


def schur_evaluate(lam: Sequence[int], points: Sequence[complex], method: str = "auto") -> complex:
    """Value of ``s_lam`` at the given points.

    ``method`` is ``"jacobi_trudi"``, ``"tableaux"`` or ``"auto"``; the latter
    enumerates tableaux when the points repeat and ``|lam| <= 20``, and uses the
    Jacobi-Trudi determinant in complete symmetric functions otherwise.
    """
    lam = Partition(lam)
    points = list(points)
    if len(lam) > len(points):
        return 0j
    if not lam:
        return 1 + 0j
    if method == "auto":
        repeated = len(set(np.round(np.asarray(points, dtype=complex), 12))) < len(points)
        method = "tableaux" if repeated and lam.weight() <= 20 else "jacobi_trudi"
    if method == "tableaux":
        total = 0j
        for exps, c in schur_polynomial(tuple(lam), len(points)).items():
            term = complex(c)
            for x, e in zip(points, exps):
                term *= x ** e
            total += term
        return total
    if method != "jacobi_trudi":
        raise ValueError(f"unknown method {method!r}")
    size = len(lam)
    h = complete_homogeneous(points, lam[0] + size)

    def hh(r):
        return h[r] if r >= 0 else 0

    mat = [[hh(lam[i] - i + j) for j in range(size)] for i in range(size)]
    if size <= 6:
        return complex(_det_by_permutations(mat))
    return complex(np.linalg.det(np.array(mat, dtype=complex)))

