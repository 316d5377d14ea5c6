"""Exact integer matrices of the affine plactic generators on level-k weights.

Operators carry a grading by powers of ``z``: an operator is a map
``z-degree -> integer matrix`` whose rows index the target level and whose
columns index the source level (both in ``enumerate_level`` order).
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from .core import FusionContext, Partition, Weight
from .symfunc import FusionExpansion

_INT64_SAFE = 2**62


class ZGradedInt(dict):
    """Integer polynomial in ``z``, stored as ``{degree: coeff}`` without zeros."""

    def add(self, deg: int, coeff: int) -> None:
        c = self.get(deg, 0) + coeff
        if c:
            self[deg] = c
        else:
            self.pop(deg, None)

    def specialize(self, z: int | complex = 1):
        return sum(c * z**d for d, c in self.items())


class LevelMismatch(ValueError):
    pass


def _blank(rows: int, cols: int, dtype=np.int64) -> np.ndarray:
    return np.zeros((rows, cols), dtype=dtype)


def _level_dim(n: int, level: int) -> int:
    return FusionContext(n, level).dim if level >= 0 else 0


class PlacticOperator:
    """A z-graded integer matrix from one level to another."""

    __slots__ = ("n", "source_level", "target_level", "blocks")

    def __init__(self, n: int, source_level: int, target_level: int, blocks: dict[int, np.ndarray] | None = None):
        self.n = n
        self.source_level = source_level
        self.target_level = target_level
        shape = (_level_dim(n, target_level), _level_dim(n, source_level))
        self.blocks: dict[int, np.ndarray] = {}
        for d, mat in (blocks or {}).items():
            if mat.shape != shape:
                raise ValueError(f"block of shape {mat.shape}, expected {shape}")
            if np.any(mat):
                self.blocks[d] = mat

    @property
    def shape(self) -> tuple[int, int]:
        return _level_dim(self.n, self.target_level), _level_dim(self.n, self.source_level)

    @classmethod
    def identity(cls, n: int, level: int) -> "PlacticOperator":
        dim = _level_dim(n, level)
        return cls(n, level, level, {0: np.eye(dim, dtype=np.int64)})

    @classmethod
    def zero(cls, n: int, source_level: int, target_level: int) -> "PlacticOperator":
        return cls(n, source_level, target_level)

    def is_zero(self) -> bool:
        return not self.blocks

    def __matmul__(self, other: "PlacticOperator") -> "PlacticOperator":
        if self.source_level != other.target_level:
            raise LevelMismatch(
                f"cannot compose level {other.target_level} output with level {self.source_level} input"
            )
        out: dict[int, np.ndarray] = {}
        for d1, a in self.blocks.items():
            for d2, b in other.blocks.items():
                prod = _safe_matmul(a, b)
                if d1 + d2 in out:
                    out[d1 + d2] = out[d1 + d2] + prod
                else:
                    out[d1 + d2] = prod
        return PlacticOperator(self.n, other.source_level, self.target_level, out)

    def _combine(self, other: "PlacticOperator", sign: int) -> "PlacticOperator":
        if (self.source_level, self.target_level) != (other.source_level, other.target_level):
            raise LevelMismatch("operators act between different levels")
        out = dict(self.blocks)
        for d, b in other.blocks.items():
            out[d] = out[d] + sign * b if d in out else sign * b
        return PlacticOperator(self.n, self.source_level, self.target_level, out)

    def __add__(self, other: "PlacticOperator") -> "PlacticOperator":
        return self._combine(other, 1)

    def __sub__(self, other: "PlacticOperator") -> "PlacticOperator":
        return self._combine(other, -1)

    def __neg__(self) -> "PlacticOperator":
        return PlacticOperator(self.n, self.source_level, self.target_level, {d: -m for d, m in self.blocks.items()})

    def scaled(self, factor: int) -> "PlacticOperator":
        return PlacticOperator(self.n, self.source_level, self.target_level, {d: factor * m for d, m in self.blocks.items()})

    def shift_degree(self, by: int) -> "PlacticOperator":
        """Multiply by ``z**by``."""
        return PlacticOperator(self.n, self.source_level, self.target_level, {d + by: m for d, m in self.blocks.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlacticOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def max_abs(self) -> int:
        return max((int(np.max(np.abs(m))) for m in self.blocks.values()), default=0)

    def degree_part(self, d: int) -> np.ndarray:
        return self.blocks.get(d, _blank(*self.shape))

    def specialize(self, z: int | complex = 1) -> np.ndarray:
        """Collapse the grading by substituting a value for ``z``."""
        rows, cols = self.shape
        if z == 1 and all(m.dtype != object for m in self.blocks.values()):
            out = _blank(rows, cols)
        else:
            out = np.zeros((rows, cols), dtype=complex if isinstance(z, complex) else object)
        for d, m in self.blocks.items():
            out = out + m * (z**d)
        return out

    def entry(self, row: Weight, col: Weight) -> ZGradedInt:
        r = FusionContext(self.n, self.target_level).index[tuple(row)]
        c = FusionContext(self.n, self.source_level).index[tuple(col)]
        out = ZGradedInt()
        for d, m in self.blocks.items():
            out.add(d, int(m[r, c]))
        return out

    def entries(self) -> Iterator[tuple[Weight, Weight, ZGradedInt]]:
        """Nonzero entries as sparse ``(row weight, column weight, coefficient)`` triples."""
        rows = FusionContext(self.n, self.target_level).basis if self.target_level >= 0 else ()
        cols = FusionContext(self.n, self.source_level).basis if self.source_level >= 0 else ()
        found: dict[tuple[int, int], ZGradedInt] = {}
        for d in sorted(self.blocks):
            for r, c in zip(*np.nonzero(self.blocks[d])):
                found.setdefault((int(r), int(c)), ZGradedInt()).add(d, int(self.blocks[d][r, c]))
        for (r, c) in sorted(found, key=lambda rc: (rc[1], rc[0])):
            yield rows[r], cols[c], found[(r, c)]

    def apply(self, vec: np.ndarray, z: int | complex = 1) -> np.ndarray:
        return self.specialize(z) @ vec

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "source_level": self.source_level,
            "target_level": self.target_level,
            "entries": [
                {"row": list(r), "col": list(c), "coeff": {str(d): v for d, v in sorted(coeff.items())}}
                for r, c, coeff in self.entries()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self) -> str:
        return (
            f"PlacticOperator(n={self.n}, {self.source_level}->{self.target_level}, "
            f"degrees={sorted(self.blocks)})"
        )


def _safe_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == object or b.dtype == object:
        return np.dot(a.astype(object), b.astype(object))
    bound = int(np.max(np.abs(a), initial=0)) * int(np.max(np.abs(b), initial=0)) * max(a.shape[1], 1)
    if bound >= _INT64_SAFE:
        return np.dot(a.astype(object), b.astype(object))
    return a @ b


def commutator(a: PlacticOperator, b: PlacticOperator) -> PlacticOperator:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# generators as maps on weight tuples

# A word is a sequence of letters applied right to left.  A letter is
# ("phi", i), ("phi_star", i) or ("a", i) with 1-based node index i.


def _apply_letter(letter: tuple[str, int], m: list[int]) -> bool:
    """Apply one letter in place; False means the result is zero."""
    kind, i = letter
    n = len(m)
    if kind == "phi_star":
        m[i - 1] += 1
        return True
    if kind == "phi":
        if m[i - 1] == 0:
            return False
        m[i - 1] -= 1
        return True
    if kind == "a":
        src, dst = (i - 1, i % n)
        if m[src] == 0:
            return False
        m[src] -= 1
        m[dst] += 1
        return True
    raise ValueError(f"unknown letter {kind!r}")


def apply_word(word: Sequence[tuple[str, int]], m: Sequence[int]) -> Weight | None:
    state = list(m)
    for letter in reversed(word):
        if not _apply_letter(letter, state):
            return None
    return tuple(state)


def _word_level_shift(word: Sequence[tuple[str, int]]) -> int:
    return sum(1 if k == "phi_star" else -1 if k == "phi" else 0 for k, _ in word)


def operator_from_words(
    words: Sequence[tuple[int, Sequence[tuple[str, int]]]], n: int, level: int
) -> PlacticOperator:
    """Sum of ``z**deg * word`` over ``(deg, word)`` pairs, acting on ``level``."""
    if not words:
        return PlacticOperator.identity(n, level).scaled(0)
    shift = _word_level_shift(words[0][1])
    target = level + shift
    src = FusionContext(n, level)
    tgt_dim = _level_dim(n, target)
    tgt_index = FusionContext(n, target).index if target >= 0 else {}
    blocks: dict[int, np.ndarray] = {}
    for deg, word in words:
        if _word_level_shift(word) != shift:
            raise LevelMismatch("words in one operator must shift the level equally")
        mat = blocks.setdefault(deg, _blank(tgt_dim, src.dim))
        for c, m in enumerate(src.basis):
            out = apply_word(word, m)
            if out is not None:
                mat[tgt_index[out], c] += 1
    return PlacticOperator(n, level, target, blocks)


GENERATOR_KINDS = ("phi", "phi_star", "number", "a")


def generator(kind: str, i: int, ctx: FusionContext) -> PlacticOperator:
    """Matrix of a single generator on the level of ``ctx``.

    ``a_n`` is the affine generator ``z phi_1^* phi_n`` and carries z-degree 1.
    """
    n = ctx.n
    if not 1 <= i <= n:
        raise IndexError(f"node index {i} outside 1..{n}")
    if kind == "number":
        diag = np.diag([m[i - 1] for m in ctx.basis]).astype(np.int64)
        return PlacticOperator(n, ctx.k, ctx.k, {0: diag})
    if kind == "a":
        deg = 1 if i == n else 0
        return operator_from_words([(deg, [("a", i)])], n, ctx.k)
    if kind in ("phi", "phi_star"):
        return operator_from_words([(0, [(kind, i)])], n, ctx.k)
    raise ValueError(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# noncommutative symmetric polynomials


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def elementary_words(r: int, n: int, affine: bool = True) -> list[tuple[int, list]]:
    """Words of ``e_r``: ``z^e_n phi_n^e_n a_{n-1}^e_{n-1} ... a_1^e_1 (phi_1^*)^e_n``."""
    words = []
    for eps in _compositions(r, n):
        if max(eps, default=0) > 1:
            continue
        wrap = eps[n - 1]
        if wrap and not affine:
            continue
        word = [("phi", n)] * wrap
        for i in range(n - 1, 0, -1):
            word += [("a", i)] * eps[i - 1]
        word += [("phi_star", 1)] * wrap
        words.append((wrap, word))
    return words


def complete_words(r: int, n: int, affine: bool = True) -> list[tuple[int, list]]:
    """Words of ``h_r``: ``z^e_0 (phi_1^*)^e_0 a_1^e_1 ... a_{n-1}^e_{n-1} phi_n^e_0``."""
    words = []
    for eps in _compositions(r, n):
        wrap = eps[0]
        if wrap and not affine:
            continue
        word = [("phi_star", 1)] * wrap
        for i in range(1, n):
            word += [("a", i)] * eps[i]
        word += [("phi", n)] * wrap
        words.append((wrap, word))
    return words


@lru_cache(maxsize=None)
def _nc_poly_cached(kind: str, r: int, n: int, k: int, affine: bool) -> PlacticOperator:
    if r < 0:
        return PlacticOperator.zero(n, k, k)
    if kind == "elementary":
        words = elementary_words(r, n, affine)
    elif kind == "complete":
        words = complete_words(r, n, affine)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return operator_from_words(words, n, k)


def nc_poly(kind: str, r: int, ctx: FusionContext, affine: bool = True) -> PlacticOperator:
    """``e_r`` (``kind="elementary"``) or ``h_r`` (``kind="complete"``) on level ``ctx.k``.

    With ``affine=False`` only the finite generators ``a_1..a_{n-1}`` are used,
    i.e. the z-degree-0 part.
    """
    return _nc_poly_cached(kind, r, ctx.n, ctx.k, affine)


def _perm_sign(p: tuple[int, ...]) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def _nc_schur_cached(lam: tuple, n: int, k: int) -> PlacticOperator:
    ctx = FusionContext(n, k)
    size = max(len(lam), 1)
    parts = list(lam) + [0] * (size - len(lam))
    total = PlacticOperator.zero(n, k, k)
    for perm in permutations(range(size)):
        term = PlacticOperator.identity(n, k)
        for i, j in enumerate(perm):
            deg = parts[i] - i + j
            if deg < 0:
                term = None
                break
            term = term @ nc_poly("complete", deg, ctx)
            if term.is_zero():
                break
        if term is not None and not term.is_zero():
            total = total + term.scaled(_perm_sign(perm))
    return total


def nc_schur(lam: Sequence[int], ctx: FusionContext) -> PlacticOperator:
    """Jacobi-Trudi determinant ``det h_{lam_i - i + j}(A)``; entries commute."""
    lam = Partition(lam)
    if len(lam) > ctx.n - 1:
        raise ValueError(f"{list(lam)} has more than {ctx.n - 1} rows")
    return _nc_schur_cached(tuple(lam), ctx.n, ctx.k)


def fuse_plactic(lam: Sequence[int], mu: Sequence[int], ctx: FusionContext) -> FusionExpansion:
    lam, mu = ctx.check(lam), ctx.check(mu)
    mat = nc_schur(lam, ctx).specialize(1)
    col = mat[:, ctx.partition_index[mu]]
    out = FusionExpansion(n=ctx.n, k=ctx.k)
    for r, c in enumerate(col):
        if c:
            out.add(ctx.partitions[r], int(c))
    return out


def star_extend(u: np.ndarray, v: np.ndarray, ctx: FusionContext) -> np.ndarray:
    """Bilinear extension of the fusion product to coefficient vectors."""
    out = np.zeros(ctx.dim, dtype=complex)
    for a, lam in enumerate(ctx.partitions):
        if u[a] != 0:
            out += u[a] * (nc_schur(lam, ctx).specialize(1) @ v)
    return out


def level_projector_rhs(ctx: FusionContext, r: int) -> PlacticOperator:
    """Degree-``r`` part of the right side of ``T(-u) Q(u)`` restricted to level k."""
    n, k = ctx.n, ctx.k
    if r == 0:
        return PlacticOperator.identity(n, k)
    if r == n + k:
        return nc_poly("complete", k, ctx).shift_degree(1).scaled((-1) ** n)
    return PlacticOperator.zero(n, k, k)


def functional_equation_residual(ctx: FusionContext, cutoff: int) -> int:
    """Largest entry of ``sum_a (-1)^a e_a h_{r-a} - rhs_r`` over degrees ``r <= cutoff``."""
    worst = 0
    for r in range(cutoff + 1):
        lhs = PlacticOperator.zero(ctx.n, ctx.k, ctx.k)
        for a in range(r + 1):
            term = nc_poly("elementary", a, ctx) @ nc_poly("complete", r - a, ctx)
            lhs = lhs + (term if a % 2 == 0 else -term)
        worst = max(worst, (lhs - level_projector_rhs(ctx, r)).max_abs())
    return worst
