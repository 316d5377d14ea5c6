"""Vertex model on a cylinder with ``n`` columns and ``n - 1`` rows.

Each vertex carries four occupation numbers ``(a, b, c, d)``: ``a`` walkers
enter from the left, ``b`` from the incoming vertical edge, ``c`` leave to the
right and ``d`` leave along the outgoing vertical edge.  A vertex is allowed
when ``a + b = c + d`` and ``b >= c`` and then weighs ``x_i^a``.  Horizontal
edges close up around the cylinder; the edge leaving column ``n`` and
entering column 1 is the seam, and each walker on it contributes a factor
``z``.  Rows are stacked from the boundary ``mu`` to the boundary ``nu``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator, Sequence

from .core import FusionContext, Partition, Weight, hook_content_product, weight_to_partition
from .plactic import nc_poly
from .symfunc import SchurExpansion, schur_polynomial

Vertex = tuple[int, int, int, int]


@dataclass(frozen=True)
class LatticeConfig:
    rows: tuple[tuple[Vertex, ...], ...]

    def row_degree(self, i: int) -> int:
        """Number of walkers on the horizontal edges of row ``i``."""
        return sum(v[0] for v in self.rows[i])

    def seam(self, i: int) -> int:
        return self.rows[i][-1][2]

    def winding(self) -> int:
        """Total seam occupation; the outer horizontal edges number twice this."""
        return sum(self.seam(i) for i in range(len(self.rows)))

    def outer_edges(self) -> int:
        return 2 * self.winding()

    def monomial(self) -> tuple[tuple[int, ...], int]:
        return tuple(self.row_degree(i) for i in range(len(self.rows))), self.winding()

    def is_valid(self) -> bool:
        for row in self.rows:
            for a, b, c, d in row:
                if a + b != c + d or b < c or min(a, b, c, d) < 0:
                    return False
            for j, v in enumerate(row):
                if v[0] != row[j - 1][2]:
                    return False
        for lower, upper in zip(self.rows, self.rows[1:]):
            if any(v[3] != w[1] for v, w in zip(lower, upper)):
                return False
        return True

    def to_list(self) -> list:
        return [[list(v) for v in row] for row in self.rows]


def _row_moves(m: Sequence[int]) -> Iterator[tuple[tuple[int, ...], Weight]]:
    """All choices of right-going walkers ``eps_j <= m_j`` and the resulting labels."""
    n = len(m)
    for eps in product(*(range(x + 1) for x in m)):
        new = tuple(m[j] + eps[j - 1] - eps[j] for j in range(n))
        yield eps, new


def _final_row(m: Sequence[int], target: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Walker choices that take ``m`` to ``target``; fixed once the seam is chosen."""
    n = len(m)
    for seam in range(m[n - 1] + 1):
        eps = []
        prev = seam
        ok = True
        for j in range(n):
            e = m[j] + prev - target[j]
            if e < 0 or e > m[j]:
                ok = False
                break
            eps.append(e)
            prev = e
        if ok and eps[-1] == seam:
            yield tuple(eps)


def _vertices(m: Sequence[int], eps: Sequence[int]) -> tuple[Vertex, ...]:
    n = len(m)
    return tuple(
        (eps[j - 1], m[j], eps[j], m[j] + eps[j - 1] - eps[j]) for j in range(n)
    )


def enumerate_lattice_configs(mu: Sequence[int], nu: Sequence[int], ctx: FusionContext) -> Iterator[LatticeConfig]:
    """All configurations with boundary labels ``mu`` (first row in) and ``nu`` (last row out).

    ``mu`` and ``nu`` are Dynkin-label tuples at level ``ctx.k``.
    """
    mu, nu = tuple(mu), tuple(nu)
    for w in (mu, nu):
        if w not in ctx.index:
            raise ValueError(f"{w} is not a level-{ctx.k} weight for n={ctx.n}")
    rows_total = ctx.n - 1

    def rec(i, m, rows):
        if i == rows_total - 1:
            for eps in _final_row(m, nu):
                yield LatticeConfig(tuple(rows) + (_vertices(m, eps),))
            return
        for eps, new in _row_moves(m):
            rows.append(_vertices(m, eps))
            yield from rec(i + 1, new, rows)
            rows.pop()

    yield from rec(0, mu, [])


def configs_json(mu: Sequence[int], nu: Sequence[int], ctx: FusionContext) -> str:
    return json.dumps([c.to_list() for c in enumerate_lattice_configs(mu, nu, ctx)])


# ---------------------------------------------------------------------------
# symbolic polynomials in x_1..x_{n-1} and z


class SymbolicPoly(Counter):
    """Integer polynomial keyed by ``(x exponents, z degree)``."""

    def __init__(self, *args, nvars: int, **kwargs):
        super().__init__(*args, **kwargs)
        self.nvars = nvars

    def clean(self) -> "SymbolicPoly":
        for key in [key for key, c in self.items() if c == 0]:
            del self[key]
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, dict):
            return NotImplemented
        return {k: v for k, v in self.items() if v} == {k: v for k, v in other.items() if v}

    __hash__ = None

    def permuted(self, perm: Sequence[int]) -> "SymbolicPoly":
        out = SymbolicPoly(nvars=self.nvars)
        for (exps, d), c in self.items():
            out[(tuple(exps[p] for p in perm), d)] += c
        return out.clean()

    def is_symmetric(self) -> bool:
        return all(self.permuted(p) == self for p in permutations(range(self.nvars)))

    def z_degrees(self) -> list[int]:
        return sorted({d for (_, d), c in self.items() if c})

    def specialize(self, x: int = 1, z: int = 1) -> int:
        return sum(c * x ** sum(e) * z**d for (e, d), c in self.items())

    def schur_expansion(self) -> dict[int, SchurExpansion]:
        """Per z-degree Schur expansion, by peeling off lex-leading monomials."""
        out: dict[int, SchurExpansion] = {}
        for d in self.z_degrees():
            rest = Counter({e: c for (e, dd), c in self.items() if dd == d and c})
            exp = SchurExpansion()
            while rest:
                lead = max(rest)
                if any(a < b for a, b in zip(lead, lead[1:])):
                    raise ValueError(f"not symmetric: leading monomial {lead}")
                coeff = rest[lead]
                exp.add(lead, coeff)
                for e, c in schur_polynomial(tuple(Partition(lead)), self.nvars).items():
                    rest[e] -= coeff * c
                    if rest[e] == 0:
                        del rest[e]
            out[d] = exp
        return out


def _direct(mu: Weight, nu: Weight, ctx: FusionContext) -> SymbolicPoly:
    poly = SymbolicPoly(nvars=ctx.n - 1)
    for cfg in enumerate_lattice_configs(mu, nu, ctx):
        poly[cfg.monomial()] += 1
    return poly.clean()


def _operator(mu: Weight, nu: Weight, ctx: FusionContext) -> SymbolicPoly:
    """``<nu, Q(x_{n-1}) ... Q(x_1) mu>`` with ``Q(x) = sum_r x^r h_r(A)``."""
    nvars = ctx.n - 1
    h = [nc_poly("complete", r, ctx) for r in range(ctx.k + 1)]
    start = ctx.index[mu]
    # state: (exponents so far, z degree) -> integer vector over the basis
    state: dict[tuple[tuple[int, ...], int], list[int]] = {((), 0): [int(i == start) for i in range(ctx.dim)]}
    for _ in range(nvars):
        nxt: dict = {}
        for (exps, d), vec in state.items():
            for r, op in enumerate(h):
                for dz, block in op.blocks.items():
                    res = block.astype(object).dot(vec)
                    key = (exps + (r,), d + dz)
                    if key in nxt:
                        nxt[key] = [a + b for a, b in zip(nxt[key], res)]
                    else:
                        nxt[key] = list(res)
        state = nxt
    end = ctx.index[nu]
    poly = SymbolicPoly(nvars=nvars)
    for key, vec in state.items():
        if vec[end]:
            poly[key] += int(vec[end])
    return poly.clean()


def partition_function(mu: Sequence[int], nu: Sequence[int], ctx: FusionContext, backend: str = "direct") -> SymbolicPoly:
    mu, nu = tuple(mu), tuple(nu)
    if backend == "direct":
        return _direct(mu, nu, ctx)
    if backend == "operator":
        return _operator(mu, nu, ctx)
    raise ValueError(f"unknown backend {backend!r}")


def winding_degree(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], n: int) -> int:
    """``(|lam| + |mu| - |nu|)/n + nu_1 - mu_1`` for partitions in the box."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    total = lam.weight() + mu.weight() - nu.weight()
    if total % n:
        raise ValueError("sizes are incompatible with a nonzero fusion coefficient")
    return total // n + nu.part(0) - mu.part(0)


def fusion_from_partition_function(mu: Sequence[int], nu: Sequence[int], ctx: FusionContext) -> dict[Partition, tuple[int, int]]:
    """``{lam: (coeff, z degree)}`` read off from the Schur expansion of ``Z``."""
    out = {}
    for d, exp in partition_function(mu, nu, ctx).schur_expansion().items():
        for lam, c in exp.items():
            out[lam] = (c, d)
    return out


def count_paths(mu: Sequence[int], nu: Sequence[int], d: int, ctx: FusionContext) -> int:
    """Number of configurations whose seam carries ``d`` walkers in total."""
    return sum(1 for c in enumerate_lattice_configs(mu, nu, ctx) if c.winding() == d)


def hook_content_sum(mu: Sequence[int], nu: Sequence[int], d: int, ctx: FusionContext, fuse) -> Fraction:
    """``sum_lam N_{lam mu}^nu s_lam(1, ..., 1)`` over ``lam`` of winding degree ``d``.

    ``fuse`` is any fusion routine ``(lam, mu, ctx) -> FusionExpansion``.
    """
    mu_p = weight_to_partition(mu, ctx)
    nu_p = weight_to_partition(nu, ctx)
    total = Fraction(0)
    for lam in ctx.partitions:
        coeff = fuse(lam, mu_p, ctx).get(nu_p, 0)
        if coeff and winding_degree(lam, mu_p, nu_p, ctx.n) == d:
            total += coeff * hook_content_product(lam, ctx.n)
    return total

