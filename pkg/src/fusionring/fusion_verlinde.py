"""Modular S-matrix of su(n) at level k and the Verlinde formula."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from .config import MAX_VERLINDE_RANK, TOL
from .core import FusionContext, Partition
from .symfunc import FusionExpansion


class RankTooLarge(ValueError):
    """Verlinde fusion was asked for ``n > MAX_VERLINDE_RANK``."""


class VerlindeRoundingError(ArithmeticError):
    pass


def _shifted(ctx: FusionContext) -> np.ndarray:
    """Rows ``lam + rho`` embedded in R^n, rho = (n-1, ..., 0)."""
    n = ctx.n
    out = np.zeros((ctx.dim, n))
    for a, lam in enumerate(ctx.partitions):
        parts = list(lam) + [0] * (n - len(lam))
        out[a] = [parts[i] + n - 1 - i for i in range(n)]
    return out


@lru_cache(maxsize=64)
def _s_matrix_cached(n: int, k: int) -> np.ndarray:
    ctx = FusionContext(n, k)
    v = _shifted(ctx)
    # the inner product on the weight space: sum a_i b_i - (sum a)(sum b)/n
    v = v - v.sum(axis=1, keepdims=True) / n
    scale = 2j * math.pi / (k + n)
    # the alternating sum over the Weyl group is det[exp(-scale a_i b_j)]
    blocks = np.exp(-scale * v[:, None, :, None] * v[None, :, None, :])
    total = np.linalg.det(blocks)
    pref = cmath.exp(1j * math.pi * n * (n - 1) / 4) / math.sqrt(n * (k + n) ** (n - 1))
    s = pref * total
    s.setflags(write=False)
    return s


def s_matrix(ctx: FusionContext) -> np.ndarray:
    """S-matrix indexed by the basis order of ``ctx`` (read-only array)."""
    return _s_matrix_cached(ctx.n, ctx.k)


def s_matrix_inverse(ctx: FusionContext) -> np.ndarray:
    return s_matrix(ctx).conj().T


def _raw_tensor(ctx: FusionContext) -> np.ndarray:
    s = s_matrix(ctx)
    vac = ctx.index[ctx.vacuum]
    ratio = s / s[vac][None, :]
    return np.einsum("as,bs,cs,s->abc", ratio, ratio, s.conj(), s[vac])


def rounding_residual(ctx: FusionContext) -> float:
    """Largest distance of an unrounded Verlinde sum from the nearest integer."""
    raw = _raw_tensor(ctx)
    return float(np.max(np.abs(raw - np.rint(raw.real)), initial=0.0))


@lru_cache(maxsize=64)
def _fusion_tensor(n: int, k: int) -> np.ndarray:
    if n > MAX_VERLINDE_RANK:
        raise RankTooLarge(f"Verlinde fusion needs n <= {MAX_VERLINDE_RANK}, got n={n}")
    ctx = FusionContext(n, k)
    raw = _raw_tensor(ctx)
    rounded = np.rint(raw.real)
    err = float(np.max(np.abs(raw - rounded), initial=0.0))
    if err > TOL.verlinde_rounding:
        raise VerlindeRoundingError(f"Verlinde sum off an integer by {err:.2e}")
    out = rounded.astype(np.int64)
    out.setflags(write=False)
    return out


def fusion_tensor(ctx: FusionContext) -> np.ndarray:
    """All ``N[a, b, c]`` at once, indexed by basis position."""
    return _fusion_tensor(ctx.n, ctx.k)


def fuse_verlinde(lam: Sequence[int], mu: Sequence[int], ctx: FusionContext) -> FusionExpansion:
    lam, mu = ctx.check(lam), ctx.check(mu)
    t = fusion_tensor(ctx)
    a, b = ctx.partition_index[lam], ctx.partition_index[mu]
    out = FusionExpansion(n=ctx.n, k=ctx.k)
    for c, coeff in enumerate(t[a, b]):
        if coeff:
            out.add(ctx.partitions[c], int(coeff))
    return out


def quantum_dimension(lam: Sequence[int], ctx: FusionContext) -> float:
    n, k = ctx.n, ctx.k
    lam = ctx.check(lam)
    parts = list(lam) + [0] * (n - len(lam))
    q = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            q *= math.sin(math.pi * (parts[i] - parts[j] + j - i) / (k + n))
            q /= math.sin(math.pi * (j - i) / (k + n))
    return q


def quantum_dimensions(ctx: FusionContext) -> np.ndarray:
    """Quantum dimensions of all basis weights, in basis order."""
    return np.array([quantum_dimension(lam, ctx) for lam in ctx.partitions])


def s_entry(lam: Sequence[int], sigma: Sequence[int], ctx: FusionContext) -> complex:
    s = s_matrix(ctx)
    return complex(s[ctx.partition_index[Partition(lam)], ctx.partition_index[Partition(sigma)]])
