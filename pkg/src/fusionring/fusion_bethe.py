"""Fusion coefficients by cyclic reduction of transposed LR products."""

from __future__ import annotations

from typing import Sequence

from .core import FusionContext, Partition, transpose
from .symfunc import FusionExpansion, SignedPartition, lr_expand, straighten


class ReductionDidNotTerminate(RuntimeError):
    pass


def reduce_bethe(rho: Sequence[int], ctx: FusionContext) -> SignedPartition:
    """Bring a partition with at most ``k`` rows into the ``k x (n-1)`` box.

    While the first row is too long, move it to the bottom shortened by ``n``
    and straighten.  Each step lowers the size by ``n``, so at most
    ``|rho| / n`` steps are needed.
    """
    n, k = ctx.n, ctx.k
    rho = Partition(rho)
    if len(rho) > k:
        return SignedPartition.zero()
    sign = 1
    parts = list(rho) + [0] * (k - len(rho))
    max_steps = sum(parts) // n + 1
    for _ in range(max_steps):
        if not parts or parts[0] < n:
            return SignedPartition(sign, Partition(parts))
        s = straighten(parts[1:] + [parts[0] - n])
        if s.sign == 0:
            return SignedPartition.zero()
        sign *= s.sign
        parts = list(s.shape) + [0] * (k - len(s.shape))
    raise ReductionDidNotTerminate(f"{list(rho)} did not reduce for n={n}, k={k}")


def fuse_bethe(lam: Sequence[int], mu: Sequence[int], ctx: FusionContext) -> FusionExpansion:
    lam, mu = ctx.check(lam), ctx.check(mu)
    out = FusionExpansion(n=ctx.n, k=ctx.k)
    for rho, c in lr_expand(transpose(lam), transpose(mu)).items():
        if len(rho) > ctx.k:
            continue
        red = reduce_bethe(rho, ctx)
        if red.sign:
            out.add(transpose(red.shape), red.sign * c)
    return out
