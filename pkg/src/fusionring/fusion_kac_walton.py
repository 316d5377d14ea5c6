"""Fusion coefficients by affine Weyl reflection of the tensor product."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import FusionContext, Partition, remove_full_columns
from .symfunc import FusionExpansion, SignedPartition, lr_expand


@dataclass(frozen=True)
class ReflectionStep:
    index: int
    before: tuple[int, ...]
    after: tuple[int, ...]


def _reflect_labels(labels: list[int]) -> tuple[int, list[ReflectionStep]]:
    """Reflect shifted Dynkin labels into the closed alcove.

    Returns the accumulated sign (0 if the orbit hits a wall) and the steps.
    """
    n = len(labels)
    sign = 1
    steps = []
    while True:
        neg = [i for i, l in enumerate(labels) if l < 0]
        if not neg:
            break
        i = neg[0]
        before = tuple(labels)
        v = labels[i]
        labels[i] = -v
        labels[(i - 1) % n] += v
        labels[(i + 1) % n] += v
        sign = -sign
        steps.append(ReflectionStep(i, before, tuple(labels)))
        if len(steps) > 10_000:
            raise RuntimeError("reflection did not terminate")
    if 0 in labels:
        return 0, steps
    return sign, steps


def reduce_kac_walton(nu: Sequence[int], ctx: FusionContext) -> SignedPartition:
    n, k = ctx.n, ctx.k
    nu = Partition(nu)
    if len(nu) > n:
        return SignedPartition.zero()
    nu = remove_full_columns(nu, n)
    parts = list(nu) + [0] * (n - len(nu))
    labels = [parts[i] - parts[i + 1] + 1 for i in range(n - 1)]
    labels.append(k - parts[0] + 1)
    sign, _ = _reflect_labels(labels)
    if sign == 0:
        return SignedPartition.zero()
    m = [l - 1 for l in labels]
    return SignedPartition(sign, Partition(sum(m[i:n - 1]) for i in range(n - 1)))


dominant_representative = reduce_kac_walton


def reflection_trace(nu: Sequence[int], ctx: FusionContext) -> list[ReflectionStep]:
    """The sequence of reflections applied to a tensor-product term (for display)."""
    nu = remove_full_columns(nu, ctx.n)
    parts = list(nu) + [0] * (ctx.n - len(nu))
    labels = [parts[i] - parts[i + 1] + 1 for i in range(ctx.n - 1)]
    labels.append(ctx.k - parts[0] + 1)
    return _reflect_labels(labels)[1]


def kac_walton_detail(lam: Sequence[int], mu: Sequence[int], ctx: FusionContext) -> list[tuple[Partition, int, Partition, int]]:
    """Per tensor-product term: (term, LR coefficient, image in the box, sign)."""
    lam, mu = ctx.check(lam), ctx.check(mu)
    rows = []
    for nu, c in lr_expand(lam, mu).sorted_items():
        if len(nu) > ctx.n:
            continue
        red = reduce_kac_walton(nu, ctx)
        rows.append((nu, c, red.shape, red.sign))
    return rows


def fuse_kac_walton(lam: Sequence[int], mu: Sequence[int], ctx: FusionContext) -> FusionExpansion:
    out = FusionExpansion(n=ctx.n, k=ctx.k)
    for _, c, shape, sign in kac_walton_detail(lam, mu, ctx):
        if sign:
            out.add(shape, sign * c)
    return out

