"""Bethe roots, Bethe vectors and the spectral checks built on them (z = 1)."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import TOL
from .core import FusionContext, Partition, dual_weight, transpose
from .fusion_verlinde import s_matrix
from .plactic import nc_poly, nc_schur, star_extend
from .symfunc import schur_evaluate


class BetheConventionError(ArithmeticError):
    """Roots or vectors fail the equations they are supposed to satisfy."""


def _pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


@dataclass(frozen=True)
class BetheRoots:
    sigma: Partition
    roots: tuple[complex, ...]
    residual: float

    def to_dict(self) -> dict:
        return {"sigma": list(self.sigma), "roots": _pairs(self.roots), "residual": self.residual}


def bae_residual(roots: Sequence[complex], ctx: FusionContext) -> float:
    """``max_i |x_i^(n+k) - (-1)^(k-1) prod_j x_j|`` at ``z = 1``."""
    roots = np.asarray(roots, dtype=complex)
    if roots.size == 0:
        return 0.0
    rhs = (-1) ** (ctx.k - 1) * np.prod(roots)
    return float(np.max(np.abs(roots ** (ctx.n + ctx.k) - rhs)))


def bethe_roots(sigma: Sequence[int], ctx: FusionContext) -> BetheRoots:
    """The ``k`` roots labelled by ``sigma``.

    ``x_j = zeta^(|sigma|/n) zeta^(I_j)`` with ``zeta = exp(2 pi i/(k+n))`` and
    half-integer exponents ``I_j = (k+1)/2 + sigma^t_{k+1-j} - (k+1-j)``.
    """
    n, k = ctx.n, ctx.k
    sigma = ctx.check(sigma)
    st = transpose(sigma)
    base = 2 * math.pi / (k + n)
    roots = []
    for j in range(1, k + 1):
        exponent = sigma.weight() / n + (k + 1) / 2 + st.part(k - j) - (k + 1 - j)
        roots.append(cmath.exp(1j * base * exponent))
    res = bae_residual(roots, ctx)
    if res > TOL.bethe_residual:
        raise BetheConventionError(f"Bethe equations off by {res:.2e} for sigma={list(sigma)}")
    return BetheRoots(sigma, tuple(roots), res)


# ---------------------------------------------------------------------------
# Bethe vectors


def _finite_a(u: complex, n: int, level: int) -> np.ndarray:
    """``A(u) = sum_r u^r e_r(A')`` on one level (finite generators only)."""
    ctx = FusionContext(n, level)
    out = np.zeros((ctx.dim, ctx.dim), dtype=complex)
    for r in range(n):
        out += u**r * nc_poly("elementary", r, ctx, affine=False).specialize(1)
    return out


def _raise_first(vec: np.ndarray, n: int, level: int) -> np.ndarray:
    """``phi_1^*`` from ``level`` to ``level + 1``."""
    src, tgt = FusionContext(n, level), FusionContext(n, level + 1)
    out = np.zeros(tgt.dim, dtype=complex)
    for c, m in enumerate(src.basis):
        out[tgt.index[(m[0] + 1,) + m[1:]]] += vec[c]
    return out


def _b_operator_vector(sigma: Partition, ctx: FusionContext) -> np.ndarray:
    roots = bethe_roots(sigma, ctx).roots
    vec = np.ones(1, dtype=complex)  # the level-0 vacuum
    for level, x in enumerate(reversed(roots)):
        u = np.conj(x)
        vec = u * (_finite_a(u, ctx.n, level + 1) @ _raise_first(vec, ctx.n, level))
    vac = ctx.index[ctx.vacuum]
    if abs(vec[vac]) < 1e-300:
        raise BetheConventionError(f"Bethe vector for {list(sigma)} has no vacuum component")
    return vec / vec[vac]


def _s_matrix_vector(sigma: Partition, ctx: FusionContext) -> np.ndarray:
    s = s_matrix(ctx)
    d = ctx.partition_index[dual_weight(sigma, ctx)]
    return s[d] / s[d, ctx.index[ctx.vacuum]]


def bethe_vector(sigma: Sequence[int], ctx: FusionContext, method: str = "b_operator") -> np.ndarray:
    """On-shell Bethe vector, scaled so that its vacuum component is 1."""
    sigma = ctx.check(sigma)
    if method == "b_operator":
        return _b_operator_vector(sigma, ctx)
    if method == "s_matrix":
        return _s_matrix_vector(sigma, ctx)
    raise ValueError(f"unknown method {method!r}")


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian product, antilinear in the first argument."""
    return complex(np.vdot(u, v))


def idempotent(sigma: Sequence[int], ctx: FusionContext) -> np.ndarray:
    """``b_sigma / <b_sigma, b_sigma>``: the idempotent of the fusion product."""
    b = bethe_vector(sigma, ctx)
    return b / inner(b, b).real


def bethe_data(sigma: Sequence[int], ctx: FusionContext) -> dict:
    r = bethe_roots(sigma, ctx)
    return {**r.to_dict(), "vector": _pairs(bethe_vector(sigma, ctx))}


def bethe_json(sigma: Sequence[int], ctx: FusionContext) -> str:
    return json.dumps(bethe_data(sigma, ctx))


# ---------------------------------------------------------------------------
# spectral checks


def eigenvalue(rho: Sequence[int], sigma: Sequence[int], ctx: FusionContext) -> complex:
    """Eigenvalue of ``s_rho(A)`` on ``b_sigma``.

    Inside the box this is ``S_{rho sigma}/S_{0 sigma}``; outside it is the
    Schur polynomial of the transpose evaluated at the roots.
    """
    rho = Partition(rho)
    if ctx.fits(rho):
        s = s_matrix(ctx)
        col = ctx.partition_index[Partition(sigma)]
        return complex(s[ctx.partition_index[rho], col] / s[ctx.index[ctx.vacuum], col])
    return schur_evaluate(transpose(rho), bethe_roots(sigma, ctx).roots)


def eigen_check(sigma: Sequence[int], r: int, kind: str, ctx: FusionContext) -> float:
    """Relative residual of the eigenvalue equation for ``e_r(A)`` or ``h_r(A)``."""
    op = nc_poly(kind, r, ctx).specialize(1)
    rho = (r,) if kind == "complete" else (1,) * r
    b = bethe_vector(sigma, ctx)
    ev = eigenvalue(rho, sigma, ctx)
    return float(np.linalg.norm(op @ b - ev * b) / np.linalg.norm(b))


def schur_eigen_check(lam: Sequence[int], sigma: Sequence[int], ctx: FusionContext) -> float:
    """Residual of ``s_lam(A) b_sigma = s_{lam^t}(x^sigma) b_sigma``."""
    op = nc_schur(lam, ctx).specialize(1)
    b = bethe_vector(sigma, ctx)
    ev = schur_evaluate(transpose(lam), bethe_roots(sigma, ctx).roots)
    return float(np.linalg.norm(op @ b - ev * b) / np.linalg.norm(b))


def s_matrix_from_bethe(ctx: FusionContext) -> np.ndarray:
    """``S_{lam sigma} = <b_sigma, lam> / <b_sigma, b_sigma>^(1/2)``."""
    out = np.zeros((ctx.dim, ctx.dim), dtype=complex)
    for c, sigma in enumerate(ctx.partitions):
        b = bethe_vector(sigma, ctx)
        out[:, c] = np.conj(b) / np.linalg.norm(b)
    return out


def vector_agreement(sigma: Sequence[int], ctx: FusionContext) -> float:
    """Distance between the two Bethe-vector constructions after phase alignment."""
    a = bethe_vector(sigma, ctx, "b_operator")
    b = bethe_vector(sigma, ctx, "s_matrix")
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    phase = inner(a, b)
    if abs(phase) > 0:
        a = a * phase / abs(phase)
    return float(np.max(np.abs(a - b)))


def idempotency_residual(ctx: FusionContext) -> float:
    """Worst entry of ``hat b_sigma * hat b_rho - delta hat b_sigma`` over all pairs."""
    vecs = [idempotent(s, ctx) for s in ctx.partitions]
    worst = 0.0
    for i, u in enumerate(vecs):
        for j, v in enumerate(vecs):
            expect = u if i == j else np.zeros_like(u)
            worst = max(worst, float(np.max(np.abs(star_extend(u, v, ctx) - expect))))
    return worst


def completeness_margin(ctx: FusionContext) -> float:
    """Smallest singular value of the matrix of Bethe vectors."""
    mat = np.column_stack([bethe_vector(s, ctx) for s in ctx.partitions])
    return float(np.linalg.svd(mat, compute_uv=False).min())
