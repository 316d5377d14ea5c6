import cmath
import json
import math

import numpy as np
import pytest

from fusionring.bethe import (
    BetheConventionError,
    bae_residual,
    bethe_json,
    bethe_roots,
    bethe_vector,
    completeness_margin,
    eigen_check,
    eigenvalue,
    idempotency_residual,
    idempotent,
    inner,
    s_matrix_from_bethe,
    schur_eigen_check,
    vector_agreement,
)
from fusionring.config import TOL
from fusionring.core import FusionContext
from fusionring.fusion_verlinde import quantum_dimensions, s_matrix
from fusionring.identities import shift_matrix
from fusionring.plactic import nc_poly, star_extend

CONTEXTS = [(n, k) for n in (2, 3, 4) for k in (1, 2, 3)]


@pytest.mark.parametrize("n,k", CONTEXTS)
def test_roots_solve_bethe_equations(n, k):
    ctx = FusionContext(n, k)
    for sigma in ctx.partitions:
        r = bethe_roots(sigma, ctx)
        assert len(r.roots) == k
        assert np.allclose(np.abs(r.roots), 1.0, atol=1e-12)
        assert r.residual < TOL.bethe_residual


def test_roots_level_one_su3():
    # zeta = exp(2 pi i/(k+n)); the sign of the exponent is our convention
    ctx = FusionContext(3, 1)
    for s in range(3):
        (x,) = bethe_roots((1,) * s, ctx).roots
        assert abs(x - cmath.exp(2j * math.pi * s / 3)) < 1e-12
        assert abs(x.conjugate() - cmath.exp(-2j * math.pi * s / 3)) < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_vacuum_roots(k):
    ctx = FusionContext(3, k)
    roots = bethe_roots((), ctx).roots
    zeta = cmath.exp(2j * math.pi / (k + 3))
    expect = [zeta ** ((k + 1) / 2 - j) for j in range(1, k + 1)]
    by_angle = lambda zs: sorted(zs, key=cmath.phase)
    assert np.allclose(by_angle(roots), by_angle(expect), atol=1e-12)
    # symmetric about the real axis
    assert np.allclose(by_angle(np.conj(roots)), by_angle(roots), atol=1e-12)


def test_bae_residual_sensitivity():
    ctx = FusionContext(3, 2)
    assert bae_residual([], FusionContext(3, 0)) == 0.0
    assert max(bethe_roots(s, ctx).residual for s in ctx.partitions) < 1e-12
    roots = list(bethe_roots((1,), ctx).roots)
    roots[0] *= 1.01
    assert bae_residual(roots, ctx) > 1e-3


def test_bethe_vectors_level_one_su3():
    ctx = FusionContext(3, 1)
    for s in range(3):
        b = bethe_vector((1,) * s, ctx)
        for lam, c in zip(ctx.partitions, b):
            assert abs(c - cmath.exp(-2j * math.pi * len(lam) * s / 3)) < 1e-12


@pytest.mark.parametrize("n,k", CONTEXTS)
def test_two_constructions_agree(n, k):
    ctx = FusionContext(n, k)
    for sigma in ctx.partitions:
        assert vector_agreement(sigma, ctx) < TOL.spectral
        a = bethe_vector(sigma, ctx, "b_operator")
        b = bethe_vector(sigma, ctx, "s_matrix")
        assert np.max(np.abs(a - b)) < 1e-8


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2)])
def test_norm_is_inverse_square_of_vacuum_entry(n, k):
    ctx = FusionContext(n, k)
    s = s_matrix(ctx)
    vac = ctx.index[ctx.vacuum]
    for c, sigma in enumerate(ctx.partitions):
        b = bethe_vector(sigma, ctx)
        assert abs(inner(b, b) - abs(s[vac, c]) ** -2) < 1e-8


@pytest.mark.parametrize("n,k", [(2, 3), (3, 2), (4, 3)])
def test_vacuum_vector_is_perron_frobenius(n, k):
    ctx = FusionContext(n, k)
    b = bethe_vector((), ctx)
    assert np.max(np.abs(b.imag)) < 1e-10
    assert np.all(b.real > 0)
    assert np.allclose(b.real, quantum_dimensions(ctx), atol=1e-9)


@pytest.mark.parametrize("n,k", CONTEXTS)
def test_eigenvalue_equations(n, k):
    ctx = FusionContext(n, k)
    for sigma in ctx.partitions:
        assert eigen_check(sigma, 0, "complete", ctx) < 1e-14
        for r in range(n + k):
            for kind in ("elementary", "complete"):
                assert eigen_check(sigma, r, kind, ctx) < TOL.spectral


@pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 2)])
def test_schur_eigenvalues(n, k):
    ctx = FusionContext(n, k)
    for lam in ctx.partitions:
        for sigma in ctx.partitions:
            assert schur_eigen_check(lam, sigma, ctx) < TOL.spectral


def test_eigenvalue_outside_box_uses_roots():
    ctx = FusionContext(3, 2)
    # (4) does not fit in the 2 x 2 box, so the eigenvalue comes from the roots
    for sigma in ctx.partitions:
        b = bethe_vector(sigma, ctx)
        op = nc_poly("complete", 4, ctx).specialize(1)
        assert np.linalg.norm(op @ b - eigenvalue((4,), sigma, ctx) * b) < 1e-8


@pytest.mark.parametrize("n,k", [(2, 2), (3, 1), (3, 2), (4, 2)])
def test_s_matrix_from_bethe(n, k):
    ctx = FusionContext(n, k)
    assert np.max(np.abs(s_matrix_from_bethe(ctx) - s_matrix(ctx))) < TOL.s_from_bethe


def test_s_matrix_from_bethe_level_one_su3():
    ctx = FusionContext(3, 1)
    s = s_matrix_from_bethe(ctx)
    for a, lam in enumerate(ctx.partitions):
        for b, sigma in enumerate(ctx.partitions):
            expect = cmath.exp(2j * math.pi * len(lam) * len(sigma) / 3) / math.sqrt(3)
            assert abs(s[a, b] - expect) < 1e-10


@pytest.mark.parametrize("n,k", [(2, 2), (3, 1), (3, 2), (3, 3)])
def test_idempotents(n, k):
    ctx = FusionContext(n, k)
    assert idempotency_residual(ctx) < TOL.spectral
    total = sum(idempotent(s, ctx) for s in ctx.partitions)
    one = np.zeros(ctx.dim)
    one[ctx.index[ctx.vacuum]] = 1
    # the idempotents resolve the identity
    assert np.max(np.abs(total - one)) < 1e-8
    u = idempotent((1,), ctx)
    assert np.max(np.abs(star_extend(u, u, ctx) - u)) < 1e-8


@pytest.mark.parametrize("n,k", CONTEXTS)
def test_completeness(n, k):
    assert completeness_margin(FusionContext(n, k)) > TOL.spectral


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2)])
def test_level_shift_is_diagonal_on_bethe_vectors(n, k):
    ctx = FusionContext(n, k)
    shift = shift_matrix(ctx)
    for sigma in ctx.partitions:
        b = bethe_vector(sigma, ctx)
        ev = eigenvalue((k,), sigma, ctx)
        assert np.linalg.norm(shift @ b - ev * b) < 1e-8


def test_bethe_json():
    data = json.loads(bethe_json((1,), FusionContext(3, 2)))
    assert data["sigma"] == [1]
    assert len(data["roots"]) == 2 and len(data["vector"]) == 6


def test_bad_method_and_shape():
    ctx = FusionContext(3, 2)
    with pytest.raises(ValueError):
        bethe_vector((1,), ctx, "guess")
    with pytest.raises(Exception):
        bethe_roots((3,), ctx)
    assert issubclass(BetheConventionError, ArithmeticError)
