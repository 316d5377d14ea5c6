"""Level recursions for fusion coefficients and the all-in-one validator."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .config import MAX_VERLINDE_RANK, TOL, Tolerances
from .core import FusionContext, Partition, Weight, partition_to_weight, weight_to_partition
from .fusion_bethe import fuse_bethe
from .fusion_kac_walton import fuse_kac_walton
from .fusion_verlinde import fuse_verlinde, s_matrix
from .plactic import PlacticOperator, commutator, generator, nc_poly, fuse_plactic, functional_equation_residual
from .symfunc import FusionExpansion

METHODS: dict[str, Callable] = {
    "bethe": fuse_bethe,
    "kac-walton": fuse_kac_walton,
    "verlinde": fuse_verlinde,
    "plactic": fuse_plactic,
}


def available_methods(ctx: FusionContext) -> list[str]:
    names = list(METHODS)
    if ctx.n > MAX_VERLINDE_RANK:
        names.remove("verlinde")
    return names


# ---------------------------------------------------------------------------
# moving between levels


def raise_label(m: Weight, i: int) -> Weight:
    """``phi_i^*``: add one to the ``i``-th Dynkin label (1-based)."""
    m = list(m)
    m[i - 1] += 1
    return tuple(m)


def lower_label(m: Weight, i: int) -> Weight | None:
    """``phi_i``: subtract one from the ``i``-th label, or ``None`` if it is zero."""
    if m[i - 1] == 0:
        return None
    m = list(m)
    m[i - 1] -= 1
    return tuple(m)


@lru_cache(maxsize=None)
def _coefficient(lam: tuple, mu: tuple, nu: tuple, n: int, k: int) -> int:
    ctx = FusionContext(n, k)
    return fuse_bethe(lam, mu, ctx).get(Partition(nu), 0)


def fusion_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], ctx: FusionContext) -> int:
    return _coefficient(tuple(Partition(lam)), tuple(Partition(mu)), tuple(Partition(nu)), ctx.n, ctx.k)


def check_level_recursion(r: int, kind: str, mu: Weight, nu: Weight, i: int, ctx: FusionContext) -> bool:
    """Fusion with ``(1^r)`` (``kind="column"``) or ``(r)`` (``kind="row"``)
    is unchanged when both ``mu`` and ``nu`` gain one unit at node ``i``."""
    n, k = ctx.n, ctx.k
    if not 1 <= i <= n:
        raise IndexError(f"node index {i} outside 1..{n}")
    if kind == "column":
        lam = (1,) * r
        top = n - 1 if k else 0
        if not 0 <= r <= top:
            raise ValueError(f"r={r} outside 0..{top}")
    elif kind == "row":
        lam = (r,)
        if not 0 <= r <= k:
            raise ValueError(f"r={r} outside 0..{k}")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    up = ctx.at_level(k + 1)
    lower = fusion_coefficient(lam, weight_to_partition(mu, ctx), weight_to_partition(nu, ctx), ctx)
    upper = fusion_coefficient(
        lam, weight_to_partition(raise_label(mu, i), up), weight_to_partition(raise_label(nu, i), up), up
    )
    return lower == upper


def level_recursion_failures(ctx: FusionContext, kind: str, max_r: int | None = None) -> list[tuple]:
    """All ``(r, mu, nu, i)`` at which ``check_level_recursion`` is false."""
    top = (ctx.n - 1 if ctx.k else 0) if kind == "column" else ctx.k
    if max_r is not None:
        top = min(top, max_r)
    return [
        (r, mu, nu, i)
        for r in range(top + 1)
        for mu in ctx.basis
        for nu in ctx.basis
        for i in range(1, ctx.n + 1)
        if not check_level_recursion(r, kind, mu, nu, i, ctx)
    ]


def row_recursion_counterexample() -> tuple[int, int]:
    """``N_{(2),(2,1)}^{(2)}`` for su(3) at levels 2 and 3: ``(0, 1)``.

    Raising the affine label of both weights keeps the partitions but lifts
    the level, so the level-2 truncation of ``(3,1,1)`` disappears.  Hence the
    row version of the level recursion fails once ``r >= 2``.
    """
    return (
        fusion_coefficient((2,), (2, 1), (2,), FusionContext(3, 2)),
        fusion_coefficient((2,), (2, 1), (2,), FusionContext(3, 3)),
    )


# ---------------------------------------------------------------------------
# strip formulas


def _strip_count(mu: Partition, nu: Partition, r: int, vertical: bool, n: int, k: int, first: int) -> int:
    """Partitions ``lam`` in the ``n x k`` box with ``lam / mu`` an ``r``-strip,
    ``lam_1 = first`` and ``lam`` equal to ``nu`` after deleting full columns."""
    count = 0
    base = list(nu) + [0] * (n - len(nu))
    for c in range(k + 1):
        lam = [p + c for p in base]
        if lam[0] != first or lam[0] > k:
            continue
        m = list(mu) + [0] * (n - len(mu))
        if any(a < b for a, b in zip(lam, m)):
            continue
        if sum(lam) - sum(m) != r:
            continue
        if vertical:
            ok = all(a - b <= 1 for a, b in zip(lam, m))
        else:
            # horizontal strip: interlacing lam_{i+1} <= mu_i
            ok = all(lam[j + 1] <= m[j] for j in range(n - 1))
        if ok:
            count += 1
    return count


def fuse_column_closed_form(r: int, mu: Sequence[int], nu: Sequence[int], ctx: FusionContext) -> int:
    """``N_{(1^r) mu}^nu`` for ``r <= n - 1`` from two vertical-strip counts.

    The first counts strips on ``mu`` keeping the first row; the second
    counts ``(r-1)``-strips on ``mu`` with one box added to its first row,
    taken at level ``k + 1``, landing on ``nu``.
    """
    n, k = ctx.n, ctx.k
    if not 0 <= r <= n - 1:
        raise ValueError(f"r={r} outside 0..{n - 1}")
    mu, nu = ctx.check(mu), ctx.check(nu)
    total = _strip_count(mu, nu, r, True, n, k, mu.part(0))
    if r >= 1 and mu.part(0) + 1 <= k + 1:
        shifted = Partition([mu.part(0) + 1] + list(mu[1:]))
        # phi_n brings the result back to level k, which needs nu_1 <= k
        total += _strip_count(shifted, nu, r - 1, True, n, k + 1, shifted[0])
    return total


def _row_coefficient(r: int, mu: Weight, nu: Weight, n: int, k: int) -> int:
    if r == 0:
        return int(mu == nu)
    if k < 0 or r > k:
        return 0
    ctx = FusionContext(n, k)
    mu_p, nu_p = weight_to_partition(mu, ctx), weight_to_partition(nu, ctx)
    # the strip keeps the first row; nu may have lost full columns
    if _strip_count(mu_p, nu_p, r, False, n, k, mu_p.part(0)):
        return 1
    down_mu = lower_label(mu, n)
    down_nu = lower_label(nu, 1)
    if down_mu is None or down_nu is None:
        return 0
    return _row_coefficient(r - 1, down_mu, down_nu, n, k - 1)


def fuse_row_recursion(r: int, mu: Sequence[int], ctx: FusionContext) -> FusionExpansion:
    """``(r) * mu`` by descending in level until the product is a plain strip."""
    if not 0 <= r <= ctx.k:
        raise ValueError(f"r={r} outside 0..{ctx.k}")
    m = partition_to_weight(mu, ctx)
    out = FusionExpansion(n=ctx.n, k=ctx.k)
    for w, nu in zip(ctx.basis, ctx.partitions):
        c = _row_coefficient(r, m, w, ctx.n, ctx.k)
        if c:
            out.add(nu, c)
    return out


# ---------------------------------------------------------------------------
# operator identities


def _phi(i: int, n: int, level: int) -> PlacticOperator:
    return generator("phi", i, FusionContext(n, level))


def _phi_star(i: int, n: int, level: int) -> PlacticOperator:
    return generator("phi_star", i, FusionContext(n, level))


def elementary_recursion_holds(r: int, ctx: FusionContext) -> bool:
    """``e_r(A) = e_r(A') + z phi_n e_{r-1}(A') phi_1^*`` on level k."""
    n, k = ctx.n, ctx.k
    up = ctx.at_level(k + 1)
    rhs = nc_poly("elementary", r, ctx, affine=False)
    if r >= 1:
        rhs = rhs + (_phi(n, n, k + 1) @ nc_poly("elementary", r - 1, up, affine=False) @ _phi_star(1, n, k)).shift_degree(1)
    return nc_poly("elementary", r, ctx) == rhs


def complete_recursion_holds(r: int, ctx: FusionContext) -> bool:
    """``h_r(A) = h_r(A') + z phi_1^* h_{r-1}(A) phi_n`` on level k."""
    n, k = ctx.n, ctx.k
    rhs = nc_poly("complete", r, ctx, affine=False)
    if r >= 1 and k >= 1:
        down = ctx.at_level(k - 1)
        rhs = rhs + (_phi_star(1, n, k - 1) @ nc_poly("complete", r - 1, down) @ _phi(n, n, k)).shift_degree(1)
    return nc_poly("complete", r, ctx) == rhs


def shift_matrix(ctx: FusionContext) -> np.ndarray:
    """Permutation ``m -> (m_n, m_1, ..., m_{n-1})`` on the level-k basis."""
    out = np.zeros((ctx.dim, ctx.dim), dtype=np.int64)
    for c, m in enumerate(ctx.basis):
        out[ctx.index[(m[-1],) + m[:-1]], c] = 1
    return out


# ---------------------------------------------------------------------------
# validation report


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    n: int
    k: int
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "ok": self.ok,
            "checks": [asdict(c) for c in self.checks],
            "failures": [c.name for c in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=10)
        lines = [f"n={self.n} k={self.k}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  {c.name:<{width}}  {status}  {c.detail}".rstrip())
        lines.append("PASS" if self.ok else f"FAIL ({len(self.failures)} of {len(self.checks)} checks)")
        return "\n".join(lines)


def _pair_results(args) -> tuple:
    n, k, a, b, names = args
    ctx = FusionContext(n, k)
    lam, mu = ctx.partitions[a], ctx.partitions[b]
    return a, b, [dict(METHODS[name](lam, mu, ctx)) for name in names]


def agreement_sweep(ctx: FusionContext, jobs: int = 1) -> tuple[int, str]:
    """Run every method on every ordered pair; return (#disagreements, first one)."""
    names = available_methods(ctx)
    tasks = [(ctx.n, ctx.k, a, b, names) for a in range(ctx.dim) for b in range(ctx.dim)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_pair_results, tasks, chunksize=16))
    else:
        results = [_pair_results(t) for t in tasks]
    bad, first = 0, ""
    for a, b, outs in results:
        if any(o != outs[0] for o in outs[1:]) or any(c < 0 for c in outs[0].values()):
            bad += 1
            if not first:
                first = f"{list(ctx.partitions[a])} * {list(ctx.partitions[b])}"
    return bad, first


GOLDEN = {
    (3, 4, (3, 1), (3, 2)): {(4, 2): 1, (3,): 1, (3, 3): 1, (2, 1): 2, (): 1},
    (5, 2, (1, 1, 1), (2, 2, 1)): {(1, 1, 1): 1, (2, 1): 1},
    (5, 3, (1, 1, 1), (3, 2, 1)): {(2, 1, 1): 1, (3, 1): 1, (2, 2): 1, (3, 3, 2, 1): 1},
    (5, 4, (3,), (2, 2, 1)): {(3, 2, 2, 1): 1, (4, 2, 1, 1): 1, (4, 2, 2): 1},
}


def cross_validate(
    ctx: FusionContext,
    jobs: int = 1,
    spectral: bool = True,
    paths: bool | None = None,
    tol: Tolerances = TOL,
) -> ValidationReport:
    """Run every consistency check that is feasible for ``ctx``.

    ``paths`` defaults to on for small contexts only, since it enumerates
    lattice configurations for every pair of weights.
    """
    from .bethe import (
        bethe_roots,
        completeness_margin,
        eigen_check,
        idempotency_residual,
        s_matrix_from_bethe,
        vector_agreement,
    )
    from .vertex_model import count_paths, hook_content_sum

    n, k = ctx.n, ctx.k
    rep = ValidationReport(n, k)

    bad, first = agreement_sweep(ctx, jobs)
    rep.add("methods agree", bad == 0, f"{'+'.join(available_methods(ctx))}; {bad} disagreements {first}".strip())
    for (gn, gk, lam, mu), expect in GOLDEN.items():
        if (gn, gk) == (n, k):
            got = {tuple(p): c for p, c in fuse_bethe(lam, mu, ctx).items()}
            rep.add(f"golden {lam}*{mu}", got == expect)

    # operator identities, exact
    one = PlacticOperator.identity(n, k)
    rep.add("e_n(A) = z", nc_poly("elementary", n, ctx) == one.shift_degree(1))
    rep.add(
        "h_r(A') = 0 for r > k",
        all(nc_poly("complete", r, ctx, affine=False).is_zero() for r in range(k + 1, n + k + 1)),
    )
    top = n + k - 1
    worst_comm = 0
    for r in range(top + 1):
        for s in range(r, top + 1):
            for a, b in (("complete", "complete"), ("elementary", "elementary"), ("elementary", "complete"), ("complete", "elementary")):
                worst_comm = max(worst_comm, commutator(nc_poly(a, r, ctx), nc_poly(b, s, ctx)).max_abs())
    rep.add("e and h commute", worst_comm == 0, f"max entry {worst_comm}")
    tq = functional_equation_residual(ctx, n + k)
    rep.add("functional equation", tq == 0, f"max entry {tq}")
    rep.add("elementary recursion", all(elementary_recursion_holds(r, ctx) for r in range(n + 1)))
    rep.add("complete recursion", all(complete_recursion_holds(r, ctx) for r in range(n + k + 1)))
    if k >= 1:
        rep.add("h_k(A) shifts labels", np.array_equal(nc_poly("complete", k, ctx).specialize(1), shift_matrix(ctx)))

    # level recursions and strip formulas
    fails = level_recursion_failures(ctx, "column")
    rep.add("level recursion, columns", not fails, f"first failure {fails[0]}" if fails else "")
    # rows of length >= 2 break the recursion (see row_recursion_counterexample)
    fails = level_recursion_failures(ctx, "row", max_r=1)
    rep.add("level recursion, rows r<=1", not fails, f"first failure {fails[0]}" if fails else "")
    fails = []
    for r in range(n if k else 1):
        col = tuple([1] * r)
        for mu in ctx.partitions:
            for nu in ctx.partitions:
                if fuse_column_closed_form(r, mu, nu, ctx) != fusion_coefficient(col, mu, nu, ctx):
                    fails.append((r, mu, nu))
    rep.add("column strip formula", not fails, f"first failure {fails[0]}" if fails else "")
    fails = [
        (r, mu)
        for r in range(k + 1)
        for mu in ctx.partitions
        if dict(fuse_row_recursion(r, mu, ctx)) != dict(fuse_bethe((r,), mu, ctx))
    ]
    rep.add("row recursion", not fails, f"first failure {fails[0]}" if fails else "")

    if spectral and n <= MAX_VERLINDE_RANK:
        s = s_matrix(ctx)
        unit = float(np.max(np.abs(s @ s.conj().T - np.eye(ctx.dim))))
        sym = float(np.max(np.abs(s - s.T)))
        rep.add("S unitary", unit < tol.unitarity, f"{unit:.1e}")
        rep.add("S symmetric", sym < tol.unitarity, f"{sym:.1e}")
        bae = max(bethe_roots(sg, ctx).residual for sg in ctx.partitions)
        rep.add("Bethe equations", bae < tol.bethe_residual, f"{bae:.1e}")
        eig = max(
            eigen_check(sg, r, kind, ctx)
            for sg in ctx.partitions
            for r in range(n + k)
            for kind in ("elementary", "complete")
        )
        rep.add("eigenvalues", eig < tol.spectral, f"{eig:.1e}")
        agree = max(vector_agreement(sg, ctx) for sg in ctx.partitions)
        rep.add("Bethe vectors agree", agree < tol.spectral, f"{agree:.1e}")
        sb = float(np.max(np.abs(s_matrix_from_bethe(ctx) - s)))
        rep.add("S from Bethe vectors", sb < tol.s_from_bethe, f"{sb:.1e}")
        comp = completeness_margin(ctx)
        rep.add("Bethe vectors complete", comp > tol.spectral, f"smallest singular value {comp:.2e}")
        if ctx.dim <= 40:
            idem = idempotency_residual(ctx)
            rep.add("idempotents", idem < tol.spectral, f"{idem:.1e}")

    if paths is None:
        paths = ctx.dim <= 15 and n <= 4
    if paths:
        fails = []
        for mu in ctx.basis:
            for nu in ctx.basis:
                for d in range(n * k + 1):
                    if count_paths(mu, nu, d, ctx) != hook_content_sum(mu, nu, d, ctx, fuse_bethe):
                        fails.append((mu, nu, d))
        rep.add("path counts", not fails, f"first failure {fails[0]}" if fails else "")
    return rep
