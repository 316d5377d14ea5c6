"""Numerical tolerances shared by every floating-point check."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    unitarity: float = 1e-9
    spectral: float = 1e-8
    verlinde_rounding: float = 1e-6
    s_from_bethe: float = 1e-7
    bethe_residual: float = 1e-9


TOL = Tolerances()

# Verlinde fusion is only offered up to this rank; the other methods have no limit
MAX_VERLINDE_RANK = 6
