"""Floating-point spectral side of QH*(Gr(r, r+s)).

The ring is semisimple: its spectrum is one point per r-subset ``I`` of
``{1, ..., r+s}``, whose coordinates are r distinct (r+s)-th roots of
``(-1)**(r+1)``.  A Schubert class evaluates there as a Schur polynomial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .partitions import BoxContext, Partition


@dataclass(frozen=True)
class SpectralPoint:
    ctx: BoxContext
    subset: tuple[int, ...]

    @property
    def roots(self) -> tuple[complex, ...]:
        return tuple(self.root_power(j, 1) for j in self.subset)

    def root_power(self, j: int, k: int) -> complex:
        """``x_j ** k`` for the root attached to ``j``, reduced exactly mod 2*pi."""
        n = self.ctx.n
        # angle = pi * k * (2j + shift) / n, shift = 0 (r odd) or 1 (r even)
        num = (k * (2 * j + (1 - self.ctx.r % 2))) % (2 * n)
        return cmath.exp(1j * math.pi * num / n)

    def complement(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.ctx.n + 1) if j not in self.subset)


def spectral_points(ctx: BoxContext) -> tuple[SpectralPoint, ...]:
    return _points(ctx)


@lru_cache(maxsize=None)
def _points(ctx):
    return tuple(SpectralPoint(ctx, I) for I in combinations(range(1, ctx.n + 1), ctx.r))


def schur_eval(a: Partition, P: SpectralPoint) -> complex:
    """Schur polynomial ``s_a`` at the roots of ``P`` via the bialternant formula."""
    r = len(a)
    num = np.array([[P.root_power(j, a[i] + r - 1 - i) for j in P.subset] for i in range(r)])
    den = np.array([[P.root_power(j, r - 1 - i) for j in P.subset] for i in range(r)])
    return complex(np.linalg.det(num) / np.linalg.det(den))


def vand(P: SpectralPoint) -> float:
    """Product of squared distances between distinct roots; 1 when r = 1."""
    roots = P.roots
    out = 1.0
    for x, y in combinations(roots, 2):
        out *= abs(x - y) ** 2
    return out


def coupling_a(P: SpectralPoint) -> float:
    return P.ctx.n ** P.ctx.r / vand(P)


def sine_product(P: SpectralPoint) -> float:
    """``prod_{j in I, k not in I} |2 sin(pi (j - k) / (r+s))|``."""
    n = P.ctx.n
    out = 1.0
    for j in P.subset:
        for k in P.complement():
            out *= abs(2 * math.sin(math.pi * (j - k) / n))
    return out


def verlinde_sine(ctx: BoxContext, g: int) -> float:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return math.fsum(sine_product(P) ** (g - 1) for P in spectral_points(ctx))


def evaluation_matrix(ctx: BoxContext) -> np.ndarray:
    """``S[i, j] = sigma_{a_j}(zeta^{I_i})`` in canonical orders."""
    return _evaluation_matrix(ctx).copy()


@lru_cache(maxsize=None)
def _evaluation_matrix(ctx):
    return np.array([[schur_eval(a, P) for a in ctx.partitions] for P in spectral_points(ctx)])


def handle_eigenvalue(P: SpectralPoint) -> complex:
    """Eigenvalue ``a_I * sigma_{s^r}(zeta^I)`` of the genus-addition operator."""
    return coupling_a(P) * schur_eval(P.ctx.point, P)


def closed_invariant_spectral(ctx: BoxContext, g: int, d: int) -> complex:
    """Genus ``g``, weight ``d`` closed invariant at ``q = 1`` from the spectrum."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    total = 0j
    for P in spectral_points(ctx):
        lowering = schur_eval(ctx.column, P)
        total += handle_eigenvalue(P) ** (g - 1) * lowering ** (-d)
    return total


def holla_spectral(ctx: BoxContext, g: int, gamma: int) -> complex:
    """Point count of the finite Quot scheme indexed by ``gamma``, in floating point.

    ``(r+s)^(r(g-1)) * sum_I sigma_{1^r}(zeta^I)^((r'+s') gamma) / Vand(zeta^I)^(g-1)``
    with ``r' = r / gcd(r, s)``, ``s' = s / gcd(r, s)``.
    """
    a = math.gcd(ctx.r, ctx.s)
    if not (isinstance(gamma, int) and 0 <= gamma < a):
        raise ValueError(f"gamma={gamma} outside [0, gcd(r, s)={a})")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    shift = (ctx.r + ctx.s) // a * gamma
    total = 0j
    for P in spectral_points(ctx):
        total += schur_eval(ctx.column, P) ** shift / vand(P) ** (g - 1)
    return float(ctx.n) ** (ctx.r * (g - 1)) * total


def witten_trace(ctx: BoxContext, g: int) -> float:
    """Closed invariant of Witten's theory, ``sum_I a_I^(g-1)``."""
    return math.fsum(coupling_a(P) ** (g - 1) for P in spectral_points(ctx))
