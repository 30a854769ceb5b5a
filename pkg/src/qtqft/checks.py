"""Self-check suite: every structural invariant of the engine, with measured deviations.

Exact checks report the number of failing cases as their deviation; float
checks report the worst absolute or relative error.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import spectrum as sp
from .fusion import QClass, ring, sigma
from .laurent import Q
from .partitions import BoxContext, complement, size
from .tqft import (
    compose,
    degree_element,
    eta_class,
    expected_exponent,
    extract_count,
    handle_element,
    holla_exact,
    integrate,
    slot_multiply,
    slot_pushforward,
    top_contraction,
    verlinde_exact,
    weighted_map,
)

FLOAT_ABS = 1e-8
FLOAT_REL = 1e-6
RECONCILE_REL = 1e-4


@dataclass
class CheckResult:
    name: str
    passed: bool
    deviation: float
    cases: int
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark}  {self.name:<32} cases={self.cases:<7d} deviation={self.deviation:.3g}  ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "deviation": self.deviation,
                "cases": self.cases, "seconds": round(self.seconds, 3)}


class _Tally:
    def __init__(self, tol: float | None = None):
        self.tol = tol
        self.cases = 0
        self.bad = 0
        self.worst = 0.0

    def exact(self, ok: bool):
        self.cases += 1
        if not ok:
            self.bad += 1

    def close(self, err: float):
        self.cases += 1
        self.worst = max(self.worst, float(err))

    def result(self, name: str) -> CheckResult:
        if self.tol is None:
            return CheckResult(name, self.bad == 0, float(self.bad), self.cases)
        return CheckResult(name, self.worst < self.tol, self.worst, self.cases)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


# -- partitions -----------------------------------------------------------


def check_partitions(boxes: Iterable[BoxContext]) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        parts = ctx.partitions
        t.exact(len(parts) == len(set(parts)) == math.comb(ctx.n, ctx.r))
        for a in parts:
            ac = complement(ctx, a)
            t.exact(complement(ctx, ac) == a and ac in ctx.index)
            t.exact(size(a) + size(ac) == ctx.dim)
    return t


# -- fusion ---------------------------------------------------------------


def check_associativity(boxes) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        rg = ring(ctx)
        basis = [QClass.basis(ctx, a) for a in ctx.partitions]
        pairs = {(i, j): rg.product(x, y) for i, x in enumerate(basis) for j, y in enumerate(basis)}
        for i, j, k in product(range(len(basis)), repeat=3):
            t.exact(rg.product(pairs[i, j], basis[k]) == rg.product(basis[i], pairs[j, k]))
    return t


def check_unit_commutativity(boxes) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        rg = ring(ctx)
        one = QClass.unit(ctx)
        for a in ctx.partitions:
            x = QClass.basis(ctx, a)
            t.exact(rg.product(one, x) == x)
            for b in ctx.partitions:
                t.exact(rg.table[a, b] == rg.table[b, a])
    return t


def check_grading_positivity(boxes) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        for (a, b), prod in ring(ctx).table.items():
            for c, coeff in prod.items():
                for e, v in coeff.items():
                    t.exact(size(c) + e * ctx.n == size(a) + size(b) and v > 0)
    return t


def check_column_identities(boxes) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        col = sigma(ctx, ctx.column)
        one = QClass.unit(ctx)
        t.exact(col * sigma(ctx, ctx.row(ctx.s)) == one.scale(Q))
        t.exact(col ** ctx.n == one.scale(Q ** ctx.r))
        for a in ctx.partitions:
            if a[0] < ctx.s:
                expected = sigma(ctx, tuple(x + 1 for x in a))
            else:
                expected = sigma(ctx, a[1:] + (0,), Q)
            t.exact(col * sigma(ctx, a) == expected)
    return t


def check_spectral_reconstruction(boxes) -> _Tally:
    t = _Tally(FLOAT_ABS)
    for ctx in boxes:
        S = sp.evaluation_matrix(ctx)
        weights = np.array([1 / sp.coupling_a(P) for P in sp.spectral_points(ctx)])
        # idempotent of point I has coordinates conj(S[I, c]) / a_I
        recon = np.einsum("ia,ib,i,ic->abc", S, S, weights, S.conj())
        rg = ring(ctx)
        for (a, b), prod in rg.table.items():
            exact = np.zeros(ctx.basis_count)
            for c, v in prod.items():
                exact[ctx.index[c]] = v.at_one()
            err = np.max(np.abs(recon[ctx.index[a], ctx.index[b]] - exact))
            t.close(err)
    return t


# -- spectrum -------------------------------------------------------------


def check_orthogonality(boxes) -> _Tally:
    t = _Tally(FLOAT_ABS)
    for ctx in boxes:
        S = sp.evaluation_matrix(ctx)
        gram = S.conj() @ S.T
        expected = np.diag([ctx.n ** ctx.r / sp.vand(P) for P in sp.spectral_points(ctx)])
        t.close(np.max(np.abs(gram - expected)))
    return t


def check_sine_identities(boxes) -> _Tally:
    t = _Tally(FLOAT_ABS)
    for ctx in boxes:
        for P in sp.spectral_points(ctx):
            t.close(abs(ctx.n ** ctx.r - sp.vand(P) * sp.sine_product(P)))
        n = ctx.n
        prod = math.prod(2 * math.sin(math.pi * k / n) for k in range(1, n))
        t.close(abs(n - prod))
    return t


def check_eigenvectors(boxes) -> _Tally:
    t = _Tally(FLOAT_ABS)
    for ctx in boxes:
        S = sp.evaluation_matrix(ctx)
        rg = ring(ctx)
        for j, a in enumerate(ctx.partitions):
            M = rg.multiplication_matrix(QClass.basis(ctx, a)).astype(float)
            for i in range(len(S)):
                v = S[i].conj()
                t.close(np.max(np.abs(M @ v - S[i, j] * v)))
    return t


def check_point_class_values(boxes) -> _Tally:
    t = _Tally(FLOAT_ABS)
    for ctx in boxes:
        for P in sp.spectral_points(ctx):
            top = sp.schur_eval(ctx.point, P)
            col = sp.schur_eval(ctx.column, P)
            t.close(abs(abs(top) - 1))
            t.close(abs(top - col ** ctx.s))
            for x in P.roots:
                t.close(abs(x ** ctx.n - (-1) ** (ctx.r + 1)))
    return t


def check_verlinde_symmetry(boxes, genera=range(0, 6)) -> _Tally:
    t = _Tally(FLOAT_REL)
    for ctx in boxes:
        dual = BoxContext(ctx.s, ctx.r)
        for g in genera:
            t.close(_rel(sp.verlinde_sine(ctx, g), sp.verlinde_sine(dual, g)))
    return t


def check_handle_spectrum(boxes) -> _Tally:
    t = _Tally(FLOAT_ABS)
    for ctx in boxes:
        h = handle_element(ctx)
        S = sp.evaluation_matrix(ctx)
        coeffs = np.array([h[a].at_one() for a in ctx.partitions], dtype=float)
        for i, P in enumerate(sp.spectral_points(ctx)):
            t.close(abs(S[i] @ coeffs - sp.handle_eigenvalue(P)))
    return t


# -- tqft -----------------------------------------------------------------


def check_monomial(boxes, genera=range(0, 5)) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        for g in genera:
            for d in range(-2 * ctx.n, 2 * ctx.n + 1):
                v = integrate(ctx, g, d)
                e0 = expected_exponent(ctx, g, d)
                t.exact(not v or (e0 is not None and v.exponents() == [e0]))
    return t


def check_gluing(boxes, genera=range(0, 3), degrees=range(-2, 3), arities=(0, 1)) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        for g1, g2, d1, d2, m, n in product(genera, genera, degrees, degrees, arities, arities):
            lhs = weighted_map(ctx, g1 + g2, d1 + d2, m, n)
            rhs = compose(weighted_map(ctx, g2, d2, 1, n), weighted_map(ctx, g1, d1, m, 1))
            t.exact(lhs == rhs)
    return t


def check_degeneration(boxes, genera=range(0, 2), degrees=range(-1, 2), max_arity=3) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        parts = ctx.partitions
        for g1, g2, d1, d2 in product(genera, genera, degrees, degrees):
            for total in range(max_arity + 1):
                for tup in product(parts, repeat=total):
                    for cut in range(total + 1):
                        A1, A2 = tup[:cut], tup[cut:]
                        lhs = integrate(ctx, g1 + g2, d1 + d2, A1 + A2)
                        rhs = sum((integrate(ctx, g1, d1, A1 + (b,)) * integrate(ctx, g2, d2, A2 + (complement(ctx, b),))
                                   for b in parts), start=lhs * 0)
                        t.exact(lhs == rhs)
    return t


def check_periodicity(boxes, genera=range(0, 3), degrees=range(-2, 3), max_arity=2) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        for g, d in product(genera, degrees):
            for k in range(max_arity + 1):
                for A in product(ctx.partitions, repeat=k):
                    t.exact(integrate(ctx, g, d + ctx.n, A) == integrate(ctx, g, d, A).shift(-ctx.r))
    return t


def check_eta_identities(boxes, genera=range(0, 3), degrees=range(-2, 3), max_N=2) -> _Tally:
    t = _Tally()
    for ctx in boxes:
        h = handle_element(ctx)
        lower = sigma(ctx, ctx.column)
        raise_ = degree_element(ctx, 1)
        for g, d in product(genera, degrees):
            for N in range(0, max_N + 1):
                eta = eta_class(ctx, g, d, N)
                for ((), outs), v in eta.entries.items():
                    for e in v.exponents():
                        t.exact(sum(map(size, outs)) + e * ctx.n == (N + g - 1) * ctx.dim - ctx.r * d)
                t.exact(top_contraction(eta) == integrate(ctx, g, d))
                for k in range(1, N + 1):
                    t.exact(slot_multiply(eta, k, h).same_entries(eta_class(ctx, g + 1, d, N)))
                    t.exact(slot_multiply(eta, k, lower).same_entries(eta_class(ctx, g, d - 1, N)))
                    t.exact(slot_multiply(eta, k, raise_).same_entries(eta_class(ctx, g, d + 1, N)))
                    t.exact(slot_pushforward(eta, k).same_entries(eta_class(ctx, g, d, N - 1)))
            if g >= 1:
                e0, count = extract_count(ctx, g, d)
                for N in range(max_N + 1):
                    top = top_contraction(eta_class(ctx, g, d, N))
                    t.exact(top == (Q ** e0).scale(count) if e0 is not None else not top)
    return t


def check_exact_vs_spectral(boxes, genera=range(1, 6)) -> _Tally:
    t = _Tally(RECONCILE_REL)
    for ctx in boxes:
        for g in genera:
            exact = verlinde_exact(ctx, g)
            t.close(_rel(exact, sp.verlinde_sine(ctx, g)))
            t.close(_rel(exact, sp.witten_trace(ctx, g)))
            for gamma in range(math.gcd(ctx.r, ctx.s)):
                value = sp.holla_spectral(ctx, g, gamma)
                t.close(_rel(holla_exact(ctx, g, gamma), value.real) + abs(value.imag))
    return t


def check_closed_invariants(boxes, genera=range(1, 5)) -> _Tally:
    t = _Tally(RECONCILE_REL)
    for ctx in boxes:
        for g in genera:
            for d in range(-2 * ctx.n, 2 * ctx.n + 1):
                exact = integrate(ctx, g, d).at_one()
                value = sp.closed_invariant_spectral(ctx, g, d)
                t.close(abs(exact - value) / max(1.0, abs(exact)))
    return t


# -- suites ---------------------------------------------------------------


def _boxes(pairs):
    return [BoxContext(r, s) for r, s in pairs]


SMALL = [(1, 1), (1, 2), (2, 1), (2, 2)]
RING_SET = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 3)]
SPECTRAL_SET = [(r, n - r) for n in range(2, 8) for r in range(1, n)]
TQFT_SET = [(1, 1), (1, 2), (2, 2)]

Check = tuple[str, Callable[[], _Tally]]


def suite(name: str) -> list[Check]:
    if name == "fast":
        small = _boxes(SMALL)
        tq = _boxes(TQFT_SET)
        return [
            ("partitions", lambda: check_partitions(small)),
            ("associativity", lambda: check_associativity(small)),
            ("unit+commutativity", lambda: check_unit_commutativity(small)),
            ("grading+positivity", lambda: check_grading_positivity(small)),
            ("column identities", lambda: check_column_identities(small)),
            ("spectral reconstruction", lambda: check_spectral_reconstruction(small)),
            ("orthogonality", lambda: check_orthogonality(small)),
            ("sine identities", lambda: check_sine_identities(small)),
            ("eigenvectors", lambda: check_eigenvectors(small)),
            ("point class values", lambda: check_point_class_values(small)),
            ("verlinde symmetry", lambda: check_verlinde_symmetry(small)),
            ("handle spectrum", lambda: check_handle_spectrum(small)),
            ("monomial property", lambda: check_monomial(tq, range(0, 3))),
            ("gluing", lambda: check_gluing(tq, range(0, 2), range(-1, 2))),
            ("degeneration", lambda: check_degeneration(_boxes([(1, 1)]), range(0, 2), range(-1, 2), 2)),
            ("periodicity", lambda: check_periodicity(tq, range(0, 2), range(-1, 2), 1)),
            ("eta identities", lambda: check_eta_identities(tq, range(0, 2), range(-1, 2), 2)),
            ("exact vs spectral counts", lambda: check_exact_vs_spectral(tq, range(1, 4))),
            ("closed invariants", lambda: check_closed_invariants(tq, range(1, 3))),
        ]
    if name == "all":
        ring_boxes = _boxes(RING_SET)
        spec_boxes = _boxes(SPECTRAL_SET)
        assoc_boxes = _boxes([(r, n - r) for n in range(2, 7) for r in range(1, n)])
        tq = _boxes(TQFT_SET)
        holla_boxes = _boxes(TQFT_SET + [(2, 1), (3, 3), (2, 4)])
        return [
            ("partitions", lambda: check_partitions(spec_boxes)),
            ("associativity", lambda: check_associativity(assoc_boxes)),
            ("unit+commutativity", lambda: check_unit_commutativity(ring_boxes)),
            ("grading+positivity", lambda: check_grading_positivity(ring_boxes)),
            ("column identities", lambda: check_column_identities(ring_boxes)),
            ("spectral reconstruction", lambda: check_spectral_reconstruction(spec_boxes)),
            ("orthogonality", lambda: check_orthogonality(spec_boxes)),
            ("sine identities", lambda: check_sine_identities(spec_boxes)),
            ("eigenvectors", lambda: check_eigenvectors(spec_boxes)),
            ("point class values", lambda: check_point_class_values(spec_boxes)),
            ("verlinde symmetry", lambda: check_verlinde_symmetry(spec_boxes)),
            ("handle spectrum", lambda: check_handle_spectrum(spec_boxes)),
            ("monomial property", lambda: check_monomial(tq)),
            ("gluing", lambda: check_gluing(tq)),
            ("degeneration", lambda: check_degeneration(_boxes([(1, 1), (2, 2)]))),
            ("periodicity", lambda: check_periodicity(tq)),
            ("eta identities", lambda: check_eta_identities(tq)),
            ("exact vs spectral counts", lambda: check_exact_vs_spectral(holla_boxes)),
            ("closed invariants", lambda: check_closed_invariants(holla_boxes)),
        ]
    raise ValueError(f"unknown suite {name!r}; choose 'fast' or 'all'")


def _timed(check: Check) -> CheckResult:
    name, fn = check
    start = time.perf_counter()
    res = fn().result(name)
    res.seconds = time.perf_counter() - start
    return res


def run_suite(name: str, workers: int = 1) -> list[CheckResult]:
    checks = suite(name)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(_timed, checks))
    return [_timed(c) for c in checks]
