"""Independent reference computations used by the tests.

Nothing here calls into the fusion ring: Schur polynomials come from
semistandard tableaux and products from the semisimple reconstruction.
"""

import cmath
import math
from itertools import combinations, product


def box_partitions(r, s):
    return sorted(
        (p for p in product(range(s + 1), repeat=r) if all(x >= y for x, y in zip(p, p[1:]))),
        key=lambda p: (sum(p), p),
    )


def ssyt(shape, max_entry):
    """All semistandard tableaux of ``shape`` with entries in 1..max_entry (row-major lists)."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]

    def rec(k, filling):
        if k == len(cells):
            yield dict(filling)
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[i, j - 1])
        if i > 0:
            lo = max(lo, filling[i - 1, j] + 1)
        for v in range(lo, max_entry + 1):
            filling[i, j] = v
            yield from rec(k + 1, filling)
            del filling[i, j]

    yield from rec(0, {})


def schur_tableaux(shape, xs):
    total = 0j
    for t in ssyt([p for p in shape if p], len(xs)):
        term = 1
        for v in t.values():
            term *= xs[v - 1]
        total += term
    return total


def roots(r, s, subset):
    n = r + s
    shift = 0.5 if r % 2 == 0 else 0.0
    return [cmath.exp(2j * math.pi * (j + shift) / n) for j in subset]


def spectral_product(r, s, a, b):
    """``sigma_a * sigma_b`` as ``{c: (q_exponent, coefficient)}`` from the spectrum.

    The q=1 coefficients come from the semisimple decomposition and are
    rounded; the q exponent is forced by the grading.
    """
    n = r + s
    parts = box_partitions(r, s)
    vals = {}
    for I in combinations(range(1, n + 1), r):
        xs = roots(r, s, I)
        vand = math.prod(abs(x - y) ** 2 for x, y in combinations(xs, 2))
        vals[I] = ({p: schur_tableaux(p, xs) for p in parts}, n**r / vand)
    out = {}
    for c in parts:
        z = sum(ev[a] * ev[b] * ev[c].conjugate() / aI for ev, aI in vals.values())
        k = round(z.real)
        assert abs(z - k) < 1e-8
        if k:
            e, rem = divmod(sum(a) + sum(b) - sum(c), n)
            assert rem == 0
            out[c] = (e, k)
    return out


def sine_verlinde(r, s, g):
    n = r + s
    total = 0.0
    for I in combinations(range(1, n + 1), r):
        Ibar = [k for k in range(1, n + 1) if k not in I]
        total += math.prod(abs(2 * math.sin(math.pi * (j - k) / n)) for j in I for k in Ibar) ** (g - 1)
    return total


def spectral_integral(r, s, g, d, insertions):
    """``{e: count}`` for the master integral, from the semisimple trace.

    At q = 1 the integral is ``sum_I prod_i s_{a_i}(x_I) * (a_I s_top(x_I))^(g-1) * e_r(x_I)^(-d)``;
    the exponent of q is then fixed by the dimension count.
    """
    n = r + s
    total = 0j
    top = (s,) * r
    for I in combinations(range(1, n + 1), r):
        xs = roots(r, s, I)
        aI = n**r / math.prod(abs(x - y) ** 2 for x, y in combinations(xs, 2))
        term = (aI * schur_tableaux(top, xs)) ** (g - 1) * math.prod(xs) ** (-d)
        for a in insertions:
            term *= schur_tableaux(a, xs)
        total += term
    k = round(total.real)
    assert abs(total - k) < 1e-6 * max(1, abs(k))
    if not k:
        return {}
    e, rem = divmod(sum(map(sum, insertions)) - r * d + r * s * (g - 1), n)
    assert rem == 0
    return {e: k}
