"""Small quantum cohomology of Gr(r, r+s) with the degree variable ``q`` kept.

Basis products are generated from quantum Pieri (multiplication by the
special classes sigma_k) together with the Giambelli determinant, then
memoized per box in a :class:`QuantumRing`.
"""

from __future__ import annotations

import threading
from collections.abc import Iterable, Mapping
from functools import lru_cache
from itertools import permutations

import numpy as np

from .laurent import ONE, ZERO, LaurentInt
from .partitions import BoxContext, Partition


class ContextMismatch(ValueError):
    pass


class QClass:
    """A finite sum ``sum_a L_a(q) sigma_a`` with ``L_a`` in Z[q, q^-1]."""

    __slots__ = ("ctx", "_coeffs")

    def __init__(self, ctx: BoxContext, coeffs: Mapping[Partition, LaurentInt | int] | None = None):
        self.ctx = ctx
        out = {}
        for a, c in (coeffs or {}).items():
            a = tuple(a)
            ctx.validate(a)
            if isinstance(c, int):
                c = LaurentInt(c)
            if c:
                out[a] = c
        self._coeffs = out

    @classmethod
    def _raw(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._coeffs = coeffs
        return obj

    @classmethod
    def basis(cls, ctx: BoxContext, a, coeff: LaurentInt | int = 1) -> QClass:
        return cls(ctx, {ctx.partition(a): coeff})

    @classmethod
    def unit(cls, ctx: BoxContext) -> QClass:
        return cls._raw(ctx, {ctx.empty: ONE})

    @classmethod
    def zero(cls, ctx: BoxContext) -> QClass:
        return cls._raw(ctx, {})

    @property
    def coeffs(self) -> dict[Partition, LaurentInt]:
        return dict(self._coeffs)

    def __getitem__(self, a) -> LaurentInt:
        return self._coeffs.get(tuple(a), ZERO)

    def items(self):
        """Terms in canonical basis order."""
        index = self.ctx.index
        return sorted(self._coeffs.items(), key=lambda kv: index[kv[0]])

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: QClass):
        if not isinstance(other, QClass):
            raise TypeError(f"expected QClass, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._coeffs)
        for a, c in other._coeffs.items():
            v = out.get(a, ZERO) + c
            if v:
                out[a] = v
            else:
                out.pop(a, None)
        return QClass._raw(self.ctx, out)

    def __neg__(self):
        return QClass._raw(self.ctx, {a: -c for a, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: LaurentInt | int) -> QClass:
        out = {a: c * k for a, c in self._coeffs.items()}
        return QClass._raw(self.ctx, {a: c for a, c in out.items() if c})

    def shift(self, e: int) -> QClass:
        """Multiply every coefficient by ``q**e``."""
        return QClass._raw(self.ctx, {a: c.shift(e) for a, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentInt)):
            return self.scale(other)
        return quantum_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentInt)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> QClass:
        if k < 0:
            raise ValueError("negative powers are not defined for general classes")
        result = QClass.unit(self.ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, QClass):
            return NotImplemented
        return self.ctx == other.ctx and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.ctx, frozenset(self._coeffs.items())))

    def at_one(self) -> dict[Partition, int]:
        out = {a: c.at_one() for a, c in self.items()}
        return {a: v for a, v in out.items() if v}

    def vector(self, q=1) -> np.ndarray:
        """Coefficient vector in canonical basis order with ``q`` specialized."""
        v = np.zeros(self.ctx.basis_count, dtype=complex if isinstance(q, complex) else object)
        for a, c in self._coeffs.items():
            v[self.ctx.index[a]] = c.evaluate(q)
        return v

    def __repr__(self):
        return f"QClass({self.ctx.r},{self.ctx.s}: {self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        pieces = []
        for a, c in self.items():
            label = "sigma_(" + ",".join(map(str, a)) + ")"
            if c == 1:
                pieces.append(label)
            elif c.is_monomial():
                pieces.append(f"{c}*{label}")
            else:
                pieces.append(f"({c})*{label}")
        return " + ".join(pieces)

    def to_json(self) -> list[dict]:
        return [{"partition": list(a), "laurent": c.to_json()} for a, c in self.items()]

    @classmethod
    def from_json(cls, ctx: BoxContext, records: Iterable[Mapping]) -> QClass:
        return cls(ctx, {ctx.partition(rec["partition"]): LaurentInt.from_json(rec["laurent"])
                         for rec in records})


# -- quantum Pieri and Giambelli ------------------------------------------


@lru_cache(maxsize=None)
def _pieri_terms(ctx: BoxContext, k: int, a: Partition) -> tuple[tuple[Partition, int], ...]:
    """``sigma_k * sigma_a`` as a tuple of ``(partition, q exponent)`` pairs."""
    r, s = ctx.r, ctx.s
    out = []
    target = sum(a) + k

    # classical part: horizontal strips s >= b_1 >= a_1 >= b_2 >= ... >= b_r >= a_r
    def classical(i, prefix, remaining):
        if i == r:
            if remaining == 0:
                out.append((prefix, 0))
            return
        hi = s if i == 0 else a[i - 1]
        for x in range(a[i], min(hi, a[i] + remaining) + 1):
            classical(i + 1, prefix + (x,), remaining - (x - a[i]))

    classical(0, (), k)

    # quantum part: a_1-1 >= c_1 >= a_2-1 >= ... >= a_r-1 >= c_r >= 0
    qsize = target - (r + s)
    if qsize >= 0 and a[-1] >= 1:
        def quantum(i, prefix, total):
            if i == r:
                if total == qsize:
                    out.append((prefix, 1))
                return
            lo = a[i + 1] - 1 if i + 1 < r else 0
            for x in range(max(lo, 0), a[i]):
                quantum(i + 1, prefix + (x,), total + x)

        quantum(0, (), 0)
    return tuple(out)


def quantum_pieri(ctx: BoxContext, k: int, a) -> QClass:
    """``sigma_k * sigma_a`` for ``1 <= k <= s``."""
    if not isinstance(k, int) or not 1 <= k <= ctx.s:
        raise ValueError(f"Pieri index k={k} outside [1, {ctx.s}]")
    a = ctx.partition(a)
    out: dict[Partition, LaurentInt] = {}
    for c, e in _pieri_terms(ctx, k, a):
        out[c] = out.get(c, ZERO) + LaurentInt.monomial(1, e)
    return QClass._raw(ctx, {c: v for c, v in out.items() if v})


@lru_cache(maxsize=None)
def _giambelli(ctx: BoxContext, a: Partition) -> tuple[tuple[int, tuple[int, ...]], ...]:
    r, s = ctx.r, ctx.s
    acc: dict[tuple[int, ...], int] = {}
    for perm in permutations(range(r)):
        idx = [a[i] + perm[i] - i for i in range(r)]
        if any(m < 0 or m > s for m in idx):
            continue
        factors = tuple(sorted((m for m in idx if m), reverse=True))
        acc[factors] = acc.get(factors, 0) + _perm_sign(perm)
    return tuple(sorted(((c, f) for f, c in acc.items() if c), key=lambda t: t[1], reverse=True))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def giambelli_expand(ctx: BoxContext, a) -> list[tuple[int, tuple[int, ...]]]:
    """Expand ``det(sigma_{a_i + j - i})`` into signed products of special classes.

    Each term is ``(coefficient, (m_1, m_2, ...))`` standing for
    ``coefficient * sigma_{m_1} * sigma_{m_2} * ...``.  Factors ``sigma_0 = 1``
    are omitted, so the empty tuple is the unit; products containing an index
    outside ``[0, s]`` vanish and are dropped.
    """
    return list(_giambelli(ctx, ctx.partition(a)))


def _apply_pieri(ctx: BoxContext, k: int, x: dict[Partition, LaurentInt]) -> dict[Partition, LaurentInt]:
    out: dict[Partition, LaurentInt] = {}
    for b, coeff in x.items():
        for c, e in _pieri_terms(ctx, k, b):
            term = coeff.shift(e) if e else coeff
            v = out.get(c, ZERO) + term
            if v:
                out[c] = v
            else:
                out.pop(c, None)
    return out


def _basis_product(ctx: BoxContext, a: Partition, b: Partition) -> dict[Partition, LaurentInt]:
    """``sigma_a * sigma_b`` from Giambelli on ``a`` and Pieri on ``sigma_b``."""
    total: dict[Partition, LaurentInt] = {}
    for coeff, factors in _giambelli(ctx, a):
        x = {b: ONE}
        for m in factors:
            x = _apply_pieri(ctx, m, x)
            if not x:
                break
        for c, v in x.items():
            w = total.get(c, ZERO) + v.scale(coeff)
            if w:
                total[c] = w
            else:
                total.pop(c, None)
    return total


# -- memoized ring --------------------------------------------------------

StructureTable = dict[tuple[Partition, Partition], dict[Partition, LaurentInt]]


class QuantumRing:
    """Structure constants of QH*(Gr(r, r+s)) for one box, built once."""

    def __init__(self, ctx: BoxContext, table: StructureTable | None = None):
        self.ctx = ctx
        self._table = table
        self._lock = threading.Lock()

    @property
    def built(self) -> bool:
        return self._table is not None

    @property
    def table(self) -> StructureTable:
        if self._table is None:
            with self._lock:
                if self._table is None:
                    self._table = self._build()
        return self._table

    def _build(self) -> StructureTable:
        ctx = self.ctx
        parts = ctx.partitions
        table: StructureTable = {}
        for i, a in enumerate(parts):
            for b in parts[i:]:
                prod = _basis_product(ctx, a, b)
                table[a, b] = prod
                table[b, a] = prod
        return table

    def basis_product(self, a: Partition, b: Partition) -> dict[Partition, LaurentInt]:
        return self.table[a, b]

    def product(self, x: QClass, y: QClass) -> QClass:
        table = self.table
        out: dict[Partition, LaurentInt] = {}
        for a, ca in x._coeffs.items():
            for b, cb in y._coeffs.items():
                cab = ca * cb
                for c, v in table[a, b].items():
                    w = out.get(c, ZERO) + cab * v
                    if w:
                        out[c] = w
                    else:
                        out.pop(c, None)
        return QClass._raw(self.ctx, out)

    def multiplication_matrix(self, x: QClass, q=1) -> np.ndarray:
        """Matrix of ``y -> x * y`` with ``q`` specialized; column j is the image of basis j."""
        ctx = self.ctx
        n = ctx.basis_count
        dtype = complex if isinstance(q, complex) else object
        m = np.zeros((n, n), dtype=dtype)
        for j, b in enumerate(ctx.partitions):
            col = self.product(x, QClass._raw(ctx, {b: ONE}))
            for c, v in col._coeffs.items():
                m[ctx.index[c], j] = v.evaluate(q)
        return m


_RINGS: dict[BoxContext, QuantumRing] = {}
_RINGS_LOCK = threading.Lock()


def ring(ctx: BoxContext) -> QuantumRing:
    """Shared :class:`QuantumRing` for ``ctx``."""
    with _RINGS_LOCK:
        rg = _RINGS.get(ctx)
        if rg is None:
            rg = _RINGS[ctx] = QuantumRing(ctx)
    return rg


def install_table(ctx: BoxContext, table: StructureTable) -> QuantumRing:
    """Register a precomputed (e.g. cached) structure table for ``ctx``."""
    with _RINGS_LOCK:
        rg = _RINGS.get(ctx)
        if rg is None or not rg.built:
            rg = _RINGS[ctx] = QuantumRing(ctx, table)
    return rg


def structure_table(ctx: BoxContext) -> StructureTable:
    """``{(a, b): {c: c(a, b -> c)}}`` for every ordered pair of basis labels."""
    return ring(ctx).table


def quantum_product(x: QClass, y: QClass) -> QClass:
    x._check(y)
    return ring(x.ctx).product(x, y)


def counit(x: QClass) -> LaurentInt:
    """Coefficient of the point class ``sigma_{s^r}``."""
    return x[x.ctx.point]


def poincare_pair(x: QClass, y: QClass) -> LaurentInt:
    return counit(quantum_product(x, y))


def sigma(ctx: BoxContext, a, coeff: LaurentInt | int = 1) -> QClass:
    """Shorthand for the basis class ``coeff * sigma_a``."""
    return QClass.basis(ctx, a, coeff)


def product_all(ctx: BoxContext, classes: Iterable[QClass]) -> QClass:
    result = QClass.unit(ctx)
    for x in classes:
        result = quantum_product(result, x)
    return result
