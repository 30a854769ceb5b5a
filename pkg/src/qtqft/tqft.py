"""Weighted TQFT built on QH*(Gr(r, r+s)).

Every map ``F(g|d)_m^n`` reduces to one master integral::

    integrate(g, d, A) = counit(sigma_{A_1} * ... * sigma_{A_N} * h^g * D(d))

where ``h`` is the handle element and ``D(d)`` the weight-``d`` cylinder.
The coefficient of ``q^e`` is the intersection number on the degree ``-e``
Quot scheme, so everything stays exact and q-graded.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .fusion import QClass, counit, ring
from .laurent import ZERO, LaurentInt
from .partitions import BoxContext, Partition, complement

log = logging.getLogger(__name__)

MAX_ENTRIES = 10**6


class IntegrityError(RuntimeError):
    """An exact extraction violated a structural guarantee (e.g. not a q-monomial)."""


class ResourceCapExceeded(ValueError):
    pass


class ArityMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSignature:
    g: int
    d: int
    m: int
    n: int

    def __post_init__(self):
        if self.g < 0 or self.m < 0 or self.n < 0:
            raise ValueError(f"genus and arities must be nonnegative: {self}")


Key = tuple[tuple[Partition, ...], tuple[Partition, ...]]


@dataclass(frozen=True)
class TqftTensor:
    """Sparse coefficients of ``F(g|d)_m^n`` in the Schubert basis.

    ``entries[(a_1..a_m), (c_1..c_n)]`` is the coefficient of
    ``sigma_{c_1} (x) ... (x) sigma_{c_n}`` in the image of
    ``sigma_{a_1} (x) ... (x) sigma_{a_m}``; zeros are not stored.
    """

    ctx: BoxContext
    sig: SurfaceSignature
    entries: Mapping[Key, LaurentInt] = field(default_factory=dict)

    def __getitem__(self, key: Key) -> LaurentInt:
        ins, outs = key
        return self.entries.get((tuple(ins), tuple(outs)), ZERO)

    def __eq__(self, other):
        if not isinstance(other, TqftTensor):
            return NotImplemented
        return self.ctx == other.ctx and self.sig == other.sig and dict(self.entries) == dict(other.entries)

    def same_entries(self, other: TqftTensor) -> bool:
        """Equality of coefficient arrays, ignoring the signature."""
        return self.ctx == other.ctx and dict(self.entries) == dict(other.entries)

    def at_one(self) -> dict[Key, int]:
        out = {k: v.at_one() for k, v in self.entries.items()}
        return {k: v for k, v in out.items() if v}

    def sorted_items(self):
        index = self.ctx.index

        def order(kv):
            (ins, outs), _ = kv
            return [index[a] for a in ins], [index[c] for c in outs]

        return sorted(self.entries.items(), key=order)

    def to_json(self) -> dict:
        sig = self.sig
        return {
            "signature": {"g": sig.g, "d": sig.d, "m": sig.m, "n": sig.n},
            "entries": [
                {"in": [list(a) for a in ins], "out": [list(c) for c in outs], "laurent": v.to_json()}
                for (ins, outs), v in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, ctx: BoxContext, data: Mapping) -> TqftTensor:
        sig = SurfaceSignature(**data["signature"])
        entries = {}
        for rec in data["entries"]:
            ins = tuple(ctx.partition(a) for a in rec["in"])
            outs = tuple(ctx.partition(c) for c in rec["out"])
            entries[ins, outs] = LaurentInt.from_json(rec["laurent"])
        return cls(ctx, sig, entries)


# -- distinguished elements -----------------------------------------------


@lru_cache(maxsize=None)
def handle_element(ctx: BoxContext) -> QClass:
    """``sum_a sigma_a * sigma_{a^c}``; multiplication by it adds a handle."""
    rg = ring(ctx)
    total = QClass.zero(ctx)
    for a in ctx.partitions:
        total = total + rg.product(QClass.basis(ctx, a), QClass.basis(ctx, complement(ctx, a)))
    return total


@lru_cache(maxsize=None)
def degree_element(ctx: BoxContext, d: int) -> QClass:
    """Weight-``d`` cylinder: ``sigma_{1^r}^(-d)`` for ``d <= 0``, ``(sigma_s / q)^d`` otherwise."""
    if d <= 0:
        return QClass.basis(ctx, ctx.column) ** (-d)
    return (QClass.basis(ctx, ctx.row(ctx.s)) ** d).shift(-d)


@lru_cache(maxsize=None)
def _kernel(ctx: BoxContext, g: int, d: int) -> QClass:
    if g == 0:
        return degree_element(ctx, d)
    return ring(ctx).product(_kernel(ctx, g - 1, d), handle_element(ctx))


@lru_cache(maxsize=65536)
def _integrate(ctx: BoxContext, g: int, d: int, insertions: tuple[Partition, ...]) -> LaurentInt:
    if not insertions:
        return counit(_kernel(ctx, g, d))
    rg = ring(ctx)
    x = rg.product(QClass.basis(ctx, insertions[-1]), _kernel(ctx, g, d))
    for a in insertions[-2::-1]:
        x = rg.product(QClass.basis(ctx, a), x)
        if not x:
            break
    return counit(x)


def integrate(ctx: BoxContext, g: int, d: int, insertions: Iterable = ()) -> LaurentInt:
    """Sum over e of ``q^e`` times the Schubert intersection number on ``Q_{e,V}``.

    ``V`` is a general bundle of degree ``d`` on a genus ``g`` curve.  The
    ``q^e`` term can be nonzero only when the insertion sizes add up to the
    expected dimension ``r d + (r+s) e - r s (g-1)``.
    """
    if g < 0:
        raise ValueError("genus must be nonnegative")
    parts = sorted((ctx.partition(a) for a in insertions), key=ctx.index.__getitem__)
    return _integrate(ctx, g, d, tuple(parts))


def expected_exponent(ctx: BoxContext, g: int, d: int, total_size: int = 0) -> int | None:
    """The unique ``e`` with ``total_size = r d + (r+s) e - r s (g-1)``, or None."""
    num = total_size - ctx.r * d + ctx.dim * (g - 1)
    if num % ctx.n:
        return None
    return num // ctx.n


# -- tensors --------------------------------------------------------------


def _check_cap(ctx: BoxContext, arity: int, max_entries: int):
    count = ctx.basis_count**arity
    if count > max_entries:
        raise ResourceCapExceeded(
            f"tensor with {arity} slots has {count} entries, above the cap of {max_entries}")


def weighted_map(ctx: BoxContext, g: int, d: int, m: int, n: int,
                 max_entries: int = MAX_ENTRIES) -> TqftTensor:
    """``F(g|d)_m^n`` with output slots keyed after complementation."""
    sig = SurfaceSignature(g, d, m, n)
    _check_cap(ctx, m + n, max_entries)
    parts = ctx.partitions
    entries = {}
    for ins in product(parts, repeat=m):
        for outs in product(parts, repeat=n):
            v = integrate(ctx, g, d, ins + tuple(complement(ctx, c) for c in outs))
            if v:
                entries[ins, outs] = v
    return TqftTensor(ctx, sig, entries)


def compose(t2: TqftTensor, t1: TqftTensor) -> TqftTensor:
    """``t2 o t1``: glue every output circle of ``t1`` to an input circle of ``t2``."""
    if t1.ctx != t2.ctx:
        raise ArityMismatch("tensors live over different boxes")
    if t1.sig.n != t2.sig.m:
        raise ArityMismatch(f"cannot compose: t1 has {t1.sig.n} outputs, t2 has {t2.sig.m} inputs")
    by_input: dict[tuple, list] = {}
    for (mid, outs), v in t2.entries.items():
        by_input.setdefault(mid, []).append((outs, v))
    entries: dict[Key, LaurentInt] = {}
    for (ins, mid), v1 in t1.entries.items():
        for outs, v2 in by_input.get(mid, ()):
            key = (ins, outs)
            w = entries.get(key, ZERO) + v1 * v2
            if w:
                entries[key] = w
            else:
                entries.pop(key, None)
    # gluing m circles adds (m - 1) to the genus when m >= 1
    glue = max(t1.sig.n - 1, 0)
    sig = SurfaceSignature(t1.sig.g + t2.sig.g + glue, t1.sig.d + t2.sig.d, t1.sig.m, t2.sig.n)
    return TqftTensor(t1.ctx, sig, entries)


def witten_map(ctx: BoxContext, g: int, m: int, n: int, max_entries: int = MAX_ENTRIES) -> TqftTensor:
    """Witten's ``F(g)_m^n``, the weight ``s(g-1+n)`` slice."""
    return weighted_map(ctx, g, ctx.s * (g - 1 + n), m, n, max_entries)


def eta_class(ctx: BoxContext, g: int, d: int, N: int, max_entries: int = MAX_ENTRIES) -> TqftTensor:
    """Pushforward of the compiled Quot scheme to ``G^N``, as a tensor with no inputs.

    Homogeneous: a ``q^e`` term on ``sigma_{c_1} (x) ... (x) sigma_{c_N}`` has
    ``sum |c_j| + e (r+s) = (N+g-1) r s - r d``.
    """
    return weighted_map(ctx, g, d, 0, N, max_entries)


def _check_slot(t: TqftTensor, k: int):
    if t.sig.m != 0:
        raise ArityMismatch("slot operations act on tensors without inputs")
    if not 1 <= k <= t.sig.n:
        raise IndexError(f"slot {k} outside 1..{t.sig.n}")


def slot_multiply(t: TqftTensor, k: int, z: QClass) -> TqftTensor:
    """Quantum-multiply the ``k``-th tensor factor (1-based) by ``z``."""
    _check_slot(t, k)
    if z.ctx != t.ctx:
        raise ArityMismatch("class and tensor live over different boxes")
    rg = ring(t.ctx)
    images: dict[Partition, QClass] = {}
    entries: dict[Key, LaurentInt] = {}
    for ((), outs), v in t.entries.items():
        c = outs[k - 1]
        img = images.get(c)
        if img is None:
            img = images[c] = rg.product(QClass.basis(t.ctx, c), z)
        for c2, w in img.items():
            key = ((), outs[: k - 1] + (c2,) + outs[k:])
            total = entries.get(key, ZERO) + v * w
            if total:
                entries[key] = total
            else:
                entries.pop(key, None)
    return TqftTensor(t.ctx, t.sig, entries)


def slot_pushforward(t: TqftTensor, k: int) -> TqftTensor:
    """Integrate out the ``k``-th Grassmannian factor (1-based)."""
    _check_slot(t, k)
    point = t.ctx.point
    entries = {((), outs[: k - 1] + outs[k:]): v
               for ((), outs), v in t.entries.items() if outs[k - 1] == point}
    sig = SurfaceSignature(t.sig.g, t.sig.d, 0, t.sig.n - 1)
    return TqftTensor(t.ctx, sig, entries)


def top_contraction(t: TqftTensor) -> LaurentInt:
    """Coefficient of ``sigma_{s^r} (x) ... (x) sigma_{s^r}``, i.e. the integral over ``G^N``."""
    return t[(), (t.ctx.point,) * t.sig.n]


# -- closed counts --------------------------------------------------------


def extract_count(ctx: BoxContext, g: int, d: int) -> tuple[int | None, int]:
    """``(e, #Q_{e,V})`` from the closed invariant of weight ``d``.

    Returns ``(None, 0)`` when no ``e`` makes the Quot scheme finite.
    Raises :class:`IntegrityError` unless the invariant is a single
    nonnegative monomial at the expected power of ``q``.
    """
    value = integrate(ctx, g, d)
    e0 = expected_exponent(ctx, g, d)
    if e0 is None:
        if value:
            raise IntegrityError(f"g={g}, d={d}: no finite Quot scheme, yet invariant is {value}")
        log.info("g=%d, d=%d: r d + (r+s) e = r s (g-1) has no integer solution", g, d)
        return None, 0
    if value and (not value.is_monomial() or value.exponents() != [e0]):
        raise IntegrityError(f"g={g}, d={d}: expected a multiple of q^{e0}, got {value}")
    count = value.coeff(e0)
    if count < 0:
        raise IntegrityError(f"g={g}, d={d}: negative point count {count}")
    return e0, count


def verlinde_exact(ctx: BoxContext, g: int) -> int:
    """Points of ``Q_{0,V}`` for general ``V`` of degree ``s(g-1)``."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    return extract_count(ctx, g, ctx.s * (g - 1))[1]


def holla_parameters(ctx: BoxContext, g: int, gamma: int) -> tuple[int, int]:
    """``(e, d)`` of the finite Quot scheme indexed by ``gamma``."""
    a = math.gcd(ctx.r, ctx.s)
    if not (isinstance(gamma, int) and 0 <= gamma < a):
        raise ValueError(f"gamma={gamma} outside [0, gcd(r, s)={a})")
    r1, s1 = ctx.r // a, ctx.s // a
    return r1 * gamma, -(r1 + s1) * gamma + ctx.s * (g - 1)


def holla_exact(ctx: BoxContext, g: int, gamma: int) -> int:
    if g < 1:
        raise ValueError("genus must be at least 1")
    e, d = holla_parameters(ctx, g, gamma)
    e0, count = extract_count(ctx, g, d)
    if count and e0 != e:
        raise IntegrityError(f"gamma={gamma}: count sits at q^{e0}, expected q^{e}")
    return count

