"""Partitions in the r x s box.

A partition is stored as a plain tuple of exactly ``r`` integers,
``s >= a_1 >= ... >= a_r >= 0``.  Shorter input is accepted by
:meth:`BoxContext.partition` and zero-padded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

Partition = tuple[int, ...]


class InvalidPartition(ValueError):
    pass


@dataclass(frozen=True)
class BoxContext:
    """Rank ``r`` subbundles of a rank ``r + s`` bundle; indexes Gr(r, r+s)."""

    r: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.s, int)):
            raise TypeError("r and s must be integers")
        if self.r < 1 or self.s < 1:
            raise ValueError(f"r and s must be positive, got r={self.r}, s={self.s}")

    @property
    def n(self) -> int:
        return self.r + self.s

    @property
    def basis_count(self) -> int:
        return comb(self.r + self.s, self.r)

    @property
    def dim(self) -> int:
        return self.r * self.s

    @cached_property
    def partitions(self) -> tuple[Partition, ...]:
        return tuple(_enumerate(self.r, self.s))

    @cached_property
    def index(self) -> dict[Partition, int]:
        return {a: i for i, a in enumerate(self.partitions)}

    @property
    def empty(self) -> Partition:
        return (0,) * self.r

    @property
    def point(self) -> Partition:
        """The full box ``(s, ..., s)``, label of the point class."""
        return (self.s,) * self.r

    @property
    def column(self) -> Partition:
        """``(1, ..., 1)``, the class sigma_{1^r}."""
        return (1,) * self.r

    def row(self, k: int) -> Partition:
        """The special partition ``(k, 0, ..., 0)``."""
        return self.partition((k,))

    def partition(self, parts) -> Partition:
        """Validate ``parts`` and zero-pad it to length ``r``."""
        parts = tuple(int(p) for p in parts)
        if len(parts) > self.r:
            if any(parts[self.r:]):
                raise InvalidPartition(f"{parts} has more than r={self.r} nonzero parts")
            parts = parts[: self.r]
        parts = parts + (0,) * (self.r - len(parts))
        self.validate(parts)
        return parts

    def validate(self, a) -> None:
        if not isinstance(a, tuple) or len(a) != self.r:
            raise InvalidPartition(f"{a!r} is not a length-{self.r} tuple")
        if a and (a[0] > self.s or a[-1] < 0):
            raise InvalidPartition(f"{a} does not fit in the {self.r}x{self.s} box")
        if any(x < y for x, y in zip(a, a[1:])):
            raise InvalidPartition(f"{a} is not weakly decreasing")

    def contains(self, a) -> bool:
        try:
            self.validate(a)
        except InvalidPartition:
            return False
        return True


def _enumerate(r: int, s: int):
    by_size: dict[int, list[Partition]] = {}

    def rec(prefix: tuple[int, ...], bound: int):
        if len(prefix) == r:
            by_size.setdefault(sum(prefix), []).append(prefix)
            return
        for x in range(bound + 1):
            rec(prefix + (x,), x)

    rec((), s)
    for size in sorted(by_size):
        yield from sorted(by_size[size])


def enumerate_partitions(ctx: BoxContext) -> tuple[Partition, ...]:
    """All partitions in the box, ordered by size, then lexicographically."""
    return ctx.partitions


def complement(ctx: BoxContext, a: Partition) -> Partition:
    ctx.validate(a)
    return tuple(ctx.s - x for x in reversed(a))


def size(a: Partition) -> int:
    return sum(a)


def parse_partition(ctx: BoxContext, text: str) -> Partition:
    """Parse comma-separated parts such as ``"2,1"``; ``""`` or ``"0"`` is empty."""
    text = text.strip().strip("()[]")
    if not text:
        return ctx.empty
    try:
        parts = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidPartition(f"cannot parse partition {text!r}") from exc
    return ctx.partition(parts)
