"""Sparse Laurent polynomials in ``q`` with exact integer coefficients."""

from __future__ import annotations

from collections.abc import Mapping


class LaurentInt:
    """An element of Z[q, q^-1], stored as ``{exponent: coefficient}``.

    Instances are treated as immutable.  Zero coefficients are never stored.
    Plain ``int`` operands are promoted to constants.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | int | None = None):
        if terms is None:
            self._terms = {}
        elif isinstance(terms, int):
            self._terms = {0: terms} if terms else {}
        else:
            self._terms = {int(e): int(c) for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LaurentInt:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int, exponent: int = 0) -> LaurentInt:
        return cls._raw({exponent: coeff} if coeff else {})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def at_one(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, q):
        return sum(c * q**e for e, c in self._terms.items())

    def shift(self, k: int) -> LaurentInt:
        """Multiply by ``q**k``."""
        return LaurentInt._raw({e + k: c for e, c in self._terms.items()})

    def scale(self, k: int) -> LaurentInt:
        if not k:
            return ZERO
        return LaurentInt._raw({e: c * k for e, c in self._terms.items()})

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentInt._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentInt._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.is_monomial():
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentInt._raw({e * k: c ** (-k)})
            raise ValueError("only unit monomials can be inverted")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentInt(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentInt({dict(self.items())})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.items():
            if e == 0:
                mono = str(abs(c))
            else:
                q = "q" if e == 1 else f"q^{e}"
                mono = q if abs(c) == 1 else f"{abs(c)}*{q}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, mono))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in pieces[1:]:
            text += f" {sign} {mono}"
        return text

    def to_json(self) -> dict[str, str]:
        """Exponent strings mapped to decimal-string coefficients."""
        return {str(e): str(c) for e, c in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> LaurentInt:
        return cls({int(e): int(c) for e, c in data.items()})


def _coerce(x):
    if isinstance(x, LaurentInt):
        return x
    if isinstance(x, int):
        return LaurentInt(x)
    return NotImplemented


ZERO = LaurentInt()
ONE = LaurentInt(1)
Q = LaurentInt.monomial(1, 1)
