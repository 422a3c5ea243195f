"""Sparse Laurent polynomials in one symbol over exact rationals.

These are the coefficient ring used when a power series in one variable
carries exact powers of a second bookkeeping symbol (here: powers of
s = 1/(2d) attached to each power of the walk weight).  Only the ring
operations needed by the series engine are provided; inversion exists
for monomials alone, which is all a unit-normalised reversion requires.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into an exact rational")


class LaurentPoly:
    """Immutable map {integer power -> nonzero Fraction}."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for p, v in dict(coeffs).items():
                v = _as_fraction(v)
                if v != 0:
                    c[int(p)] = v
        self._c = c

    @classmethod
    def term(cls, power: int, coeff) -> "LaurentPoly":
        return cls({power: coeff})

    @classmethod
    def const(cls, coeff) -> "LaurentPoly":
        return cls({0: coeff})

    def items(self):
        return sorted(self._c.items())

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, power: int) -> Fraction:
        return self._c.get(power, Fraction(0))

    def min_power(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no minimal power")
        return min(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                return not self._c
            return self._c == {0: other}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for p, v in other._c.items():
            w = c.get(p, 0) + v
            if w:
                c[p] = w
            else:
                c.pop(p, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {p: -v for p, v in self._c.items()}
        return out

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else LaurentPoly.const(-_as_fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                return LaurentPoly()
            out = LaurentPoly.__new__(LaurentPoly)
            out._c = {p: v * other for p, v in self._c.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = {}
        for p1, v1 in self._c.items():
            for p2, v2 in other._c.items():
                p = p1 + p2
                w = c.get(p, 0) + v1 * v2
                if w:
                    c[p] = w
                else:
                    c.pop(p, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        return NotImplemented

    def inverse(self) -> "LaurentPoly":
        """Multiplicative inverse; defined only for monomials c*s^k."""
        if len(self._c) != 1:
            raise ValueError("only monomial Laurent polynomials are invertible")
        (p, v), = self._c.items()
        return LaurentPoly({-p: Fraction(1) / v})

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for p, v in self.items():
            if p == 0:
                parts.append(f"{v}")
            else:
                parts.append(f"{v}*s^{p}")
        return " + ".join(parts)
