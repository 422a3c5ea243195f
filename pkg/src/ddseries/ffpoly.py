"""Polynomials in the falling-factorial basis of 2d.

A count organised by dimensionality D contributes with weight
2d(2d-2)...(2d-2D+2): the number of ways to realise D ordered, signed axes
inside Z^d.  Expansion into plain powers of y = 2d is exact, and writing
y^k as s^-k (s = 1/(2d)) is the one place negative powers of s are legal.
"""

from __future__ import annotations

from fractions import Fraction

from .series import format_rational, parse_rational


class FallingFactorialPoly:
    """Sum over D of f_D * prod_{j=0}^{D-1} (2d - 2j), exact coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        self._coeffs = {
            int(d): Fraction(v) for d, v in dict(coeffs).items() if Fraction(v) != 0
        }
        if any(d < 0 for d in self._coeffs):
            raise ValueError("dimensionality index must be >= 0")

    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, FallingFactorialPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def evaluate(self, d: int) -> Fraction:
        """Exact value at integer dimension d (terms with D > d vanish)."""
        total = Fraction(0)
        for D, f in self._coeffs.items():
            w = Fraction(1)
            for j in range(D):
                w *= 2 * d - 2 * j
            total += f * w
        return total

    def monomials(self) -> dict:
        """Exact expansion into the monomial basis {y^k}, y = 2d."""
        out: dict[int, Fraction] = {}
        for D, f in self._coeffs.items():
            # prod_{j<D} (y - 2j), expanded incrementally
            poly = [Fraction(1)]
            for j in range(D):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for k, c in enumerate(poly):
                    nxt[k + 1] += c
                    nxt[k] += c * (-2 * j)
                poly = nxt
            for k, c in enumerate(poly):
                if c * f != 0:
                    out[k] = out.get(k, Fraction(0)) + c * f
        return {k: v for k, v in out.items() if v != 0}

    def expand(self) -> list[tuple[int, Fraction]]:
        """Laurent expansion in s = 1/(2d): sorted (power-of-s, coefficient) pairs."""
        return sorted((-k, v) for k, v in self.monomials().items())

    def to_dict(self) -> dict:
        return {
            "falling_factorial": {str(d): format_rational(v) for d, v in sorted(self._coeffs.items())}
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FallingFactorialPoly":
        return cls({int(d): parse_rational(v) for d, v in data["falling_factorial"].items()})

    def __repr__(self):
        terms = ", ".join(f"D={d}: {v}" for d, v in sorted(self._coeffs.items()))
        return f"FallingFactorialPoly({{{terms}}})"
