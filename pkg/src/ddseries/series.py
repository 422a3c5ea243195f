"""Truncated formal power series with exact coefficients.

A series carries its truncation order explicitly: ``order = N`` means the
coefficients of powers 0..N are exact and nothing is known beyond.  Binary
operations truncate to the minimum of the operand orders, so precision is
never silently invented.  Coefficients are normally ``fractions.Fraction``;
any commutative-ring element supporting ``+ - *``, division by ``int``,
comparison with 0/1 and (where an operation needs it) an ``inverse()``
method works too — the Lagrange reversion over Laurent-polynomial
coefficients relies on this.

No floating point enters this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable


class NonInvertibleSeriesError(ValueError):
    """Reciprocal/reversion requested for a series that has none."""


def _inv_coeff(c):
    """Multiplicative inverse of a coefficient ring element."""
    if isinstance(c, (int, Fraction)):
        if c == 0:
            raise NonInvertibleSeriesError("zero coefficient is not invertible")
        return Fraction(1) / Fraction(c)
    try:
        return c.inverse()
    except (AttributeError, ValueError) as exc:
        raise NonInvertibleSeriesError(f"coefficient {c!r} is not invertible") from exc


def _coerce(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class PowerSeries:
    """Immutable truncated power series."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = tuple(_coerce(c) for c in coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(cs) < order + 1:
            cs = cs + (Fraction(0),) * (order + 1 - len(cs))
        elif len(cs) > order + 1:
            cs = cs[: order + 1]
        self.coeffs = cs
        self.order = order

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        return cls((value,), order)

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls.constant(0, order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls.constant(1, order)

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        """The series x (requires order >= 1)."""
        if order < 1:
            raise ValueError("identity needs order >= 1")
        return cls((0, 1), order)

    # -- basics ---------------------------------------------------------

    def __getitem__(self, n: int):
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside known order {self.order}")
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def agrees_with(self, other: "PowerSeries", through: int | None = None) -> bool:
        """Coefficient equality through ``through`` (default: shared order)."""
        k = min(self.order, other.order) if through is None else through
        if k > min(self.order, other.order):
            raise ValueError("comparison order exceeds known coefficients")
        return all(self.coeffs[i] == other.coeffs[i] for i in range(k + 1))

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a series by truncation")
        return PowerSeries(self.coeffs[: order + 1], order)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not (c == 0):
                return i
        return None

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerSeries.constant(other, self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), n
        )

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerSeries.constant(other, self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            # scalar: int, Fraction, or any coefficient-ring element
            return PowerSeries(tuple(c * other for c in self.coeffs), self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = a[0] * b[k]
            for i in range(1, k + 1):
                acc = acc + a[i] * b[k - i]
            out.append(acc)
        return PowerSeries(tuple(out), n)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = PowerSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- inverse, composition, transcendental ---------------------------

    def recip(self) -> "PowerSeries":
        """Multiplicative inverse: self * recip(self) == 1 through order."""
        a = self.coeffs
        if a[0] == 0:
            raise NonInvertibleSeriesError(
                "non-invertible series: constant term is zero"
            )
        inv0 = _inv_coeff(a[0])
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = a[1] * out[n - 1]
            for k in range(2, n + 1):
                acc = acc + a[k] * out[n - k]
            out.append(-(inv0 * acc))
        return PowerSeries(tuple(out), self.order)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(x)); inner must have zero constant term."""
        if not (inner.coeffs[0] == 0):
            raise NonInvertibleSeriesError(
                "composition requires inner series with zero constant term"
            )
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = PowerSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * inner + self.coeffs[k]
        return result

    def shift_up(self, k: int = 1) -> "PowerSeries":
        """Multiply by x^k.  Order grows by k (the new high coefficients are exact)."""
        return PowerSeries((Fraction(0),) * k + self.coeffs, self.order + k)

    def shift_down(self, k: int = 1) -> "PowerSeries":
        """Divide by x^k; the dropped low coefficients must be zero."""
        for i in range(k):
            if not (self.coeffs[i] == 0):
                raise ValueError(f"cannot divide by x^{k}: coefficient {i} is nonzero")
        if self.order < k:
            raise ValueError("series too short to shift down")
        return PowerSeries(self.coeffs[k:], self.order - k)

    def log(self) -> "PowerSeries":
        """Logarithm; requires constant term 1."""
        a = self.coeffs
        if not (a[0] == 1):
            raise NonInvertibleSeriesError("log requires constant term 1")
        out = [Fraction(0)]
        for n in range(1, self.order + 1):
            acc = a[n] * n
            for k in range(1, n):
                acc = acc - out[k] * k * a[n - k]
            out.append(acc / n)
        return PowerSeries(tuple(out), self.order)

    def exp(self) -> "PowerSeries":
        """Exponential; requires constant term 0."""
        a = self.coeffs
        if not (a[0] == 0):
            raise NonInvertibleSeriesError("exp requires constant term 0")
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            acc = a[1] * 1 * out[n - 1]
            for k in range(2, n + 1):
                acc = acc + a[k] * k * out[n - k]
            out.append(acc / n)
        return PowerSeries(tuple(out), self.order)

    def revert(self) -> "PowerSeries":
        """Compositional inverse via the Lagrange–Bürmann coefficient formula.

        For f with f(0) = 0 and invertible linear coefficient, returns g with
        f(g(x)) = x and g(f(x)) = x through the order.  Coefficient k of g is
        (1/k) [x^(k-1)] (x / f(x))^k.
        """
        if not (self.coeffs[0] == 0):
            raise NonInvertibleSeriesError("reversion requires zero constant term")
        if self.order < 1 or self.coeffs[1] == 0:
            raise NonInvertibleSeriesError("reversion requires nonzero linear term")
        n = self.order
        w = self.shift_down(1).recip()  # x / f(x), order n-1
        out = [Fraction(0)]
        power = PowerSeries.one(w.order)
        for k in range(1, n + 1):
            power = power * w
            out.append(power.coeffs[k - 1] / k)
        return PowerSeries(tuple(out), n)

    # -- factorial rescalings -------------------------------------------

    def borel_transform(self) -> "PowerSeries":
        """Divide coefficient n by n!."""
        return PowerSeries(
            tuple(c / math.factorial(i) for i, c in enumerate(self.coeffs)),
            self.order,
        )

    def inverse_borel(self) -> "PowerSeries":
        """Multiply coefficient n by n!."""
        return PowerSeries(
            tuple(c * math.factorial(i) for i, c in enumerate(self.coeffs)),
            self.order,
        )

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        """JSON form {"order": N, "coeffs": ["num/den", ...]} (rational series only)."""
        strs = []
        for c in self.coeffs:
            if not isinstance(c, Fraction):
                raise TypeError("only rational-coefficient series serialize to JSON")
            strs.append(f"{c.numerator}/{c.denominator}")
        return {"order": self.order, "coeffs": strs}

    @classmethod
    def from_dict(cls, d: dict) -> "PowerSeries":
        order = int(d["order"])
        coeffs = [parse_rational(s) for s in d["coeffs"]]
        if len(coeffs) != order + 1:
            raise ValueError("coefficient count does not match order + 1")
        return cls(coeffs, order)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order > 7 else ""
        return f"PowerSeries([{head}{tail}], order={self.order})"


def parse_rational(s) -> Fraction:
    """Parse "num/den" or "num" decimal strings into an exact rational."""
    if isinstance(s, int):
        return Fraction(s)
    text = str(s).strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"
