"""Rational approximants from exact series coefficients.

The denominator is solved by exact Gaussian elimination over rationals,
so a reported approximant reproduces the series coefficients identically
through order m+n.  Singular systems fall back to a smaller denominator
degree and the reduction is recorded on the result.  Before a rational
continuation is trusted on the positive axis it is scanned for real
poles: denominator sign changes on a geometric grid, refined by
bisection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class PoleOnContourError(RuntimeError):
    def __init__(self, location: float):
        super().__init__(f"rational continuation has a pole near t = {location:.6g}")
        self.location = location


@dataclass(frozen=True)
class PadeApproximant:
    numerator: tuple  # Fractions, ascending powers
    denominator: tuple  # Fractions, ascending powers, constant term 1
    requested: tuple  # (m, n)
    achieved: tuple  # (m, n') after any degeneracy reduction

    @property
    def reduced(self) -> bool:
        return self.achieved != self.requested

    def _num_f(self):
        return [float(c) for c in self.numerator]

    def _den_f(self):
        return [float(c) for c in self.denominator]

    def __call__(self, t: float) -> float:
        num = 0.0
        for c in reversed(self._num_f()):
            num = num * t + c
        den = 0.0
        for c in reversed(self._den_f()):
            den = den * t + c
        return num / den

    def denominator_at(self, t: float) -> float:
        den = 0.0
        for c in reversed(self._den_f()):
            den = den * t + c
        return den


def _solve(matrix, rhs):
    """Exact linear solve; returns None when the system is singular."""
    k = len(rhs)
    m = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(k):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][k] for r in range(k)]


def pade_from_series(coeffs, m: int, n: int) -> PadeApproximant:
    """[m/n] approximant matching the series through order m+n.

    ``coeffs`` are exact rationals c_0..c_{m+n} (longer is fine).  If the
    denominator system is singular, n is reduced until it solves; n = 0
    degenerates to the Taylor polynomial.
    """
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) < m + n + 1:
        raise ValueError(f"[{m}/{n}] needs {m + n + 1} coefficients, got {len(coeffs)}")

    def c(i):
        return coeffs[i] if 0 <= i < len(coeffs) else Fraction(0)

    n_try = n
    while n_try >= 0:
        if n_try == 0:
            q = []
            break
        matrix = [[c(m + k - j) for j in range(1, n_try + 1)] for k in range(1, n_try + 1)]
        rhs = [-c(m + k) for k in range(1, n_try + 1)]
        q = _solve(matrix, rhs)
        if q is not None:
            break
        n_try -= 1
    den = [Fraction(1)] + list(q)
    num = []
    for i in range(m + 1):
        acc = Fraction(0)
        for j in range(min(i, n_try) + 1):
            acc += den[j] * c(i - j)
        num.append(acc)
    return PadeApproximant(tuple(num), tuple(den), (m, n), (m, n_try))


def scan_poles(approx: PadeApproximant, t_max: float, samples: int = 512) -> float | None:
    """First real pole location in (0, t_max], or None.

    Samples the denominator on a geometric grid refined near zero plus a
    uniform grid, looks for sign changes, and bisects each to 1e-12
    relative.
    """
    if len(approx.denominator) == 1:
        return None
    grid = [0.0]
    t = t_max
    geo = []
    while t > 1e-9 * t_max:
        geo.append(t)
        t /= 1.35
    grid += sorted(geo)
    grid += [t_max * (i + 1) / samples for i in range(samples)]
    grid = sorted(set(grid))
    prev_t, prev_v = grid[0], approx.denominator_at(grid[0])
    for tt in grid[1:]:
        v = approx.denominator_at(tt)
        if prev_v == 0.0:
            return prev_t
        if v == 0.0 or (v < 0) != (prev_v < 0):
            lo, hi = prev_t, tt
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                vm = approx.denominator_at(mid)
                if vm == 0.0:
                    return mid
                if (vm < 0) != (prev_v < 0):
                    hi = mid
                else:
                    lo = mid
                if hi - lo <= 1e-12 * max(hi, 1.0):
                    break
            return 0.5 * (lo + hi)
        prev_t, prev_v = tt, v
    return None


def require_pole_free(approx: PadeApproximant, t_max: float) -> None:
    loc = scan_poles(approx, t_max)
    if loc is not None:
        raise PoleOnContourError(loc)
