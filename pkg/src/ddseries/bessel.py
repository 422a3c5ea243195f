"""Float evaluation of I0, I1 and of g(x) = x - log I0(x).

Power series below the crossover, scaled asymptotic series above it.  The
asymptotic branch never forms e^x, so g and g' stay accurate for
arbitrarily large arguments: g(x) -> (1/2) log(2 pi x) and
g'(x) -> 1/(2x), both computed without cancellation.  The crossover sits
where the truncated asymptotic tail is far below the overlap-validation
target of 1e-12.
"""

from __future__ import annotations

import math

CROSSOVER = 30.0
_KMAX = 22


def _asym_coeffs(nu: int, kmax: int) -> list:
    # a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k), with the
    # alternating sign folded in so the series is sum_k c_k / x^k
    out = [1.0]
    num = 1.0
    for k in range(1, kmax + 1):
        num *= 4 * nu * nu - (2 * k - 1) ** 2
        out.append((-1) ** k * num / (math.factorial(k) * 8.0**k))
    return out


_A0 = _asym_coeffs(0, _KMAX)  # I0 correction: sum c_k x^-k
_A1 = _asym_coeffs(1, _KMAX)  # I1 correction
_DIFF = [a - b for a, b in zip(_A0, _A1)]  # cancellation-free A - B


def _poly_inv_x(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc / x + c
    return acc


def i0f(x: float) -> float:
    """I0 by power series; intended for |x| <= CROSSOVER."""
    term = 1.0
    acc = 1.0
    k = 0
    q = x * x / 4.0
    while True:
        k += 1
        term *= q / (k * k)
        acc += term
        if term < 1e-18 * acc:
            return acc


def i1f(x: float) -> float:
    """I1 by power series; intended for |x| <= CROSSOVER."""
    if x == 0.0:
        return 0.0
    term = x / 2.0
    acc = term
    k = 0
    q = x * x / 4.0
    while True:
        k += 1
        term *= q / (k * (k + 1))
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            return acc


def log_i0(x: float) -> float:
    if x <= CROSSOVER:
        return math.log(i0f(x))
    return x - 0.5 * math.log(2 * math.pi * x) + math.log(_poly_inv_x(_A0, x))


def g(x: float) -> float:
    """x - log I0(x); monotone increasing from g(0)=0, ~ (1/2) log(2 pi x)."""
    if x == 0.0:
        return 0.0
    if x <= CROSSOVER:
        return x - math.log(i0f(x))
    return 0.5 * math.log(2 * math.pi * x) - math.log(_poly_inv_x(_A0, x))


def g_prime(x: float) -> float:
    """1 - I1(x)/I0(x), computed without cancellation for large x."""
    if x <= CROSSOVER:
        return 1.0 - i1f(x) / i0f(x)
    return _poly_inv_x(_DIFF, x) / _poly_inv_x(_A0, x)


def g_inverse(t: float, rel_tol: float = 1e-13) -> float:
    """Invert the monotone g by bracketed bisection plus a Newton polish.

    g(x) <= x gives the lower bracket x = t; the initial upper bracket
    t + 2 + 4t is widened geometrically because the inverse grows like
    e^(2t)/(2 pi) once the logarithmic regime takes over.
    """
    if t < 0:
        raise ValueError("g inverse is defined for t >= 0")
    if t == 0.0:
        return 0.0
    lo, hi = t, 5.0 * t + 2.0
    while g(hi) < t:
        lo = hi
        hi *= 4.0
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if g(mid) < t:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    gp = g_prime(x)
    if gp > 0:
        x -= (g(x) - t) / gp
    return x
