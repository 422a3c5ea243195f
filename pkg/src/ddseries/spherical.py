"""The exactly solvable spin-model critical coupling, end to end.

Exact machinery: the Bessel series I0, the monotone g = x - log I0, and
the compositional inverse of g whose coefficients a_n drive everything
else.  The critical coupling at dimension d is evaluated three ways:
direct quadrature of (1/2) integral exp(-g(x) d) dx, the same integral
after the exact change of variables t = g(x) (a Laplace transform of the
inverse-function derivative, evaluated either by root-finding or from a
rational approximant built out of the exact a_n), and truncated
asymptotic partial sums (1/2) sum a_n n!/d^n whose divergence and
optimal-truncation behaviour are part of the deliverable, not a defect.

All reversion happens in exact rationals; floats appear only at
evaluation time, so the delicate sign pattern of the a_n is never
touched by rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import bessel
from .pade import PadeApproximant, pade_from_series, require_pole_free
from .quadrature import integrate_panels
from .series import PowerSeries

# I0(x) <= ENVELOPE * e^x / sqrt(2 pi x) for all x > 0 (the scaled Bessel
# correction peaks near 1.18 around x ~ 0.8), giving the integrand bound
# exp(-g(x) d) <= ENVELOPE^d (2 pi x)^(-d/2) used for tail truncation.
_ENVELOPE = 1.25


def i0_series(order: int) -> PowerSeries:
    """Exact power series of the modified Bessel function I0."""
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(order // 2 + 1):
        coeffs[2 * k] = Fraction(1, 4**k * math.factorial(k) ** 2)
    return PowerSeries(coeffs, order)


def g_series(order: int) -> PowerSeries:
    """g = x - log I0 as an exact series; zero constant, unit linear term."""
    if order < 2:
        raise ValueError("need order >= 2 for a nontrivial g")
    return PowerSeries.identity(order) - i0_series(order).log()


_a_cache: dict = {}


def a_coefficients(order: int) -> tuple:
    """Coefficients a_1..a_order of the compositional inverse of g."""
    best = max((o for o in _a_cache if o >= order), default=None)
    if best is not None:
        return _a_cache[best][:order]
    a = g_series(order).revert().coeffs[1:]
    _a_cache[order] = a
    return a


@dataclass(frozen=True)
class SphericalSeries:
    g: PowerSeries
    g_inverse: PowerSeries
    order: int


def spherical_series(order: int, verify: bool = False) -> SphericalSeries:
    """Paired g and g-inverse; ``verify`` re-composes them to the identity."""
    gs = g_series(order)
    ginv = gs.revert()
    assert gs.coeffs[0] == 0 and gs.coeffs[1] == 1
    if order >= 3:
        assert gs.coeffs[3] == 0  # log I0 is even, so g has no cubic term
    if verify:
        ident = PowerSeries.identity(order)
        assert gs.compose(ginv) == ident
        assert ginv.compose(gs) == ident
    return SphericalSeries(gs, ginv, order)


# ------------------------------------------------------------- sign pattern


@dataclass(frozen=True)
class SignRuns:
    runs: tuple  # ((sign, length), ...) with sign in {+1, -1}

    def lengths(self) -> tuple:
        return tuple(length for _, length in self.runs)

    def complete_lengths(self) -> tuple:
        """Run lengths with the trailing (possibly unfinished) run dropped."""
        return self.lengths()[:-1]


def sign_runs(coeffs) -> SignRuns:
    """Run-length encoding of coefficient signs; zeros break run semantics."""
    runs = []
    cur_sign, cur_len = 0, 0
    for i, c in enumerate(coeffs):
        if c == 0:
            raise ValueError(f"zero coefficient at position {i + 1} breaks run semantics")
        s = 1 if c > 0 else -1
        if s == cur_sign:
            cur_len += 1
        else:
            if cur_sign:
                runs.append((cur_sign, cur_len))
            cur_sign, cur_len = s, 1
    if cur_sign:
        runs.append((cur_sign, cur_len))
    return SignRuns(tuple(runs))


# ---------------------------------------------------------- direct integral


def _tail_bound_half(d: int, x: float) -> float:
    # (1/2) integral_X^inf ENVELOPE^d (2 pi x)^(-d/2) dx, d >= 3
    p = d / 2.0 - 1.0
    return 0.5 * _ENVELOPE**d * (2 * math.pi) ** (-d / 2.0) * x**-p / p


def kc_direct(d: int, tol: float = 1e-10) -> float:
    """(1/2) integral_0^inf exp(-g(x) d) dx by adaptive panel quadrature.

    The integrand decays only like x^(-d/2), so the cutoff X comes from
    the envelope tail bound (< tol/2) and the panels are dyadic to cover
    the power-law range cheaply.  Rejected for d <= 2 where the tail is
    not integrable.
    """
    if d <= 2:
        raise ValueError("the integral diverges for d <= 2")
    x_max = 4.0
    while _tail_bound_half(d, x_max) > tol / 2.0:
        x_max *= 2.0
    points = [0.0, 0.5, 1.0]
    while points[-1] < x_max:
        points.append(min(points[-1] * 2.0, x_max))

    def f(x):
        return math.exp(-d * bessel.g(x))

    value, _err = integrate_panels(f, points, tol)
    return 0.5 * value


# ------------------------------------------------------------ Borel routes


def _laplace_cutoff(integrand, d: int, tol: float) -> float:
    # the integrand decays like e^{-(d-2)t}; extend until the analytic
    # tail estimate integrand(T)/(d-2) is far inside the tolerance
    t = max(4.0 / (d - 2), 1.0)
    while integrand(t) / (d - 2) > tol / 4.0:
        t *= 2.0
        if t > 1e4:
            raise RuntimeError("Laplace cutoff search ran away")
    return t


def kc_borel(
    d: int,
    method: str = "inverse_function",
    tol: float = 1e-10,
    pade_m: int = 6,
    pade_n: int = 6,
    order: int | None = None,
) -> float:
    """(1/2) integral_0^inf e^(-t d) (g^-1)'(t) dt.

    ``inverse_function`` evaluates the integrand exactly via root-finding
    on the monotone g and (g^-1)' = 1/g'(g^-1);  ``pade`` substitutes an
    [m/n] rational approximant of (g^-1)' built from the exact inverse
    coefficients, refusing to integrate across any real pole.
    """
    if d <= 2:
        raise ValueError("the transform diverges for d <= 2")
    if method == "inverse_function":
        def integrand(t):
            return math.exp(-d * t) / bessel.g_prime(bessel.g_inverse(t))
    elif method == "pade":
        need = pade_m + pade_n + 1
        a = a_coefficients(order or max(need, 16))
        if len(a) < need:
            raise ValueError("not enough inverse coefficients for the requested orders")
        deriv = [Fraction(k + 1) * a[k] for k in range(len(a))]
        approx = pade_from_series(deriv, pade_m, pade_n)

        def integrand(t):
            return math.exp(-d * t) * approx(t)
    else:
        raise ValueError(f"unknown method {method!r}")

    t_max = _laplace_cutoff(integrand, d, tol)
    if method == "pade":
        require_pole_free(approx, t_max)
    points = [0.0]
    step = min(0.5, t_max / 4.0)
    while points[-1] < t_max:
        points.append(min(points[-1] + step if points[-1] < 1.0 else points[-1] * 2.0, t_max))
    value, _err = integrate_panels(integrand, points, tol)
    return 0.5 * value


def borel_pade_approximant(pade_m: int, pade_n: int, order: int | None = None) -> PadeApproximant:
    """The [m/n] approximant of (g^-1)' used by the pade route."""
    need = pade_m + pade_n + 1
    a = a_coefficients(order or max(need, 16))
    deriv = [Fraction(k + 1) * a[k] for k in range(len(a))]
    return pade_from_series(deriv, pade_m, pade_n)


# ------------------------------------------------------------- partial sums


def kc_asymptotic(d: int, n_terms: int) -> list:
    """Partial sums (1/2) sum_{n<=N} a_n n!/d^n for N = 1..n_terms, as floats.

    Exact rational accumulation, converted last: the list is the raw
    material for divergence and optimal-truncation studies.
    """
    a = a_coefficients(n_terms)
    partials = []
    acc = Fraction(0)
    for n in range(1, n_terms + 1):
        acc += a[n - 1] * math.factorial(n) / Fraction(d) ** n
        partials.append(float(acc / 2))
    return partials


# ---------------------------------------------------------------- summary


@dataclass(frozen=True)
class KcResult:
    d: int
    direct: float
    direct_tol: float
    borel_inverse_function: float
    borel_pade: float | None
    asymptotic_partials: tuple

    @property
    def borel_agreement(self) -> float:
        return abs(self.direct - self.borel_inverse_function) / abs(self.direct)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "direct": self.direct,
            "direct_tol": self.direct_tol,
            "borel_inverse_function": self.borel_inverse_function,
            "borel_pade": self.borel_pade,
            "borel_agreement": self.borel_agreement,
            "asymptotic_partials": list(self.asymptotic_partials),
        }


def kc_result(
    d: int,
    tol: float = 1e-10,
    n_partials: int = 30,
    pade_m: int = 6,
    pade_n: int = 6,
    include_pade: bool = True,
) -> KcResult:
    direct = kc_direct(d, tol)
    borel_if = kc_borel(d, "inverse_function", tol)
    borel_p = None
    if include_pade:
        borel_p = kc_borel(d, "pade", tol, pade_m=pade_m, pade_n=pade_n)
    partials = kc_asymptotic(d, n_partials)
    return KcResult(d, direct, tol, borel_if, borel_p, tuple(partials))
