"""Adaptive panel quadrature with an embedded error estimate.

Adaptive Simpson bisection: each panel compares one Simpson step against
two half-steps and accepts when the Richardson estimate |S2 - S1|/15
fits the panel's error allowance.  Seed panels let callers spread huge
power-law ranges over dyadic pieces; allowances are allocated
proportionally to a coarse first pass so smooth heavy panels get the
budget they need.
"""

from __future__ import annotations


class QuadratureError(RuntimeError):
    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, fa, b, fb, whole, m, fm, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    err = (left + right - whole) / 15.0
    if abs(err) <= tol or depth <= 0:
        if depth <= 0 and abs(err) > tol:
            raise QuadratureError(
                f"panel [{a}, {b}] did not reach tolerance {tol}",
                achieved=abs(err),
            )
        return left + right + err, abs(err)
    lv, le = _adaptive(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
    rv, re = _adaptive(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    return lv + rv, le + re


def adaptive_quad(f, a: float, b: float, tol: float, max_depth: int = 60):
    """Integrate f on [a, b] to absolute tolerance tol.

    Returns (value, error_estimate).  Raises QuadratureError with the
    achieved estimate when the recursion depth cap is hit first.
    """
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return _adaptive(f, a, fa, b, fb, whole, m, fm, tol, max_depth)


def integrate_panels(f, points, tol: float):
    """Integrate f over consecutive [points[i], points[i+1]] panels.

    The absolute tolerance is split across panels proportionally to a
    coarse Simpson estimate of each panel's weight, with a uniform floor
    so empty-looking panels still get a sliver.
    """
    if len(points) < 2:
        raise ValueError("need at least two panel points")
    coarse = []
    for a, b in zip(points, points[1:]):
        fa, fb = f(a), f(b)
        _, _, s = _simpson(f, a, fa, b, fb)
        coarse.append(abs(s))
    total = sum(coarse) or 1.0
    npan = len(coarse)
    value, err = 0.0, 0.0
    for (a, b), w in zip(zip(points, points[1:]), coarse):
        tol_i = 0.5 * tol * (w / total) + 0.5 * tol / npan
        v, e = adaptive_quad(f, a, b, tol_i)
        value += v
        err += e
    return value, err
