"""Independent reference implementations used as test oracles.

Everything here works on plain Python lists of Fractions and deliberately
shares no code with the package's series engine.
"""

from fractions import Fraction


def poly_mul(a, b, n):
    """Truncated product of coefficient lists through power n."""
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def poly_substitute(outer, inner, n):
    """outer(inner(x)) through power n by direct powering (inner[0] must be 0)."""
    assert inner[0] == 0
    result = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for k, c in enumerate(outer[: n + 1]):
        result = [r + c * p for r, p in zip(result, power)]
        power = poly_mul(power, inner, n)
    return result


def undetermined_revert(f, n):
    """Compositional inverse of f (f[0]=0, f[1]!=0) by solving order by order.

    Builds g = sum g_k x^k so that f(g(x)) = x, determining g_k from the
    x^k coefficient equation.  Independent of any closed-form reversion.
    """
    assert f[0] == 0 and f[1] != 0
    g = [Fraction(0), Fraction(1) / Fraction(f[1])]
    for k in range(2, n + 1):
        comp = poly_substitute(list(f[: n + 1]), g + [Fraction(0)], k)
        # f(g)(x) currently matches x through order k-1; correct the x^k term.
        g.append(-comp[k] / Fraction(f[1]))
    return g


def mercator(n):
    """log(1+u) coefficients through u^n."""
    return [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, n + 1)]


def bessel_i0_coeffs(n):
    """Modified Bessel I0 power-series coefficients through x^n."""
    from math import factorial

    out = [Fraction(0)] * (n + 1)
    k = 0
    while 2 * k <= n:
        out[2 * k] = Fraction(1, 4**k * factorial(k) ** 2)
        k += 1
    return out


def log_i0_via_mercator(n):
    """log(I0) = Mercator composed with (I0 - 1), by direct substitution."""
    u = bessel_i0_coeffs(n)
    u[0] = Fraction(0)
    return poly_substitute(mercator(n), u, n)


def fit_linear_recurrence(seq, max_order=12):
    """Smallest exact linear recurrence satisfied by the integer sequence.

    Returns coefficients (c_1..c_k) with x_n = sum_j c_j x_{n-j}, validated
    against the whole sequence, or None if none of order <= max_order fits.
    """
    seq = [Fraction(x) for x in seq]
    for k in range(1, max_order + 1):
        if len(seq) < 2 * k + 1:
            return None
        # solve the k x k system from consecutive windows by elimination
        rows = [seq[i : i + k] + [seq[i + k]] for i in range(k)]
        sol = _solve_exact([row[:] for row in rows])
        if sol is None:
            continue
        ok = all(
            seq[n] == sum(sol[j] * seq[n - 1 - j] for j in range(k))
            for n in range(k, len(seq))
        )
        if ok:
            return sol
    return None


def _solve_exact(m):
    """Gaussian elimination over Fractions; m is k rows of k+1 entries.

    The unknowns multiply the window in reverse (oldest first); returns the
    list ordered so sol[j] multiplies x_{n-1-j}.
    """
    k = len(m)
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
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    raw = [m[r][k] for r in range(k)]  # raw[j] multiplies x_{n-k+j}
    return [raw[k - 1 - j] for j in range(k)]
