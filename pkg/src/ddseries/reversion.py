"""Expansion coefficients from a c-table, by three independent routes.

Route 1 evaluates the closed multinomial sum over multi-indices
{(n_ab): n = 1 + sum b*n_ab}.  Route 2 iterates the defining fixed point
beta <- s * (1 + sum c_ab beta^a s^(b-a)) to a truncated fixed point.
Route 3 forms beta/phi(beta) over Laurent coefficients in s and applies
the series engine's Lagrange–Bürmann reversion.  All three must agree
exactly; the checks at the bottom exhaust the factorial bounds that make
the coefficients' growth controllable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .ctable import CTable
from .laurent import LaurentPoly
from .series import PowerSeries, format_rational


class TableCorruptionError(RuntimeError):
    """A negative power of s survived where the identity forces cancellation."""


@dataclass(frozen=True)
class AlphaSeries:
    """Coefficients alpha_1..alpha_order (index 0 of ``alphas`` is alpha_1)."""

    alphas: tuple
    order: int

    def alpha(self, n: int) -> Fraction:
        if not 1 <= n <= self.order:
            raise IndexError(f"alpha_{n} outside computed order {self.order}")
        return self.alphas[n - 1]

    def to_list(self) -> list[str]:
        return [format_rational(a) for a in self.alphas]

    def as_series(self) -> PowerSeries:
        """The series sum alpha_n s^n, order = self.order."""
        return PowerSeries((Fraction(0),) + self.alphas, self.order)


# --------------------------------------------------------------- route 1


def alpha_via_lemma(table: CTable, n_max: int) -> AlphaSeries:
    """Closed multinomial sum over {(n_ab) : n = 1 + sum b*n_ab}."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    entries = [(a, b, v) for (a, b), v in table.entries.items() if b <= n_max - 1]
    alphas = []
    for n in range(1, n_max + 1):
        budget = n - 1
        total = Fraction(0)

        def walk(idx, remaining, sum_a, sum_n, prod_fact, prod_c):
            nonlocal total
            if idx == len(entries):
                if remaining == 0:
                    total += (
                        Fraction(factorial(sum_a), prod_fact * factorial(1 + sum_a - sum_n))
                        * prod_c
                    )
                return
            a, b, v = entries[idx]
            walk(idx + 1, remaining, sum_a, sum_n, prod_fact, prod_c)
            m = 1
            pc = prod_c
            while remaining - m * b >= 0:
                pc = pc * v
                walk(
                    idx + 1,
                    remaining - m * b,
                    sum_a + m * a,
                    sum_n + m,
                    prod_fact * factorial(m),
                    pc,
                )
                m += 1

        walk(0, budget, 0, 0, 1, Fraction(1))
        alphas.append(total)
    assert alphas[0] == 1
    return AlphaSeries(tuple(alphas), n_max)


# --------------------------------------------------------------- route 2


def alpha_via_iteration(table: CTable, n_max: int) -> AlphaSeries:
    """Iterate beta <- s*(1 + sum c_ab beta^a s^(b-a)) to a truncated fixed point.

    beta enters the right-hand side with power >= 2, so every pass extends
    agreement with the fixed point by at least one order; n_max passes
    suffice and the loop asserts the fixed point was actually reached.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    entries = [(a, b, v) for (a, b), v in table.entries.items() if b <= n_max - 1]
    # the s^(b-a) downshift pulls order w contributions from beta^a at order
    # w + (a-b); widen the working order so everything through n_max is exact
    max_shift = max((a - b for a, b, _ in entries), default=0)
    w_ord = n_max + max_shift
    zero = [Fraction(0)] * (w_ord + 1)

    def mul(x, y):
        out = zero[:]
        for i, xv in enumerate(x):
            if xv == 0:
                continue
            for j in range(w_ord + 1 - i):
                if y[j] != 0:
                    out[i + j] += xv * y[j]
        return out

    beta = zero[:]
    for _ in range(w_ord + 2):
        rhs = zero[:]
        rhs[0] = Fraction(1)
        cur = [Fraction(1)] + zero[:-1]
        max_a = max((a for a, _, _ in entries), default=0)
        pw = []
        for a in range(1, max_a + 1):
            cur = mul(cur, beta)
            pw.append(cur)
        for a, b, v in entries:
            term = pw[a - 1]
            shift = a - b  # positive: divide by s^(a-b)
            # beta has valuation >= 1, so beta^a has valuation >= a > a-b and
            # the dropped low coefficients are all zero
            for j in range(shift, w_ord + 1):
                if term[j] != 0:
                    rhs[j - shift] += v * term[j]
        new_beta = [Fraction(0)] + rhs[:-1]  # multiply by s
        if new_beta == beta:
            break
        beta = new_beta
    else:
        raise AssertionError("fixed point not reached")
    assert beta[1] == 1
    return AlphaSeries(tuple(beta[1 : n_max + 1]), n_max)


# --------------------------------------------------------------- route 3


def alpha_via_lagrange(table: CTable, n_max: int) -> AlphaSeries:
    """Revert beta/phi(beta) over Laurent-in-s coefficients and read off s^n.

    phi(beta) = 1 + sum c_ab beta^a s^(b-a) is a polynomial in beta whose
    coefficients are Laurent polynomials in s.  The coefficient of beta^k in
    the reverted series carries s-powers j with k + j >= 1 always; the final
    collection asserts that no negative total power of s survives.
    Coefficients alpha_n for n <= n_max need reversion order 2*n_max - 1.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    entries = [(a, b, v) for (a, b), v in table.entries.items() if b <= n_max - 1]
    K = 2 * n_max - 1
    phi_coeffs = [LaurentPoly() for _ in range(K)]
    phi_coeffs[0] = LaurentPoly.const(1)
    for a, b, v in entries:
        if a < K:
            phi_coeffs[a] = phi_coeffs[a] + LaurentPoly.term(b - a, v)
    phi = PowerSeries(phi_coeffs, K - 1)
    f = (phi.recip()).shift_up(1)  # beta / phi(beta), order K
    g = f.revert()

    alphas = [Fraction(0)] * (n_max + 1)
    for k in range(1, K + 1):
        gk = g.coeffs[k]
        if isinstance(gk, LaurentPoly):
            items = gk.items()
        elif gk == 0:
            items = []
        else:
            items = [(0, Fraction(gk))]
        for j, coeff in items:
            n = k + j
            if n < 1:
                raise TableCorruptionError(
                    f"negative power s^{n} survived at reversion order {k}"
                )
            if n <= n_max:
                alphas[n] += coeff
    assert alphas[1] == 1
    return AlphaSeries(tuple(alphas[1:]), n_max)


# ------------------------------------------------------------- bound checks


def check_alpha_factorial_bound(table: CTable, c3: Fraction, n_max: int) -> dict:
    """Verify |alpha_n| <= 6^(2n) * C3^n * n! for tables with c_b <= C3^b b!.

    The row-sum precondition is checked first and reported with the
    offending b on failure.
    """
    c3 = Fraction(c3)
    for b in range(1, table.max_b + 1):
        cb = table.row_sum(b)
        if cb > c3**b * factorial(b):
            raise ValueError(
                f"precondition failed at b={b}: c_b = {cb} exceeds C3^b b! = {c3 ** b * factorial(b)}"
            )
    alphas = alpha_via_lemma(table, n_max)
    worst = Fraction(0)
    worst_n = None
    per_n = []
    for n in range(1, n_max + 1):
        bound = Fraction(6) ** (2 * n) * c3**n * factorial(n)
        ratio = abs(alphas.alpha(n)) / bound
        per_n.append({"n": n, "ratio": float(ratio)})
        if ratio > worst:
            worst, worst_n = ratio, n
        if ratio > 1:
            return {
                "passed": False,
                "failed_n": n,
                "ratio": float(ratio),
                "per_n": per_n,
            }
    return {
        "passed": True,
        "n_max": n_max,
        "c3": format_rational(c3),
        "max_ratio": float(worst),
        "max_ratio_n": worst_n,
        "per_n": per_n,
    }


def _power_coeffs(base: list, n: int, k_max: int) -> list:
    out = [1] + [0] * k_max
    for _ in range(n):
        nxt = [0] * (k_max + 1)
        for i, x in enumerate(out):
            if x == 0:
                continue
            for j in range(k_max + 1 - i):
                if base[j]:
                    nxt[i + j] += x * base[j]
        out = nxt
    return out


def check_phi_power_bound(k_max: int, n_max: int) -> dict:
    """Exhaust [beta^k] phi^n <= k! prod_j (1+(n-1)/j^2) <= 6^n k! exactly.

    phi = sum_{k>=0} k! beta^k.  Both inequalities are checked for all
    1 <= n <= n_max, 0 <= k <= k_max with exact big-integer/rational
    arithmetic; the report records the tightest ratio and equality cases.
    """
    if k_max > 14 or n_max > 14:
        raise ValueError("exhaustive check is limited to k, n <= 14")
    phi = [factorial(k) for k in range(k_max + 1)]
    tightest = Fraction(0)
    tight_at = None
    equalities = []
    power = [1] + [0] * k_max  # phi^0
    for n in range(1, n_max + 1):
        nxt = [0] * (k_max + 1)
        for i, x in enumerate(power):
            if x:
                for j in range(k_max + 1 - i):
                    if phi[j]:
                        nxt[i + j] += x * phi[j]
        power = nxt  # phi^n
        for k in range(k_max + 1):
            prod = Fraction(1)
            for j in range(1, k + 1):
                prod *= 1 + Fraction(n - 1, j * j)
            bound1 = factorial(k) * prod
            bound2 = 6**n * factorial(k)
            lhs = power[k]
            if not (lhs <= bound1 and bound1 <= bound2):
                return {
                    "passed": False,
                    "n": n,
                    "k": k,
                    "lhs": str(lhs),
                    "bound_product": format_rational(bound1),
                    "bound_simple": str(bound2),
                }
            ratio = Fraction(lhs) / bound1
            if ratio == 1:
                equalities.append({"n": n, "k": k})
            if ratio > tightest:
                tightest, tight_at = ratio, (n, k)
    return {
        "passed": True,
        "k_max": k_max,
        "n_max": n_max,
        "tightest_ratio": float(tightest),
        "tightest_at": tight_at,
        "equalities": equalities,
    }


def check_psi_power_bound(k_max: int, n_max: int) -> dict:
    """Exhaust [beta^k] psi^n <= 6^k (k-n)! for n <= k, psi = sum_{k>=1} k! beta^k."""
    if k_max > 14 or n_max > 14:
        raise ValueError("exhaustive check is limited to k, n <= 14")
    psi = [0] + [factorial(k) for k in range(1, k_max + 1)]
    tightest = Fraction(0)
    tight_at = None
    for n in range(1, n_max + 1):
        power = _power_coeffs(psi, n, k_max)
        for k in range(n, k_max + 1):
            lhs = power[k]
            bound = 6**k * factorial(k - n)
            if lhs > bound:
                return {"passed": False, "n": n, "k": k, "lhs": str(lhs), "bound": str(bound)}
            ratio = Fraction(lhs, bound)
            if ratio > tightest:
                tightest, tight_at = ratio, (n, k)
    return {
        "passed": True,
        "k_max": k_max,
        "n_max": n_max,
        "tightest_ratio": float(tightest),
        "tightest_at": tight_at,
    }
