"""Generic Borel summation of a tagged coefficient list.

A coefficient source carries expansion coefficients with per-entry
provenance tags; validation enforces what each tag promises (the printed
low-order walk-expansion values for "paper" entries, the published sign
change at orders 12 and 13 for externally supplied files) without ever
inventing values the package has no source for.  Summation divides by n!
exactly, continues the transform with an exact-coefficient rational
approximant, and Laplace-integrates it against e^(-t/s)/s with an
exponential cutoff.  A real pole of the approximant inside the
integration range aborts the evaluation rather than quietly deforming
anything.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .pade import pade_from_series, require_pole_free
from .quadrature import integrate_panels
from .series import format_rational, parse_rational

VALID_TAGS = ("paper", "external-file", "synthetic")

# the printed low-order expansion coefficients; the one hard-coded sequence
PAPER_LOW_ORDER = (
    Fraction(1), Fraction(1), Fraction(2), Fraction(6), Fraction(27), Fraction(157),
)


@dataclass(frozen=True)
class CoefficientSource:
    alphas: tuple  # Fractions, alphas[i] is the coefficient of s^(i+1)
    tags: tuple  # provenance per entry
    note: str = ""

    def __post_init__(self):
        if len(self.alphas) != len(self.tags):
            raise ValueError("one tag per coefficient required")
        for t in self.tags:
            if t not in VALID_TAGS:
                raise ValueError(f"unknown provenance tag {t!r}")

    def __len__(self):
        return len(self.alphas)

    @classmethod
    def paper(cls) -> "CoefficientSource":
        return cls(PAPER_LOW_ORDER, ("paper",) * 6, note="printed low-order expansion")

    @classmethod
    def synthetic(cls, alphas, note="synthetic") -> "CoefficientSource":
        alphas = tuple(Fraction(a) for a in alphas)
        return cls(alphas, ("synthetic",) * len(alphas), note=note)

    @classmethod
    def from_file(cls, path) -> "CoefficientSource":
        with open(path) as fh:
            records = json.load(fh)
        by_n = {}
        tags = {}
        for rec in records:
            n = int(rec["n"])
            if n in by_n:
                raise ValueError(f"duplicate coefficient for n={n}")
            by_n[n] = parse_rational(rec["value"])
            tags[n] = rec["tag"]
        if not by_n:
            return cls((), (), note=str(path))
        top = max(by_n)
        if sorted(by_n) != list(range(1, top + 1)):
            raise ValueError("coefficient file must cover n = 1..N contiguously")
        return cls(
            tuple(by_n[n] for n in range(1, top + 1)),
            tuple(tags[n] for n in range(1, top + 1)),
            note=str(path),
        )

    def to_records(self) -> list:
        return [
            {"n": i + 1, "value": format_rational(a), "tag": t}
            for i, (a, t) in enumerate(zip(self.alphas, self.tags))
        ]

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_records(), fh, indent=2)


def validate_source(src: CoefficientSource) -> dict:
    """Enforce provenance invariants; report the sign pattern of all entries."""
    failures = []
    for i, (a, t) in enumerate(zip(src.alphas, src.tags)):
        n = i + 1
        if t == "paper":
            if n > len(PAPER_LOW_ORDER):
                failures.append(
                    f"entry n={n} tagged paper, but only n <= {len(PAPER_LOW_ORDER)} are printed"
                )
            elif a != PAPER_LOW_ORDER[n - 1]:
                failures.append(
                    f"entry n={n} tagged paper must equal {PAPER_LOW_ORDER[n - 1]}, got {a}"
                )
        if t == "external-file" and n in (12, 13) and a >= 0:
            failures.append(f"external entry n={n} must be negative, got {a}")
    signs = ["+" if a > 0 else "-" if a < 0 else "0" for a in src.alphas]
    return {
        "passed": not failures,
        "failures": failures,
        "signs": "".join(signs),
        "note": src.note,
    }


@dataclass(frozen=True)
class BorelSumResult:
    s: float
    value: float
    method: dict
    error_estimate: float

    def __post_init__(self):
        assert self.error_estimate >= self.method.get("quadrature_residual", 0.0)

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "value": self.value,
            "method": self.method,
            "error_estimate": self.error_estimate,
        }


def borel_coefficients(src: CoefficientSource, exact: bool = True) -> list:
    """Transform coefficients alpha_n / n!; exact rationals or the float path."""
    if exact:
        return [Fraction(0)] + [
            a / math.factorial(n) for n, a in enumerate(src.alphas, start=1)
        ]
    return [0.0] + [
        float(a) / math.factorial(n) for n, a in enumerate(src.alphas, start=1)
    ]


def default_pade_orders(src: CoefficientSource) -> tuple:
    m = (len(src) - 1) // 2
    return m, m


def borel_sum(
    src: CoefficientSource,
    s: float,
    pade_m: int | None = None,
    pade_n: int | None = None,
    tol: float = 1e-10,
) -> BorelSumResult:
    """(1/s) integral_0^inf e^(-t/s) B(t) dt with B continued rationally.

    B's series coefficients are exact; the [m/n] approximant (defaults:
    balanced orders from the available length) is integrated to ``tol``
    with the cutoff t_max = s log(1/tol) + margin, the margin again
    s log(1/tol) + 5 so sources whose transform still grows exponentially
    (slower than e^(t/s)) are covered.  A real approximant pole at
    t <= t_max aborts with its location.
    """
    if s <= 0:
        raise ValueError("evaluation point must be positive")
    if pade_m is None or pade_n is None:
        pade_m, pade_n = default_pade_orders(src)
    b = borel_coefficients(src, exact=True)
    if len(b) < pade_m + pade_n + 1:
        raise ValueError(
            f"[{pade_m}/{pade_n}] needs {pade_m + pade_n + 1} transform coefficients, "
            f"have {len(b)}"
        )
    approx = pade_from_series(b, pade_m, pade_n)
    t_max = 2.0 * s * math.log(1.0 / tol) + 5.0
    require_pole_free(approx, t_max)

    def integrand(t):
        return math.exp(-t / s) * approx(t) / s

    points = [0.0]
    step = s / 2.0
    while points[-1] < t_max:
        nxt = points[-1] + step if points[-1] < 2 * s else points[-1] * 2.0
        points.append(min(nxt, t_max))
    value, residual = integrate_panels(integrand, points, tol)
    tail = abs(integrand(t_max)) * s
    return BorelSumResult(
        s=s,
        value=value,
        method={
            "pade_m": approx.achieved[0],
            "pade_n": approx.achieved[1],
            "pade_requested": list(approx.requested),
            "tol": tol,
            "t_max": t_max,
            "quadrature_residual": residual,
        },
        error_estimate=residual + tail,
    )


def partial_sums(src: CoefficientSource, s: float) -> list:
    """Running sums alpha_1 s + ... + alpha_N s^N, exact then converted."""
    se = Fraction(s)
    acc = Fraction(0)
    out = []
    for n, a in enumerate(src.alphas, start=1):
        acc += a * se**n
        out.append(float(acc))
    return out
