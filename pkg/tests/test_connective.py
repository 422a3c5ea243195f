import math
from fractions import Fraction

import numpy as np
import pytest

from ddseries.connective import (
    MuEstimate,
    TransferConvergenceError,
    beta_ordering_check,
    mu_estimates,
    mu_tau_transfer,
    theorem1_check,
    transfer_census,
)
from ddseries.reversion import AlphaSeries
from ddseries.walks import WalkModel, canonical_classes, enumerate_walks

from oracles import fit_linear_recurrence

F = Fraction


# ------------------------------------------------------------ mu estimates


def test_mu_memory2_exact_ratio():
    census = enumerate_walks(WalkModel.memory(2), 2, 8)
    est = mu_estimates(census)
    assert est.point_estimate == pytest.approx(3.0, abs=1e-12)
    assert est.uncertainty == pytest.approx(0.0, abs=1e-12)


def test_mu_saw_d1_degenerate():
    census = enumerate_walks(WalkModel.saw(), 1, 8)
    est = mu_estimates(census)
    assert est.point_estimate == pytest.approx(1.0, abs=1e-12)


def test_mu_saw_d2_window():
    census = enumerate_walks(WalkModel.saw(), 2, 14)
    est = mu_estimates(census)
    assert 2.60 <= est.point_estimate <= 2.70
    # build-time recorded value of this deterministic estimator: 2.674549
    assert est.point_estimate == pytest.approx(2.674549, abs=1e-5)
    assert all(b >= est.point_estimate - est.uncertainty - 1e-9 for b in est.upper_bounds)


def test_mu_upper_bounds_decreasing_towards_estimate():
    census = enumerate_walks(WalkModel.saw(), 2, 12)
    est = mu_estimates(census)
    # n-th roots are upper bounds for every n
    assert min(est.upper_bounds) >= est.point_estimate - est.uncertainty - 1e-9


def test_mu_requires_six_terms():
    census = enumerate_walks(WalkModel.saw(), 2, 5)
    with pytest.raises(ValueError):
        mu_estimates(census)


def test_mu_estimates_increase_with_d():
    pts = []
    for d in (1, 2, 3):
        pts.append(mu_estimates(enumerate_walks(WalkModel.saw(), d, 8)).point_estimate)
    assert pts[0] < pts[1] < pts[2]


# ---------------------------------------------------------- transfer system


def test_transfer_mu2_closed_form():
    for d in (1, 2, 3, 4, 7):
        res = mu_tau_transfer(d, 2)
        assert abs(res.eigenvalue - (2 * d - 1)) <= 1e-12 * max(1, 2 * d - 1)
        assert len(res.states) == 1


def test_transfer_census_memory2_closed_form():
    for d in (1, 2, 3, 4):
        census = transfer_census(d, 2, 12)
        assert census.counts == tuple(
            2 * d * (2 * d - 1) ** (n - 1) for n in range(1, 13)
        )


def test_transfer_census_matches_dfs():
    for d in (1, 2):
        for tau in (2, 4):
            dp = transfer_census(d, tau, 8)
            dfs = enumerate_walks(WalkModel.memory(tau), d, 8)
            assert dp.counts == dfs.counts, (d, tau)
    assert transfer_census(3, 4, 6).counts == enumerate_walks(WalkModel.memory(4), 3, 6).counts


def test_transfer_mu4_census_ratio_convergence():
    d = 2
    res = mu_tau_transfer(d, 4)
    census = transfer_census(d, 4, 18)
    ratios = [census.counts[i + 1] / census.counts[i] for i in range(len(census.counts) - 1)]
    errs = [abs(r - res.eigenvalue) for r in ratios[-8:]]
    # geometric approach to the eigenvalue (envelope, not per-step monotone)
    assert errs[-1] < 1e-9
    assert max(errs[-3:]) <= max(errs[:3]) * 0.01


def test_transfer_mu4_matches_recurrence_fit_root():
    d = 2
    res = mu_tau_transfer(d, 4)
    census = transfer_census(d, 4, 16)
    rec = fit_linear_recurrence(census.counts)
    assert rec is not None
    # dominant root of the fitted recurrence equals the transfer eigenvalue
    poly = [1.0] + [-float(c) for c in rec]
    roots = np.roots(poly)
    dominant = max(roots, key=abs)
    assert abs(dominant.imag) < 1e-9
    assert abs(dominant.real - res.eigenvalue) < 1e-9


def test_mu4_between_saw_and_mu2():
    for d in (2, 3):
        mu4 = mu_tau_transfer(d, 4).eigenvalue
        saw = mu_estimates(enumerate_walks(WalkModel.saw(), d, 10)).point_estimate
        assert saw < mu4 <= 2 * d - 1 + 1e-12


def test_mu_tau_decreases_with_tau_and_increases_with_d():
    assert mu_tau_transfer(2, 4).eigenvalue < mu_tau_transfer(2, 2).eigenvalue
    assert mu_tau_transfer(2, 4).eigenvalue < mu_tau_transfer(3, 4).eigenvalue


def test_transfer_rejects_other_tau():
    with pytest.raises(ValueError):
        mu_tau_transfer(2, 6)


# --------------------------------------------------------------- ordering


def test_beta_ordering_d2_d3():
    for d in (2, 3):
        est = mu_estimates(enumerate_walks(WalkModel.saw(), d, 12))
        rep = beta_ordering_check(
            mu_tau_transfer(d, 2).eigenvalue,
            mu_tau_transfer(d, 4).eigenvalue,
            est,
        )
        assert rep["passed"], rep
        assert rep["beta_2"] <= rep["beta_4"] <= rep["beta_c_hat"] + est.beta_uncertainty + 1e-9


def test_beta_ordering_equality_tau2_vs_tau2():
    est = mu_estimates(enumerate_walks(WalkModel.saw(), 2, 8))
    mu2 = mu_tau_transfer(2, 2).eigenvalue
    rep = beta_ordering_check(mu2, mu2, est)
    assert rep["passed"]
    assert rep["beta_2"] == rep["beta_4"]


# ------------------------------------------------------- remainder harness


def _catalan_alphas(order):
    from math import comb

    return AlphaSeries(tuple(F(comb(2 * n, n), n + 1) for n in range(order)), order)


def test_theorem1_catalan_toy():
    alphas = _catalan_alphas(12)
    # closed form: beta(s) = (1 - sqrt(1-4s))/2 at s = 1/8
    beta = (1 - math.sqrt(0.5)) / 2
    rep = theorem1_check(alphas, beta, 4, 12)
    assert rep.passed
    assert all(r > 0 and math.isfinite(r) for r in rep.remainders)
    assert rep.empirical_c1 <= 100
    assert 1.0 <= rep.remainders[0] <= 2.0  # R_1 = beta_hat / s


def test_theorem1_saw_d5():
    table = canonical_classes(WalkModel.saw(), 10)
    counts = tuple(table.evaluate(n, 5) for n in range(1, 11))
    from ddseries.walks import WalkCensus

    census = WalkCensus(WalkModel.saw(), 5, counts, 10, 10)
    est = mu_estimates(census)
    alphas = AlphaSeries((F(1), F(1), F(2), F(6), F(27), F(157)), 6)
    rep = theorem1_check(alphas, est.beta_hat, 5, 6)
    assert rep.passed
    roots = [r ** (1.0 / (m + 1)) for m, r in enumerate(rep.remainders)]
    assert max(roots) <= 100


def test_theorem1_rejects_beta_outside_bracket():
    alphas = _catalan_alphas(6)
    with pytest.raises(ValueError):
        theorem1_check(alphas, 0.3, 4, 6)  # 2s = 0.25 at d=4


def test_theorem1_r1_forced_bracket():
    alphas = _catalan_alphas(6)
    rep = theorem1_check(alphas, 0.2, 4, 6)
    assert 1.0 <= rep.remainders[0] <= 2.0


# ----------------------------------------------------------- constructor


def test_mu_estimate_rejects_out_of_range_point():
    with pytest.raises(ValueError):
        MuEstimate(2, "saw", 5.0, 0.0, (5.0,), "aitken", 6)
