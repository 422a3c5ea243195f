import json
from fractions import Fraction
from math import comb, factorial

import pytest

from ddseries.ctable import CTable, CTableError, random_ctable
from ddseries.reversion import (
    alpha_via_iteration,
    alpha_via_lagrange,
    alpha_via_lemma,
    check_alpha_factorial_bound,
    check_phi_power_bound,
    check_psi_power_bound,
)

F = Fraction

ROUTES = [alpha_via_lemma, alpha_via_iteration, alpha_via_lagrange]
CATALAN = [comb(2 * n, n) // (n + 1) for n in range(10)]


# ------------------------------------------------------------------ c-table


def test_ctable_rejects_indices_outside_admissible_set():
    with pytest.raises(CTableError):
        CTable({(1, 1): 1})  # needs a >= b+1 = 2
    with pytest.raises(CTableError):
        CTable({(5, 2): 1})  # a <= 2b = 4
    with pytest.raises(CTableError):
        CTable({(2, 0): 1})


def test_ctable_json_roundtrip(tmp_path):
    t = CTable({(2, 1): F(1, 3), (4, 2): -2}, max_b=4)
    path = tmp_path / "table.json"
    t.save(path)
    back = CTable.load(path)
    assert back == t


def test_ctable_loader_rejects_bad_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"max_b": 2, "entries": [{"a": 9, "b": 2, "value": "1/1"}]}))
    with pytest.raises(CTableError):
        CTable.load(path)


def test_ctable_row_sum_is_absolute():
    t = CTable({(2, 1): -3, (3, 2): 1, (4, 2): -F(1, 2)})
    assert t.row_sum(1) == 3
    assert t.row_sum(2) == F(3, 2)


# ------------------------------------------------------------- basic routes


@pytest.mark.parametrize("route", ROUTES)
def test_empty_table_gives_bare_unit(route):
    out = route(CTable({}), 6)
    assert out.alphas == (F(1), F(0), F(0), F(0), F(0), F(0))


@pytest.mark.parametrize("route", ROUTES)
def test_single_quadratic_entry_gives_catalan(route):
    # beta = s + beta^2 has the Catalan numbers as its expansion
    out = route(CTable({(2, 1): 1}), 6)
    assert list(out.alphas) == CATALAN[:6]


def test_catalan_closed_form_square_check():
    # beta = (1 - sqrt(1-4s))/2 satisfies beta^2 - beta + s = 0
    beta = alpha_via_iteration(CTable({(2, 1): 1}), 10).as_series()
    residue = beta * beta - beta + PowerSeries_identity(10)
    assert all(c == 0 for c in residue.coeffs)


def PowerSeries_identity(order):
    from ddseries.series import PowerSeries

    return PowerSeries.identity(order)


def test_alpha3_display_value():
    t = CTable({(2, 1): 1, (3, 2): 1, (4, 2): 1})
    out = alpha_via_lemma(t, 3)
    assert out.alpha(2) == 1
    assert out.alpha(3) == 4  # 2*c21^2 + c32 + c42


def test_two_iterations_are_correct_through_order_two():
    out = alpha_via_iteration(CTable({(2, 1): 1}), 2)
    assert list(out.alphas) == [1, 1]


# ------------------------------------------------------- route equivalence


def test_route_equality_on_seeded_corpus():
    seeds = range(3000, 3100)
    for seed in seeds:
        t = random_ctable(seed, max_b=5)
        n_max = 10
        a1 = alpha_via_lemma(t, n_max)
        a2 = alpha_via_iteration(t, n_max)
        a3 = alpha_via_lagrange(t, n_max)
        assert a1.alphas == a2.alphas == a3.alphas, f"seed {seed}"


def test_truncation_locality():
    # entries with b >= n cannot touch alpha_1..alpha_n
    for seed in range(41, 61):
        t = random_ctable(seed, max_b=5)
        n = 4
        base = alpha_via_lemma(t, n)
        bumped = t.with_entry(7, 4, t.value(7, 4) + 5)
        bumped = bumped.with_entry(10, 5, F(9, 2))
        again = alpha_via_lemma(bumped, n)
        assert base.alphas == again.alphas


def test_monotonicity_in_each_entry():
    t = CTable({(2, 1): F(1, 2), (3, 2): 1, (4, 2): F(2, 3)})
    base = alpha_via_lemma(t, 7)
    assert all(a >= 0 for a in base.alphas)
    for (a, b) in list(t.entries):
        bumped = alpha_via_lemma(t.with_entry(a, b, t.value(a, b) + F(1, 2)), 7)
        assert all(x2 >= x1 for x1, x2 in zip(base.alphas, bumped.alphas))


# ------------------------------------------------------------ bound checks


def test_alpha_bound_catalan():
    rep = check_alpha_factorial_bound(CTable({(2, 1): 1}), F(1), 10)
    assert rep["passed"]
    assert rep["max_ratio"] <= Fraction(1, 36)  # attained at n=1; far below 1


def test_alpha_bound_empty_table():
    rep = check_alpha_factorial_bound(CTable({}), F(1), 5)
    assert rep["passed"]


def test_alpha_bound_extremal_row_sums():
    # one entry per b at a=b+1 with c_b = C3^b b! exactly
    c3 = F(1)
    t = CTable({(b + 1, b): c3**b * factorial(b) for b in range(1, 8)})
    rep = check_alpha_factorial_bound(t, c3, 8)
    assert rep["passed"]


def test_alpha_bound_precondition_reports_offender():
    t = CTable({(2, 1): 10})
    with pytest.raises(ValueError, match="b=1"):
        check_alpha_factorial_bound(t, F(1), 4)


def test_phi_power_bound_exhaustive():
    rep = check_phi_power_bound(14, 14)
    assert rep["passed"]
    # n=1 attains equality at every k, and n=2, k=2 attains 5 <= 5
    eqs = {(e["n"], e["k"]) for e in rep["equalities"]}
    assert (2, 2) in eqs
    assert all((1, k) in eqs for k in range(15))
    assert rep["tightest_ratio"] == 1.0


def test_phi_power_equality_case_value():
    # direct convolution over (l1, l2) in {(0,2), (1,1), (2,0)}: 2 + 1 + 2 = 5
    phi = [factorial(k) for k in range(3)]
    conv = sum(phi[i] * phi[2 - i] for i in range(3))
    assert conv == 5
    bound = factorial(2) * (1 + F(1, 1)) * (1 + F(1, 4))
    assert bound == 5


def test_psi_power_bound_exhaustive():
    rep = check_psi_power_bound(14, 14)
    assert rep["passed"]


def test_psi_power_hand_values():
    # [beta^3] psi^2 = 1!2! + 2!1! = 4 <= 6^3 * 1!
    from ddseries.reversion import _power_coeffs

    psi = [0, 1, 2, 6]
    assert _power_coeffs(psi, 2, 3)[3] == 4
    # n=k: only (1,1,...,1) contributes
    psi = [0] + [factorial(k) for k in range(1, 6)]
    assert _power_coeffs(psi, 5, 5)[5] == 1


def test_bound_checks_refuse_oversized_ranges():
    with pytest.raises(ValueError):
        check_phi_power_bound(15, 3)
    with pytest.raises(ValueError):
        check_psi_power_bound(3, 15)
