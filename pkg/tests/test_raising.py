import itertools
from fractions import Fraction

import pytest

from oracles import hook_b
from qsym.oracle import macdonald_Q
from qsym.raising import (ThetaMatrix, all_thetas, c2_explicit, c3_explicit, c_coeff, c_ledger,
                          c_value, compare_operator_coeffs, det_factor_matrix, det_factor_subset,
                          hl_raising_Q, jj_coeff, ls_C, ls_Q, n3_tilde_check, operator_coeff,
                          raising_g_expansion, raising_Q, theta_support)
from qsym.scalar import GENERIC_POINTS, limit_at_one, make_context
from qsym.symfunc import pad

F = Fraction
Q0, T0 = GENERIC_POINTS[0]


def test_theta_matrix_statistics():
    th = ThetaMatrix.from_dict(3, {(1, 2): 2, (1, 3): 1, (2, 3): 4})
    assert th[1, 3] == 1
    assert th.zeta() == (3, 2, -5)
    assert th.xi(1, 1) == 1 - 4
    assert th.ratio_exponents() == (3, 5)
    assert th.to_list() == [[0, 2, 1], [0, 0, 4], [0, 0, 0]]
    assert th.minus({(1, 3): 2}) is None
    assert th.minus({(1, 2): 1}) == ThetaMatrix(3, (1, 1, 4))
    with pytest.raises(ValueError):
        ThetaMatrix(3, (1, -1, 0))


def test_theta_support_is_exactly_the_nonnegative_set():
    for lam in [(2, 1, 0), (3, 1, 1), (2, 2, 0, 0)]:
        n = len(lam)
        support = set(theta_support(lam, n))
        brute = {th for th in all_thetas(n, sum(lam))
                 if all(a + z >= 0 for a, z in zip(lam, th.zeta()))}
        assert support == brute


def test_general_product_reproduces_explicit_c2_c3():
    free2 = make_context(2, None, Q0, T0, seed=3)
    free3 = make_context(3, None, Q0, T0, seed=3)
    for th in range(6):
        assert c_coeff(ThetaMatrix(2, (th,)), free2) == c2_explicit(th, free2)
    for th in all_thetas(3, 3):
        assert c_coeff(th, free3) == c3_explicit(*th.entries, free3)


def test_jj_two_routes():
    ctx = make_context(2, None, Q0, T0, seed=2)
    for th in range(6):
        a, b = jj_coeff(th, ctx)
        assert a == b


def test_singular_limit_agrees_with_deformation_field():
    ctx = make_context(3, (3, 1, 0), Q0, Q0, special=True)
    checked = 0
    for th in all_thetas(3, 3):
        try:
            c_coeff(th, ctx)
        except ZeroDivisionError:
            checked += 1
            assert c_value(th, ctx) == limit_at_one(c_ledger(th).evaluate(ctx.deform()))
    assert checked > 0


def test_raising_matches_oracle_small():
    for lam in [(1, 1), (2, 1), (2, 1, 1), (3, 2, 1), (2, 0), (1, 1, 1, 1)]:
        for q, t in GENERIC_POINTS[:2]:
            ctx = make_context(len(lam), lam, q, t)
            assert raising_Q(lam, ctx) == macdonald_Q(lam, q, t)


def test_raising_g_expansion_frozen():
    # [DERIVED] Q_11 = g_1^2 + alpha g_2 with alpha = -b_11 (1-q^2)/(1-t^2) = -40/29
    q, t = F(3, 5), F(2, 7)
    alpha = -hook_b((1, 1), q, t) * (1 - q ** 2) / (1 - t ** 2)
    assert alpha == F(-40, 29)
    assert raising_g_expansion(make_context(2, (1, 1), q, t)) == {(1, 1): 1, (2,): alpha}


def test_lambda_must_match_context():
    ctx = make_context(2, (2, 1), Q0, T0)
    with pytest.raises(ValueError):
        raising_Q((1, 1), ctx)
    with pytest.raises(ValueError):
        ls_Q((2, 1), make_context(2, None, Q0, T0))


def test_ls_matches_oracle_small():
    for lam in [(1, 1), (2, 1), (2, 1, 1), (3, 2, 1), (2, 2, 1, 1)]:
        ctx = make_context(len(lam), lam, Q0, T0)
        assert ls_Q(lam, ctx) == macdonald_Q(lam, Q0, T0)
        assert ls_Q(lam, ctx, form="matrix") == ls_Q(lam, ctx)


def _literal_subset(u, v, t):
    # the subset expansion with the inner product over u_1..u_k only
    k = len(u)
    total = F(0)
    for size in range(k + 1):
        for K in itertools.combinations(range(k), size):
            term = F((-1) ** size) / t ** (size * (size + 1) // 2)
            for a in K:
                for j in range(k):
                    if j not in K:
                        term *= (v[j] - v[a] / t) / (v[j] - v[a])
                for ui in u:
                    term *= (ui - v[a]) / (ui - v[a] / t)
            total += term
    return total


def test_subset_form_needs_the_extra_factor():
    t, q = T0, Q0
    for u, theta in (((F(3, 11), F(13, 5)), (1, 2)), ((F(2, 17), F(19, 3), F(7, 23)), (2, 0, 1))):
        v = [q ** th * ui for th, ui in zip(theta, u)]
        assert det_factor_subset(u, v, t) == det_factor_matrix(u, v, t)
        assert _literal_subset(u, v, t) != det_factor_matrix(u, v, t)


def test_ls_C_one_variable():
    # k = 1: both forms of the determinant factor give the same C
    u = (F(5, 13),)
    for th in range(4):
        assert ls_C((th,), u, Q0, T0) == ls_C((th,), u, Q0, T0, form="matrix")


def test_operator_coefficients():
    ctx = make_context(2, (3, 1), Q0, T0)
    th0 = ThetaMatrix.zeros(2)
    assert operator_coeff(th0, ctx) == 1
    for mode_ok in (compare_operator_coeffs(ctx, 4), compare_operator_coeffs(ctx, 4, "formal")):
        assert mode_ok.passed


def test_compare_ratio_vs_formal_for_three_variables():
    ctx = make_context(3, (3, 2, 1), Q0, T0)
    assert compare_operator_coeffs(ctx, 3).passed
    formal = compare_operator_coeffs(ctx, 2, "formal")
    assert formal.status == "fail" and formal.witness["index"] == [0, 1, 0]


def test_n3_tilde_all_small_theta():
    ctx = make_context(3, None, Q0, T0, seed=1)
    for th in all_thetas(3, 2):
        report = n3_tilde_check(th, ctx)
        assert report.passed, report.witness


def test_hall_littlewood_expansion_at_q_zero():
    t = F(2, 5)
    for lam in [(1, 1, 1), (2, 1, 1), (3, 1, 1), (2, 2, 1)]:
        lam = pad(lam, 3)
        oracle = macdonald_Q(lam, F(0), t)
        assert hl_raising_Q(lam, t) == oracle
        assert raising_Q(lam, make_context(3, lam, F(0), t, special=True)) == oracle


def test_truncation_with_tied_s_only_fails_outside_the_support():
    q = F(2, 3)
    for lam in [(2, 1, 0), (3, 1, 0)]:
        for k in (2, 3):
            ctx = make_context(3, lam, q, q ** k, special=True)
            support = set(theta_support(lam, 3))
            for th in all_thetas(3, k + 1):
                if max(th.entries) >= k and c_ledger(th).limit(ctx, "t"):
                    assert th not in support
    ctx = make_context(3, (2, 1, 0), q, q ** 2, special=True)
    assert c_ledger(ThetaMatrix(3, (0, 1, 3))).limit(ctx, "t") != 0
