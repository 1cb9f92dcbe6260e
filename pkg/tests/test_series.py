import json
from fractions import Fraction

import pytest

from qsym.scalar import GENERIC_POINTS, make_context
from qsym.series import (RatioSeries, ZeroDenominator, apply_D1, c_sum, eigen_residual,
                         g3_sum, identity_n3, phi21_truncated, q_shift, resolve_param_order,
                         series_f, series_g3, thetas_up_to, vandermonde_factor, x_exponents)

F = Fraction
Q0, T0 = GENERIC_POINTS[0]


def test_ratio_series_arithmetic_truncates():
    y1 = RatioSeries.ratio_power(3, 3, 1, 2)
    y2 = RatioSeries.ratio_power(3, 3, 2, 3)
    one = RatioSeries.constant(3, 3)
    assert RatioSeries.ratio_power(3, 3, 1, 3) == y1 * y2
    geo = one
    for _ in range(5):
        geo = one + y1 * geo
    assert (one - y1) * geo == one
    assert (y1 * y1 * y1 * y1).is_zero()
    with pytest.raises(ValueError):
        RatioSeries(3, 3, {(1,): F(1)})


def test_ratio_series_json():
    s = RatioSeries(2, 2, {(0,): F(1), (2,): F(-3, 4)})
    assert json.loads(s.to_json()) == {"n": 2, "N": 2, "terms": [
        {"exponents": [0], "coeff": "1"}, {"exponents": [2], "coeff": "-3/4"}]}


def test_x_exponents_and_shift():
    assert x_exponents((2, 1), 3) == (-2, 1, 1)
    f = RatioSeries(3, 3, {(1, 0): F(1)})  # x_2 / x_1
    assert q_shift(f, 1, F(2)) == f.scale(2)
    assert q_shift(f, 2, F(2)) == f.scale(F(1, 2))
    assert q_shift(f, 3, F(2)) == f


def test_thetas_up_to_bounds_total_degree():
    for th in thetas_up_to(3, 3):
        assert sum(th.ratio_exponents()) <= 3
    assert sum(1 for _ in thetas_up_to(2, 4)) == 5


def test_eigen_residual_two_variables():
    for seed in (1, 2):
        ctx = make_context(2, None, Q0, T0, seed=seed)
        assert eigen_residual(ctx, 5).is_zero()
        assert not eigen_residual(ctx, 5, "tq").is_zero()
        assert resolve_param_order(ctx) == "qt"


def test_eigen_residual_three_variables():
    ctx = make_context(3, None, *GENERIC_POINTS[1], seed=1)
    assert eigen_residual(ctx, 3).is_zero()


def test_D1_on_constants():
    # at degree 0 every prefactor is 1, so D^1 1 = s_1 + s_2
    ctx = make_context(2, None, Q0, T0, seed=1)
    out = apply_D1(RatioSeries.constant(2, 0), ctx)
    assert out == RatioSeries.constant(2, 0, ctx.s[0] + ctx.s[1])


def test_schur_case_series_is_vandermonde():
    q = F(2, 3)
    ctx = make_context(3, None, q, q, seed=1, special=True)
    assert series_f(ctx, 4) == vandermonde_factor(3, 4)


def test_phi21():
    q = F(1, 3)
    assert phi21_truncated(F(2), F(5), F(7), q, 1) == [1, (1 - 2) * (1 - 5) / ((1 - q) * (1 - 7))]
    with pytest.raises(ZeroDenominator):
        phi21_truncated(F(2), F(5), 1 / q, q, 2)


def test_identity_three_variables():
    ctx = make_context(3, None, Q0, T0, seed=1)
    assert c_sum(ctx, 4) == g3_sum(ctx, 4)
    assert series_f(ctx, 4) == series_g3(ctx, 4)
    assert identity_n3(ctx, 4).passed
