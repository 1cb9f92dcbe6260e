from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsym.ledger import FactorLedger, UncancelledPole
from qsym.linalg import SingularMatrix, det, solve
from qsym.scalar import (GENERIC_POINTS, GenericityError, PoleAtOne, RatFunc, Z,
                         check_generic, format_scalar, generic_points, make_context,
                         parse_rational, q_pochhammer, rf_limit_at_one, with_deformation)

F = Fraction

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@st.composite
def ratfuncs(draw):
    den = draw(polys)
    if not any(den):
        den = [1]
    return RatFunc(draw(polys), den)


# ---------------------------------------------------------------------------
# RatFunc field axioms

@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(ratfuncs())
def test_ratfunc_inverse(a):
    if a:
        assert a * a.inverse() == 1
        assert (a / a) == 1
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), small)
def test_ratfunc_evaluation_is_a_homomorphism(a, x):
    b = a * a + 3
    try:
        va = a(x)
    except ZeroDivisionError:
        return
    assert b(x) == va * va + 3


def test_ratfunc_reduces_and_normalizes():
    r = RatFunc([-1, 0, 1], [-2, 2])  # (z^2 - 1) / (2z - 2) = (z + 1) / 2
    assert r.den == (F(1),)
    assert r == (Z + 1) / 2
    assert (Z ** -2) * Z ** 2 == 1


def test_limit_at_one():
    assert rf_limit_at_one((Z ** 3 - 1) / (Z - 1)) == 3
    assert rf_limit_at_one((1 - Z) ** 2 / (1 - Z ** 2)) == 0
    assert rf_limit_at_one(F(2, 3)) == F(2, 3)
    with pytest.raises(PoleAtOne):
        rf_limit_at_one(1 / (Z - 1))


def test_q_pochhammer_recurrence():
    a, q = F(3, 7), F(-2, 5)
    for k in range(6):
        assert q_pochhammer(a, q, k + 1) == q_pochhammer(a, q, k) * (1 - a * q ** k)
    assert q_pochhammer(a, q, 0) == 1
    assert q_pochhammer(q ** -2, q, 3) == 0
    r = q_pochhammer(Z, F(1, 2), 2)
    assert r == (1 - Z) * (1 - Z / 2)


# ---------------------------------------------------------------------------
# literals and genericity

def test_parse_and_format_rational():
    assert parse_rational("-3/5") == F(-3, 5)
    assert parse_rational("+4") == 4
    assert format_scalar(F(6, 4)) == "3/2"
    assert format_scalar(F(-8, 2)) == "-4"
    for bad in ("1.5", "abc", "3/-5", "", "1/0"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        format_scalar(Z)


def test_genericity_guard():
    for q, t in GENERIC_POINTS:
        check_generic(q, t)
    with pytest.raises(GenericityError):
        check_generic(F(1, 2), F(1, 4))  # q^2 = t
    with pytest.raises(GenericityError):
        check_generic(F(1), F(2, 3))
    with pytest.raises(GenericityError):
        make_context(2, None, F(2, 3), F(4, 9))
    ctx = make_context(2, None, F(2, 3), F(4, 9), special=True)
    assert ctx.t == F(4, 9)
    with pytest.raises(GenericityError):
        make_context(2, None, F(1), F(4, 9), special=True)


def test_generic_points_are_deterministic_and_generic():
    assert generic_points(3) == list(GENERIC_POINTS)
    pts = generic_points(5, seed=7)
    assert pts == generic_points(5, seed=7) and len(pts) == 5
    for q, t in pts:
        check_generic(q, t)


def test_contexts():
    ctx = make_context(3, (2, 1), F(2, 3), F(5, 7))
    assert ctx.lam == (2, 1, 0)
    # tied s_i = t^(n-i) q^lam_i
    assert ctx.s == (F(25, 49) * F(4, 9), F(5, 7) * F(2, 3), F(1))
    assert ctx.ratio(1, 3) == ctx.s[0] / ctx.s[2]
    free = make_context(3, None, F(2, 3), F(5, 7), seed=4)
    assert free.s == make_context(3, None, F(2, 3), F(5, 7), seed=4).s
    assert len(set(free.s)) == 3
    with pytest.raises(ValueError):
        make_context(2, (1, 2))


def test_with_deformation_resolves_removable_singularity():
    ctx = make_context(2, (1, 0), F(2, 3), F(2, 3), special=True)  # deforms t

    def f(c):
        # (1 - t/q) / (1 - t^2/q^2) is 1/2 at t = q
        return (1 - c.t / c.q) / (1 - c.t ** 2 / c.q ** 2)

    assert with_deformation(f, ctx) == F(1, 2)


# ---------------------------------------------------------------------------
# linear algebra and the factor ledger

def test_det_and_solve():
    m = [[F(2), F(1), F(0)], [F(1), F(3), F(1)], [F(0), F(1), F(4)]]
    assert det(m) == 18
    x = solve(m, [F(1), F(2), F(3)])
    assert [sum(a * b for a, b in zip(row, x)) for row in m] == [1, 2, 3]
    with pytest.raises(SingularMatrix):
        solve([[F(1), F(2)], [F(2), F(4)]], [F(1), F(1)])


def test_ledger_cancels_before_evaluating():
    ctx = make_context(2, (1, 1), F(2, 3), F(5, 7))
    L = FactorLedger(2)
    key = L.ratio_key(1, 2)  # s_1/s_2 = t, so 1 - key/t vanishes
    L.pochhammer(L.ratio_key(1, 2, 0, -1), 2)
    L.pochhammer(L.ratio_key(1, 2, 0, -1), 2, -1)
    L.pochhammer(key, 1)
    assert L.evaluate(ctx) == 1 - F(5, 7)
    bad = FactorLedger(2)
    bad.pochhammer(bad.ratio_key(1, 2, 0, -1), 1, -1)
    with pytest.raises(UncancelledPole):
        bad.evaluate(ctx)


def test_ledger_limit_matches_deformation_field():
    ctx = make_context(2, None, F(2, 3), F(2, 3), special=True)
    L = FactorLedger(2)
    L.pochhammer((0, 1, 0, 0), 2)        # (t; q)_2
    L.pochhammer((-2, 2, 0, 0), 1)       # 1 - t^2/q^2
    L.pochhammer((-1, 1, 0, 0), 1, -1)   # 1 / (1 - t/q), both vanish at t = q
    deformed = rf_limit_at_one(L.evaluate(ctx.deform("t")))
    expected = 2 * (1 - F(2, 3)) * (1 - F(4, 9))
    assert L.limit(ctx, "t") == deformed == expected
    with pytest.raises(ZeroDivisionError):
        L.evaluate(ctx)


def test_ledger_q_zero_limit():
    ctx = make_context(1, None, F(0), F(2, 5), special=True)
    L = FactorLedger(1)
    L.pochhammer((0, 1, 0), 2)  # (t; q)_2 -> 1 - t at q = 0
    assert L.evaluate(ctx) == 1 - F(2, 5)
