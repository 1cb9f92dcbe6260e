import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import g_poly, power_sum_poly
from qsym.symfunc import (MONOMIAL, POWER, BasisMismatch, DegreeTooLarge, SymF, convert,
                          dominates, g_row, g_vector, hl_q_row, jacobi_trudi_schur, monomial,
                          multiply, normalize, p_to_m_table, pad, parse_partition, partitions,
                          power_sum, scalar_product, z_factor)

F = Fraction
QT = (F(2, 3), F(5, 7))


def test_partition_counts_and_order():
    assert [len(partitions(d)) for d in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert normalize((0, 2, 3, 0)) == (3, 2)
    assert pad((2, 1), 4) == (2, 1, 0, 0)
    with pytest.raises(ValueError):
        pad((1, 1, 1), 2)
    assert parse_partition("3,1,1") == (3, 1, 1)
    for bad in ("1,2", "2,-1"):
        with pytest.raises(ValueError):
            parse_partition(bad)


def test_dominance():
    assert dominates((3, 1), (2, 2))
    assert dominates((2, 2), (2, 1, 1))
    assert not dominates((2, 2), (3, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2)) and not dominates((2, 2, 2), (3, 1, 1, 1))


def test_z_factor():
    assert z_factor((2, 1, 1)) == 4
    assert z_factor((3,)) == 3
    assert z_factor((1, 1, 1)) == 6
    # sum over partitions of n of 1/z_lam is 1
    for d in range(1, 7):
        assert sum(F(1, z_factor(lam)) for lam in partitions(d)) == 1


def test_power_to_monomial_matches_explicit_expansion():
    """p_lam = sum_mu c m_mu, with c read off from the polynomial in d variables."""
    for d in range(1, 6):
        table = p_to_m_table(d)
        for lam in partitions(d):
            poly = power_sum_poly(lam, d)
            for mu in partitions(d):
                key = tuple(mu) + (0,) * (d - len(mu))
                assert table[lam].get(mu, 0) == poly.get(key, 0)


def test_p11_frozen():
    # [DERIVED] p_1^2 = m_2 + 2 m_11 by direct expansion
    assert convert(power_sum((1, 1)), MONOMIAL) == SymF({(2,): 1, (1, 1): 2}, MONOMIAL)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda d: st.dictionaries(
    st.sampled_from(partitions(d)), st.fractions(-5, 5, max_denominator=9), max_size=5)))
def test_basis_round_trip(terms):
    f = SymF(terms, POWER)
    assert convert(convert(f, MONOMIAL), POWER) == f
    g = SymF(terms, MONOMIAL)
    assert convert(convert(g, POWER), MONOMIAL) == g


def test_arithmetic_and_basis_rules():
    a = power_sum((2,)) + power_sum((1, 1)).scale(F(1, 2))
    assert (a - a).terms == {}
    assert multiply(power_sum((1,)), power_sum((1,))) == power_sum((1, 1))
    with pytest.raises(BasisMismatch):
        monomial((1,)) + power_sum((1,))
    with pytest.raises(BasisMismatch):
        multiply(monomial((1,)), power_sum((1,)))
    assert monomial((1, 1)) == SymF({(1, 1): F(1, 2), (2,): F(-1, 2)}, POWER)


def test_json_round_trip():
    f = SymF({(2, 1): F(-3, 4), (3,): F(5)}, POWER)
    data = json.loads(f.to_json())
    assert data["basis"] == "PowerSum"
    assert {"partition": "2,1", "coeff": "-3/4"} in data["terms"]
    assert SymF.from_dict(data) == f


def test_scalar_product_on_power_sums():
    q, t = QT
    assert scalar_product(power_sum((2, 1)), power_sum((2, 1)), q, t) == (
        2 * (1 - q ** 2) / (1 - t ** 2) * (1 - q) / (1 - t))
    assert scalar_product(power_sum((2, 1)), power_sum((3,)), q, t) == 0
    # symmetric and bilinear
    f = power_sum((2,)) + power_sum((1, 1))
    g = power_sum((1, 1)).scale(3)
    assert scalar_product(f, g, q, t) == scalar_product(g, f, q, t)


def test_g_matches_composition_formula():
    q, t = QT
    for k in range(1, 6):
        G = convert(g_row(k, q, t), MONOMIAL)
        for alpha, c in g_poly(k, k, q, t).items():
            assert G.coeff(alpha) == c


def test_g_vector_and_hl():
    q, t = QT
    assert g_vector((2, -1), q, t) == SymF.zero()
    assert g_vector((1, 2), q, t) == multiply(g_row(2, q, t), g_row(1, q, t))
    assert hl_q_row(2, t) == g_row(2, F(0), t)


def test_jacobi_trudi_at_t_equals_q_gives_schur():
    from oracles import monomial_value, schur_value
    q = F(2, 3)
    x = [F(2), F(-1, 3), F(5, 4)]
    for lam in [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1)]:
        s = convert(jacobi_trudi_schur(lam, q), MONOMIAL)
        value = sum(c * monomial_value(mu, x) for mu, c in s.terms.items())
        assert value == schur_value(lam, x)


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("QSYM_MAX_DEGREE", "4")
    p_to_m_table.cache_clear()
    try:
        with pytest.raises(DegreeTooLarge):
            p_to_m_table(5)
    finally:
        p_to_m_table.cache_clear()
