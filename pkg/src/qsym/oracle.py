"""Macdonald P and Q by Gram-Schmidt over the monomial basis.

This is the ground truth every closed formula in the package is checked
against.  It uses nothing but the scalar product and unitriangularity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linalg import SingularMatrix, solve
from .symfunc import (MONOMIAL, POWER, SymF, check_degree, convert, dominates,
                      m_to_p_table, normalize, partitions, power_norm)


class SingularGram(ArithmeticError):
    pass


@lru_cache(maxsize=64)
def monomial_gram(d: int, q, t) -> dict:
    """<m_mu, m_nu>_{q,t} for all partitions mu, nu of d."""
    inv = m_to_p_table(d)
    norms = {lam: power_norm(lam, q, t) for lam in partitions(d)}
    gram = {}
    parts = partitions(d)
    for i, mu in enumerate(parts):
        for nu in parts[i:]:
            a, b = inv[mu], inv[nu]
            val = Fraction(0)
            for rho, x in a.items():
                y = b.get(rho)
                if y:
                    val = val + x * y * norms[rho]
            gram[mu, nu] = gram[nu, mu] = val
    return gram


def macdonald_P(lam, q, t) -> SymF:
    """P_lam in the monomial basis.

    m_lam is orthogonalized against every lexicographically smaller m_mu;
    coefficients on dominance-incomparable mu come out zero.
    """
    lam = normalize(lam)
    check_degree(sum(lam))
    return _macdonald_P(lam, q, t)


@lru_cache(maxsize=512)
def _macdonald_P(lam, q, t):
    d = sum(lam)
    lower = [mu for mu in partitions(d) if mu < lam]
    if not lower:
        return SymF({lam: Fraction(1)}, MONOMIAL)
    gram = monomial_gram(d, q, t)
    matrix = [[gram[nu, mu] for mu in lower] for nu in lower]
    rhs = [-gram[nu, lam] for nu in lower]
    try:
        coeffs = solve(matrix, rhs)
    except SingularMatrix as exc:
        raise SingularGram(f"Gram matrix below {lam} is singular at q={q}, t={t}") from exc
    terms = {lam: Fraction(1)}
    terms.update(zip(lower, coeffs))
    return SymF(terms, MONOMIAL)


def lower_support_ok(lam, P: SymF) -> bool:
    lam = normalize(lam)
    return P.coeff(lam) == 1 and all(dominates(lam, mu) for mu in P.terms)


def p_norm(lam, q, t):
    P = macdonald_P(lam, q, t)
    gram = monomial_gram(sum(normalize(lam)), q, t)
    total = Fraction(0)
    for a, x in P.terms.items():
        for b, y in P.terms.items():
            total = total + x * y * gram[a, b]
    return total


def b_coefficient(lam, q, t):
    """b_lam = <P_lam, P_lam>^(-1)."""
    return 1 / p_norm(lam, q, t)


def macdonald_Q(lam, q, t) -> SymF:
    """Q_lam = b_lam P_lam in the power-sum basis."""
    lam = normalize(lam)
    check_degree(sum(lam))
    return _macdonald_Q(lam, q, t)


@lru_cache(maxsize=512)
def _macdonald_Q(lam, q, t):
    return convert(macdonald_P(lam, q, t), POWER).scale(b_coefficient(lam, q, t))
