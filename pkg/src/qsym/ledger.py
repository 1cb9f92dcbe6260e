"""Products of factors ``1 - q^a t^b prod s_i^e_i`` with symbolic cancellation.

A :class:`FactorLedger` records a monomial prefactor and a signed multiset of
atoms keyed by exponent tuples.  Atoms with identical keys in numerator and
denominator cancel before anything is evaluated, so structural 0/0 never
reaches a division.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction


class UncancelledPole(ZeroDivisionError):
    """A denominator atom evaluates to zero after cancellation."""


class FactorLedger:
    def __init__(self, n: int):
        self.n = n
        self.mono = [0, 0] + [0] * n
        self.atoms: Counter = Counter()

    @staticmethod
    def key(qexp=0, texp=0, sexp=None, n=0):
        return (qexp, texp) + (tuple(sexp) if sexp is not None else (0,) * n)

    def _shift_q(self, key, r):
        return (key[0] + r,) + key[1:]

    def times_monomial(self, key, power=1):
        for i, e in enumerate(key):
            self.mono[i] += power * e

    def pochhammer(self, key, k, power=1):
        """Multiply by (X; q)_k ** power where X is the monomial ``key``."""
        for r in range(k):
            self.atoms[self._shift_q(key, r)] += power

    def ratio_key(self, i, j, qexp=0, texp=0):
        """Key of q^qexp t^texp s_i/s_j (1-based)."""
        sexp = [0] * self.n
        sexp[i - 1] += 1
        sexp[j - 1] -= 1
        return (qexp, texp) + tuple(sexp)

    def folded(self, ctx):
        """Atoms with s-exponents folded into (q, t) exponents for tied contexts."""
        atoms: Counter = Counter()
        mono = list(self.mono)
        if ctx.lam is None:
            for k, m in self.atoms.items():
                atoms[k] += m
            return mono, _cancel(atoms)
        lam, n = ctx.lam, self.n

        def fold(k):
            a, b = k[0], k[1]
            for i, e in enumerate(k[2:]):
                if e:
                    a += e * lam[i]
                    b += e * (n - 1 - i)
            return (a, b) + (0,) * n

        for k, m in self.atoms.items():
            atoms[fold(k)] += m
        return list(fold(tuple(mono))), _cancel(atoms)

    def evaluate(self, ctx):
        """Exact value at ``ctx``; at q = 0 the limit q -> 0 is taken atom by atom."""
        mono, atoms = self.folded(ctx)
        if not isinstance(ctx.q, Fraction) or ctx.q != 0:
            return _evaluate_plain(ctx, mono, atoms)
        return _evaluate_q0(ctx, mono, atoms)

    def limit(self, ctx, kind: str = "auto"):
        """Limit z -> 1 of the value under t -> t z (``"t"``) or s_i -> s_i z^i (``"s"``).

        An atom ``1 - X z^c`` tends to ``1 - X`` unless X = 1, where it behaves
        like ``-c (z - 1)``; the limit follows from the total order in (z - 1).
        """
        if kind == "auto":
            kind = "t" if ctx.lam is not None else "s"
        mono, atoms = self.folded(ctx)
        order = 0
        val = Fraction(1)
        for k, m in atoms.items():
            c = k[1] if kind == "t" else sum((i + 1) * e for i, e in enumerate(k[2:]))
            v = 1 - ctx.monomial(k[0], k[1], k[2:])
            if not v:
                if not c:
                    if m < 0:
                        raise UncancelledPole(f"atom {k} vanishes identically in z")
                    return Fraction(0)
                v = Fraction(-c)
                order += m
            val = val * v ** m if m > 0 else val / v ** (-m)
        if order > 0:
            return Fraction(0)
        if order < 0:
            raise UncancelledPole(f"pole of order {-order} at z = 1")
        return ctx.monomial(mono[0], mono[1], mono[2:]) * val


def _cancel(atoms: Counter) -> dict:
    return {k: m for k, m in atoms.items() if m}


def _evaluate_plain(ctx, mono, atoms):
    zero_num = False
    num = Fraction(1)
    den = Fraction(1)
    for k, m in atoms.items():
        v = 1 - ctx.monomial(k[0], k[1], k[2:])
        if not v:
            if m < 0:
                raise UncancelledPole(f"atom {k} vanishes in a denominator")
            zero_num = True
            continue
        if m > 0:
            num = num * v ** m
        else:
            den = den * v ** (-m)
    if zero_num:
        return Fraction(0)
    return ctx.monomial(mono[0], mono[1], mono[2:]) * num / den


def _evaluate_q0(ctx, mono, atoms):
    # lowest-order term in q of each atom: 1, 1 - t^b s^e, or -q^a t^b s^e
    order = mono[0]
    lead = ctx.monomial(0, mono[1], mono[2:])
    zero_num = False
    for k, m in atoms.items():
        a = k[0]
        if a > 0:
            continue
        if a == 0:
            v = 1 - ctx.monomial(0, k[1], k[2:])
            if not v:
                if m < 0:
                    raise UncancelledPole(f"atom {k} vanishes at q = 0")
                zero_num = True
                continue
        else:
            v = -ctx.monomial(0, k[1], k[2:])
            order += a * m
        lead = lead * v ** m
    if zero_num or order > 0:
        return Fraction(0)
    if order < 0:
        raise UncancelledPole("negative q-order at q = 0")
    return lead
