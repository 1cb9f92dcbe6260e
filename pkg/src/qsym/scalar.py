"""Exact scalars: rationals, univariate rational functions in ``z``, contexts.

Plain :class:`fractions.Fraction` is the numeric backend.  :class:`RatFunc`
is the deformation field Q(z), used to take limits ``z -> 1`` through
removable singularities.  Both support the ordinary arithmetic operators, so
every formula in the package is written once and runs on either backend.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union


class PoleAtOne(ArithmeticError):
    """The reduced denominator of a rational function vanishes at z = 1."""


class GenericityError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, lowest degree first

def _strip(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _strip(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _pscale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quot[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] -= c * y
    return _strip(quot), _strip(a[:db])


def _pmonic(a):
    return _pscale(a, 1 / a[-1]) if a else a


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


_ONE = (Fraction(1),)


class RatFunc:
    """Element of Q(z) kept as a reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=_ONE, _reduced=False):
        num = _strip([Fraction(c) for c in num])
        den = _strip([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not _reduced:
            if not num:
                den = _ONE
            else:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = _pscale(num, 1 / lead)
                den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc((Fraction(x),), _ONE, _reduced=True)
        return NotImplemented

    def is_constant(self):
        return len(self.num) <= 1 and self.den == _ONE

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(_padd(self.num, other.num), self.den)
        return RatFunc(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_constant():
            c = other.num[0] if other.num else Fraction(0)
            return RatFunc(_pscale(self.num, c), self.den if c else _ONE, _reduced=True)
        if self.is_constant():
            return other * self
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("RatFunc division by zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = RatFunc(_ONE, _ONE, _reduced=True)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num[0] if self.num else Fraction(0))
        return hash((self.num, self.den))

    def __call__(self, x):
        d = _peval(self.den, Fraction(x))
        if not d:
            raise ZeroDivisionError(f"pole of {self!r} at {x}")
        return _peval(self.num, Fraction(x)) / d

    def __repr__(self):
        return f"RatFunc({[str(c) for c in self.num]}, {[str(c) for c in self.den]})"


Z = RatFunc((0, 1), _ONE, _reduced=True)

Scalar = Union[Fraction, RatFunc]


def rf_limit_at_one(r):
    """Value of a reduced rational function at z = 1."""
    if not isinstance(r, RatFunc):
        return Fraction(r)
    d = _peval(r.den, Fraction(1))
    if not d:
        raise PoleAtOne(f"denominator of {r!r} vanishes at z = 1")
    return _peval(r.num, Fraction(1)) / d


def q_pochhammer(a, q, k):
    """(a; q)_k = (1 - a)(1 - a q)...(1 - a q^(k-1))."""
    result = Fraction(1)
    term = a
    for _ in range(k):
        result = result * (1 - term)
        term = term * q
    return result


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (optional sign) or an integer literal."""
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_scalar(x) -> str:
    if isinstance(x, RatFunc):
        raise TypeError("deformation-field values are not serialized")
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# evaluation contexts

# q from powers of 2, 3 and t from powers of 5, 7: q^a t^b = 1 only for a = b = 0
GENERIC_POINTS = (
    (Fraction(2, 3), Fraction(5, 7)),
    (Fraction(3, 4), Fraction(7, 25)),
    (Fraction(9, 2), Fraction(5, 49)),
)

_S_PRIMES = (11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def _primes_of(x: Fraction):
    out = set()
    for m in (abs(x.numerator), x.denominator):
        p = 2
        while m > 1 and p * p <= m:
            while m % p == 0:
                out.add(p)
                m //= p
            p += 1
        if m > 1:
            out.add(m)
    return out


def _power(x, k):
    return x ** k


@dataclass(frozen=True)
class EvalContext:
    """Values of n, q, t and s_1..s_n for one evaluation.

    In the lambda-tied mode ``s_i = t^(n-i) q^(lam_i)`` and ratios s_i/s_j are
    computed from exponents, which keeps them finite at q = 0.
    """

    n: int
    q: Scalar
    t: Scalar
    s: tuple
    lam: tuple | None = None
    special: bool = False
    deformed: bool = field(default=False, compare=False)

    @property
    def tied(self) -> bool:
        return self.lam is not None

    def ratio(self, i: int, j: int):
        """s_i / s_j with 1-based indices."""
        if self.lam is not None:
            a = self.lam[i - 1] - self.lam[j - 1]
            b = j - i
            return _power(self.q, a) * _power(self.t, b) if a >= 0 else (
                _power(self.t, b) / _power(self.q, -a))
        return self.s[i - 1] / self.s[j - 1]

    def monomial(self, qexp: int, texp: int, sexp: Sequence[int] = ()):
        """q^qexp t^texp prod s_i^sexp_i."""
        val = Fraction(1)
        if qexp:
            val = val * _power(self.q, qexp)
        if texp:
            val = val * _power(self.t, texp)
        for i, e in enumerate(sexp):
            if e:
                val = val * _power(self.s[i], e)
        return val

    def with_t(self, t) -> "EvalContext":
        s = self.s
        if self.lam is not None:
            s = _tied_s(self.n, self.lam, self.q, t)
        return replace(self, t=t, s=s)

    def deform(self, kind: str = "auto") -> "EvalContext":
        """Move into Q(z).

        ``"t"`` sends t -> t z (tied s follow), ``"s"`` sends s_i -> s_i z^i;
        ``"auto"`` picks ``"t"`` for tied contexts and ``"s"`` otherwise.
        """
        if kind == "auto":
            kind = "t" if self.lam is not None else "s"
        if kind == "t":
            ctx = self.with_t(self.t * Z)
        elif kind == "s" and self.lam is None:
            ctx = replace(self, s=tuple(si * Z ** (i + 1) for i, si in enumerate(self.s)))
        else:
            raise ValueError(f"cannot deform {kind!r} in this context")
        return replace(ctx, deformed=True)

    def describe(self) -> dict:
        out = {"n": self.n, "q": format_scalar(self.q), "t": format_scalar(self.t)}
        if self.lam is not None:
            out["lambda"] = list(self.lam)
        else:
            out["s"] = [format_scalar(x) for x in self.s]
        return out


def _tied_s(n, lam, q, t):
    return tuple(_power(t, n - 1 - i) * _power(q, lam[i]) for i in range(n))


def check_generic(q, t, bound: int = 20) -> None:
    """Raise GenericityError if q^a t^b = 1 for some small (a, b) != (0, 0)."""
    if q in (0, 1, -1):
        raise GenericityError(f"q = {q} is not generic")
    if t in (0, 1, -1):
        raise GenericityError(f"t = {t} is not generic")
    qp = {a: Fraction(q) ** a for a in range(-bound, bound + 1)}
    tp = {b: Fraction(t) ** b for b in range(-bound, bound + 1)}
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) != (0, 0) and qp[a] * tp[b] == 1:
                raise GenericityError(f"q^{a} t^{b} = 1")


@lru_cache(maxsize=None)
def free_s_values(n: int, seed: int, avoid: frozenset = frozenset()):
    """Deterministic multiplicatively independent s_1..s_n (one prime each)."""
    rng = random.Random(seed)
    primes = [p for p in _S_PRIMES if p not in avoid]
    if len(primes) < n:
        raise GenericityError("not enough primes for free s values")
    chosen = rng.sample(primes, n)
    out = []
    for p in chosen:
        e = rng.choice((1, -1, 2, -2))
        sign = rng.choice((1, -1))
        out.append(sign * Fraction(p) ** e)
    return tuple(out)


def make_context(n: int, lam=None, q=GENERIC_POINTS[0][0], t=GENERIC_POINTS[0][1],
                 seed: int = 0, special: bool = False) -> EvalContext:
    """Build an EvalContext.

    ``special`` lifts the genericity guard for specialization suites
    (t = q^k, q = 0); q = 1 is rejected regardless.
    """
    if n < 1:
        raise ValueError("n must be positive")
    q = Fraction(q)
    t = Fraction(t)
    if q == 1:
        raise GenericityError("q = 1 makes (q;q)_k vanish")
    if not special:
        check_generic(q, t)
    elif t == 0:
        raise GenericityError("t = 0 is not supported")
    if lam is not None:
        lam = tuple(int(x) for x in lam)
        if len(lam) < n:
            lam = lam + (0,) * (n - len(lam))
        if len(lam) != n or any(x < 0 for x in lam) or any(
                lam[i] < lam[i + 1] for i in range(n - 1)):
            raise ValueError(f"{lam} is not a partition with {n} parts")
        return EvalContext(n, q, t, _tied_s(n, lam, q, t), lam, special)
    avoid = frozenset(_primes_of(q) | _primes_of(t))
    return EvalContext(n, q, t, free_s_values(n, seed, avoid), None, special)


def limit_at_one(value):
    """Apply rf_limit_at_one to a scalar or to anything with ``map_coeffs``."""
    if hasattr(value, "map_coeffs"):
        return value.map_coeffs(rf_limit_at_one)
    return rf_limit_at_one(value)


def with_deformation(fn, ctx: EvalContext, *args, **kwargs):
    """Evaluate ``fn(ctx, ...)``; on a zero denominator redo it in Q(z) and take z -> 1."""
    try:
        return fn(ctx, *args, **kwargs)
    except ZeroDivisionError:
        if ctx.deformed:
            raise
    return limit_at_one(fn(ctx.deform(), *args, **kwargs))


def generic_points(trials: int = 3, seed: int = 0):
    """Deterministic (q, t) pairs, q from primes 2, 3 and t from 5, 7."""
    points = list(GENERIC_POINTS) if seed == 0 else []
    rng = random.Random(seed)
    while len(points) < trials:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if (a, b) == (0, 0) or (c, d) == (0, 0):
            continue
        q = Fraction(2) ** a * Fraction(3) ** b
        t = Fraction(5) ** c * Fraction(7) ** d
        if (q, t) not in points:
            points.append((q, t))
    return points[:trials]
