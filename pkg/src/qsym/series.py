"""Truncated power series in y_i = x_{i+1}/x_i and the operator D^1."""

from __future__ import annotations

import json
from fractions import Fraction

from .reports import CheckReport
from .raising import ThetaMatrix, c_value, pairs
from .scalar import format_scalar, q_pochhammer, with_deformation


class ZeroDenominator(ZeroDivisionError):
    def __init__(self, index):
        super().__init__(f"zero denominator at n = {index}")
        self.index = index


class RatioSeries:
    """Polynomial in y_1..y_{n-1} truncated at total degree N."""

    __slots__ = ("n", "N", "terms")

    def __init__(self, n: int, N: int, terms=None):
        self.n = n
        self.N = N
        self.terms = {}
        for k, v in (terms or {}).items():
            k = tuple(k)
            if len(k) != n - 1 or any(e < 0 for e in k):
                raise ValueError(f"bad exponent vector {k}")
            if sum(k) <= N and v:
                self.terms[k] = self.terms.get(k, 0) + v
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def constant(cls, n, N, c=Fraction(1)):
        return cls(n, N, {(0,) * (n - 1): c})

    @classmethod
    def ratio_power(cls, n, N, i, j, c=Fraction(1), m=1):
        """c (x_j / x_i)^m for i < j."""
        d = [0] * (n - 1)
        for k in range(i - 1, j - 1):
            d[k] = m
        return cls(n, N, {tuple(d): c})

    def _like(self, terms):
        return RatioSeries(self.n, self.N, terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RatioSeries(self.n, min(self.N, other.N), out)

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._like({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, RatioSeries):
            return self.scale(other)
        N = min(self.N, other.N)
        out = {}
        for a, x in self.terms.items():
            da = sum(a)
            for b, y in other.terms.items():
                if da + sum(b) <= N:
                    k = tuple(i + j for i, j in zip(a, b))
                    out[k] = out.get(k, 0) + x * y
        return RatioSeries(self.n, N, out)

    __rmul__ = scale

    def coeff(self, d):
        return self.terms.get(tuple(d), Fraction(0))

    def truncate(self, N):
        return RatioSeries(self.n, N, self.terms)

    def map_coeffs(self, fn):
        return self._like({k: fn(v) for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, RatioSeries):
            return NotImplemented
        return self.n == other.n and self.N == other.N and self.terms == other.terms

    def to_dict(self):
        return {"n": self.n, "N": self.N,
                "terms": [{"exponents": list(k), "coeff": format_scalar(v)}
                          for k, v in sorted(self.terms.items())]}

    def to_json(self):
        return json.dumps(self.to_dict())

    def __repr__(self):
        return f"RatioSeries(n={self.n}, N={self.N}, {self.terms})"


def x_exponents(d, n):
    """Net exponent of each x_i in prod y_i^d_i."""
    ext = (0,) + tuple(d) + (0,)
    return tuple(ext[i] - ext[i + 1] for i in range(n))


def thetas_up_to(n: int, N: int):
    """theta in M^(n) whose ratio monomial has total degree <= N."""
    ps = pairs(n)
    weights = [j - i for i, j in ps]

    def go(k, left, acc):
        if k == len(ps):
            yield ThetaMatrix(n, tuple(acc))
            return
        for v in range(left // weights[k] + 1):
            yield from go(k + 1, left - v * weights[k], acc + [v])

    yield from go(0, N, [])


def vandermonde_factor(n, N):
    """prod_{k<l} (1 - x_l/x_k)."""
    out = RatioSeries.constant(n, N)
    for i, j in pairs(n):
        out = out * (RatioSeries.constant(n, N) - RatioSeries.ratio_power(n, N, i, j))
    return out


def c_sum(ctx, N) -> RatioSeries:
    """sum_theta c_n(theta) prod (x_j/x_i)^theta_ij, truncated."""
    terms = {}
    for th in thetas_up_to(ctx.n, N):
        c = c_value(th, ctx)
        if c:
            d = th.ratio_exponents()
            terms[d] = terms.get(d, 0) + c
    return RatioSeries(ctx.n, N, terms)


def series_f(ctx, N: int) -> RatioSeries:
    return vandermonde_factor(ctx.n, N) * c_sum(ctx, N)


def _geometric(n, N, i, j, lead, ratio):
    """1 + sum_{m>=1} lead * ratio^m (x_j/x_i)^m."""
    out = RatioSeries.constant(n, N)
    w = j - i
    for m in range(1, N // w + 1):
        out = out + RatioSeries.ratio_power(n, N, i, j, lead * ratio ** m, m)
    return out


def d1_prefactor(i, ctx, N, param_order="qt"):
    q, t = (ctx.q, ctx.t) if param_order == "qt" else (ctx.t, ctx.q)
    n = ctx.n
    out = RatioSeries.constant(n, N)
    for j in range(1, i):
        # (1 - q^-1 t x_i/x_j) / (1 - q^-1 x_i/x_j)
        out = out * _geometric(n, N, j, i, 1 - t, 1 / q)
    for k in range(i + 1, n + 1):
        # (1 - q t^-1 x_k/x_i) / (1 - q x_k/x_i)
        out = out * _geometric(n, N, i, k, 1 - 1 / t, q)
    return out


def q_shift(F: RatioSeries, i: int, q) -> RatioSeries:
    """T_{q^-1, x_i}: scale each monomial by q^-(exponent of x_i)."""
    out = {}
    for d, c in F.terms.items():
        e = x_exponents(d, F.n)[i - 1]
        out[d] = c / q ** e if e >= 0 else c * q ** (-e)
    return RatioSeries(F.n, F.N, out)


def apply_D1(F: RatioSeries, ctx, N=None, param_order="qt") -> RatioSeries:
    """D^1 F truncated at N; ``param_order="tq"`` swaps q and t in the prefactors."""
    N = F.N if N is None else min(N, F.N)
    F = F.truncate(N)
    out = RatioSeries(ctx.n, N)
    for i in range(1, ctx.n + 1):
        term = d1_prefactor(i, ctx, N, param_order) * q_shift(F, i, ctx.q)
        out = out + term.scale(ctx.s[i - 1])
    return out


def _residual(ctx, N, param_order):
    f = series_f(ctx, N)
    total = Fraction(0)
    for s in ctx.s:
        total = total + s
    return apply_D1(f, ctx, N, param_order) - f.scale(total)


def eigen_residual(ctx, N: int, param_order="qt") -> RatioSeries:
    """D^1 f - (s_1 + ... + s_n) f up to degree N."""
    return with_deformation(_residual, ctx, N, param_order)


def phi21_truncated(a, b, c, q, N):
    """Coefficients (a;q)_m (b;q)_m / ((q;q)_m (c;q)_m), m = 0..N."""
    out = []
    for m in range(N + 1):
        den = q_pochhammer(q, q, m) * q_pochhammer(c, q, m)
        if not den:
            raise ZeroDenominator(m)
        out.append(q_pochhammer(a, q, m) * q_pochhammer(b, q, m) / den)
    return out


def _phi_series(ctx, N, k, i, j):
    q, t = ctx.q, ctx.t
    r = ctx.ratio(i, j)
    w = j - i
    coeffs = phi21_truncated(q ** (k + 1) / t, q * r / t, q ** (k + 1) * r, q, N // w)
    out = RatioSeries(ctx.n, N)
    for m, c in enumerate(coeffs):
        out = out + RatioSeries.ratio_power(ctx.n, N, i, j, c * t ** m, m)
    return out


def g3_sum(ctx, N) -> RatioSeries:
    """k-sum of the n = 3 hypergeometric series, without the prod(1 - x_j/x_i) factor."""
    if ctx.n != 3:
        raise ValueError("series_g3 needs n = 3")
    q, t = ctx.q, ctx.t
    r12, r23, r13 = ctx.ratio(1, 2), ctx.ratio(2, 3), ctx.ratio(1, 3)
    P = q_pochhammer
    out = RatioSeries(3, N)
    for k in range(N // 2 + 1):
        num = P(q / t, q, k) ** 2 * P(t, q, k) ** 2
        if not num:
            continue
        den = P(q, q, k) * P(q * r12, q, k) * P(q * r23, q, k) * P(q * r13, q, k)
        term = RatioSeries.ratio_power(3, N, 1, 3, num / den * (q * r13) ** k, k)
        for i, j in pairs(3):
            term = term * _phi_series(ctx, N, k, i, j)
        out = out + term
    return out


def series_g3(ctx, N: int) -> RatioSeries:
    return vandermonde_factor(3, N) * g3_sum(ctx, N)


def identity_n3(ctx, N: int, conjectural=True) -> CheckReport:
    """Compare sum_theta c_3 x^theta with the k-sum of phi products, as printed."""
    lhs = c_sum(ctx, N)
    rhs = g3_sum(ctx, N)
    witness = None
    for d in sorted(set(lhs.terms) | set(rhs.terms)):
        if lhs.coeff(d) != rhs.coeff(d):
            witness = {"exponents": list(d), "c_sum": str(lhs.coeff(d)),
                       "phi_sum": str(rhs.coeff(d))}
            break
    status = "pass" if witness is None else ("reported" if conjectural else "fail")
    return CheckReport(f"identity-n3/N={N}", {**ctx.describe(), "N": N}, status, witness)


def residual_report(ctx, N, param_order="qt", conjectural=False, tag="eigen") -> CheckReport:
    res = eigen_residual(ctx, N, param_order)
    witness = None
    if not res.is_zero():
        d, c = min(res.terms.items())
        witness = {"exponents": list(d), "coeff": str(c)}
    status = "pass" if witness is None else ("reported" if conjectural else "fail")
    return CheckReport(f"{tag}/n={ctx.n}/N={N}/{param_order}",
                       {**ctx.describe(), "N": N, "param_order": param_order}, status, witness)


def resolve_param_order(ctx, N=5) -> str:
    """The argument order of D^1 under which the n = 2 residual vanishes."""
    for order in ("qt", "tq"):
        if eigen_residual(ctx, N, order).is_zero():
            return order
    raise ArithmeticError("no parameter order gives a zero residual for n = 2")


__all__ = [
    "RatioSeries", "x_exponents", "thetas_up_to", "vandermonde_factor", "c_sum", "series_f",
    "d1_prefactor", "q_shift", "apply_D1", "eigen_residual", "phi21_truncated", "g3_sum",
    "series_g3", "identity_n3", "residual_report", "resolve_param_order", "ZeroDenominator",
]
