"""Raising-operator series for Q_lambda and the Lassalle-Schlosser formula."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ledger import FactorLedger
from .linalg import det
from .reports import CheckReport
from .scalar import PoleAtOne, RatFunc, Z, q_pochhammer, rf_limit_at_one, with_deformation
from .symfunc import SymF, g_vector, hl_q_row, multiply, normalize, pad


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple:
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@dataclass(frozen=True)
class ThetaMatrix:
    """Strictly upper triangular matrix of nonnegative integers."""

    n: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != len(pairs(self.n)):
            raise ValueError("wrong number of entries")
        if any(e < 0 for e in self.entries):
            raise ValueError("negative entry")

    @classmethod
    def zeros(cls, n):
        return cls(n, (0,) * len(pairs(n)))

    @classmethod
    def from_dict(cls, n, values: dict):
        return cls(n, tuple(values.get(p, 0) for p in pairs(n)))

    def __getitem__(self, ij) -> int:
        i, j = ij
        if not 1 <= i < j <= self.n:
            raise KeyError(ij)
        return self.entries[_index(self.n, i, j)]

    def as_dict(self) -> dict:
        return dict(zip(pairs(self.n), self.entries))

    def minus(self, delta: dict):
        """theta - delta, or None if an entry would become negative."""
        out = list(self.entries)
        for (i, j), v in delta.items():
            k = _index(self.n, i, j)
            out[k] -= v
            if out[k] < 0:
                return None
        return ThetaMatrix(self.n, tuple(out))

    def zeta(self) -> tuple:
        """zeta_k = sum_{j>k} theta_kj - sum_{j<k} theta_jk."""
        z = [0] * self.n
        for (i, j), v in zip(pairs(self.n), self.entries):
            z[i - 1] += v
            z[j - 1] -= v
        return tuple(z)

    def xi(self, i: int, k: int) -> int:
        """xi_ik = sum_{j=k+2}^n (theta_ij - theta_{k+1,j})."""
        return sum(self[i, j] - self[k + 1, j] for j in range(k + 2, self.n + 1))

    def ratio_exponents(self) -> tuple:
        """Exponents on y_i = x_{i+1}/x_i of prod (x_j/x_i)^theta_ij."""
        d = [0] * (self.n - 1)
        for (i, j), v in zip(pairs(self.n), self.entries):
            for m in range(i - 1, j - 1):
                d[m] += v
        return tuple(d)

    def to_list(self):
        return [[self[i, j] if i < j else 0 for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]


@lru_cache(maxsize=None)
def _index(n, i, j):
    return pairs(n).index((i, j))


def all_thetas(n: int, bound: int):
    """Every theta in M^(n) with entries <= bound."""
    for entries in itertools.product(range(bound + 1), repeat=len(pairs(n))):
        yield ThetaMatrix(n, entries)


def _compositions(total_max, parts):
    if parts == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions(total_max - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def theta_support(lam, n: int) -> tuple:
    """All theta with lam_k + zeta_k(theta) >= 0 for every k.

    Columns are chosen right to left; once column j is fixed, zeta_j is known,
    which bounds the column sum by lam_j plus the row-j entries.
    """
    lam = pad(lam, n)
    results = []

    def go(j, chosen):
        if j == 1:
            results.append(ThetaMatrix.from_dict(n, chosen))
            return
        row = sum(chosen.get((j, m), 0) for m in range(j + 1, n + 1))
        cap = lam[j - 1] + row
        for col in _compositions(cap, j - 1):
            nxt = dict(chosen)
            for i, v in enumerate(col, start=1):
                if v:
                    nxt[i, j] = v
            go(j - 1, nxt)

    go(n, {})
    return tuple(results)


# ---------------------------------------------------------------------------
# c_n coefficients

@lru_cache(maxsize=None)
def c_ledger(theta: ThetaMatrix) -> FactorLedger:
    """Factor ledger of the c_n product expression."""
    n = theta.n
    L = FactorLedger(n)
    base = (0,) * n
    for i, j in pairs(n):
        th = theta[i, j]
        if not th:
            continue
        sig = sum(theta[i, a] - theta[j, a] for a in range(j + 1, n + 1))
        L.times_monomial((0, th) + base)
        L.pochhammer((1, -1) + base, th)
        L.pochhammer((1, 0) + base, th, -1)
        L.pochhammer(L.ratio_key(i, j, sig + 1, -1), th)
        L.pochhammer(L.ratio_key(i, j, sig + 1, 0), th, -1)
    for k in range(3, n + 1):
        for l, m in itertools.combinations(range(1, k), 2):
            th = theta[l, k]
            if not th:
                continue
            rho = sum(theta[l, b] - theta[m, b] for b in range(k + 1, n + 1))
            L.pochhammer(L.ratio_key(l, m, rho + 1, -1), th)
            L.pochhammer(L.ratio_key(l, m, rho + 1, 0), th, -1)
            L.pochhammer(L.ratio_key(l, m, rho - theta[m, k], 1), th)
            L.pochhammer(L.ratio_key(l, m, rho - theta[m, k], 0), th, -1)
    return L


def c_coeff(theta: ThetaMatrix, ctx):
    """c_n(theta; s, q, t); raises UncancelledPole on a surviving zero denominator."""
    if theta.n != ctx.n:
        raise ValueError("theta and context sizes differ")
    return c_ledger(theta).evaluate(ctx)


@lru_cache(maxsize=65536)
def c_value(theta: ThetaMatrix, ctx):
    """c_coeff with the deformation fallback for removable singularities."""
    try:
        return c_coeff(theta, ctx)
    except ZeroDivisionError:
        if ctx.q == 0:
            return with_deformation(lambda c: c_coeff(theta, c), ctx)
    return c_ledger(theta).limit(ctx)


def c2_explicit(th: int, ctx):
    q, t = ctx.q, ctx.t
    r = ctx.ratio(1, 2)
    return (t ** th * q_pochhammer(q / t, q, th) / q_pochhammer(q, q, th)
            * q_pochhammer(q * r / t, q, th) / q_pochhammer(q * r, q, th))


def c3_explicit(t12: int, t13: int, t23: int, ctx):
    q, t = ctx.q, ctx.t
    r12, r13, r23 = ctx.ratio(1, 2), ctx.ratio(1, 3), ctx.ratio(2, 3)
    P = q_pochhammer

    def block(th, r, shift=1):
        return (t ** th * P(q / t, q, th) / P(q, q, th)
                * P(shift * q * r / t, q, th) / P(shift * q * r, q, th))

    sh = q ** (t13 - t23)
    return (block(t12, r12, sh) * block(t13, r13) * block(t23, r23)
            * P(q * r12 / t, q, t13) / P(q * r12, q, t13)
            * P(q ** (-t23) * t * r12, q, t13) / P(q ** (-t23) * r12, q, t13))


def operator_coeff(sigma: ThetaMatrix, ctx, coeff=c_value):
    """Coefficient of R^sigma in prod_{k<l}(1 - R_kl) sum_theta c(theta) R^theta."""
    total = Fraction(0)
    ps = pairs(sigma.n)
    for size in range(len(ps) + 1):
        for subset in itertools.combinations(ps, size):
            rest = sigma.minus({p: 1 for p in subset})
            if rest is not None:
                val = coeff(rest, ctx)
                total = total - val if size % 2 else total + val
    return total


def _group(lam, coeffs) -> dict:
    """Collect sum c(theta) g_{lam + zeta(theta)} by the (sorted) g index."""
    grouped = {}
    for theta, c in coeffs:
        if not c:
            continue
        a = tuple(x + z for x, z in zip(lam, theta.zeta()))
        if any(x < 0 for x in a):
            continue
        key = normalize(a)
        grouped[key] = grouped.get(key, 0) + c
    return {k: v for k, v in grouped.items() if v}


def _apply_to_g(lam, coeffs, q, t, row=None) -> SymF:
    grouped = _group(lam, coeffs)
    out = SymF.zero()
    for key, c in sorted(grouped.items()):
        if not c:
            continue
        if row is None:
            g = g_vector(key, q, t)
        else:
            g = SymF.one()
            for k in key:
                g = multiply(g, row(k))
        out = out + g.scale(c)
    return out


def _raising_coeffs(ctx):
    if not ctx.tied:
        raise ValueError("the raising formula needs a lambda-tied context")
    return [(sig, operator_coeff(sig, ctx)) for sig in theta_support(ctx.lam, ctx.n)]


def raising_g_expansion(ctx) -> dict:
    """Q_lam as {sorted g index: coefficient}."""
    return _group(ctx.lam, _raising_coeffs(ctx))


def raising_Q(lam, ctx) -> SymF:
    """Q_lam from the conjectured raising-operator series (lambda-tied ctx)."""
    if lam is not None and pad(lam, ctx.n) != ctx.lam:
        raise ValueError(f"context is tied to {ctx.lam}, not {lam}")
    return _apply_to_g(ctx.lam, _raising_coeffs(ctx), ctx.q, ctx.t)


def hl_raising_Q(lam, t) -> SymF:
    """prod_{i<j} (1 - R_ij)/(1 - t R_ij) applied to q_lam(x; t)."""
    lam = tuple(lam)
    n = len(lam)

    def e(m):
        return Fraction(1) if m == 0 else t ** (m - 1) * (t - 1)

    coeffs = []
    for sig in theta_support(lam, n):
        c = Fraction(1)
        for v in sig.entries:
            c = c * e(v)
        coeffs.append((sig, c))
    return _apply_to_g(lam, coeffs, None, None, row=lambda k: hl_q_row(k, t))


def jj_coeff(th: int, ctx):
    """(c_th - c_{th-1}, closed form) for n = 2; the two must agree."""
    if ctx.n != 2:
        raise ValueError("jj_coeff needs n = 2")
    q, t = ctx.q, ctx.t
    r = ctx.ratio(1, 2)
    diff = c_value(ThetaMatrix(2, (th,)), ctx)
    if th > 0:
        diff = diff - c_value(ThetaMatrix(2, (th - 1,)), ctx)
    closed = (t ** th * q_pochhammer(1 / t, q, th) / q_pochhammer(q, q, th)
              * q_pochhammer(r / t, q, th) / q_pochhammer(q * r, q, th)
              * (1 - q ** (2 * th) * r / t) / (1 - r / t))
    return diff, closed


# ---------------------------------------------------------------------------
# Lassalle-Schlosser

def ls_prefactor(theta, u, q, t):
    k = len(theta)
    v = [q ** th * ui for th, ui in zip(theta, u)]
    P = q_pochhammer
    val = Fraction(1)
    for th, uk in zip(theta, u):
        val = val * t ** th * P(q / t, q, th) / P(q, q, th) * P(q * uk, q, th) / P(q * t * uk, q, th)
    for i in range(k):
        for j in range(i + 1, k):
            th = theta[i]
            val = (val * P(q * u[i] / (t * u[j]), q, th) / P(q * u[i] / u[j], q, th)
                   * P(t * u[i] / v[j], q, th) / P(u[i] / v[j], q, th))
    return val


def subset_terms(u, v, t) -> dict:
    """Signed terms of the subset expansion of the determinant factor.

    The product over i runs over u_1..u_k and an extra u_{k+1} = 1/t.
    """
    k = len(u)
    uu = list(u) + [1 / t]
    out = {}
    for size in range(k + 1):
        for K in itertools.combinations(range(k), size):
            term = Fraction((-1) ** size) / t ** (size * (size + 1) // 2)
            for a in K:
                for j in range(k):
                    if j not in K:
                        term = term * (v[j] - v[a] / t) / (v[j] - v[a])
                for ui in uu:
                    term = term * (ui - v[a]) / (ui - v[a] / t)
            out[K] = term
    return out


def det_factor_subset(u, v, t):
    total = Fraction(0)
    for term in subset_terms(u, v, t).values():
        total = total + term
    return total


def det_factor_matrix(u, v, t):
    """det[v_i^(k-j) (1 - t^(j-1) (1-t v_i)/(1-v_i) prod_m (u_m-v_i)/(t u_m-v_i))] / Delta(v)."""
    k = len(u)
    rows = []
    for i in range(k):
        prod = (1 - t * v[i]) / (1 - v[i])
        for um in u:
            prod = prod * (um - v[i]) / (t * um - v[i])
        rows.append([v[i] ** (k - j) * (1 - t ** (j - 1) * prod) for j in range(1, k + 1)])
    vandermonde = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            vandermonde = vandermonde * (v[i] - v[j])
    return det(rows) / vandermonde


def _ls_C_direct(theta, u, q, t, form):
    v = [q ** th * ui for th, ui in zip(theta, u)]
    factor = det_factor_subset(u, v, t) if form == "subset" else det_factor_matrix(u, v, t)
    return ls_prefactor(theta, u, q, t) * factor


def ls_C(theta, u, q, t, form="subset"):
    """C^{(q,t)}_{theta_1..theta_k}(u_1..u_k).

    A zero denominator at the given u is resolved by u_i -> u_i z^i and z -> 1.
    """
    return _ls_C(tuple(theta), tuple(u), q, t, form)


@lru_cache(maxsize=65536)
def _ls_C(theta, u, q, t, form):
    try:
        return _ls_C_direct(theta, u, q, t, form)
    except ZeroDivisionError:
        if any(isinstance(x, RatFunc) for x in (q, t) + u):
            raise
    deformed = tuple(ui * Z ** (i + 1) for i, ui in enumerate(u))
    return rf_limit_at_one(_ls_C_direct(theta, deformed, q, t, form))


def ls_block_u(theta: ThetaMatrix, k: int, ctx) -> tuple:
    """u_i = q^xi_ik s_i / (t s_{k+1}) for i = 1..k."""
    return tuple(ctx.q ** theta.xi(i, k) * ctx.ratio(i, k + 1) / ctx.t for i in range(1, k + 1))


def ls_coeff(theta: ThetaMatrix, ctx, form="subset"):
    val = Fraction(1)
    for k in range(1, theta.n):
        block = tuple(theta[i, k + 1] for i in range(1, k + 1))
        val = val * ls_C(block, ls_block_u(theta, k, ctx), ctx.q, ctx.t, form)
        if not val:
            break
    return val


def ls_Q(lam, ctx, form="subset") -> SymF:
    """Q_lam from the Lassalle-Schlosser formula (lambda-tied ctx)."""
    if not ctx.tied:
        raise ValueError("ls_Q needs a lambda-tied context")
    if lam is not None and pad(lam, ctx.n) != ctx.lam:
        raise ValueError(f"context is tied to {ctx.lam}, not {lam}")
    lam = ctx.lam
    coeffs = [(th, ls_coeff(th, ctx, form)) for th in theta_support(lam, ctx.n)]
    return _apply_to_g(lam, coeffs, ctx.q, ctx.t)


# ---------------------------------------------------------------------------
# comparisons

def compare_operator_coeffs(ctx, bound: int, mode="ratio", conjectural=False) -> CheckReport:
    """Compare the LS operator series with prod(1 - R) sum c_n R^theta.

    ``mode="formal"`` treats every R_ij as an independent symbol.
    ``mode="ratio"`` identifies R_ik with R_ij R_jk, i.e. compares the
    coefficients of the ratio monomials prod y_i^d_i (y_i = x_{i+1}/x_i),
    for every exponent vector with all d_i <= bound.
    """
    n = ctx.n
    lhs, rhs = {}, {}
    for theta in all_thetas(n, bound):
        key = theta.entries if mode == "formal" else theta.ratio_exponents()
        if mode != "formal" and max(key, default=0) > bound:
            continue
        lhs[key] = lhs.get(key, 0) + ls_coeff(theta, ctx)
        rhs[key] = rhs.get(key, 0) + operator_coeff(theta, ctx)
    witness = None
    for key in sorted(lhs):
        if lhs[key] != rhs[key]:
            witness = {"index": list(key), "ls": str(lhs[key]), "raising": str(rhs[key])}
            break
    if witness is None:
        status = "pass"
    else:
        status = "reported" if conjectural else "fail"
    return CheckReport(
        f"compare-ls/n={n}/bound={bound}/{mode}",
        {**ctx.describe(), "bound": bound, "mode": mode, "compared": len(lhs)},
        status, witness)


def _alpha(t12, t13, t23, ctx):
    q, t = ctx.q, ctx.t
    r = ctx.ratio(1, 2)
    d = t13 - t23
    return ((1 - 1 / t) / (1 - q ** t12 / t)
            * (1 - q ** d * t * r) / (1 - q ** d * r)
            * (1 - q ** (2 * t12 + d + 1) * r / t) / (1 - q ** (t12 + d + 1) * r))


def n3_tilde_check(theta: ThetaMatrix, ctx) -> CheckReport:
    """Recast-series coefficient vs. the product of two LS functions (n = 3)."""
    if theta.n != 3 or ctx.n != 3:
        raise ValueError("n3_tilde_check needs n = 3")
    q, t = ctx.q, ctx.t
    t12, t13, t23 = theta[1, 2], theta[1, 3], theta[2, 3]

    def c(a, b, e):
        if min(a, b, e) < 0:
            return Fraction(0)
        return c_value(ThetaMatrix(3, (a, b, e)), ctx)

    def alpha(a, b, e):
        return _alpha(a, b, e, ctx) if min(a, b, e) >= 0 else Fraction(0)

    c0 = c(t12, t13, t23)

    def beta(i, j, k):
        return c(t12 - i, t13 - j, t23 - k) / c0

    tilde = (c0 - c(t12 - 1, t13, t23) - c(t12, t13, t23 - 1)
             + alpha(t12 - 1, t13, t23 - 1) * c(t12 - 1, t13, t23 - 1)
             - alpha(t12, t13 - 1, t23) * c(t12, t13 - 1, t23)
             + c(t12 - 2, t13, t23 - 1) + c(t12, t13 - 1, t23 - 1)
             - c(t12 - 1, t13 - 1, t23 - 1))
    combo = (1 - beta(1, 0, 0) - beta(0, 0, 1)
             + alpha(t12 - 1, t13, t23 - 1) * beta(1, 0, 1)
             - alpha(t12, t13 - 1, t23) * beta(0, 1, 0)
             + beta(2, 0, 1) + beta(0, 1, 1) - beta(1, 1, 1))

    # a-factors are the nonempty-subset terms of the two determinant factors
    u1 = (q ** (t13 - t23) * ctx.ratio(1, 2) / t,)
    v1 = (q ** t12 * u1[0],)
    u2 = (ctx.ratio(1, 3) / t, ctx.ratio(2, 3) / t)
    v2 = (q ** t13 * u2[0], q ** t23 * u2[1])
    s1 = subset_terms(u1, v1, t)
    s2 = subset_terms(u2, v2, t)
    a12 = -s1[(0,)]
    a13, a23, a1323 = -s2[(0,)], -s2[(1,)], s2[(0, 1)]
    factored = (1 - a12) * (1 - a13 - a23 + a1323)

    product = ls_C((t12,), u1, q, t) * ls_C((t13, t23), u2, q, t)
    steps = {
        "beta(1,0,0)=a12": beta(1, 0, 0) == a12,
        "beta(0,1,1)=a13,23": beta(0, 1, 1) == a1323,
        "beta(1,1,1)=a12*a13,23": beta(1, 1, 1) == a12 * a1323,
        "alpha*beta(0,1,0)=(1-a12)a13":
            alpha(t12, t13 - 1, t23) * beta(0, 1, 0) == (1 - a12) * a13,
        "-beta(0,0,1)+alpha*beta(1,0,1)+beta(2,0,1)=-(1-a12)a23":
            -beta(0, 0, 1) + alpha(t12 - 1, t13, t23 - 1) * beta(1, 0, 1) + beta(2, 0, 1)
            == -(1 - a12) * a23,
        "combination=factored": combo == factored,
        "tilde=C*C": tilde == product,
    }
    ok = all(steps.values())
    witness = None if ok else {
        "failed": [k for k, v in steps.items() if not v],
        "tilde": _fmt(tilde), "C*C": _fmt(product),
    }
    return CheckReport(f"n3-tilde/theta={t12},{t13},{t23}",
                       {**ctx.describe(), "theta": [t12, t13, t23]},
                       "pass" if ok else "fail", witness)


def _fmt(x):
    return str(x)


__all__ = [
    "ThetaMatrix", "pairs", "all_thetas", "theta_support", "c_ledger", "c_coeff", "c_value",
    "c2_explicit", "c3_explicit", "operator_coeff", "raising_g_expansion", "raising_Q", "hl_raising_Q", "jj_coeff",
    "ls_prefactor", "subset_terms", "det_factor_subset", "det_factor_matrix", "ls_C",
    "ls_coeff", "ls_Q", "compare_operator_coeffs", "n3_tilde_check", "PoleAtOne",
]
