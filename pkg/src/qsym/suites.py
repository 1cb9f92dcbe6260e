"""Named batches of checks, shared by the CLI and the acceptance tests.

Every function returns a list of :class:`CheckReport`.  ``conjectural``
checks report ``"reported"`` instead of ``"fail"`` unless ``strict`` is set.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import oracle, raising, symfunc
from .oracle import SingularGram, lower_support_ok, macdonald_P, macdonald_Q, monomial_gram
from .raising import (ThetaMatrix, all_thetas, c2_explicit, c3_explicit, c_coeff, c_ledger,
                      compare_operator_coeffs, det_factor_matrix, det_factor_subset,
                      hl_raising_Q, jj_coeff, ls_Q, n3_tilde_check, raising_Q)
from .reports import CheckReport
from .scalar import make_context
from .series import identity_n3, residual_report, series_f, vandermonde_factor
from .symfunc import SymF, g_row, jacobi_trudi_schur, pad, partitions


def _eq(check_id, params, ok, witness=None, conjectural=False):
    if ok:
        return CheckReport(check_id, params, "pass", None)
    return CheckReport(check_id, params, "reported" if conjectural else "fail", witness)


def _sym_witness(a: SymF, b: SymF):
    for lam in sorted(set(a.terms) | set(b.terms)):
        if a.coeff(lam) != b.coeff(lam):
            return {"partition": list(lam), "lhs": str(a.coeff(lam)), "rhs": str(b.coeff(lam))}
    return None


def padded_partitions(max_weight: int, n: int, min_length: int = 0):
    for d in range(max_weight + 1):
        for lam in partitions(d):
            if min_length <= len(lam) <= n:
                yield pad(lam, n)


N4_SAMPLE = ((1, 1, 1, 1), (2, 1, 1, 0), (2, 2, 1, 1))


def formula_partitions(max_weight=6, max_n=3, extra=N4_SAMPLE):
    out = [lam for n in range(1, max_n + 1) for lam in padded_partitions(max_weight, n)]
    return out + list(extra)


def _pt(q, t):
    return {"q": str(q), "t": str(t)}


def clear_caches():
    """Drop memoized values so that timings start cold."""
    for fn in (oracle.monomial_gram, oracle._macdonald_P, oracle._macdonald_Q, raising.c_ledger,
               raising.c_value, raising._ls_C, symfunc._g_row, symfunc._g_product):
        fn.cache_clear()


# ---------------------------------------------------------------------------

def oracle_checks(points, max_weight=6):
    out = []
    for q, t in points:
        for d in range(max_weight + 1):
            parts = partitions(d)
            Ps = {}
            for lam in parts:
                try:
                    Ps[lam] = macdonald_P(lam, q, t)
                except SingularGram as exc:
                    out.append(CheckReport(f"oracle/unitriangular/{lam}", _pt(q, t), "fail",
                                           {"error": str(exc)}))
                    continue
                out.append(_eq(f"oracle/unitriangular/{list(lam)}", _pt(q, t),
                               lower_support_ok(lam, Ps[lam]),
                               {"support": [list(m) for m in Ps[lam].terms]}))
            gram = monomial_gram(d, q, t)
            bad = None
            for i, a in enumerate(parts):
                for b in parts[i + 1:]:
                    if a in Ps and b in Ps:
                        val = sum((x * y * gram[m, k] for m, x in Ps[a].terms.items()
                                   for k, y in Ps[b].terms.items()), Fraction(0))
                        if val and bad is None:
                            bad = {"pair": [list(a), list(b)], "value": str(val)}
            out.append(_eq(f"oracle/orthogonal/d={d}", _pt(q, t), bad is None, bad))
            if d >= 1:
                Q, g = macdonald_Q((d,), q, t), g_row(d, q, t)
                out.append(_eq(f"oracle/Q(k)=g_k/k={d}", _pt(q, t), Q == g, _sym_witness(Q, g)))
    return out


def formula_checks(points, lams=None, which=("raise", "ls")):
    out = []
    lams = formula_partitions() if lams is None else lams
    for q, t in points:
        for lam in lams:
            ctx = make_context(len(lam), lam, q, t)
            Q = macdonald_Q(tuple(lam), q, t)
            if "raise" in which:
                R = raising_Q(lam, ctx)
                out.append(_eq(f"raise/{list(lam)}", _pt(q, t), R == Q, _sym_witness(R, Q)))
            if "ls" in which:
                L = ls_Q(lam, ctx)
                out.append(_eq(f"ls/{list(lam)}", _pt(q, t), L == Q, _sym_witness(L, Q)))
    return out


def compare_checks(points, strict=False, lam_by_n=None):
    lam_by_n = lam_by_n or {2: (3, 1), 3: (3, 2, 1), 4: (3, 2, 1, 0)}
    out = []
    for q, t in points:
        for n, bound in ((2, 4), (3, 3), (4, 2)):
            ctx = make_context(n, lam_by_n[n], q, t)
            out.append(compare_operator_coeffs(ctx, bound, conjectural=(n == 4 and not strict)))
    return out


def eigen_checks(points, seeds=(1,), strict=False, n_values=((2, 5), (3, 3), (4, 3))):
    out = []
    for q, t in points:
        for seed in seeds:
            for n, N in n_values:
                ctx = make_context(n, None, q, t, seed=seed)
                out.append(residual_report(ctx, N, conjectural=(n >= 3 and not strict)))
    return out


def schur_checks(qs, max_weight=5, lams=None):
    out = []
    lams = [lam for d in range(max_weight + 1) for lam in partitions(d)] if lams is None else lams
    for q in qs:
        for lam in lams:
            lam = tuple(x for x in lam if x) or (0,)
            ctx = make_context(len(lam), lam, q, q, special=True)
            R = raising_Q(lam, ctx)
            J = jacobi_trudi_schur(lam, q)
            out.append(_eq(f"schur/{list(lam)}", {"q": str(q)}, R == J, _sym_witness(R, J)))
        ctx = make_context(3, None, q, q, seed=1, special=True)
        f = series_f(ctx, 4)
        out.append(_eq("schur/series_f=vandermonde", {"q": str(q)},
                       f == vandermonde_factor(3, 4)))
    return out


def hall_littlewood_checks(ts, max_weight=5, lams=None):
    out = []
    lams = list(padded_partitions(max_weight, 3, min_length=3)) if lams is None else lams
    zero = Fraction(0)
    for t in ts:
        for lam in lams:
            lam = pad(lam, 3)
            O = macdonald_Q(tuple(lam), zero, t)
            ctx = make_context(3, lam, zero, t, special=True)
            R = raising_Q(lam, ctx)
            H = hl_raising_Q(lam, t)
            out.append(_eq(f"hall-littlewood/raise/{list(lam)}", {"t": str(t)}, R == O,
                           _sym_witness(R, O)))
            out.append(_eq(f"hall-littlewood/expansion/{list(lam)}", {"t": str(t)}, H == O,
                           _sym_witness(H, O)))
    return out


def truncation_checks(qs, seed=1):
    out = []
    for q in qs:
        for k in (2, 3, 4):
            ctx = make_context(3, None, q, q ** k, seed=seed, special=True)
            bad = None
            for th in all_thetas(3, k + 1):
                if max(th.entries) < k:
                    continue
                val = c_ledger(th).limit(ctx, "t")  # t = q^k z, z -> 1
                if val and bad is None:
                    bad = {"theta": list(th.entries), "value": str(val)}
            out.append(_eq(f"truncation/c=0/k={k}", {"q": str(q)}, bad is None, bad))
            out.append(residual_report(ctx, 4, tag=f"truncation/eigen/t=q^{k}"))
        ctx = make_context(4, None, q, q ** 2, seed=seed, special=True)
        out.append(residual_report(ctx, 3, tag="truncation/eigen/t=q^2"))
    return out


def tilde_checks(points, bound=3, seed=1):
    out = []
    for q, t in points:
        ctx = make_context(3, None, q, t, seed=seed)
        for th in all_thetas(3, bound):
            out.append(n3_tilde_check(th, ctx))
    return out


def det_checks(points, trials=5, seed=0):
    rng = random.Random(seed)
    out = []
    for q, t in points:
        for k in (2, 3):
            for trial in range(trials):
                u = [Fraction(rng.randint(2, 60), rng.randint(2, 60)) for _ in range(k)]
                v = [Fraction(rng.randint(2, 60), rng.randint(2, 60)) for _ in range(k)]
                if len(set(v)) < k:
                    continue
                try:
                    a, b = det_factor_subset(u, v, t), det_factor_matrix(u, v, t)
                except ZeroDivisionError:
                    continue
                out.append(_eq(f"det/k={k}/trial={trial}", _pt(q, t), a == b,
                               {"subset": str(a), "matrix": str(b)}))
    return out


def two_route_checks(points, seed=1, max_theta=5):
    out = []
    for q, t in points:
        ctx2 = make_context(2, None, q, t, seed=seed)
        ctx3 = make_context(3, None, q, t, seed=seed)
        bad2 = next(({"theta": th} for th in range(max_theta + 1)
                     if c_coeff(ThetaMatrix(2, (th,)), ctx2) != c2_explicit(th, ctx2)), None)
        out.append(_eq("two-route/c2", _pt(q, t), bad2 is None, bad2))
        bad3 = next(({"theta": list(th.entries)} for th in all_thetas(3, 3)
                     if c_coeff(th, ctx3) != c3_explicit(*th.entries, ctx3)), None)
        out.append(_eq("two-route/c3", _pt(q, t), bad3 is None, bad3))
        bad_jj = None
        for th in range(max_theta + 1):
            a, b = jj_coeff(th, ctx2)
            if a != b:
                bad_jj = {"theta": th, "difference": str(a), "closed_form": str(b)}
                break
        out.append(_eq("two-route/jing-jozefiak", _pt(q, t), bad_jj is None, bad_jj))
        r = ctx2.ratio(1, 2)
        bad_rec = None
        for th in range(1, max_theta + 1):
            prev = c_coeff(ThetaMatrix(2, (th - 1,)), ctx2)
            cur = c_coeff(ThetaMatrix(2, (th,)), ctx2)
            qt = q ** th
            if cur != t * (1 - qt / t) * (1 - qt * r / t) / ((1 - qt) * (1 - qt * r)) * prev:
                bad_rec = {"theta": th}
                break
        out.append(_eq("two-route/recurrence", _pt(q, t), bad_rec is None, bad_rec))
    return out


def identity_checks(points, seeds=(1,), N=4, strict=False):
    out = []
    for q, t in points:
        for seed in seeds:
            ctx = make_context(3, None, q, t, seed=seed)
            out.append(identity_n3(ctx, N, conjectural=not strict))
        ctx = make_context(3, None, q, q, seed=1, special=True)
        out.append(identity_n3(ctx, N, conjectural=not strict))
    return out


def full_suite(points, strict=False):
    qs = [q for q, _ in points]
    ts = [t for _, t in points]
    return (oracle_checks(points) + formula_checks(points) + compare_checks(points, strict)
            + eigen_checks(points, strict=strict) + schur_checks(qs) + hall_littlewood_checks(ts)
            + truncation_checks(qs) + tilde_checks(points) + det_checks(points)
            + identity_checks(points, strict=strict) + two_route_checks(points))


__all__ = [
    "oracle_checks", "formula_checks", "compare_checks", "eigen_checks", "schur_checks",
    "hall_littlewood_checks", "truncation_checks", "tilde_checks", "det_checks",
    "two_route_checks", "identity_checks", "full_suite", "formula_partitions",
    "padded_partitions", "N4_SAMPLE", "clear_caches",
]
