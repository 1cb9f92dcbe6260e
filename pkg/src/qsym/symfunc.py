"""Partitions and symmetric functions in the power-sum and monomial bases."""

from __future__ import annotations

import itertools
import json
import math
import os
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .scalar import format_scalar, parse_rational

POWER = "p"
MONOMIAL = "m"

DEFAULT_MAX_DEGREE = 8


class BasisMismatch(TypeError):
    pass


class DegreeTooLarge(ValueError):
    pass


def max_degree() -> int:
    return int(os.environ.get("QSYM_MAX_DEGREE", DEFAULT_MAX_DEGREE))


def check_degree(d: int) -> None:
    if d > max_degree():
        raise DegreeTooLarge(f"degree {d} exceeds the cap {max_degree()}")


# ---------------------------------------------------------------------------
# partitions

def normalize(parts) -> tuple:
    """Sorted weakly decreasing tuple with zeros removed."""
    out = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if out and out[-1] < 0:
        raise ValueError(f"negative part in {parts}")
    return out


def pad(lam, n: int) -> tuple:
    lam = tuple(lam)
    if len(normalize(lam)) > n:
        raise ValueError(f"{lam} has more than {n} nonzero parts")
    lam = normalize(lam)
    return lam + (0,) * (n - len(lam))


def parse_partition(text: str) -> tuple:
    parts = tuple(int(x) for x in text.split(",") if x.strip() != "")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)) or any(p < 0 for p in parts):
        raise ValueError(f"not a partition: {text!r}")
    return parts


def format_partition(lam) -> str:
    return ",".join(str(p) for p in lam)


@lru_cache(maxsize=None)
def partitions(d: int, max_part: int | None = None) -> tuple:
    """Partitions of d in decreasing lexicographic order."""
    if max_part is None:
        max_part = d
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def dominates(lam, mu) -> bool:
    """True iff mu <= lam in dominance order (equal weights assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if b > a:
            return False
    return True


def z_factor(lam) -> int:
    out = 1
    for part, mult in Counter(lam).items():
        out *= part ** mult * math.factorial(mult)
    return out


# ---------------------------------------------------------------------------
# SymF

class SymF:
    """Finite linear combination of basis elements indexed by partitions."""

    __slots__ = ("basis", "terms")

    def __init__(self, terms=None, basis=POWER):
        self.basis = basis
        self.terms = {}
        for lam, c in (terms or {}).items():
            if c:
                lam = normalize(lam)
                self.terms[lam] = self.terms.get(lam, 0) + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def one(cls, basis=POWER):
        return cls({(): Fraction(1)}, basis)

    @classmethod
    def zero(cls, basis=POWER):
        return cls({}, basis)

    @property
    def degrees(self):
        return {sum(lam) for lam in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees
        if len(ds) > 1:
            raise ValueError("SymF is not homogeneous")
        return ds.pop() if ds else 0

    def _check(self, other):
        if self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SymF(out, self.basis)

    def __neg__(self):
        return SymF({k: -v for k, v in self.terms.items()}, self.basis)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SymF({k: c * v for k, v in self.terms.items()}, self.basis)

    def __mul__(self, other):
        if not isinstance(other, SymF):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, SymF):
            return NotImplemented
        if self.basis != other.basis:
            return convert(self, POWER).terms == convert(other, POWER).terms
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, lam):
        return self.terms.get(normalize(lam), Fraction(0))

    def map_coeffs(self, fn):
        return SymF({k: fn(v) for k, v in self.terms.items()}, self.basis)

    def to_dict(self) -> dict:
        return {
            "basis": "PowerSum" if self.basis == POWER else "Monomial",
            "terms": [{"partition": format_partition(k), "coeff": format_scalar(v)}
                      for k, v in sorted(self.terms.items(), reverse=True)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SymF":
        basis = POWER if data["basis"] == "PowerSum" else MONOMIAL
        return cls({parse_partition(t["partition"]): parse_rational(t["coeff"])
                    for t in data["terms"]}, basis)

    def __repr__(self):
        inner = " + ".join(f"({v})*{self.basis}{list(k)}" for k, v in
                           sorted(self.terms.items(), reverse=True))
        return f"SymF({inner or 0})"


def power_sum(lam) -> SymF:
    return SymF({tuple(lam): Fraction(1)}, POWER)


def monomial(lam) -> SymF:
    return SymF({tuple(lam): Fraction(1)}, MONOMIAL)


def multiply(f: SymF, g: SymF) -> SymF:
    if f.basis != POWER or g.basis != POWER:
        raise BasisMismatch("multiplication is defined in the power-sum basis only")
    out = {}
    for a, x in f.terms.items():
        for b, y in g.terms.items():
            k = tuple(sorted(a + b, reverse=True))
            out[k] = out.get(k, 0) + x * y
    return SymF(out, POWER)


# ---------------------------------------------------------------------------
# basis transitions

def _count_fillings(parts, target):
    # ways to assign each part to a variable so variable i receives target[i]
    @lru_cache(maxsize=None)
    def go(k, remaining):
        if k == len(parts):
            return 1 if not any(remaining) else 0
        total = 0
        p = parts[k]
        for i, r in enumerate(remaining):
            if r >= p:
                total += go(k + 1, remaining[:i] + (r - p,) + remaining[i + 1:])
        return total

    return go(0, tuple(target))


@lru_cache(maxsize=None)
def p_to_m_table(d: int) -> dict:
    """p_lam = sum_mu table[lam][mu] m_mu for partitions of d."""
    check_degree(d)
    table = {}
    for lam in partitions(d):
        row = {}
        for mu in partitions(d):
            c = _count_fillings(lam, mu)
            if c:
                row[mu] = c
        table[lam] = row
    return table


@lru_cache(maxsize=None)
def m_to_p_table(d: int) -> dict:
    """m_mu = sum_lam table[mu][lam] p_lam, by back-substitution.

    p_lam involves m_lam and m_mu with mu above lam in dominance, hence also
    in lexicographic order, so the system is triangular in that order.
    """
    fwd = p_to_m_table(d)
    inv = {}
    for lam in partitions(d):  # decreasing lex: higher ones are already known
        row = {lam: Fraction(1)}
        for mu, c in fwd[lam].items():
            if mu != lam:
                for nu, x in inv[mu].items():
                    row[nu] = row.get(nu, 0) - c * x
        diag = fwd[lam][lam]
        inv[lam] = {k: v / diag for k, v in row.items() if v}
    return inv


def convert(f: SymF, target: str) -> SymF:
    if f.basis == target:
        return f
    out = {}
    for lam, c in f.terms.items():
        d = sum(lam)
        table = p_to_m_table(d) if f.basis == POWER else m_to_p_table(d)
        for mu, x in table[lam].items():
            out[mu] = out.get(mu, 0) + c * x
    return SymF(out, target)


# ---------------------------------------------------------------------------
# scalar product and the g family

def power_norm(lam, q, t):
    """<p_lam, p_lam>_{q,t}."""
    val = Fraction(z_factor(lam))
    for part in lam:
        val = val * (1 - q ** part) / (1 - t ** part)
    return val


def scalar_product(f: SymF, g: SymF, q, t):
    f = convert(f, POWER)
    g = convert(g, POWER)
    if f.terms and g.terms and f.degrees != g.degrees:
        raise ValueError("scalar product of different degrees")
    total = Fraction(0)
    for lam, c in f.terms.items():
        other = g.terms.get(lam)
        if other:
            total = total + c * other * power_norm(lam, q, t)
    return total


def _g_weight(lam, q, t):
    val = Fraction(1, z_factor(lam))
    for part in lam:
        val = val * (1 - t ** part) / (1 - q ** part)
    return val


def g_row(k: int, q, t) -> SymF:
    """g_k(x; q, t) from exp(sum_r (1/r)(1 - t^r)/(1 - q^r) p_r y^r)."""
    if k < 0:
        return SymF.zero()
    check_degree(k)
    return _g_row(k, q, t)


@lru_cache(maxsize=4096)
def _g_row(k, q, t):
    return SymF({lam: _g_weight(lam, q, t) for lam in partitions(k)}, POWER)


def g_vector(a, q, t) -> SymF:
    """g_{a_1} g_{a_2} ... ; zero as soon as one index is negative."""
    if any(k < 0 for k in a):
        return SymF.zero()
    check_degree(sum(a))
    return _g_product(normalize(a), q, t)


@lru_cache(maxsize=4096)
def _g_product(a, q, t):
    out = SymF.one()
    for k in a:
        if k:
            out = multiply(out, _g_row(k, q, t))
    return out


def hl_q_row(k: int, t) -> SymF:
    """Hall-Littlewood q_k(x; t) = g_k(x; 0, t)."""
    return g_row(k, Fraction(0), t)


def _permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def jacobi_trudi_schur(lam, q) -> SymF:
    """det(h_{lam_i - i + j}) with h_k = g_k(x; q, q)."""
    lam = normalize(lam)
    n = len(lam)
    out = SymF.zero()
    for perm in itertools.permutations(range(n)):
        a = [lam[i] - i + perm[i] for i in range(n)]
        if any(k < 0 for k in a):
            continue
        term = g_vector(a, q, q)
        out = out + term.scale(_permutation_sign(perm))
    return out if n else SymF.one()
