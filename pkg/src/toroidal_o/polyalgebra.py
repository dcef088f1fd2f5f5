"""
The polynomial algebra A_n = Q[t_1, ..., t_n].

Exponent vectors are plain tuples of non-negative ints.  Monomials of a
fixed degree are enumerated in graded lexicographic order (t_1 > t_2 > ...),
which fixes every basis ordering downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Iterable, Sequence

from .exactla import SparseMat, solve_linear

MultiIndex = tuple


def unit(n: int, i: int) -> MultiIndex:
    return tuple(1 if k == i else 0 for k in range(n))


def madd(r: MultiIndex, s: MultiIndex) -> MultiIndex:
    return tuple(a + b for a, b in zip(r, s))


def msub(r: MultiIndex, s: MultiIndex):
    """``r - s``, or None when a coordinate goes negative (t^r = 0 off N^n)."""
    out = tuple(a - b for a, b in zip(r, s))
    if any(a < 0 for a in out):
        return None
    return out


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def falling(s: MultiIndex, k: MultiIndex) -> int:
    """Multi-index falling factorial s!/(s-k)!, zero unless k <= s."""
    out = 1
    for a, b in zip(s, k):
        if b > a:
            return 0
        for j in range(b):
            out *= a - j
    return out


def mbinom(r: MultiIndex, k: MultiIndex) -> int:
    return prod(comb(a, b) for a, b in zip(r, k))


def mfact(r: MultiIndex) -> int:
    return falling(r, r)


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple:
    """Exponent vectors of total degree ``d`` in graded-lex order."""
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def num_monomials(n: int, d: int) -> int:
    return comb(d + n - 1, n - 1) if d >= 0 else 0


def monomials_upto(n: int, d: int) -> list:
    return [r for k in range(d + 1) for r in monomials(n, k)]


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {r: i for i, r in enumerate(monomials(n, d))}


def below(gamma: MultiIndex) -> list:
    """All multi-indices componentwise <= gamma, graded-lex descending by degree."""
    box = itertools.product(*(range(g + 1) for g in gamma))
    return sorted(box, key=lambda r: (-sum(r), tuple(-x for x in r)))


@dataclass(frozen=True)
class Poly:
    n: int
    terms: dict = field(default_factory=dict, hash=False, compare=True)

    def __post_init__(self):
        for r, c in self.terms.items():
            if len(r) != self.n:
                raise ValueError(f"exponent {r} has wrong length for n={self.n}")
            if not c:
                raise ValueError("stored zero coefficient")

    @classmethod
    def const(cls, n: int, c=1) -> "Poly":
        c = Fraction(c)
        return cls(n, {(0,) * n: c} if c else {})

    @classmethod
    def mono(cls, r: Sequence[int], c=1) -> "Poly":
        c = Fraction(c)
        r = tuple(r)
        return cls(len(r), {r: c} if c else {})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        return cls.mono(unit(n, i))

    @classmethod
    def from_terms(cls, n: int, items: Iterable) -> "Poly":
        acc = {}
        for r, c in items:
            acc[r] = acc.get(r, 0) + Fraction(c)
        return cls(n, {r: c for r, c in acc.items() if c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        other = self._coerce(other)
        return Poly.from_terms(self.n, itertools.chain(self.terms.items(), other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.n, {r: -c for r, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.n, {r: c * a for r, a in self.terms.items()} if c else {})
        return Poly.from_terms(
            self.n,
            ((madd(r, s), a * b) for r, a in self.terms.items() for s, b in other.terms.items()),
        )

    __rmul__ = __mul__

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.n, other)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(r) for r in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(r) for r in self.terms}) <= 1

    def coeff(self, r: MultiIndex) -> Fraction:
        return self.terms.get(tuple(r), Fraction(0))

    def diff(self, i: int) -> "Poly":
        out = {}
        for r, c in self.terms.items():
            if r[i]:
                s = r[:i] + (r[i] - 1,) + r[i + 1:]
                out[s] = c * r[i]
        return Poly(self.n, out)

    def truncate(self, d: int) -> "Poly":
        return Poly(self.n, {r: c for r, c in self.terms.items() if sum(r) <= d})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda rc: (sum(rc[0]), tuple(-x for x in rc[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for r, c in self.sorted_terms():
            mono = "*".join(f"t{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(r) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def d_alpha_apply(p: Poly, alpha: MultiIndex) -> Poly:
    """Iterated partial derivative d_1^a_1 ... d_n^a_n applied to ``p``."""
    if len(alpha) != p.n:
        raise ValueError("multi-index length does not match variable count")
    out = {}
    for r, c in p.terms.items():
        s = msub(r, alpha)
        if s is not None:
            out[s] = c * falling(r, alpha)
    return Poly(p.n, out)


@dataclass(frozen=True)
class PairingSet:
    gamma: MultiIndex
    pairs: tuple  # ((f, g), ...)

    @property
    def n(self) -> int:
        return len(self.gamma)


def pairing_polynomials(n: int, gamma: Sequence[int]) -> PairingSet:
    """Polynomials (f_i, g_i) with sum_i f_i d^alpha(g_i) equal to 1 at alpha=gamma, else 0.

    Candidates are the complementary monomial pairs (t^(gamma-b), t^b) for
    b <= gamma; the coefficients come from an exact linear solve whose rows
    are the delta conditions on the coefficient of t^(gamma-alpha).
    """
    gamma = tuple(gamma)
    if len(gamma) != n or any(g < 0 for g in gamma):
        raise ValueError(f"gamma must lie in N^{n}")
    cand = below(gamma)
    col = {b: j for j, b in enumerate(cand)}
    rows, rhs = [], {}
    for i, alpha in enumerate(cand):
        rows.append({col[b]: Fraction(falling(b, alpha)) for b in cand if leq(alpha, b)})
        if alpha == gamma:
            rhs[i] = Fraction(1)
    x = solve_linear(SparseMat(tuple(rows), len(cand)), rhs)
    if x is None:
        raise RuntimeError(f"pairing system for gamma={gamma} is inconsistent")
    pairs = tuple(
        (Poly.mono(msub(gamma, b), x[col[b]]), Poly.mono(b)) for b in cand if x.get(col[b])
    )
    return PairingSet(gamma, pairs)


def pairing_value(ps: PairingSet, alpha: MultiIndex) -> Poly:
    n = ps.n
    total = Poly(n, {})
    for f, g in ps.pairs:
        total = total + f * d_alpha_apply(g, alpha)
    return total


def verify_pairing(ps: PairingSet) -> bool:
    """Check the delta identity for every alpha up to the exponents present in the g_i."""
    n = ps.n
    bound = list(ps.gamma)
    for _, g in ps.pairs:
        for r in g.terms:
            bound = [max(a, b) for a, b in zip(bound, r)]
    one = Poly.const(n)
    for alpha in itertools.product(*(range(b + 1) for b in bound)):
        val = pairing_value(ps, alpha)
        if alpha == ps.gamma:
            if val != one:
                return False
        elif val:
            return False
    return True
