"""
Graded characters for category O of L(g, X_n).

A character is a finitely supported map (degree, g-weight, x-weight) -> int,
known exactly up to a truncation degree D.  The degree grading keeps every
multiplicity finite: for S and H the x-weight alone does not pin down the
polynomial degree.

Conventions: every module is normalised to depth 0, so its top L_0-piece
sits in degree 0.  A factor appearing higher up in a module carries an
explicit shift q^d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .matrixlie import longest_weyl_dual, weight_multiplicities
from .polyalgebra import monomials
from .toroidal import AlgebraConfig, graded_slice, xi


def _key(d, g, x) -> tuple:
    return (int(d), tuple(int(a) for a in g), tuple(Fraction(a) for a in x))


@dataclass(frozen=True)
class GradedCharacter:
    terms: dict = field(hash=False)
    D: int
    c: tuple | None = None  # central-charge label, metadata only

    def __post_init__(self):
        clean = {}
        for k, v in self.terms.items():
            if v and k[0] <= self.D:
                kk = _key(*k)
                clean[kk] = clean.get(kk, 0) + int(v)
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})

    @classmethod
    def zero(cls, D: int) -> "GradedCharacter":
        return cls({}, D)

    @classmethod
    def unit(cls, cfg: AlgebraConfig, D: int) -> "GradedCharacter":
        return cls({(0, _zero_g(cfg), _zero_x(cfg)): 1}, D)

    # --- ring structure -----------------------------------------------------

    def _meet(self, other: "GradedCharacter") -> int:
        return min(self.D, other.D)

    def _label(self, other: "GradedCharacter"):
        if self.c is not None and other.c is not None and self.c != other.c:
            raise ValueError("characters carry different central labels")
        return self.c if self.c is not None else other.c

    def __add__(self, other: "GradedCharacter") -> "GradedCharacter":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GradedCharacter(out, self._meet(other), self._label(other))

    def __neg__(self) -> "GradedCharacter":
        return GradedCharacter({k: -v for k, v in self.terms.items()}, self.D, self.c)

    def __sub__(self, other: "GradedCharacter") -> "GradedCharacter":
        return self + (-other)

    def __mul__(self, other) -> "GradedCharacter":
        if isinstance(other, int):
            return GradedCharacter({k: other * v for k, v in self.terms.items()}, self.D, self.c)
        D = self._meet(other)
        out = {}
        for (d1, g1, x1), a in self.terms.items():
            for (d2, g2, x2), b in other.terms.items():
                d = d1 + d2
                if d > D:
                    continue
                k = (d, tuple(p + q for p, q in zip(g1, g2)), tuple(p + q for p, q in zip(x1, x2)))
                out[k] = out.get(k, 0) + a * b
        return GradedCharacter(out, D, self._label(other))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        D = self._meet(other)
        return self.truncate(D).terms == other.truncate(D).terms

    def shift(self, k: int) -> "GradedCharacter":
        """Multiply by q^k.  Known range moves with it."""
        return GradedCharacter({(d + k, g, x): v for (d, g, x), v in self.terms.items()}, self.D + k, self.c)

    def truncate(self, D: int) -> "GradedCharacter":
        if D > self.D:
            raise ValueError(f"character only known to degree {self.D}")
        return GradedCharacter({k: v for k, v in self.terms.items() if k[0] <= D}, D, self.c)

    def relabel(self, c) -> "GradedCharacter":
        return GradedCharacter(self.terms, self.D, None if c is None else tuple(Fraction(x) for x in c))

    # --- inspection ----------------------------------------------------------

    def slice(self, d: int) -> dict:
        return {(g, x): v for (dd, g, x), v in self.terms.items() if dd == d}

    def dims(self, lo: int = 0) -> list:
        out = [0] * (self.D - lo + 1)
        for (d, _, _), v in self.terms.items():
            if d >= lo:
                out[d - lo] += v
        return out

    def min_degree(self):
        return min((k[0] for k in self.terms), default=None)

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    def forget_degree(self) -> dict:
        out = {}
        for (_, g, x), v in self.terms.items():
            out[(g, x)] = out.get((g, x), 0) + v
        return {k: v for k, v in out.items() if v}

    def entries(self) -> list:
        return sorted(self.terms.items())


def _zero_g(cfg: AlgebraConfig) -> tuple:
    return (0,) * (cfg.g_rank - 1)


def _zero_x(cfg: AlgebraConfig) -> tuple:
    return (0,) * {"W": cfg.n, "S": cfg.n - 1, "H": cfg.n // 2}[cfg.xkind]


@dataclass(frozen=True)
class LabeledWeight:
    lam: tuple
    mu: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(a) for a in self.lam))
        object.__setattr__(self, "mu", tuple(int(a) for a in self.mu))
        object.__setattr__(self, "c", tuple(Fraction(a) for a in self.c))

    @classmethod
    def exceptional(cls, cfg: AlgebraConfig, k: int) -> "LabeledWeight":
        return cls(_zero_g(cfg), mu_k(cfg, k), (0,) * cfg.n)


def mu_k(cfg: AlgebraConfig, k: int) -> tuple:
    """epsilon_1 + ... + epsilon_k in the coordinates of (X_n)_0."""
    n = cfg.n
    if cfg.xkind == "W":
        return tuple(1 if i < k else 0 for i in range(n))
    if cfg.xkind == "S":
        a = tuple(1 if i < k else 0 for i in range(n))
        return tuple(x - a[-1] for x in a[:-1])
    return tuple(1 if i < k else 0 for i in range(n // 2))


def exceptional_indices(cfg: AlgebraConfig, lw: LabeledWeight) -> list:
    """All k with lw == (0, mu_k, 0): 0..n for W and S (for S, mu_n = mu_0), 0..m for H."""
    if any(lw.lam) or any(lw.c):
        return []
    top = cfg.n // 2 if cfg.xkind == "H" else cfg.n
    return [k for k in range(top + 1) if mu_k(cfg, k) == lw.mu]


def reducible_index(cfg: AlgebraConfig, lw: LabeledWeight):
    """k when the Shen-Larsson module of lw is reducible, else None (W: k = n is irreducible)."""
    ks = [k for k in exceptional_indices(cfg, lw) if k <= cfg.n_x and not (cfg.xkind == "W" and k == cfg.n)]
    return min(ks) if ks else None


# --- building blocks ---------------------------------------------------------

@lru_cache(maxsize=None)
def gamma(cfg: AlgebraConfig, D: int) -> GradedCharacter:
    """Character of A_n: one e^{xi_r} per monomial t^r."""
    zg = _zero_g(cfg)
    terms = {}
    for d in range(D + 1):
        for r in monomials(cfg.n, d):
            k = _key(d, zg, xi(cfg.xkind, r))
            terms[k] = terms.get(k, 0) + 1
    return GradedCharacter(terms, D)


def root_census(cfg: AlgebraConfig, D: int) -> dict:
    """(degree, g-weight, x-weight) -> dim of that root space of L_{>=1}, degrees 1..D."""
    out = {}
    for d in range(1, D + 1):
        sl_ = graded_slice(AlgebraConfig(cfg.xkind, cfg.n, cfg.g_rank, max(D, cfg.D)), d)
        for w in sl_.weights:
            k = _key(d, w.g_part, w.x_part)
            out[k] = out.get(k, 0) + 1
    return out


@lru_cache(maxsize=None)
def upsilon(cfg: AlgebraConfig, D: int) -> GradedCharacter:
    """Truncated product of (1 - e^alpha)^(-dim L_alpha) over the roots of L_{>=1}."""
    acc = GradedCharacter.unit(cfg, D)
    for (d, g, x), m in sorted(root_census(cfg, D).items()):
        series = {}
        for j in range(D // d + 1):
            series[(j * d, tuple(j * a for a in g), tuple(j * a for a in x))] = comb(m + j - 1, j)
        acc = acc * GradedCharacter(series, D)
    return acc


def pbw_census(cfg: AlgebraConfig, D: int) -> GradedCharacter:
    """Weight census of ordered PBW monomials in a basis of L_{>=1}, by brute enumeration."""
    basis = []
    for d in range(1, D + 1):
        sl_ = graded_slice(AlgebraConfig(cfg.xkind, cfg.n, cfg.g_rank, max(D, cfg.D)), d)
        basis += [(d, w) for w in sl_.weights]
    terms = {}
    for size in range(D + 1):
        for mono in combinations_with_replacement(range(len(basis)), size):
            deg = sum(basis[i][0] for i in mono)
            if deg > D:
                continue
            g = tuple(sum(col) for col in zip(_zero_g(cfg), *(basis[i][1].g_part for i in mono)))
            x = tuple(sum(col) for col in zip(_zero_x(cfg), *(basis[i][1].x_part for i in mono)))
            k = _key(deg, g, x)
            terms[k] = terms.get(k, 0) + 1
    return GradedCharacter(terms, D)


def ch_L0(cfg: AlgebraConfig, lw: LabeledWeight, D: int = 0) -> GradedCharacter:
    """Degree-0 character of the irreducible L_0-module V(lam) (x) L0(mu)."""
    gm = weight_multiplicities("sl", cfg.g_rank, lw.lam)
    xa = cfg.x_alg
    xm = weight_multiplicities(xa.kind, xa.size, lw.mu)
    terms = {(0, g, x): a * b for g, a in gm.items() for x, b in xm.items()}
    return GradedCharacter(terms, D, lw.c)


def ch_standard(cfg: AlgebraConfig, lw: LabeledWeight, D: int) -> GradedCharacter:
    return (upsilon(cfg, D) * ch_L0(cfg, lw, D)).relabel(lw.c)


def ch_costandard(cfg: AlgebraConfig, lw: LabeledWeight, D: int) -> GradedCharacter:
    return (gamma(cfg, D) * ch_L0(cfg, lw, D)).relabel(lw.c)


# --- irreducible characters ----------------------------------------------------

def ch_irreducible(cfg: AlgebraConfig, lw: LabeledWeight, D: int) -> GradedCharacter:
    """Closed formulas for ch L(lam, mu, c), graded with depth 0 at the top.

    Non-exceptional: Gamma ch L0.  Exceptional W/S:
        sum_{i<k} (-1)^(k-i+1) q^-(k-i) Gamma ch L0(mu_i) + (-1)^k q^-k e^0.
    Exceptional H:
        sum_{i<k} (-1)^(k-i+1) (k-i) q^-(k-i) Gamma ch L0(mu_i) + (-1)^k (k+1) q^-k e^0.
    Each factor q^-1 records that the next exceptional irreducible sits one
    degree above its predecessor inside a Shen-Larsson module.
    """
    k = reducible_index(cfg, lw)
    if k is None:
        return ch_costandard(cfg, lw, D)
    top = D + k
    out = GradedCharacter.unit(cfg, top) * ((-1) ** k * (k + 1 if cfg.xkind == "H" else 1))
    out = out.shift(-k)
    for i in range(k):
        coef = (-1) ** (k - i + 1) * ((k - i) if cfg.xkind == "H" else 1)
        piece = ch_costandard(cfg, LabeledWeight.exceptional(cfg, i), top) * coef
        out = out + piece.shift(-(k - i))
    return out.truncate(D).relabel(lw.c)


def h_recursion_check(cfg: AlgebraConfig, D: int) -> list:
    """Degrees/weights where C_{r+1} != q^-1 Gamma L0(mu_r) - 2 q^-1 C_r - q^-2 C_{r-1} fails."""
    if cfg.xkind != "H":
        raise ValueError("the recursion is stated for H")
    m = cfg.n // 2
    pad = D + m + 2

    def C(r):
        if r < 0:
            return GradedCharacter.zero(pad)
        return ch_irreducible(cfg, LabeledWeight.exceptional(cfg, r), pad)

    bad = []
    for r in range(0, m):
        lhs = C(r + 1).truncate(D)
        rhs = ch_costandard(cfg, LabeledWeight.exceptional(cfg, r), pad).shift(-1)
        rhs = rhs - C(r).shift(-1) * 2 - C(r - 1).shift(-2)
        rhs = rhs.truncate(D)
        if lhs != rhs:
            bad.append(r + 1)
    return bad


# --- composition factors -----------------------------------------------------

def stated_composition(cfg: AlgebraConfig, k: int) -> dict:
    """Composition multiplicities of V(0, mu_k, 0) as given by the structure propositions.

    Keyed by exceptional index j; W/S: mu_k and mu_{k+1} once each, H: mu_{k-1}
    and mu_{k+1} once, mu_k twice, with mu_{-1} = mu_{m+1} = 0.
    """
    if cfg.xkind in ("W", "S"):
        if not 0 <= k <= cfg.n - 1:
            raise ValueError("k out of range")
        return {k: 1, k + 1: 1}
    m = cfg.n // 2
    if not 0 <= k <= m:
        raise ValueError("k out of range")
    out = {k: 2}
    if k >= 1:
        out[k - 1] = 1
    if k + 1 <= m:
        out[k + 1] = 1
    return out


def _dominant_top(residual: dict, xkind: str) -> tuple:
    """The lexicographically largest (g, x) weight; a highest weight for these root orders."""
    return max(residual)


def decompose_L0(cfg: AlgebraConfig, slice_: dict) -> dict:
    """Split a finite L_0-character (g, x) -> mult into irreducibles (lam, mu) -> mult."""
    res = {k: v for k, v in slice_.items() if v}
    out = {}
    xa = cfg.x_alg
    while res:
        top = _dominant_top(res, cfg.xkind)
        mult = res[top]
        if mult < 0:
            raise ValueError("slice is not a genuine L_0-character")
        g, x = top
        lw = (g, tuple(int(a) for a in x))
        out[lw] = out.get(lw, 0) + mult
        gm = weight_multiplicities("sl", cfg.g_rank, g)
        xm = weight_multiplicities(xa.kind, xa.size, lw[1])
        for gw, a in gm.items():
            for xw, b in xm.items():
                kk = (tuple(gw), tuple(Fraction(z) for z in xw))
                res[kk] = res.get(kk, 0) - mult * a * b
                if not res[kk]:
                    del res[kk]
    return out


@dataclass
class Composition:
    factors: list  # (label, shift, mult)
    reconciliation: list  # per degree: (degree, dim V, dim of sum of factors)
    balanced: bool
    note: str = ""

    def totals(self) -> dict:
        out = {}
        for label, _, m in self.factors:
            out[label] = out.get(label, 0) + m
        return out


def _socle_character(cfg: AlgebraConfig, j: int, D: int) -> GradedCharacter:
    from . import shenlarsson as sl

    m = sl.exceptional_module(AlgebraConfig(cfg.xkind, cfg.n, cfg.g_rank, max(D, 1)), j, D)
    sub = sl.bottom_span(m, D)
    terms = {}
    for (d, g, x), v in sl.slice_census(m, sub.spaces).items():
        terms[(d, g, x)] = v
    return GradedCharacter(terms, D)


def factor_label(cfg: AlgebraConfig, lam, mu) -> str:
    if not any(lam):
        ks = exceptional_indices(cfg, LabeledWeight(lam, mu, (0,) * cfg.n))
        if ks:
            return f"L(0,mu_{min(ks)},0)"
    return f"L({','.join(map(str, lam))};{','.join(map(str, mu))})"


def exceptional_composition(cfg: AlgebraConfig, k: int, D: int, mode: str = "formula") -> Composition:
    """Peel ch V(0, mu_k, 0) into irreducible characters from the bottom degree up.

    ``mode="formula"`` uses the closed irreducible characters;
    ``mode="census"`` uses socle censuses of the constructed exceptional modules.
    Balanced means every residual stayed non-negative and vanished by degree D.
    """
    top = cfg.n if cfg.xkind == "W" else cfg.n_x
    if not 0 <= k <= top:
        raise ValueError(f"k must lie in 0..{top}")
    if mode not in ("formula", "census"):
        raise ValueError("mode is 'formula' or 'census'")
    lw = LabeledWeight.exceptional(cfg, k)
    target = ch_costandard(cfg, lw, D)
    residual = target
    factors = []
    cache = {}

    def irr_char(lam, mu, depth):
        key = (lam, mu, depth)
        if key not in cache:
            wt = LabeledWeight(lam, mu, (0,) * cfg.n)
            j = reducible_index(cfg, wt)
            if mode == "census" and j is not None:
                cache[key] = _socle_character(cfg, j, depth)
            else:
                cache[key] = ch_irreducible(cfg, wt, depth)
        return cache[key]

    balanced, note = True, ""
    while residual.terms:
        d = residual.min_degree()
        pieces = residual.slice(d)
        if any(v < 0 for v in pieces.values()):
            balanced, note = False, f"negative residual in degree {d}"
            break
        try:
            parts = decompose_L0(cfg, pieces)
        except ValueError:
            balanced, note = False, f"degree {d} residual is not an L_0-character"
            break
        for (lam, mu), mult in sorted(parts.items()):
            piece = irr_char(lam, mu, D - d)
            if not piece.is_nonnegative() or piece.min_degree() != 0:
                balanced = False
                note = f"character of {factor_label(cfg, lam, mu)} is not a genuine module character"
            factors.append((factor_label(cfg, lam, mu), d, mult))
            residual = residual - piece.shift(d) * mult
        if not balanced:
            break
    recon = []
    total = target - residual
    for d in range(D + 1):
        recon.append((d, target.dims()[d], total.dims()[d]))
    if residual.terms and balanced:
        balanced, note = False, "residual left over"
    return Composition(factors, recon, balanced, note)


# --- tilting -----------------------------------------------------------------

def dual_label(cfg: AlgebraConfig, lw: LabeledWeight) -> LabeledWeight:
    """(-w0 lam, -w0 mu - E|h, -c) with E the semi-infinite character (nonzero only for W)."""
    lam = longest_weyl_dual("S", lw.lam) if lw.lam else lw.lam
    mu = longest_weyl_dual(cfg.xkind, lw.mu)
    if cfg.xkind == "W":
        mu = tuple(a - 1 for a in mu)
    return LabeledWeight(lam, mu, tuple(-a for a in lw.c))


def _reducible_range(cfg: AlgebraConfig) -> range:
    return range(cfg.n) if cfg.xkind in ("W", "S") else range(cfg.n // 2 + 1)


def tilting_multiplicities(cfg: AlgebraConfig, lw: LabeledWeight) -> dict:
    """[T(lw) : Delta(lw')] = [V(dual lw') : L(dual lw)], using the stated composition tables."""
    nu = dual_label(cfg, lw)
    nu_ks = exceptional_indices(cfg, nu)
    out = {}
    reducible_duals = {j: dual_label(cfg, LabeledWeight.exceptional(cfg, j)) for j in _reducible_range(cfg)}
    if lw not in reducible_duals.values():
        out[lw] = 1
    for j, lwp in reducible_duals.items():
        table = stated_composition(cfg, j)
        mult = max((table.get(i, 0) for i in nu_ks), default=0)
        if mult:
            out[lwp] = out.get(lwp, 0) + mult
    return out


def ch_tilting(cfg: AlgebraConfig, lw: LabeledWeight, D: int) -> GradedCharacter:
    acc = GradedCharacter.zero(D)
    for lwp, m in sorted(tilting_multiplicities(cfg, lw).items(), key=lambda kv: (kv[0].lam, kv[0].mu)):
        acc = acc + ch_standard(cfg, lwp, D).relabel(None) * m
    return acc.relabel(lw.c)


def add_eps(cfg: AlgebraConfig, mu: tuple, i: int, sign: int = 1) -> tuple:
    """mu + sign * epsilon_i (1-based i) in the stored coordinates of (X_n)_0."""
    n = cfg.n
    if cfg.xkind == "W":
        return tuple(a + sign * (k == i - 1) for k, a in enumerate(mu))
    if cfg.xkind == "S":
        a = list(mu) + [0]
        a[i - 1] += sign
        return tuple(x - a[-1] for x in a[:-1])
    m = n // 2
    if not 1 <= i <= m:
        raise ValueError("index outside 1..m")
    return tuple(a + sign * (k == i - 1) for k, a in enumerate(mu))


def tilting_closed_form(cfg: AlgebraConfig, lw: LabeledWeight, D: int, literal: bool = False) -> GradedCharacter:
    """Closed tilting characters as sums of Upsilon * ch L0.

    W/S with lw = dual(mu_j), j >= 1:  ch L0(mu) + ch L0(mu + eps_{n+1-j}).
    H with lw = mu_k:                  ch L0(mu_{k-1}) + 2 ch L0(mu_k) + ch L0(mu_{k+1}).
    ``literal=True`` evaluates the displayed index pattern instead
    (W/S: hypothesis dual(mu_k) with eps_{n-k}; H: mu + eps_k and mu - eps_{k+1});
    it raises ValueError when that pattern produces a non-dominant weight.
    """
    from .matrixlie import is_dominant

    xa = cfg.x_alg
    ups = upsilon(cfg, D)

    def L0(mu):
        if not is_dominant(xa.kind, xa.size, mu):
            raise ValueError(f"{mu} is not dominant")
        return ch_L0(cfg, LabeledWeight(lw.lam, mu, lw.c), D)

    terms = [(1, lw.mu)]
    if not any(lw.lam) and not any(lw.c):
        if cfg.xkind in ("W", "S"):
            for j in range(1, cfg.n + 1):
                if dual_label(cfg, LabeledWeight.exceptional(cfg, j)).mu == lw.mu and not literal:
                    terms = [(1, lw.mu), (1, add_eps(cfg, lw.mu, cfg.n + 1 - j))]
                    break
            if literal:
                for k in range(cfg.n):
                    if dual_label(cfg, LabeledWeight.exceptional(cfg, k)).mu == lw.mu:
                        if cfg.n - k < 1:
                            raise ValueError("eps index out of range")
                        terms = [(1, lw.mu), (1, add_eps(cfg, lw.mu, cfg.n - k))]
                        break
        else:
            m = cfg.n // 2
            for k in range(m + 1):
                if mu_k(cfg, k) == lw.mu:
                    if literal:
                        terms = [(2, lw.mu)]
                        if k >= 1:
                            terms.append((1, add_eps(cfg, lw.mu, k, +1)))
                        if k + 1 <= m:
                            terms.append((1, add_eps(cfg, lw.mu, k + 1, -1)))
                    else:
                        terms = [(2, lw.mu)]
                        if k >= 1:
                            terms.append((1, mu_k(cfg, k - 1)))
                        if k + 1 <= m:
                            terms.append((1, mu_k(cfg, k + 1)))
                    break
    acc = GradedCharacter.zero(D)
    for coef, mu in terms:
        acc = acc + (ups * L0(mu).relabel(None)) * coef
    return acc.relabel(lw.c)


# --- brute force ----------------------------------------------------------------

def brute_character(module, D: int | None = None) -> GradedCharacter:
    """Exact weight census of a constructed Shen-Larsson module."""
    from .shenlarsson import slice_census

    D = module.D if D is None else D
    census = {k: v for k, v in slice_census(module).items() if k[0] <= D}
    return GradedCharacter(census, D, module.c)
