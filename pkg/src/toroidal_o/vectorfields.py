"""
Polynomial vector fields: W_n and its special (S_n) and Hamiltonian (H_n)
subalgebras.

Every element is stored in W coordinates, a sparse map ``(r, i) -> coeff``
standing for ``sum coeff * t^r d_i`` with 0-based direction ``i``.  The
spanning symbols of S and H have linear relations, so the subalgebras are
described by per-degree rref bases in those coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exactla import RowSpace, SparseMat
from .polyalgebra import Poly, madd, monomials, msub, unit

KINDS = ("W", "S", "H")


def check_kind(kind: str, n: int) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown vector-field kind {kind!r}")
    if n < 1:
        raise ValueError("need at least one variable")
    if kind == "H" and n % 2:
        raise ValueError("H_n needs an even number of variables")


@dataclass(frozen=True)
class VFBasisSym:
    """``W``: t^r d_i.  ``S``: d_ij(t^r).  ``H``: d_H(t^r).  Directions are 0-based."""

    tag: str
    r: tuple
    i: int = 0
    j: int = 0

    @classmethod
    def w(cls, r, i):
        return cls("W", tuple(r), i)

    @classmethod
    def s(cls, r, i, j):
        return cls("S", tuple(r), i, j)

    @classmethod
    def h(cls, r):
        return cls("H", tuple(r))


@dataclass(frozen=True)
class VFElem:
    kind: str
    n: int
    combo: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        for (r, i), c in self.combo.items():
            if len(r) != self.n or not 0 <= i < self.n:
                raise ValueError(f"bad W coordinate {(r, i)} for n={self.n}")
            if not c:
                raise ValueError("stored zero coefficient")

    @classmethod
    def from_terms(cls, kind, n, items) -> "VFElem":
        acc = {}
        for key, c in items:
            acc[key] = acc.get(key, 0) + Fraction(c)
        return cls(kind, n, {k: c for k, c in acc.items() if c})

    def __bool__(self):
        return bool(self.combo)

    def _same(self, other: "VFElem") -> str:
        if other.n != self.n:
            raise ValueError("variable count mismatch")
        return join_kind(self.kind, other.kind)

    def __add__(self, other: "VFElem") -> "VFElem":
        kind = self._same(other)
        return VFElem.from_terms(kind, self.n, list(self.combo.items()) + list(other.combo.items()))

    def __neg__(self) -> "VFElem":
        return VFElem(self.kind, self.n, {k: -c for k, c in self.combo.items()})

    def __sub__(self, other: "VFElem") -> "VFElem":
        return self + (-other)

    def __mul__(self, c) -> "VFElem":
        c = Fraction(c)
        return VFElem(self.kind, self.n, {k: c * v for k, v in self.combo.items()} if c else {})

    __rmul__ = __mul__

    def degrees(self) -> set:
        return {sum(r) - 1 for r, _ in self.combo}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is zero or not homogeneous")
        return ds.pop()

    def component(self, d: int) -> "VFElem":
        return VFElem(self.kind, self.n, {k: c for k, c in self.combo.items() if sum(k[0]) - 1 == d})

    def as_kind(self, kind: str) -> "VFElem":
        return VFElem(kind, self.n, dict(self.combo))

    def coeff_vectors(self) -> list:
        """Per-direction coefficient polynomials g_i of ``sum g_i d_i``."""
        gs = [dict() for _ in range(self.n)]
        for (r, i), c in self.combo.items():
            gs[i][r] = c
        return [Poly(self.n, g) for g in gs]

    def __str__(self) -> str:
        if not self.combo:
            return "0"
        parts = []
        for (r, i), c in sorted(self.combo.items(), key=lambda kv: (sum(kv[0][0]), tuple(-x for x in kv[0][0]), kv[0][1])):
            mono = "*".join(f"t{k + 1}" + (f"^{e}" if e > 1 else "") for k, e in enumerate(r) if e)
            term = (mono + "*" if mono else "") + f"d{i + 1}"
            parts.append(term if c == 1 else ("-" + term if c == -1 else f"{c}*{term}"))
        return " + ".join(parts).replace("+ -", "- ")


def join_kind(a: str, b: str) -> str:
    """Common kind of two operands; W is the ambient algebra so W absorbs anything."""
    if a == b:
        return a
    if "W" in (a, b):
        return "W"
    raise ValueError(f"incompatible vector-field kinds {a} and {b}")


def w_elem(n: int, r, i: int, c=1, kind: str = "W") -> VFElem:
    return VFElem.from_terms(kind, n, [((tuple(r), i), c)])


def from_poly_coeffs(kind: str, gs) -> VFElem:
    n = len(gs)
    return VFElem.from_terms(kind, n, [((r, i), c) for i, g in enumerate(gs) for r, c in g.terms.items()])


def d_ij(r, i: int, j: int) -> VFElem:
    """d_ij(t^r) = d_j(t^r) d_i - d_i(t^r) d_j."""
    r = tuple(r)
    n = len(r)
    p = Poly.mono(r)
    return from_poly_coeffs("S", [p.diff(j) if k == i else (-p.diff(i) if k == j else Poly(n, {})) for k in range(n)])


def d_H(r) -> VFElem:
    """d_H(t^r) = sum_{j<=m} d_j(t^r) d_{m+j} - sum_{j>m} d_j(t^r) d_{j-m}."""
    r = tuple(r)
    n = len(r)
    check_kind("H", n)
    m = n // 2
    p = Poly.mono(r)
    gs = [Poly(n, {}) for _ in range(n)]
    for j in range(m):
        gs[m + j] = p.diff(j)
        gs[j] = -p.diff(m + j)
    return from_poly_coeffs("H", gs)


def expand_symbol(s: VFBasisSym) -> VFElem:
    n = len(s.r)
    if any(x < 0 for x in s.r):
        raise ValueError("exponents must be non-negative")
    if s.tag == "W":
        return w_elem(n, s.r, s.i)
    if not any(s.r):
        raise ValueError("spanning symbols need r != 0")
    if s.tag == "S":
        if not 0 <= s.i < s.j < n:
            raise ValueError("S symbol needs 0 <= i < j < n")
        return d_ij(s.r, s.i, s.j)
    if s.tag == "H":
        return d_H(s.r)
    raise ValueError(f"unknown tag {s.tag!r}")


def bracket_terms(r, i: int, s, j: int):
    """[t^r d_i, t^s d_j] = s_i t^(r+s-e_i) d_j - r_j t^(r+s-e_j) d_i as ((exp, dir), coeff) pairs."""
    n = len(r)
    rs = madd(r, s)
    out = []
    if s[i]:
        out.append(((msub(rs, unit(n, i)), j), s[i]))
    if r[j]:
        out.append(((msub(rs, unit(n, j)), i), -r[j]))
    return out


def bracket(a: VFElem, b: VFElem) -> VFElem:
    kind = a._same(b)
    acc = {}
    for (r, i), x in a.combo.items():
        for (s, j), y in b.combo.items():
            for key, c in bracket_terms(r, i, s, j):
                acc[key] = acc.get(key, 0) + x * y * c
    return VFElem(kind, a.n, {k: c for k, c in acc.items() if c})


def apply_to_poly(e: VFElem, p: Poly, D: int | None = None) -> Poly:
    """The derivation ``e`` applied to ``p``, dropping terms above degree ``D``."""
    items = []
    for (r, i), c in e.combo.items():
        for s, a in p.terms.items():
            if s[i]:
                t = madd(r, s)
                t = t[:i] + (t[i] - 1,) + t[i + 1:]
                if D is None or sum(t) <= D:
                    items.append((t, c * a * s[i]))
    return Poly.from_terms(e.n, items)


def as_operator(e: VFElem, D: int) -> Callable[[Poly], Poly]:
    return lambda p: apply_to_poly(e, p, D)


# --- degree slices ---------------------------------------------------------

@lru_cache(maxsize=None)
def w_coords(n: int, d: int) -> tuple:
    """Ordered W coordinates (r, i) of degree ``d``: monomials in graded-lex order, then direction."""
    return tuple((r, i) for r in monomials(n, d + 1) for i in range(n))


@lru_cache(maxsize=None)
def w_index(n: int, d: int) -> dict:
    return {key: k for k, key in enumerate(w_coords(n, d))}


def to_vec(e: VFElem, d: int) -> dict:
    idx = w_index(e.n, d)
    out = {}
    for key, c in e.combo.items():
        if sum(key[0]) - 1 != d:
            raise ValueError(f"term {key} is not of degree {d}")
        out[idx[key]] = c
    return out


def from_vec(kind: str, n: int, d: int, v: dict) -> VFElem:
    keys = w_coords(n, d)
    return VFElem(kind, n, {keys[k]: Fraction(c) for k, c in v.items() if c})


def spanning_symbols(kind: str, n: int, d: int) -> list:
    check_kind(kind, n)
    if d < -1:
        return []
    if kind == "W":
        return [VFBasisSym.w(r, i) for r, i in w_coords(n, d)]
    if kind == "S":
        return [VFBasisSym.s(r, i, j) for r in monomials(n, d + 2) for i in range(n) for j in range(i + 1, n)]
    return [VFBasisSym.h(r) for r in monomials(n, d + 2)]


@dataclass(frozen=True)
class DegreeBasis:
    kind: str
    n: int
    degree: int
    basis: SparseMat
    pivots: tuple

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def elements(self) -> list:
        return [from_vec(self.kind, self.n, self.degree, row) for row in self.basis.rows]

    def contains(self, e: VFElem) -> bool:
        if not e:
            return True
        space = RowSpace(self.basis.ncols)
        space._rows = {p: row for p, row in zip(self.pivots, self.basis.rows)}
        return space.contains(to_vec(e, self.degree))

    def coords(self, e: VFElem) -> list:
        """Coefficients of ``e`` against ``elements()``; raises if ``e`` is outside the slice."""
        if not self.contains(e):
            raise ValueError("element does not lie in this degree slice")
        v = to_vec(e, self.degree) if e else {}
        return [v.get(p, Fraction(0)) for p in self.pivots]


@lru_cache(maxsize=None)
def canonical_degree_basis(kind: str, n: int, d: int) -> DegreeBasis:
    """Rref basis of (X_n)_d in W coordinates.

    Every W coordinate is an h_X-weight vector and rref is unique, so the rows
    are automatically weight vectors (one weight per row).
    """
    check_kind(kind, n)
    ncols = len(w_coords(n, d)) if d >= -1 else 0
    space = RowSpace(ncols)
    for s in spanning_symbols(kind, n, d):
        space.add(to_vec(expand_symbol(s), d))
    return DegreeBasis(kind, n, d, space.to_mat(), tuple(space.pivots))


def degree_basis_elements(kind: str, n: int, d: int) -> list:
    return [e.as_kind(kind) for e in canonical_degree_basis(kind, n, d).elements()]


def contains(kind: str, e: VFElem) -> bool:
    """Membership of ``e`` in X_n, degree by degree."""
    return all(canonical_degree_basis(kind, e.n, d).contains(e.component(d)) for d in e.degrees())


def w_weight(r, i: int) -> tuple:
    """Weight of t^r d_i under span{t_l d_l}: r - e_i."""
    return tuple(x - (1 if k == i else 0) for k, x in enumerate(r))


def x_weight(kind: str, n: int, w: tuple) -> tuple:
    """Restrict a W-weight (epsilon coordinates) to h_X in the coordinates used throughout.

    S: (w_l - w_n)_{l<n}.  H: (w_l - w_{m+l})_{l<=m}.
    """
    if kind == "W":
        return tuple(w)
    if kind == "S":
        return tuple(w[l] - w[n - 1] for l in range(n - 1))
    m = n // 2
    return tuple(w[l] - w[m + l] for l in range(m))


def elem_weight(kind: str, e: VFElem) -> tuple:
    ws = {x_weight(kind, e.n, w_weight(r, i)) for r, i in e.combo}
    if len(ws) != 1:
        raise ValueError("element is not a weight vector")
    return ws.pop()


def degree_zero_to_matrix(e: VFElem) -> list:
    """t_i d_j -> E_ij."""
    if e and e.degrees() != {0}:
        raise ValueError("expected a homogeneous degree-0 element")
    n = e.n
    m = [[Fraction(0)] * n for _ in range(n)]
    for (r, j), c in e.combo.items():
        m[r.index(1)][j] += c
    return m


def matrix_to_degree_zero(kind: str, mat) -> VFElem:
    n = len(mat)
    return VFElem.from_terms(kind, n, [((unit(n, i), j), mat[i][j]) for i in range(n) for j in range(n) if mat[i][j]])


def triangular_generators(kind: str, n: int) -> dict:
    """Generators of n^-, h and n^+ for (X_n)_0, as VFElem lists."""
    check_kind(kind, n)

    def t_d(i, j, c=1):
        return w_elem(n, unit(n, i), j, c, kind)

    if kind in ("W", "S"):
        lower = [t_d(i, j) for i in range(n) for j in range(i)]
        upper = [t_d(i, j) for i in range(n) for j in range(i + 1, n)]
        if kind == "W":
            cartan = [t_d(i, i) for i in range(n)]
        else:
            cartan = [t_d(i, i) - t_d(n - 1, n - 1) for i in range(n - 1)]
        return {"n-": lower, "h": cartan, "n+": upper}
    m = n // 2
    cartan = [t_d(i, i) - t_d(m + i, m + i) for i in range(m)]
    upper = [t_d(i, j) - t_d(m + j, m + i) for i in range(m) for j in range(i + 1, m)]
    lower = [t_d(i, j) - t_d(m + j, m + i) for i in range(m) for j in range(i)]
    upper += [t_d(i, m + j) + t_d(j, m + i) if i != j else t_d(i, m + i) for i in range(m) for j in range(i, m)]
    lower += [t_d(m + i, j) + t_d(m + j, i) if i != j else t_d(m + i, i) for i in range(m) for j in range(i, m)]
    return {"n-": lower, "h": cartan, "n+": upper}
