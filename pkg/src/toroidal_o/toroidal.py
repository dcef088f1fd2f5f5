"""
The polynomial toroidal algebra L(g, X_n) = (g (x) A_n + Z) x| X_n.

Basis symbols are tuples:

* ``("d", r, i)``: the vector field t^r d_i (W coordinates, 0-based i);
* ``("x", a, r)``: g-basis element ``a`` tensored with t^r;
* ``("K", r, i)``: the central-type symbol t^r K_i.

Elements are sparse dicts ``symbol -> Fraction``.  The g factor is sl_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import vectorfields as vf
from .exactla import RowSpace, axpy
from .matrixlie import MatLieAlg, build_algebra, structure_constants
from .polyalgebra import falling, madd, mbinom, monomials, msub, unit


@dataclass(frozen=True)
class AlgebraConfig:
    xkind: str
    n: int
    g_rank: int = 2
    D: int = 4

    def __post_init__(self):
        vf.check_kind(self.xkind, self.n)
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.g_rank < 2:
            raise ValueError("g = sl_k needs k >= 2")
        if self.D < 1:
            raise ValueError("truncation degree must be >= 1")

    @property
    def g(self) -> MatLieAlg:
        return build_algebra("sl", self.g_rank)

    @property
    def x_alg(self) -> MatLieAlg:
        if self.xkind == "W":
            return build_algebra("gl", self.n)
        if self.xkind == "S":
            return build_algebra("sl", self.n)
        return build_algebra("sp", self.n)

    @property
    def n_x(self) -> int:
        """Range bound for exceptional indices: n, n-1 or m."""
        return {"W": self.n, "S": self.n - 1, "H": self.n // 2}[self.xkind]


@dataclass(frozen=True)
class HWeight:
    g_part: tuple
    x_part: tuple


def sym_degree(s) -> int:
    if s[0] == "d":
        return sum(s[1]) - 1
    return sum(s[2] if s[0] == "x" else s[1])


def elem_degrees(e: dict) -> set:
    return {sym_degree(s) for s in e}


def lin(*terms) -> dict:
    """Linear combination of (coeff, element) pairs."""
    out = {}
    for c, e in terms:
        axpy(Fraction(c), e, out)
    return out


def d_sym(r, i) -> dict:
    return {("d", tuple(r), i): Fraction(1)}


def x_sym(a, r) -> dict:
    return {("x", a, tuple(r)): Fraction(1)}


def k_sym(r, i) -> dict:
    return {("K", tuple(r), i): Fraction(1)}


def from_vf(e: vf.VFElem) -> dict:
    return {("d", r, i): c for (r, i), c in e.combo.items()}


def vf_part(e: dict, kind: str, n: int) -> vf.VFElem:
    return vf.VFElem(kind, n, {(s[1], s[2]): c for s, c in e.items() if s[0] == "d"})


@lru_cache(maxsize=None)
def _sym_bracket(g: MatLieAlg, s, t) -> tuple:
    """[s, t] for two basis symbols, as a tuple of (symbol, coeff)."""
    ks, kt = s[0], t[0]
    if ks == "d" and kt == "d":
        return tuple((("d",) + key, Fraction(c)) for key, c in vf.bracket_terms(s[1], s[2], t[1], t[2]))
    if ks == "d":
        r, i = s[1], s[2]
        if kt == "x":
            a, u = t[1], t[2]
            if not u[i]:
                return ()
            return ((("x", a, msub(madd(r, u), unit(len(r), i))), Fraction(u[i])),)
        u, j = t[1], t[2]
        if not u[i]:
            return ()
        return ((("K", msub(madd(r, u), unit(len(r), i)), j), Fraction(u[i])),)
    if kt == "d":
        return tuple((sym, -c) for sym, c in _sym_bracket(g, t, s))
    if ks == "x" and kt == "x":
        rs = madd(s[2], t[2])
        sc = structure_constants(g)[(s[1], t[1])]
        return tuple((("x", c, rs), v) for c, v in sorted(sc.items()))
    return ()


def bracket(cfg: AlgebraConfig, a: dict, b: dict) -> dict:
    g = cfg.g
    out = {}
    for s, x in a.items():
        for t, y in b.items():
            for sym, c in _sym_bracket(g, s, t):
                w = out.get(sym, 0) + x * y * c
                if w:
                    out[sym] = w
                else:
                    out.pop(sym, None)
    return out


# --- weights and slices ----------------------------------------------------

def xi(xkind: str, r) -> tuple:
    """h_X-weight of t^r."""
    return vf.x_weight(xkind, len(r), tuple(r))


def sym_weight(cfg: AlgebraConfig, s) -> HWeight:
    zero_g = tuple(Fraction(0) for _ in range(cfg.g.rank))
    if s[0] == "d":
        return HWeight(zero_g, vf.x_weight(cfg.xkind, cfg.n, vf.w_weight(s[1], s[2])))
    if s[0] == "x":
        return HWeight(tuple(cfg.g.weights[s[1]]), xi(cfg.xkind, s[2]))
    return HWeight(zero_g, xi(cfg.xkind, s[1]))


@dataclass(frozen=True, eq=False)
class Slice:
    cfg: AlgebraConfig
    degree: int
    basis: tuple  # elements (dicts)
    weights: tuple  # HWeight per element
    n_vf: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, e: dict) -> list:
        """Coordinates of a homogeneous element of this degree against ``basis``."""
        cfg = self.cfg
        out = [Fraction(0)] * self.dim
        if self.n_vf:
            db = vf.canonical_degree_basis(cfg.xkind, cfg.n, self.degree)
            out[: self.n_vf] = db.coords(vf_part(e, cfg.xkind, cfg.n))
        elif any(s[0] == "d" for s in e):
            raise ValueError("vector-field component outside the slice")
        index = self._index()
        for s, c in e.items():
            if s[0] == "d":
                continue
            if s not in index:
                raise ValueError(f"symbol {s} is not in slice {self.degree}")
            out[index[s]] = c
        return out

    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {}
            for k, e in enumerate(self.basis[self.n_vf:], start=self.n_vf):
                (s,) = e.keys()
                idx[s] = k
            object.__setattr__(self, "_idx", idx)
        return idx


@lru_cache(maxsize=None)
def graded_slice(cfg: AlgebraConfig, d: int) -> Slice:
    if d > cfg.D:
        raise ValueError(f"degree {d} exceeds truncation {cfg.D}")
    if d < -1:
        return Slice(cfg, d, (), (), 0)
    basis, weights = [], []
    vfs = vf.canonical_degree_basis(cfg.xkind, cfg.n, d).elements()
    for e in vfs:
        t = from_vf(e)
        basis.append(t)
        weights.append(HWeight(sym_weight(cfg, next(iter(t))).g_part, vf.elem_weight(cfg.xkind, e)))
    if d >= 0:
        for r in monomials(cfg.n, d):
            for a in range(cfg.g.dim):
                basis.append(x_sym(a, r))
                weights.append(sym_weight(cfg, ("x", a, r)))
        for r in monomials(cfg.n, d):
            for i in range(cfg.n):
                basis.append(k_sym(r, i))
                weights.append(sym_weight(cfg, ("K", r, i)))
    return Slice(cfg, d, tuple(basis), tuple(weights), len(vfs))


def in_algebra(cfg: AlgebraConfig, e: dict) -> bool:
    """Whether ``e`` lies in L(g, X_n): only the vector-field part is constrained."""
    return vf.contains(cfg.xkind, vf_part(e, "W", cfg.n))


# --- semi-infinite character ------------------------------------------------

def semi_infinite_character(cfg: AlgebraConfig, e: dict) -> Fraction:
    """E_W(t_i d_j) = delta_ij on the vector-field part; zero on g and Z; zero for S and H."""
    if cfg.xkind != "W":
        return Fraction(0)
    total = Fraction(0)
    for s, c in e.items():
        if s[0] == "d" and sum(s[1]) == 1 and s[1][s[2]] == 1:
            total += c
    return total


def adjoint_trace_pairing(cfg: AlgebraConfig, x: dict, y: dict) -> Fraction:
    """tr(ad x o ad y) restricted to L_0, for x of degree 1 and y of degree -1."""
    if elem_degrees(x) != {1} or elem_degrees(y) != {-1}:
        raise ValueError("expected x of degree 1 and y of degree -1")
    sl0 = graded_slice(cfg, 0)
    total = Fraction(0)
    for k, b in enumerate(sl0.basis):
        img = bracket(cfg, x, bracket(cfg, y, b))
        if img:
            total += sl0.coords(img)[k]
    return total


# --- normal ordering ---------------------------------------------------------

def normal_order(cfg: AlgebraConfig, r, target) -> list:
    """d^r y = sum_k C(r, k) P^s_k y_(s-k) d^(r-k) for y = x (x) t^s or t^s K_i.

    Returns ``[(coeff, symbol, residual_power)]`` with P^s_k the falling factorial.
    """
    r = tuple(r)
    tag = target[0]
    s = target[2] if tag == "x" else target[1]
    out = []
    for k in _box(r):
        p = falling(s, k)
        if not p:
            continue
        coeff = Fraction(mbinom(r, k) * p)
        rest = msub(s, k)
        sym = ("x", target[1], rest) if tag == "x" else ("K", rest, target[2])
        out.append((coeff, sym, msub(r, k)))
    return sorted(out, key=lambda t: (t[1], t[2]))


def _box(r):
    if not r:
        yield ()
        return
    for a in range(r[0] + 1):
        for rest in _box(r[1:]):
            yield (a,) + rest


def normal_order_oracle(cfg: AlgebraConfig, r, target) -> list:
    """Expand d^r y by commuting one d_i at a time past y with the bracket."""
    n = cfg.n
    terms = {(target, (0,) * n): Fraction(1)}
    for i in range(n - 1, -1, -1):
        for _ in range(r[i]):
            new = {}
            for (sym, rho), c in terms.items():
                key = (sym, madd(rho, unit(n, i)))
                new[key] = new.get(key, 0) + c
                for t, v in bracket(cfg, d_sym((0,) * n, i), {sym: Fraction(1)}).items():
                    key = (t, rho)
                    new[key] = new.get(key, 0) + c * v
            terms = {k: v for k, v in new.items() if v}
    return sorted(((c, sym, rho) for (sym, rho), c in terms.items()), key=lambda t: (t[1], t[2]))


# --- verification sweeps -----------------------------------------------------

def jacobi_violations(cfg: AlgebraConfig, max_deg: int = 2, total_cap: int | None = None) -> tuple:
    """Jacobi on all unordered basis triples with factor degree <= max_deg.

    Returns ``(checked, violations)``.
    """
    from itertools import combinations_with_replacement

    elems = []
    for d in range(-1, max_deg + 1):
        for e in graded_slice(cfg, d).basis:
            elems.append((d, e))
    checked, bad = 0, []
    for (da, a), (db, b), (dc, c) in combinations_with_replacement(elems, 3):
        if total_cap is not None and da + db + dc > total_cap:
            continue
        j = lin(
            (1, bracket(cfg, bracket(cfg, a, b), c)),
            (1, bracket(cfg, bracket(cfg, b, c), a)),
            (1, bracket(cfg, bracket(cfg, c, a), b)),
        )
        checked += 1
        if j:
            bad.append((a, b, c))
    return checked, bad


def closure_violations(cfg: AlgebraConfig, max_result_deg: int = 3) -> tuple:
    """Vector-field brackets of degree-basis pairs stay inside X_n."""
    checked, bad = 0, []
    kind, n = cfg.xkind, cfg.n
    for da in range(-1, max_result_deg + 2):
        for db in range(da, max_result_deg + 2):
            if da + db > max_result_deg:
                continue
            A = vf.canonical_degree_basis(kind, n, da).elements()
            B = vf.canonical_degree_basis(kind, n, db).elements()
            for a in A:
                for b in B:
                    checked += 1
                    if not vf.contains(kind, vf.bracket(a, b)):
                        bad.append((str(a), str(b)))
    return checked, bad


def grading_violations(cfg: AlgebraConfig, max_deg: int = 2) -> tuple:
    checked, bad = 0, []
    for da in range(-1, max_deg + 1):
        for db in range(da, max_deg + 1):
            for a in graded_slice(cfg, da).basis:
                for b in graded_slice(cfg, db).basis:
                    checked += 1
                    br = bracket(cfg, a, b)
                    if br and elem_degrees(br) != {da + db}:
                        bad.append((a, b))
    return checked, bad


def central_violations(cfg: AlgebraConfig, max_deg: int = 2) -> tuple:
    checked, bad = 0, []
    for i in range(cfg.n):
        k = k_sym((0,) * cfg.n, i)
        for d in range(-1, max_deg + 1):
            for b in graded_slice(cfg, d).basis:
                checked += 1
                if bracket(cfg, k, b):
                    bad.append((i, b))
    return checked, bad


def si2_violations(cfg: AlgebraConfig) -> tuple:
    """E([x, y]) == tr(ad x ad y | L_0) for every basis pair x in L_1, y in L_-1."""
    checked, bad, records = 0, [], []
    for x in graded_slice(cfg, 1).basis:
        for y in graded_slice(cfg, -1).basis:
            lhs = semi_infinite_character(cfg, bracket(cfg, x, y))
            rhs = adjoint_trace_pairing(cfg, x, y)
            checked += 1
            records.append((x, y, lhs, rhs))
            if lhs != rhs:
                bad.append((x, y, lhs, rhs))
    return checked, bad, records


def _slice_vec(cfg, d, e) -> dict:
    return {k: c for k, c in enumerate(graded_slice(cfg, d).coords(e)) if c}


def generation_dims(cfg: AlgebraConfig, D_test: int) -> list:
    """Per-degree (generated dim, slice dim) for the subalgebra generated by L_-1 + L_0 + L_1."""
    gen = {d: list(graded_slice(cfg, d).basis) for d in (-1, 0, 1)}
    out = [(d, len(gen[d]), graded_slice(cfg, d).dim) for d in (-1, 0, 1)]
    for d in range(2, D_test + 1):
        space = RowSpace(graded_slice(cfg, d).dim)
        new = []
        for a in gen[1]:
            for b in gen[d - 1]:
                br = bracket(cfg, a, b)
                if br and space.add(_slice_vec(cfg, d, br)):
                    new.append(br)
        # brackets of lower generated pieces of degree summing to d
        for j in range(2, d // 2 + 1):
            for a in gen[j]:
                for b in gen[d - j]:
                    br = bracket(cfg, a, b)
                    if br and space.add(_slice_vec(cfg, d, br)):
                        new.append(br)
        gen[d] = new
        out.append((d, len(new), graded_slice(cfg, d).dim))
    return out
