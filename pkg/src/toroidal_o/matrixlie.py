"""
Matrix Lie algebras gl_n, sl_n, sp_2m and their finite-dimensional irreducibles.

Matrices are sparse dicts ``{(row, col): Fraction}``.  Weights are tuples of
values on the ordered Cartan basis:

* gl_n: epsilon coordinates ``(a_1, ..., a_n)`` (values on E_ii);
* sl_n: ``(a_1 - a_n, ..., a_{n-1} - a_n)`` (values on E_ii - E_nn);
* sp_2m: ``(a_1, ..., a_m)`` (values on E_ii - E_{m+i,m+i}).

Irreducibles are cyclic spans of a highest weight vector inside a tensor
product of exterior powers of the natural representation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod

from .exactla import RowSpace, axpy

ALG_KINDS = ("gl", "sl", "sp")


# --- sparse matrices -------------------------------------------------------

def mat(entries) -> dict:
    return {k: Fraction(v) for k, v in entries.items() if v}


def E(i: int, j: int) -> dict:
    return {(i, j): Fraction(1)}


def mat_add(a: dict, b: dict, cb=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + cb * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def mat_scale(c, a: dict) -> dict:
    c = Fraction(c)
    return {k: c * v for k, v in a.items()} if c else {}


def mat_mul(a: dict, b: dict) -> dict:
    rows = {}
    for (j, k), v in b.items():
        rows.setdefault(j, []).append((k, v))
    out = {}
    for (i, j), u in a.items():
        for k, v in rows.get(j, ()):
            out[(i, k)] = out.get((i, k), 0) + u * v
    return {k: v for k, v in out.items() if v}


def commutator(a: dict, b: dict) -> dict:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def trace(a: dict):
    return sum((v for (i, j), v in a.items() if i == j), Fraction(0))


def to_dense(a: dict, n: int) -> list:
    return [[a.get((i, j), Fraction(0)) for j in range(n)] for i in range(n)]


def from_dense(rows) -> dict:
    return mat({(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)})


# --- algebras --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatLieAlg:
    """Basis = Cartan elements followed by root vectors, each a simultaneous ad-eigenvector."""

    kind: str
    size: int
    basis: tuple
    labels: tuple
    weights: tuple  # weight of each basis element (zero for Cartan)
    n_cartan: int
    pos: tuple  # indices of positive root vectors
    neg: tuple  # indices of negative root vectors
    simple_lowering: tuple  # matrices
    simple_raising: tuple
    _pivots: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return self.n_cartan

    @property
    def cartan(self) -> tuple:
        return self.basis[: self.n_cartan]

    def coords(self, x: dict) -> list:
        """Coefficients of ``x`` against ``basis``; raises if ``x`` is not in the algebra."""
        cs = [x.get(p, Fraction(0)) / b[p] for p, b in zip(self._pivots, self.basis)]
        back = {}
        for c, b in zip(cs, self.basis):
            if c:
                back = mat_add(back, b, c)
        if back != {k: v for k, v in x.items() if v}:
            raise ValueError(f"matrix is not in {self.kind}_{self.size}")
        return cs

    def contains(self, x: dict) -> bool:
        try:
            self.coords(x)
        except ValueError:
            return False
        return True

    def weight_of_matrix(self, x: dict) -> tuple:
        """Values of the ad-eigenvalues of a root vector on the Cartan basis."""
        out = []
        for h in self.cartan:
            br = commutator(h, x)
            ratios = {br.get(k, 0) / v for k, v in x.items()}
            if len(ratios) != 1:
                raise ValueError("not an ad-eigenvector")
            out.append(ratios.pop())
        return tuple(out)


def _finish(kind, size, cartan, roots, simple_lo, simple_hi) -> MatLieAlg:
    basis = list(cartan) + [r for _, r in roots]
    labels = [f"h{i + 1}" for i in range(len(cartan))] + [lab for lab, _ in roots]
    pivots = []
    for b in basis:
        p = min(b)
        pivots.append(p)
    for k, p in enumerate(pivots):
        for l, b in enumerate(basis):
            if l != k and p in b:
                raise AssertionError("pivot positions are not separating")
    alg = MatLieAlg(kind, size, tuple(basis), tuple(labels), (), len(cartan), (), (), tuple(simple_lo), tuple(simple_hi), tuple(pivots))
    weights = [tuple(Fraction(0) for _ in cartan)] * len(cartan) + [alg.weight_of_matrix(r) for _, r in roots]
    pos, neg = [], []
    for k in range(len(cartan), len(basis)):
        (pos if _is_positive(weights[k]) else neg).append(k)
    return MatLieAlg(kind, size, alg.basis, alg.labels, tuple(weights), len(cartan), tuple(pos), tuple(neg), alg.simple_lowering, alg.simple_raising, alg._pivots)


def _is_positive(w) -> bool:
    for x in w:
        if x:
            return x > 0
    return False


@lru_cache(maxsize=None)
def build_algebra(kind: str, size: int) -> MatLieAlg:
    if kind not in ALG_KINDS:
        raise ValueError(f"unknown algebra kind {kind!r}")
    if size < 1:
        raise ValueError("size must be positive")
    n = size
    if kind == "gl":
        cartan = [E(i, i) for i in range(n)]
        roots = [(f"E{i + 1}{j + 1}", E(i, j)) for i in range(n) for j in range(n) if i != j]
        lo = [E(i + 1, i) for i in range(n - 1)]
        hi = [E(i, i + 1) for i in range(n - 1)]
        return _finish(kind, n, cartan, roots, lo, hi)
    if kind == "sl":
        if n < 2:
            raise ValueError("sl needs size >= 2")
        cartan = [mat_add(E(i, i), E(n - 1, n - 1), -1) for i in range(n - 1)]
        roots = [(f"E{i + 1}{j + 1}", E(i, j)) for i in range(n) for j in range(n) if i != j]
        lo = [E(i + 1, i) for i in range(n - 1)]
        hi = [E(i, i + 1) for i in range(n - 1)]
        return _finish(kind, n, cartan, roots, lo, hi)
    if n % 2:
        raise ValueError("sp needs an even size")
    m = n // 2
    cartan = [mat_add(E(i, i), E(m + i, m + i), -1) for i in range(m)]
    roots = []
    for i in range(m):
        for j in range(m):
            if i != j:
                roots.append((f"A{i + 1}{j + 1}", mat_add(E(i, j), E(m + j, m + i), -1)))
    for i in range(m):
        for j in range(i, m):
            up = E(i, m + i) if i == j else mat_add(E(i, m + j), E(j, m + i))
            down = E(m + i, i) if i == j else mat_add(E(m + i, j), E(m + j, i))
            roots.append((f"B{i + 1}{j + 1}", up))
            roots.append((f"C{i + 1}{j + 1}", down))
    lo = [mat_add(E(i + 1, i), E(m + i, m + i + 1), -1) for i in range(m - 1)] + [E(n - 1, m - 1)]
    hi = [mat_add(E(i, i + 1), E(m + i + 1, m + i), -1) for i in range(m - 1)] + [E(m - 1, n - 1)]
    return _finish(kind, n, cartan, roots, lo, hi)


@lru_cache(maxsize=None)
def structure_constants(alg: MatLieAlg) -> dict:
    """``(a, b) -> {c: coeff}`` with [basis_a, basis_b] = sum coeff basis_c."""
    out = {}
    for a, x in enumerate(alg.basis):
        for b, y in enumerate(alg.basis):
            cs = alg.coords(commutator(x, y))
            out[(a, b)] = {c: v for c, v in enumerate(cs) if v}
    return out


def symplectic_form(m: int) -> dict:
    """K with K[j, m+j] = 1, K[m+j, j] = -1; sp_2m = {S K : S symmetric}."""
    return mat_add({(j, m + j): Fraction(1) for j in range(m)}, {(m + j, j): Fraction(1) for j in range(m)}, -1)


# --- weights ---------------------------------------------------------------

def n_coords(kind: str, size: int) -> int:
    return {"gl": size, "sl": size - 1, "sp": size // 2}[kind]


def to_eps(kind: str, size: int, w) -> tuple:
    """Epsilon coordinates used by Freudenthal: sl lifts to gl with last entry 0."""
    w = tuple(w)
    if len(w) != n_coords(kind, size):
        raise ValueError(f"weight {w} has wrong length for {kind}_{size}")
    return w + (0,) if kind == "sl" else w


def from_eps(kind: str, size: int, a) -> tuple:
    a = tuple(a)
    if kind == "sl":
        return tuple(x - a[-1] for x in a[:-1])
    return a


def fundamental_to_weight(kind: str, size: int, c) -> tuple:
    """Fundamental coordinates (c_1, ..., c_r) to stored weight coordinates."""
    c = tuple(c)
    r = n_coords(kind, size) if kind != "gl" else size - 1
    if len(c) != r:
        raise ValueError(f"expected {r} fundamental coordinates")
    if kind == "gl":
        raise ValueError("gl weights are given in epsilon coordinates")
    return tuple(sum(c[k:]) for k in range(len(c)))


def weight_to_fundamental(kind: str, size: int, w) -> tuple:
    a = to_eps(kind, size, w)
    if kind == "sp":
        a = a + (0,)
    return tuple(a[k] - a[k + 1] for k in range(len(a) - 1))


def is_dominant(kind: str, size: int, w) -> bool:
    try:
        a = to_eps(kind, size, w)
    except ValueError:
        return False
    if any(Fraction(x).denominator != 1 for x in a):
        return False
    if any(a[k] < a[k + 1] for k in range(len(a) - 1)):
        return False
    if kind == "sp" and a and a[-1] < 0:
        return False
    return True


def check_dominant(kind, size, w) -> tuple:
    if not is_dominant(kind, size, w):
        raise ValueError(f"{tuple(w)} is not a dominant integral weight of {kind}_{size}")
    return tuple(int(x) for x in w)


def positive_roots_eps(kind: str, size: int) -> list:
    if kind in ("gl", "sl"):
        n = size
        return [tuple((1 if k == i else -1 if k == j else 0) for k in range(n)) for i in range(n) for j in range(i + 1, n)]
    m = size // 2
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            out.append(tuple((1 if k == i else -1 if k == j else 0) for k in range(m)))
            out.append(tuple((1 if k in (i, j) else 0) for k in range(m)))
        out.append(tuple((2 if k == i else 0) for k in range(m)))
    return out


def simple_roots_eps(kind: str, size: int) -> list:
    if kind in ("gl", "sl"):
        n = size
        return [tuple((1 if k == i else -1 if k == i + 1 else 0) for k in range(n)) for i in range(n - 1)]
    m = size // 2
    out = [tuple((1 if k == i else -1 if k == i + 1 else 0) for k in range(m)) for i in range(m - 1)]
    return out + [tuple((2 if k == m - 1 else 0) for k in range(m))]


def rho_eps(kind: str, size: int) -> tuple:
    if kind in ("gl", "sl"):
        return tuple(size - 1 - k for k in range(size))
    m = size // 2
    return tuple(m - k for k in range(m))


def _ip(a, b):
    return sum(x * y for x, y in zip(a, b))


def weyl_dim(kind: str, size: int, hw) -> int:
    a = to_eps(kind, size, check_dominant(kind, size, hw))
    rho = rho_eps(kind, size)
    lr = tuple(x + y for x, y in zip(a, rho))
    num = prod(Fraction(_ip(lr, al), _ip(rho, al)) for al in positive_roots_eps(kind, size))
    assert num.denominator == 1
    return int(num)


@lru_cache(maxsize=None)
def weight_multiplicities(kind: str, size: int, hw) -> dict:
    """Freudenthal's recursion, computed in epsilon coordinates."""
    hw = check_dominant(kind, size, hw)
    lam = to_eps(kind, size, hw)
    rho = rho_eps(kind, size)
    pos = positive_roots_eps(kind, size)
    simple = simple_roots_eps(kind, size)

    def norm(v):
        w = tuple(x + y for x, y in zip(v, rho))
        return _ip(w, w)

    top = norm(lam)
    mult = {lam: 1}
    level = [lam]
    while level:
        cands = []
        seen = set()
        for w in level:
            for al in simple:
                v = tuple(x - y for x, y in zip(w, al))
                if v not in seen and v not in mult:
                    seen.add(v)
                    cands.append(v)
        nxt = []
        for v in cands:
            denom = top - norm(v)
            if denom == 0:
                continue
            acc = 0
            for al in pos:
                k = 1
                while True:
                    u = tuple(x + k * y for x, y in zip(v, al))
                    if not _below(u, lam):
                        break
                    acc += mult.get(u, 0) * _ip(u, al)
                    k += 1
            val = Fraction(2 * acc, denom)
            assert val.denominator == 1 and val >= 0
            if val:
                mult[v] = int(val)
                nxt.append(v)
        level = nxt
    return {from_eps(kind, size, w): c for w, c in mult.items()}


def _below(u, lam) -> bool:
    """Necessary condition for ``lam - u`` to be a non-negative sum of simple roots.

    Holds for the gl, sl and sp simple systems used here: partial sums stay non-negative.
    """
    s = 0
    for a, b in zip(lam, u):
        s += a - b
        if s < 0:
            return False
    return True


def longest_weyl_dual(xkind: str, mu) -> tuple:
    """-omega_X(mu): the highest weight of the dual of the irreducible with highest weight mu."""
    mu = tuple(mu)
    if xkind == "W":
        return tuple(-x for x in reversed(mu))
    if xkind == "S":
        a = mu + (0,)
        b = tuple(-x for x in reversed(a))
        return tuple(x - b[-1] for x in b[:-1])
    if xkind == "H":
        return mu
    raise ValueError(f"unknown kind {xkind!r}")


def dual_weight(alg: MatLieAlg, w) -> tuple:
    return longest_weyl_dual({"gl": "W", "sl": "S", "sp": "H"}[alg.kind], w)


# --- explicit irreducible modules ------------------------------------------

def _wedge_apply(x: dict, key: tuple, out: dict, coeff) -> None:
    """Accumulate ``coeff * x . (e_key)`` for a matrix ``x`` acting as a derivation on a wedge."""
    for pos, j in enumerate(key):
        for (a, b), v in x.items():
            if b != j:
                continue
            if a != j and a in key:
                continue
            new = list(key)
            new[pos] = a
            # sort with sign
            sign = 1
            arr = new
            for p in range(len(arr)):
                for q in range(len(arr) - 1 - p):
                    if arr[q] > arr[q + 1]:
                        arr[q], arr[q + 1] = arr[q + 1], arr[q]
                        sign = -sign
            k = tuple(arr)
            w = out.get(k, 0) + sign * coeff * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)


def _tensor_apply(x: dict, v: dict) -> dict:
    out = {}
    for key, c in v.items():
        for f, wedge in enumerate(key):
            part = {}
            _wedge_apply(x, wedge, part, c)
            for w, a in part.items():
                k = key[:f] + (w,) + key[f + 1:]
                val = out.get(k, 0) + a
                if val:
                    out[k] = val
                else:
                    out.pop(k, None)
    return out


@dataclass(eq=False)
class IrrepModule:
    alg: MatLieAlg
    highest: tuple
    dim: int
    weights: list  # weight of each basis vector
    action: list  # per algebra basis element: list of column sparse vecs
    shift: int = 0
    vectors: list = field(default_factory=list)  # basis vectors inside the tensor space

    def rho(self, x: dict) -> list:
        """Columns of the operator representing an arbitrary algebra element."""
        cs = self.alg.coords(x)
        cols = [dict() for _ in range(self.dim)]
        for c, act in zip(cs, self.action):
            if c:
                for k in range(self.dim):
                    axpy(c, act[k], cols[k])
        return cols

    def apply(self, x: dict, v: dict) -> dict:
        out = {}
        cs = self.alg.coords(x)
        for c, act in zip(cs, self.action):
            if c:
                for k, a in v.items():
                    axpy(c * a, act[k], out)
        return out

    def apply_basis(self, b: int, v: dict) -> dict:
        out = {}
        act = self.action[b]
        for k, a in v.items():
            axpy(a, act[k], out)
        return out

    def highest_vectors(self) -> list:
        return [k for k, w in enumerate(self.weights) if w == self.highest]


def _det_shift(kind: str, a: tuple) -> int:
    if kind == "gl" and a and min(a) < 0:
        return -min(a)
    return 0


@lru_cache(maxsize=None)
def irrep(alg: MatLieAlg, hw) -> IrrepModule:
    hw = check_dominant(alg.kind, alg.size, hw)
    kind, n = alg.kind, alg.size
    a = to_eps(kind, n, hw)
    s = _det_shift(kind, a)
    a = tuple(x + s for x in a)
    tail = a + (0,)
    powers = []
    for k in range(1, len(a) + 1):
        powers += [k] * (tail[k - 1] - tail[k])
    top = tuple(tuple(range(k)) for k in powers)
    start = {top: Fraction(1)}

    index = {}

    def to_idx(v):
        out = {}
        for key, c in v.items():
            if key not in index:
                index[key] = len(index)
            out[index[key]] = c
        return out

    total = prod(comb(n, k) for k in powers)
    space = RowSpace(max(total, 1))
    space.add(to_idx(start))
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for lo in alg.simple_lowering:
            w = _tensor_apply(lo, v)
            if w and space.add(to_idx(w)):
                queue.append(w)
    keys = {i: k for k, i in index.items()}
    pivots = space.pivots
    rows = space.rows()
    pos_of = {p: b for b, p in enumerate(pivots)}

    def key_weight(key):
        diag = [0] * n
        for wedge in key:
            for j in wedge:
                diag[j] += 1
        return diag

    def weight_from_diag(diag):
        if kind == "gl":
            return tuple(x - s for x in diag)
        if kind == "sl":
            return tuple(diag[i] - diag[n - 1] for i in range(n - 1))
        m = n // 2
        return tuple(diag[i] - diag[m + i] for i in range(m))

    weights = [weight_from_diag(key_weight(keys[p])) for p in pivots]
    vectors = [{keys[k]: c for k, c in row.items()} for row in rows]
    action = []
    for b, x in enumerate(alg.basis):
        tr = trace(x)
        cols = []
        for k, v in enumerate(vectors):
            w = to_idx(_tensor_apply(x, v))
            col = {pos_of[p]: w[p] for p in pivots if p in w}
            if s and tr:
                val = col.get(k, 0) - s * tr
                if val:
                    col[k] = val
                else:
                    col.pop(k, None)
            cols.append(col)
        action.append(cols)
    return IrrepModule(alg, hw, len(vectors), weights, action, s, vectors)


def trivial_module(alg: MatLieAlg) -> IrrepModule:
    return irrep(alg, tuple(0 for _ in range(n_coords(alg.kind, alg.size))))


def weight_census(mod: IrrepModule) -> dict:
    out = {}
    for w in mod.weights:
        out[w] = out.get(w, 0) + 1
    return out


def dense_op(cols: list, dim: int) -> list:
    return [[cols[j].get(i, Fraction(0)) for j in range(dim)] for i in range(dim)]


def op_mul(a: list, b: list) -> list:
    """Product of operators given as column lists: (a b) e_k = a (b e_k)."""
    out = []
    for col in b:
        acc = {}
        for j, c in col.items():
            axpy(c, a[j], acc)
        out.append(acc)
    return out


def op_sub(a: list, b: list) -> list:
    out = []
    for x, y in zip(a, b):
        acc = dict(x)
        axpy(-1, y, acc)
        out.append(acc)
    return out


def op_lin(terms, dim: int) -> list:
    out = [dict() for _ in range(dim)]
    for c, op in terms:
        for k in range(dim):
            axpy(c, op[k], out[k])
    return out


def check_homomorphism(mod: IrrepModule) -> list:
    """Pairs (a, b) where [rho(a), rho(b)] != rho([a, b])."""
    alg = mod.alg
    sc = structure_constants(alg)
    bad = []
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            lhs = op_sub(op_mul(mod.action[a], mod.action[b]), op_mul(mod.action[b], mod.action[a]))
            rhs = op_lin([(c, mod.action[k]) for k, c in sc[(a, b)].items()], mod.dim)
            if lhs != rhs:
                bad.append((a, b))
    return bad
