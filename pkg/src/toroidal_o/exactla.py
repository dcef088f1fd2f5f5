"""
Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{column: Fraction}`` with no stored zeros.  A
matrix is a sequence of such rows plus a column count.  Row reduction keeps
rows fully reduced at every step, so reducing a vector against a basis is a
single pass over the pivot columns it touches.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

SparseVec = dict  # dict[int, Fraction]


def vec(entries: Mapping[int, object] | Iterable[object]) -> SparseVec:
    """Build a sparse vector from a mapping or a dense sequence, dropping zeros."""
    items = entries.items() if isinstance(entries, Mapping) else enumerate(entries)
    out = {}
    for k, v in items:
        v = Fraction(v)
        if v:
            out[k] = v
    return out


def axpy(a, x: SparseVec, y: SparseVec) -> None:
    """In place ``y += a*x``."""
    if not a:
        return
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scale(a, x: SparseVec) -> SparseVec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def add(x: SparseVec, y: SparseVec) -> SparseVec:
    out = dict(x)
    axpy(1, y, out)
    return out


def sub(x: SparseVec, y: SparseVec) -> SparseVec:
    out = dict(x)
    axpy(-1, y, out)
    return out


def dot(x: SparseVec, y: SparseVec):
    if len(x) > len(y):
        x, y = y, x
    return sum((v * y[k] for k, v in x.items() if k in y), Fraction(0))


@dataclass(frozen=True)
class SparseMat:
    rows: tuple
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            for k, v in row.items():
                if not 0 <= k < self.ncols:
                    raise ValueError(f"column {k} out of range for ncols={self.ncols}")
                if not v:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], ncols: int | None = None) -> "SparseMat":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(tuple(vec(r) for r in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_dense(self) -> list:
        return [[row.get(j, Fraction(0)) for j in range(self.ncols)] for row in self.rows]

    def apply(self, x: SparseVec) -> SparseVec:
        """Matrix-vector product ``self @ x`` as a sparse vector over row indices."""
        return vec({i: dot(row, x) for i, row in enumerate(self.rows)})


class RowSpace:
    """Incrementally maintained reduced row-echelon basis of a subspace of Q^ncols."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict = {}  # pivot column -> row with 1 at the pivot

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> list:
        return [self._rows[p] for p in sorted(self._rows)]

    def _check(self, v: SparseVec) -> None:
        for k in v:
            if not 0 <= k < self.ncols:
                raise ValueError(f"index {k} outside dimension {self.ncols}")

    def reduce(self, v: SparseVec) -> SparseVec:
        """Residual of ``v`` after eliminating every pivot column."""
        out = dict(v)
        for p in [p for p in v if p in self._rows]:
            a = out.get(p)
            if a:
                axpy(-a, self._rows[p], out)
        return out

    def add(self, v: SparseVec) -> bool:
        """Insert ``v``; returns True when it enlarged the span."""
        self._check(v)
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, row in self._rows.items():
            a = row.get(p)
            if a:
                axpy(-a, r, row)
        self._rows[p] = r
        return True

    def extend(self, vs: Iterable[SparseVec]) -> int:
        return sum(1 for v in vs if self.add(v))

    def contains(self, v: SparseVec) -> bool:
        self._check(v)
        return not self.reduce(v)

    def coords(self, v: SparseVec) -> dict:
        """Coordinates of ``v`` (assumed in the span) against rows keyed by pivot."""
        return {p: v[p] for p in self._rows if p in v}

    def copy(self) -> "RowSpace":
        out = RowSpace(self.ncols)
        out._rows = {p: dict(r) for p, r in self._rows.items()}
        return out

    def to_mat(self) -> SparseMat:
        return SparseMat(tuple(dict(r) for r in self.rows()), self.ncols)


def rref(m: SparseMat):
    """Reduced row-echelon form: returns ``(rank, reduced, pivots)``."""
    space = RowSpace(m.ncols)
    space.extend(m.rows)
    return space.rank, space.to_mat(), space.pivots


def _rowspace_of(basis: SparseMat) -> RowSpace:
    space = RowSpace(basis.ncols)
    for row in basis.rows:
        p = min(row)
        if row[p] != 1 or p in space._rows:
            raise ValueError("basis is not in reduced row-echelon form")
        space._rows[p] = dict(row)
    for p in space._rows:
        for q, row in space._rows.items():
            if q != p and p in row:
                raise ValueError("basis is not in reduced row-echelon form")
    return space


def span_contains(basis: SparseMat, v: SparseVec) -> bool:
    """True iff ``v`` lies in the row span of the rref matrix ``basis``."""
    return _rowspace_of(basis).contains(v)


def solve_linear(a: SparseMat, b: SparseVec):
    """Some exact ``x`` with ``a @ x == b``, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    for k in b:
        if not 0 <= k < a.nrows:
            raise ValueError(f"right-hand side index {k} outside {a.nrows} rows")
    n = a.ncols
    aug = RowSpace(n + 1)
    for i, row in enumerate(a.rows):
        r = dict(row)
        if b.get(i):
            r[n] = Fraction(b[i])
        aug.add(r)
    if n in aug._rows:
        return None
    x = {}
    for p, row in aug._rows.items():
        if row.get(n):
            x[p] = row[n]
    return x


def identity(n: int) -> SparseMat:
    return SparseMat(tuple({i: Fraction(1)} for i in range(n)), n)
