"""Dense exact linear algebra over Fraction/Scalar entries."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, InvalidStructure, Singular
from .scalar import ZERO, ONE, as_num, div, format_num, inv, is_zero, num_size

# ------------------------------------------------------------------- vectors


def zero_vec(n):
    return [ZERO] * n


def unit_vec(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return v


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(c, v):
    if is_zero(c):
        return [ZERO] * len(v)
    return [c * a for a in v]


def vec_is_zero(v):
    return all(is_zero(a) for a in v)


def vec_eq(u, v):
    return len(u) == len(v) and all(is_zero(a - b) for a, b in zip(u, v))


def vec_str(v):
    return "(" + ", ".join(format_num(a) for a in v) + ")"


# --------------------------------------------------------------- linear maps


class LinearMap:
    """rows x cols matrix; column j holds the coordinates of the image of e_j."""

    __slots__ = ("rows", "cols", "entries", "_sparse_cols")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]):
        entries = tuple(tuple(as_num(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch(f"entries do not form a {rows}x{cols} grid")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._sparse_cols = None

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls(rows, len(columns), [[columns[j][i] for j in range(len(columns))] for i in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls(n, n, [[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def is_square(self):
        return self.rows == self.cols

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def sparse_columns(self):
        if self._sparse_cols is None:
            self._sparse_cols = [
                [(i, self.entries[i][j]) for i in range(self.rows) if not is_zero(self.entries[i][j])]
                for j in range(self.cols)
            ]
        return self._sparse_cols

    def apply(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for a map with {self.cols} columns")
        out = [ZERO] * self.rows
        sc = self.sparse_columns()
        for j, x in enumerate(v):
            if is_zero(x):
                continue
            for i, c in sc[j]:
                out[i] = out[i] + c * x
        return out

    def __call__(self, v):
        return self.apply(v)

    def __matmul__(self, other):
        return mat_compose(self, other)

    def __add__(self, other):
        self._same_shape(other)
        return LinearMap(self.rows, self.cols, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return LinearMap(self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c):
        return LinearMap(self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def power(self, k: int):
        if not self.is_square:
            raise DimensionMismatch("power of a non-square map")
        if k < 0:
            return mat_inverse(self).power(-k)
        out = LinearMap.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self):
        return LinearMap(self.cols, self.rows, [list(c) for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)])

    def is_identity(self):
        return self.is_square and self == LinearMap.identity(self.rows)

    def is_zero(self):
        return all(is_zero(x) for r in self.entries for x in r)

    def commutes_with(self, other):
        return self @ other == other @ self

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(is_zero(a - b) for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.rows, self.cols))

    def __repr__(self):
        return f"LinearMap({self.rows}x{self.cols}, {self.render()})"

    def render(self):
        return "[" + ", ".join("[" + ", ".join(format_num(x) for x in r) + "]" for r in self.entries) + "]"


def mat_compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """f.g: apply g first."""
    if f.cols != g.rows:
        raise DimensionMismatch(f"cannot compose {f.rows}x{f.cols} with {g.rows}x{g.cols}")
    cols = [f.apply(g.column(j)) for j in range(g.cols)]
    return LinearMap.from_columns(cols, rows=f.rows)


def block_diag(f: LinearMap, g: LinearMap) -> LinearMap:
    rows = [list(r) + [ZERO] * g.cols for r in f.entries]
    rows += [[ZERO] * f.cols + list(r) for r in g.entries]
    return LinearMap(f.rows + g.rows, f.cols + g.cols, rows)


def kron(f: LinearMap, g: LinearMap) -> LinearMap:
    """Kronecker product with row-major basis order (i*m + j)."""
    rows = []
    for i1 in range(f.rows):
        for i2 in range(g.rows):
            rows.append([f.entries[i1][j1] * g.entries[i2][j2] for j1 in range(f.cols) for j2 in range(g.cols)])
    return LinearMap(f.rows * g.rows, f.cols * g.cols, rows)


def _rref_rows(rows, ncols):
    """Gauss-Jordan on a list of row lists. Returns (rref rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        best = None
        for i in range(r, len(m)):
            if not is_zero(m[i][c]):
                cost = num_size(m[i][c])
                if best is None or cost < best[0]:
                    best = (cost, i)
        if best is None:
            continue
        i = best[1]
        m[r], m[i] = m[i], m[r]
        p = inv(m[r][c])
        m[r] = [x * p for x in m[r]]
        m[r][c] = ONE
        for k in range(len(m)):
            if k != r and not is_zero(m[k][c]):
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
                m[k][c] = ZERO
        pivots.append(c)
        r += 1
    return m, pivots


def rref_and_kernel(f: LinearMap):
    rows, pivots = _rref_rows(f.entries, f.cols)
    rref = LinearMap(f.rows, f.cols, rows)
    free = [c for c in range(f.cols) if c not in pivots]
    kernel = []
    for c in free:
        v = [ZERO] * f.cols
        v[c] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][c]
        kernel.append(v)
    return rref, pivots, kernel


def rank_of(vectors, dim=None) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    _, pivots = _rref_rows(vectors, len(vectors[0]) if dim is None else dim)
    return len(pivots)


def mat_rank(f: LinearMap) -> int:
    return len(_rref_rows(f.entries, f.cols)[1])


def mat_inverse(f: LinearMap) -> LinearMap:
    if not f.is_square:
        raise DimensionMismatch("inverse of a non-square map")
    n = f.rows
    aug = [list(f.entries[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows, pivots = _rref_rows(aug, n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise Singular(f"map has rank {sum(1 for p in pivots if p < n)} < {n}")
    return LinearMap(n, n, [r[n:] for r in rows])


def is_invertible(f: LinearMap) -> bool:
    return f.is_square and mat_rank(f) == f.rows


# ----------------------------------------------------------------- subspaces


class Subspace:
    __slots__ = ("ambient_dim", "basis", "_rref")

    def __init__(self, ambient_dim: int, basis):
        basis = [[as_num(x) for x in v] for v in basis]
        for v in basis:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"basis vector of length {len(v)} in dim {ambient_dim}")
        if rank_of(basis, ambient_dim) != len(basis):
            raise InvalidStructure("subspace basis vectors are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._rref = None

    @classmethod
    def span(cls, ambient_dim, vectors):
        """Subspace spanned by possibly dependent vectors (rref basis)."""
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, [])
        rows, pivots = _rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, rows[: len(pivots)])

    @classmethod
    def whole(cls, n):
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @property
    def dim(self):
        return len(self.basis)

    def rref(self):
        """Reduced basis rows and their pivot columns."""
        if self._rref is None:
            if self.basis:
                rows, pivots = _rref_rows(self.basis, self.ambient_dim)
                self._rref = (rows[: len(pivots)], pivots)
            else:
                self._rref = ([], [])
        return self._rref

    def reduce(self, v):
        """Subtract the component along the reduced basis; zero at pivot coordinates."""
        rows, pivots = self.rref()
        w = list(v)
        for row, p in zip(rows, pivots):
            c = w[p]
            if not is_zero(c):
                w = [a - c * b for a, b in zip(w, row)]
        return w

    def contains(self, v) -> bool:
        # equivalent to the rank test rank(basis) == rank(basis + [v])
        return vec_is_zero(self.reduce(v))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and all(self.contains(v) for v in other.basis)
        )

    def __repr__(self):
        return f"Subspace({self.ambient_dim}, [{', '.join(vec_str(v) for v in self.basis)}])"


def in_span(basis, v) -> bool:
    """Rank-equality membership test."""
    if not basis:
        return vec_is_zero(v)
    return rank_of(list(basis) + [v]) == rank_of(basis)


def complement_basis(sub: Subspace):
    _, pivots = sub.rref()
    return [unit_vec(sub.ambient_dim, c) for c in range(sub.ambient_dim) if c not in pivots]
