"""BiHomAlgebra values, products, the BiHom-associator and structural predicates."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from .errors import DimensionMismatch, InvalidStructure
from .linalg import LinearMap, Subspace, unit_vec, vec_sub, zero_vec
from .report import CheckReport, Scan
from .scalar import ZERO, Scalar, as_num, format_num, is_zero


class BiHomAlgebra:
    """Structure tensor mu[i][j][k] with mu(e_i, e_j) = sum_k mu[i][j][k] e_k, plus twists."""

    def __init__(self, dim, mu, alpha=None, beta=None, label="", blocks=None):
        n = dim
        mu = tuple(tuple(tuple(as_num(c) for c in mu[i][j]) for j in range(n)) for i in range(n))
        if len(mu) != n or any(len(r) != n or any(len(v) != n for v in r) for r in mu):
            raise DimensionMismatch(f"structure tensor is not {n}x{n}x{n}")
        alpha = alpha if alpha is not None else LinearMap.identity(n)
        beta = beta if beta is not None else LinearMap.identity(n)
        for name, f in (("alpha", alpha), ("beta", beta)):
            if (f.rows, f.cols) != (n, n):
                raise DimensionMismatch(f"{name} is {f.rows}x{f.cols}, expected {n}x{n}")
        if not alpha.commutes_with(beta):
            raise InvalidStructure("alpha and beta do not commute")
        self.dim = n
        self.mu = mu
        self.alpha = alpha
        self.beta = beta
        self.label = label
        self.blocks = tuple(blocks) if blocks else (n,)
        self._table = [
            [[(k, c) for k, c in enumerate(mu[i][j]) if not is_zero(c)] for j in range(n)] for i in range(n)
        ]
        self._memo = {}

    @classmethod
    def from_products(cls, dim, products, alpha=None, beta=None, label=""):
        """products maps (i, j) -> coordinate vector; unset products are zero."""
        mu = [[list(products.get((i, j), zero_vec(dim))) for j in range(dim)] for i in range(dim)]
        return cls(dim, mu, alpha, beta, label)

    @classmethod
    def from_bilinear(cls, dim, prod, alpha=None, beta=None, label=""):
        """Build the tensor from a function on basis vectors."""
        mu = [[prod(unit_vec(dim, i), unit_vec(dim, j)) for j in range(dim)] for i in range(dim)]
        return cls(dim, mu, alpha, beta, label)

    # arithmetic -------------------------------------------------------------
    def basis(self, i):
        return unit_vec(self.dim, i)

    def mul(self, x, y):
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch(f"elements of length {len(x)}, {len(y)} in dim {n}")
        out = [ZERO] * n
        table = self._table
        ys = [(j, b) for j, b in enumerate(y) if not is_zero(b)]
        if not ys:
            return out
        for i, a in enumerate(x):
            if is_zero(a):
                continue
            row = table[i]
            for j, b in ys:
                cell = row[j]
                if not cell:
                    continue
                s = a * b
                for k, c in cell:
                    out[k] = out[k] + s * c
        return out

    def assoc(self, x, y, z):
        return vec_sub(self.mul(self.mul(x, y), self.beta.apply(z)), self.mul(self.alpha.apply(x), self.mul(y, z)))

    def product_vec(self, i, j):
        return list(self.mu[i][j])

    # misc -------------------------------------------------------------------
    def context(self):
        for x in self.entries():
            if isinstance(x, Scalar):
                return x.ctx
        return None

    def entries(self):
        for i in range(self.dim):
            for j in range(self.dim):
                yield from self.mu[i][j]
        for f in (self.alpha, self.beta):
            for r in f.entries:
                yield from r

    def map_scalars(self, fn, label=None):
        n = self.dim
        mu = [[[fn(c) for c in self.mu[i][j]] for j in range(n)] for i in range(n)]
        a = LinearMap(n, n, [[fn(c) for c in r] for r in self.alpha.entries])
        b = LinearMap(n, n, [[fn(c) for c in r] for r in self.beta.entries])
        return BiHomAlgebra(n, mu, a, b, self.label if label is None else label, self.blocks)

    def same_tensor(self, other) -> bool:
        if self.dim != other.dim:
            return False
        return (
            all(
                is_zero(a - b)
                for i in range(self.dim)
                for j in range(self.dim)
                for a, b in zip(self.mu[i][j], other.mu[i][j])
            )
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def canonical_text(self) -> str:
        lines = [f"dim {self.dim}"]
        for i in range(self.dim):
            for j in range(self.dim):
                lines.append(f"mu {i + 1} {j + 1} " + " ".join(format_num(c) for c in self.mu[i][j]))
        lines.append("alpha " + self.alpha.render())
        lines.append("beta " + self.beta.render())
        return "\n".join(lines)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()[:16]

    def memo(self, key, compute):
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def __repr__(self):
        return f"BiHomAlgebra(dim={self.dim}, label={self.label!r})"


def multiply(A: BiHomAlgebra, x, y):
    return A.mul(x, y)


def associator(A: BiHomAlgebra, x, y, z):
    return A.assoc(x, y, z)


def validate(A: BiHomAlgebra) -> CheckReport:
    scan = Scan("validate")
    n = A.dim
    comm = A.alpha @ A.beta - A.beta @ A.alpha
    if not comm.is_zero():
        scan.fail("alpha*beta = beta*alpha", "matrices", [comm.render()])
    pairs = list(itertools.product(range(n), repeat=2))
    for name, f in (("alpha", A.alpha), ("beta", A.beta)):
        images = [f.apply(A.basis(i)) for i in range(n)]

        def residual(t, f=f, images=images):
            i, j = t
            return vec_sub(f.apply(A.product_vec(i, j)), A.mul(images[i], images[j]))

        scan.equation(f"{name} multiplicative", pairs, residual)
    return scan.report()


def is_multiplicative(A: BiHomAlgebra, f: LinearMap) -> bool:
    n = A.dim
    images = [f.apply(A.basis(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if any(not is_zero(c) for c in vec_sub(f.apply(A.product_vec(i, j)), A.mul(images[i], images[j]))):
                return False
    return True


def _closure_scan(A, H: Subspace, name, ideal):
    if H.ambient_dim != A.dim:
        raise DimensionMismatch(f"subspace of dim {H.ambient_dim} in algebra of dim {A.dim}")
    scan = Scan(name)
    hb = H.basis
    k = len(hb)
    n = A.dim

    def miss(v):
        r = H.reduce(v)
        return r

    scan.equation("mu(H, H) in H", list(itertools.product(range(k), repeat=2)), lambda t: miss(A.mul(hb[t[0]], hb[t[1]])))
    scan.equation("alpha(H) in H", [(i,) for i in range(k)], lambda t: miss(A.alpha.apply(hb[t[0]])))
    scan.equation("beta(H) in H", [(i,) for i in range(k)], lambda t: miss(A.beta.apply(hb[t[0]])))
    if ideal:
        pairs = list(itertools.product(range(n), range(k)))
        scan.equation("mu(A, H) in H", pairs, lambda t: miss(A.mul(A.basis(t[0]), hb[t[1]])))
        scan.equation("mu(H, A) in H", [(h, a) for h in range(k) for a in range(n)], lambda t: miss(A.mul(hb[t[0]], A.basis(t[1]))))
    return scan.report()


def is_subalgebra(A: BiHomAlgebra, H: Subspace) -> CheckReport:
    return _closure_scan(A, H, "subalgebra", ideal=False)


def is_two_sided_ideal(A: BiHomAlgebra, H: Subspace) -> CheckReport:
    return _closure_scan(A, H, "two-sided ideal", ideal=True)


@dataclass(frozen=True)
class AlgebraMorphism:
    source: BiHomAlgebra
    target: BiHomAlgebra
    map: LinearMap

    def __post_init__(self):
        if (self.map.rows, self.map.cols) != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"map is {self.map.rows}x{self.map.cols}, expected {self.target.dim}x{self.source.dim}"
            )


def check_morphism(m: AlgebraMorphism) -> CheckReport:
    A, B, f = m.source, m.target, m.map
    scan = Scan("morphism")
    n = A.dim
    images = [f.apply(A.basis(i)) for i in range(n)]
    scan.equation(
        "f(xy) = f(x)f(y)",
        list(itertools.product(range(n), repeat=2)),
        lambda t: vec_sub(f.apply(A.product_vec(*t)), B.mul(images[t[0]], images[t[1]])),
    )
    for name, s, t in (("f alpha = alpha' f", A.alpha, B.alpha), ("f beta = beta' f", A.beta, B.beta)):
        scan.equation(name, [(j,) for j in range(n)], lambda tt, s=s, t=t: vec_sub(f.apply(s.column(tt[0])), t.apply(images[tt[0]])))
    return scan.report()


def graph_subspace(m: AlgebraMorphism) -> Subspace:
    n = m.source.dim
    return Subspace(n + m.target.dim, [unit_vec(n, i) + m.map.column(i) for i in range(n)])


def block_subspace(A: BiHomAlgebra, k: int) -> Subspace:
    """Subspace spanned by the basis vectors of the k-th summand block (0-based)."""
    if not 0 <= k < len(A.blocks):
        raise IndexError(f"algebra has {len(A.blocks)} blocks")
    start = sum(A.blocks[:k])
    return Subspace(A.dim, [unit_vec(A.dim, start + i) for i in range(A.blocks[k])])

