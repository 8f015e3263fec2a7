"""Decision procedures for the algebra-level identity systems."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebra import BiHomAlgebra, validate
from .errors import PrereqFailed
from .linalg import LinearMap, is_invertible, vec_add, vec_sub
from .report import LINEARIZED, CheckMode, CheckReport, Scan
from .scalar import ParameterContext, Scalar, embed, format_num


class _Images:
    """Cached images of basis vectors under words in alpha and beta."""

    def __init__(self, A: BiHomAlgebra):
        self.A = A
        self._maps = {}

    def map(self, a, b):
        key = (a, b)
        if key not in self._maps:
            self._maps[key] = self.A.alpha.power(a) @ self.A.beta.power(b)
        return self._maps[key]

    def col(self, a, b, i):
        return self.map(a, b).column(i)


def _triples(n):
    return list(itertools.product(range(n), repeat=3))


def _memo_report(A, key, compute):
    return A.memo(key, compute)


# ------------------------------------------------------------- associativity


def check_bihom_associative(A: BiHomAlgebra) -> CheckReport:
    def run():
        scan = Scan("bihom-associative")
        n = A.dim
        scan.equation("as(x,y,z) = 0", _triples(n), lambda t: A.assoc(A.basis(t[0]), A.basis(t[1]), A.basis(t[2])))
        return scan.report()

    return _memo_report(A, ("associative",), run)


# --------------------------------------------------------------- alternative


def _generic(A: BiHomAlgebra, count: int):
    """Embed A into a context with fresh coordinate parameters; return (A', vectors)."""
    base = A.context()
    taken = set(base.names) if base else set()
    prefix = ""
    letters = "xyzw"[:count]
    while any(f"{prefix}{l}{i + 1}" in taken for l in letters for i in range(A.dim)):
        prefix += "g"
    fresh = [f"{prefix}{l}{i + 1}" for l in letters for i in range(A.dim)]
    ctx = base.extend(fresh) if base else ParameterContext(tuple(fresh))
    lifted = A.map_scalars(lambda c: embed(c, ctx)) if base else A
    vecs = []
    for li in range(count):
        vecs.append([ctx.variable(fresh[li * A.dim + i]) for i in range(A.dim)])
    return lifted, vecs


def _samples(A: BiHomAlgebra, mode: CheckMode, count: int):
    rng = random.Random(mode.seed)
    for p in range(mode.points):
        yield p, [[Fraction(rng.randint(-3, 3)) for _ in range(A.dim)] for _ in range(count)]


def _direct(A, name, mode, count, formula, label):
    scan = Scan(name, mode=mode.describe())
    if mode.strategy == "symbolic":
        B, vecs = _generic(A, count)
        scan.record(label, "generic point", formula(B, *vecs))
    else:
        for p, vecs in _samples(A, mode, count):
            where = f"sample {p + 1}: " + "; ".join(
                "(" + ", ".join(format_num(c) for c in v) + ")" for v in vecs
            )
            if not scan.record(label, where, formula(A, *vecs)):
                break
    return scan.report()


def check_left_alternative(A: BiHomAlgebra, mode: CheckMode = LINEARIZED) -> CheckReport:
    if mode.strategy != "linearized":
        return _direct(
            A, "left-alternative", mode, 2,
            lambda B, x, y: B.assoc(B.beta.apply(x), B.alpha.apply(x), y),
            "as(beta x, alpha x, y) = 0",
        )

    def run():
        scan = Scan("left-alternative", mode="linearized")
        n = A.dim
        cache = {}

        def T(i, j, k):
            key = (i, j, k)
            if key not in cache:
                cache[key] = A.assoc(A.beta.column(i), A.alpha.column(j), A.basis(k))
            return cache[key]

        scan.equation(
            "as(beta x, alpha y, z) + as(beta y, alpha x, z) = 0",
            _triples(n),
            lambda t: vec_add(T(t[0], t[1], t[2]), T(t[1], t[0], t[2])),
        )
        return scan.report()

    return _memo_report(A, ("left-alt",), run)


def check_right_alternative(A: BiHomAlgebra, mode: CheckMode = LINEARIZED) -> CheckReport:
    if mode.strategy != "linearized":
        return _direct(
            A, "right-alternative", mode, 2,
            lambda B, x, y: B.assoc(x, B.beta.apply(y), B.alpha.apply(y)),
            "as(x, beta y, alpha y) = 0",
        )

    def run():
        scan = Scan("right-alternative", mode="linearized")
        n = A.dim
        cache = {}

        def T(i, j, k):
            key = (i, j, k)
            if key not in cache:
                cache[key] = A.assoc(A.basis(i), A.beta.column(j), A.alpha.column(k))
            return cache[key]

        scan.equation(
            "as(x, beta y, alpha z) + as(x, beta z, alpha y) = 0",
            _triples(n),
            lambda t: vec_add(T(t[0], t[1], t[2]), T(t[0], t[2], t[1])),
        )
        return scan.report()

    return _memo_report(A, ("right-alt",), run)


def is_alternative(A: BiHomAlgebra) -> bool:
    return check_left_alternative(A).passed and check_right_alternative(A).passed


# ------------------------------------------------------------------- Jordan


def check_bihom_commutative(A: BiHomAlgebra) -> CheckReport:
    def run():
        scan = Scan("bihom-commutative")
        n = A.dim
        prods = {}

        def P(i, j):
            if (i, j) not in prods:
                prods[(i, j)] = A.mul(A.beta.column(i), A.alpha.column(j))
            return prods[(i, j)]

        scan.equation(
            "mu(beta x, alpha y) = mu(beta y, alpha x)",
            list(itertools.product(range(n), repeat=2)),
            lambda t: vec_sub(P(t[0], t[1]), P(t[1], t[0])),
        )
        return scan.report()

    return _memo_report(A, ("commutative",), run)


def _jordan_cubic(B, x, y):
    al, be = B.alpha, B.beta
    b2x = be.apply(be.apply(x))
    abx = al.apply(be.apply(x))
    return B.assoc(
        B.mul(b2x, abx),
        al.apply(al.apply(be.apply(y))),
        al.apply(al.apply(al.apply(x))),
    )


def check_bihom_jordan(A: BiHomAlgebra, mode: CheckMode = LINEARIZED) -> CheckReport:
    if not check_bihom_commutative(A).passed:
        raise PrereqFailed(f"{A.label or 'algebra'} is not BiHom-commutative")
    if mode.strategy != "linearized":
        return _direct(
            A, "bihom-jordan", mode, 2, _jordan_cubic,
            "as(mu(beta^2 x, alpha beta x), alpha^2 beta y, alpha^3 x) = 0",
        )

    def run():
        scan = Scan("bihom-jordan", mode="linearized")
        n = A.dim
        im = _Images(A)
        M = {}
        AS = {}

        def prod(i, j):
            if (i, j) not in M:
                M[(i, j)] = A.mul(im.col(0, 2, i), im.col(1, 1, j))
            return M[(i, j)]

        def assoc(i, j, l, k):
            key = (i, j, l, k)
            if key not in AS:
                AS[key] = A.assoc(prod(i, j), im.col(2, 1, l), im.col(3, 0, k))
            return AS[key]

        def residual(t):
            x, w, z, y = t
            return vec_add(vec_add(assoc(x, w, y, z), assoc(w, z, y, x)), assoc(z, x, y, w))

        scan.equation(
            "cyclic_{x,w,z} as(mu(beta^2 x, alpha beta w), alpha^2 beta y, alpha^3 z) = 0",
            list(itertools.product(range(n), repeat=4)),
            residual,
        )
        return scan.report()

    return _memo_report(A, ("jordan",), run)


def is_jordan(A: BiHomAlgebra) -> bool:
    return check_bihom_commutative(A).passed and check_bihom_jordan(A).passed


# -------------------------------------------------------------- Rota-Baxter


def check_rota_baxter(A: BiHomAlgebra, R: LinearMap, lam=0) -> CheckReport:
    lam = Fraction(lam) if isinstance(lam, int) else lam
    n = A.dim
    if (R.rows, R.cols) != (n, n):
        raise ValueError(f"R must be {n}x{n}")
    scan = Scan(
        "rota-baxter",
        weight=format_num(lam),
        commutes_with_alpha=R.commutes_with(A.alpha),
        commutes_with_beta=R.commutes_with(A.beta),
    )
    Rc = [R.column(i) for i in range(n)]

    def residual(t):
        i, j = t
        ei, ej = A.basis(i), A.basis(j)
        lhs = A.mul(Rc[i], Rc[j])
        inner = vec_add(A.mul(Rc[i], ej), A.mul(ei, Rc[j]))
        inner = vec_add(inner, [lam * c for c in A.product_vec(i, j)])
        return vec_sub(lhs, R.apply(inner))

    scan.equation(
        "mu(Rx, Ry) = R(mu(Rx, y) + mu(x, Ry) + lambda mu(x, y))",
        list(itertools.product(range(n), repeat=2)),
        residual,
    )
    return scan.report()


# ------------------------------------------------------- regular, involutive


def is_regular(A: BiHomAlgebra) -> bool:
    return is_invertible(A.alpha) and is_invertible(A.beta) and validate(A).passed


def is_involutive(A: BiHomAlgebra) -> bool:
    I = LinearMap.identity(A.dim)
    return A.alpha @ A.alpha == I and A.beta @ A.beta == I
