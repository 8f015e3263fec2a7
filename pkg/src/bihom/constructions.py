"""Algebra-level constructions with closure theorems."""

from __future__ import annotations

from .algebra import BiHomAlgebra, is_multiplicative, is_two_sided_ideal, validate
from .errors import NonCommutingMaps, NotAMorphism, NotAnIdeal, NotRegular, NotRotaBaxter, PrereqFailed
from .identities import (
    check_bihom_associative,
    check_left_alternative,
    check_right_alternative,
    check_rota_baxter,
    is_regular,
)
from .linalg import LinearMap, Subspace, block_diag, complement_basis, kron, mat_inverse, vec_add


def quotient(A: BiHomAlgebra, I: Subspace) -> BiHomAlgebra:
    if not is_two_sided_ideal(A, I).passed:
        raise NotAnIdeal("subspace is not a two-sided ideal")
    reps = complement_basis(I)
    _, pivots = I.rref()
    keep = [c for c in range(A.dim) if c not in pivots]

    def coords(v):
        w = I.reduce(v)
        return [w[c] for c in keep]

    k = len(reps)
    mu = [[coords(A.mul(reps[i], reps[j])) for j in range(k)] for i in range(k)]
    alpha = LinearMap.from_columns([coords(A.alpha.apply(r)) for r in reps], rows=k)
    beta = LinearMap.from_columns([coords(A.beta.apply(r)) for r in reps], rows=k)
    return BiHomAlgebra(k, mu, alpha, beta, f"quotient({A.label})")


def quotient_projection(A: BiHomAlgebra, I: Subspace) -> LinearMap:
    _, pivots = I.rref()
    keep = [c for c in range(A.dim) if c not in pivots]
    cols = []
    for j in range(A.dim):
        w = I.reduce(A.basis(j))
        cols.append([w[c] for c in keep])
    return LinearMap.from_columns(cols, rows=len(keep))


def direct_sum(A: BiHomAlgebra, B: BiHomAlgebra) -> BiHomAlgebra:
    n, m = A.dim, B.dim
    N = n + m
    zero = [0] * N
    mu = [[list(zero) for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            mu[i][j] = list(A.mu[i][j]) + [0] * m
    for i in range(m):
        for j in range(m):
            mu[n + i][n + j] = [0] * n + list(B.mu[i][j])
    return BiHomAlgebra(
        N, mu, block_diag(A.alpha, B.alpha), block_diag(A.beta, B.beta),
        f"direct_sum({A.label}, {B.label})", blocks=A.blocks + B.blocks,
    )


def tensor_product(A: BiHomAlgebra, B: BiHomAlgebra, check=True) -> BiHomAlgebra:
    """A (BiHom-associative) tensor B (BiHom-alternative), basis index i*m + j."""
    if check:
        if not check_bihom_associative(A).passed:
            raise PrereqFailed(f"{A.label} is not BiHom-associative")
        if not (check_left_alternative(B).passed and check_right_alternative(B).passed):
            raise PrereqFailed(f"{B.label} is not BiHom-alternative")
    n, m = A.dim, B.dim
    N = n * m
    mu = [[None] * N for _ in range(N)]
    for i1 in range(n):
        for j1 in range(m):
            for i2 in range(n):
                for j2 in range(m):
                    a = A.mu[i1][i2]
                    b = B.mu[j1][j2]
                    mu[i1 * m + j1][i2 * m + j2] = [x * y for x in a for y in b]
    return BiHomAlgebra(N, mu, kron(A.alpha, B.alpha), kron(A.beta, B.beta), f"tensor_product({A.label}, {B.label})")


def yau_twist(A: BiHomAlgebra, alpha2: LinearMap, beta2: LinearMap, label=None) -> BiHomAlgebra:
    for name, f in (("alpha'", alpha2), ("beta'", beta2)):
        if not is_multiplicative(A, f):
            raise NotAMorphism(f"{name} is not multiplicative for the product")
    maps = [("alpha", A.alpha), ("beta", A.beta), ("alpha'", alpha2), ("beta'", beta2)]
    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            if not maps[i][1].commutes_with(maps[j][1]):
                raise NonCommutingMaps(f"{maps[i][0]} and {maps[j][0]} do not commute")
    n = A.dim
    ai = [alpha2.column(i) for i in range(n)]
    bj = [beta2.column(j) for j in range(n)]
    mu = [[A.mul(ai[i], bj[j]) for j in range(n)] for i in range(n)]
    return BiHomAlgebra(n, mu, A.alpha @ alpha2, A.beta @ beta2, label or f"yau_twist({A.label})")


def power_twist(A: BiHomAlgebra, k: int) -> BiHomAlgebra:
    if not validate(A).passed:
        raise PrereqFailed("algebra is not multiplicative")
    if k == 0:
        return A
    return yau_twist(A, A.alpha.power(k), A.beta.power(k), f"power_twist({A.label}, {k})")


def rota_baxter_deformation(A: BiHomAlgebra, R: LinearMap) -> BiHomAlgebra:
    rep = check_rota_baxter(A, R, 0)
    if not rep.passed:
        raise NotRotaBaxter("R is not a weight-0 Rota-Baxter operator")
    if not (rep.notes["commutes_with_alpha"] and rep.notes["commutes_with_beta"]):
        raise NonCommutingMaps("R does not commute with alpha and beta")
    n = A.dim
    Rc = [R.column(i) for i in range(n)]
    mu = [[vec_add(A.mul(Rc[i], A.basis(j)), A.mul(A.basis(i), Rc[j])) for j in range(n)] for i in range(n)]
    return BiHomAlgebra(n, mu, A.alpha, A.beta, f"rota_baxter_deformation({A.label})")


def plus_algebra(A: BiHomAlgebra) -> BiHomAlgebra:
    """mu'(x, y) = mu(x, y) + mu(alpha^-1 beta y, beta^-1 alpha x)."""
    if not is_regular(A):
        raise NotRegular(f"{A.label or 'algebra'} is not regular")
    if not (
        check_bihom_associative(A).passed
        or (check_left_alternative(A).passed and check_right_alternative(A).passed)
    ):
        raise PrereqFailed(f"{A.label or 'algebra'} is neither BiHom-associative nor BiHom-alternative")
    n = A.dim
    ab = mat_inverse(A.alpha) @ A.beta
    ba = mat_inverse(A.beta) @ A.alpha
    mu = [
        [vec_add(A.product_vec(i, j), A.mul(ab.column(j), ba.column(i))) for j in range(n)]
        for i in range(n)
    ]
    return BiHomAlgebra(n, mu, A.alpha, A.beta, f"plus_algebra({A.label})")
