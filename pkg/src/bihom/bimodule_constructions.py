"""Bimodule-producing constructions and split null extensions."""

from __future__ import annotations

from .algebra import AlgebraMorphism, BiHomAlgebra, check_morphism, is_two_sided_ideal
from .bimodule import (
    BiHomBimodule,
    check_alt_bimodule,
    check_jordan_bimodule,
    check_left_special,
    check_operator_commutativity,
    check_right_special,
)
from .constructions import rota_baxter_deformation, yau_twist
from .errors import (
    DimensionMismatch,
    IntertwiningFailed,
    NonCommutingMaps,
    NotAMorphism,
    NotAnIdeal,
    NotRegular,
    NotSurjective,
    PhiPsiNotInvertible,
    PrereqFailed,
)
from .identities import check_bihom_commutative, check_bihom_jordan, is_regular
from .linalg import LinearMap, Subspace, block_diag, is_invertible, mat_inverse, mat_rank, unit_vec, vec_add, vec_sub
from .scalar import is_zero


def _actions(V: BiHomBimodule, left, right):
    """Tensors of the actions (a, v) -> left(a, v) and (v, a) -> right(v, a) on basis vectors."""
    n, m = V.host.dim, V.mdim
    L = [[left(unit_vec(n, i), unit_vec(m, p)) for p in range(m)] for i in range(n)]
    R = [[right(unit_vec(m, p), unit_vec(n, i)) for i in range(n)] for p in range(m)]
    return L, R


def _precomposed(V, la=None, lv=None, rv=None, ra=None):
    """rho_l o (la (x) lv) and rho_r o (rv (x) ra); None means identity."""
    ap = lambda f, x: x if f is None else f.apply(x)
    return _actions(
        V,
        lambda a, v: V.act_l(ap(la, a), ap(lv, v)),
        lambda v, a: V.act_r(ap(rv, v), ap(ra, a)),
    )


# ---------------------------------------------------------------- regular, ideal


def regular_bimodule(A: BiHomAlgebra) -> BiHomBimodule:
    n = A.dim
    L = [[A.product_vec(i, p) for p in range(n)] for i in range(n)]
    R = [[A.product_vec(p, i) for i in range(n)] for p in range(n)]
    return BiHomBimodule(A, n, A.alpha, A.beta, L, R, f"regular({A.label})")


def _restricted(I: Subspace):
    """Reduced basis of I and the coordinate map on vectors of I."""
    rows, pivots = I.rref()
    return rows, lambda w: [w[p] for p in pivots]


def ideal_bimodule(A: BiHomAlgebra, I: Subspace) -> BiHomBimodule:
    if not is_two_sided_ideal(A, I).passed:
        raise NotAnIdeal("subspace is not a two-sided ideal")
    basis, coords = _restricted(I)
    k = len(basis)
    L = [[coords(A.mul(A.basis(i), basis[p])) for p in range(k)] for i in range(A.dim)]
    R = [[coords(A.mul(basis[p], A.basis(i))) for i in range(A.dim)] for p in range(k)]
    phi = LinearMap.from_columns([coords(A.alpha.apply(b)) for b in basis], rows=k)
    psi = LinearMap.from_columns([coords(A.beta.apply(b)) for b in basis], rows=k)
    return BiHomBimodule(A, k, phi, psi, L, R, f"ideal({A.label})")


def bimodule_via_surjection(f: AlgebraMorphism) -> BiHomBimodule:
    """B as an A-bimodule through a surjective morphism f: A -> B."""
    A, B = f.source, f.target
    if not check_morphism(f).passed:
        raise NotAMorphism("map is not an algebra morphism")
    if mat_rank(f.map) != B.dim:
        raise NotSurjective(f"rank {mat_rank(f.map)} < target dimension {B.dim}")
    img = [f.map.column(i) for i in range(A.dim)]
    L = [[B.mul(img[i], B.basis(p)) for p in range(B.dim)] for i in range(A.dim)]
    R = [[B.mul(B.basis(p), img[i]) for i in range(A.dim)] for p in range(B.dim)]
    return BiHomBimodule(A, B.dim, B.alpha, B.beta, L, R, f"via({B.label})")


# ------------------------------------------------------------ alternative family


def shift_bimodule(V: BiHomBimodule, n: int, m: int) -> BiHomBimodule:
    """rho_l o (alpha^n beta^m (x) Id), rho_r o (Id (x) alpha^n beta^m)."""
    if not check_alt_bimodule(V).passed:
        raise PrereqFailed("bimodule is not BiHom-alternative")
    if (n, m) == (0, 0):
        return V
    A = V.host
    w = A.alpha.power(n) @ A.beta.power(m)
    L, R = _precomposed(V, la=w, ra=w)
    return BiHomBimodule(A, V.mdim, V.phi, V.psi, L, R, f"shift({V.label}, {n}, {m})")


def _check_commuting(maps):
    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            if not maps[i][1].commutes_with(maps[j][1]):
                raise NonCommutingMaps(f"{maps[i][0]} and {maps[j][0]} do not commute")


def _check_intertwining(V, a2, b2, f2, g2):
    """f2 rho_l = rho_l (a2 (x) f2), g2 rho_l = rho_l (b2 (x) g2), and the right-hand analogues."""
    A = V.host
    n, m = A.dim, V.mdim
    for i in range(n):
        e = A.basis(i)
        for p in range(m):
            v = V.basis(p)
            lv, rv = V.act_l(e, v), V.act_r(v, e)
            cases = (
                ("phi' rho_l = rho_l(alpha' x phi')", f2.apply(lv), V.act_l(a2.apply(e), f2.apply(v))),
                ("psi' rho_l = rho_l(beta' x psi')", g2.apply(lv), V.act_l(b2.apply(e), g2.apply(v))),
                ("phi' rho_r = rho_r(phi' x alpha')", f2.apply(rv), V.act_r(f2.apply(v), a2.apply(e))),
                ("psi' rho_r = rho_r(psi' x beta')", g2.apply(rv), V.act_r(g2.apply(v), b2.apply(e))),
            )
            for name, x, y in cases:
                if any(not is_zero(c) for c in vec_sub(x, y)):
                    raise IntertwiningFailed(f"{name} fails at (e{i + 1}, v{p + 1})")


def twist_bimodule(V: BiHomBimodule, alpha2: LinearMap, beta2: LinearMap, phi2: LinearMap, psi2: LinearMap) -> BiHomBimodule:
    """rho_l o (alpha' (x) psi'), rho_r o (phi' (x) beta') over yau_twist(A, alpha', beta')."""
    _check_commuting([("phi", V.phi), ("psi", V.psi), ("phi'", phi2), ("psi'", psi2)])
    host = yau_twist(V.host, alpha2, beta2)
    _check_intertwining(V, alpha2, beta2, phi2, psi2)
    L, R = _precomposed(V, la=alpha2, lv=psi2, rv=phi2, ra=beta2)
    return BiHomBimodule(host, V.mdim, V.phi @ phi2, V.psi @ psi2, L, R, f"twist({V.label})")


def twist_bimodule_powers(V: BiHomBimodule, n: int, m: int, p: int, q: int, r: int, s: int) -> BiHomBimodule:
    """Shift by (n, m), then twist by alpha^r, beta^s, phi^p, psi^q.

    Actions: rho_l o (alpha^(n+r) beta^m (x) psi^q), rho_r o (phi^p (x) alpha^n beta^(m+s)).
    The intertwining hypotheses hold for powers only when p = r and q = s.
    """
    A = V.host
    W = shift_bimodule(V, n, m)
    return twist_bimodule(W, A.alpha.power(r), A.beta.power(s), V.phi.power(p), V.psi.power(q))


def rb_twist_bimodule(V: BiHomBimodule, R: LinearMap) -> BiHomBimodule:
    """rho_l o (R (x) Id), rho_r o (Id (x) R) over the Rota-Baxter deformation of the host."""
    host = rota_baxter_deformation(V.host, R)
    L, Rr = _precomposed(V, la=R, ra=R)
    return BiHomBimodule(host, V.mdim, V.phi, V.psi, L, Rr, f"rb_twist({V.label})")


# ---------------------------------------------------------------- Jordan family


def jordan_shift_bimodule(V: BiHomBimodule, n: int) -> BiHomBimodule:
    """rho_l o (alpha^n (x) Id), rho_r o (Id (x) beta^n)."""
    if not check_jordan_bimodule(V).passed:
        raise PrereqFailed("bimodule is not BiHom-Jordan")
    if n == 0:
        return V
    A = V.host
    L, R = _precomposed(V, la=A.alpha.power(n), ra=A.beta.power(n))
    return BiHomBimodule(A, V.mdim, V.phi, V.psi, L, R, f"jordan_shift({V.label}, {n})")


def _classical_jordan(V):
    A = V.host
    if not (A.alpha.is_identity() and A.beta.is_identity() and V.phi.is_identity() and V.psi.is_identity()):
        raise PrereqFailed("expected a classical bimodule with identity twists")
    if not check_jordan_bimodule(V).passed:
        raise PrereqFailed("bimodule is not a Jordan bimodule")


def _deformed_host(A, alpha, beta):
    n = A.dim
    mu = [[A.mul(alpha.column(i), beta.column(j)) for j in range(n)] for i in range(n)]
    for name, f in (("alpha", alpha), ("beta", beta)):
        for i in range(n):
            for j in range(n):
                if any(not is_zero(c) for c in vec_sub(f.apply(A.product_vec(i, j)), A.mul(f.column(i), f.column(j)))):
                    raise NotAMorphism(f"{name} is not an endomorphism")
    return BiHomAlgebra(n, mu, alpha, beta, f"deform({A.label})")


def jordan_deform_bimodule(V, alpha, beta, phi, psi) -> BiHomBimodule:
    """rho_l(alpha (x) psi), rho_r(phi (x) beta) over (A, mu(alpha (x) beta), alpha, beta)."""
    return jordan_deform_bimodule_powers(V, alpha, beta, phi, psi, 0)


def jordan_deform_bimodule_powers(V, alpha, beta, phi, psi, n: int) -> BiHomBimodule:
    """rho_l o (alpha^(n+1) (x) psi), rho_r o (phi (x) beta^(n+1))."""
    _classical_jordan(V)
    _check_commuting([("alpha", alpha), ("beta", beta)])
    _check_commuting([("phi", phi), ("psi", psi)])
    host = _deformed_host(V.host, alpha, beta)
    _check_intertwining(V, alpha, beta, phi, psi)
    L, R = _precomposed(V, la=alpha.power(n + 1), lv=psi, rv=phi, ra=beta.power(n + 1))
    label = f"jordan_deform({V.label})" if n == 0 else f"jordan_deform({V.label}, {n})"
    return BiHomBimodule(host, V.mdim, phi, psi, L, R, label)


def special_pair_to_jordan_bimodule(left: BiHomBimodule, right: BiHomBimodule | None = None) -> BiHomBimodule:
    """Combine a left special action rho1 (of `left`) and a right special action rho2 (of `right`).

    rho_l(x, v) = rho1(x, v) + rho2(psi phi^-1 v, alpha beta^-1 x)
    rho_r(v, x) = rho1(beta alpha^-1 x, phi psi^-1 v) + rho2(v, x)
    """
    right = left if right is None else right
    A = left.host
    if right.host.dim != A.dim or right.mdim != left.mdim:
        raise DimensionMismatch("the two actions live on different spaces")
    if not (right.phi == left.phi and right.psi == left.psi):
        raise PrereqFailed("the two actions use different module twists")
    if not is_regular(A):
        raise NotRegular("host is not regular")
    if not (check_bihom_commutative(A).passed and check_bihom_jordan(A).passed):
        raise PrereqFailed("host is not BiHom-Jordan")
    phi, psi = left.phi, left.psi
    if not (is_invertible(phi) and is_invertible(psi)):
        raise PhiPsiNotInvertible("phi and psi must both be invertible")
    if not check_left_special(left).passed:
        raise PrereqFailed("left action is not left special")
    if not check_right_special(right).passed:
        raise PrereqFailed("right action is not right special")
    if not check_operator_commutativity(left, right).passed:
        raise PrereqFailed("the actions do not satisfy operator BiHom-commutativity")
    ab = A.alpha @ mat_inverse(A.beta)
    ba = A.beta @ mat_inverse(A.alpha)
    sp = psi @ mat_inverse(phi)
    ps = phi @ mat_inverse(psi)
    L, R = _actions(
        left,
        lambda x, v: vec_add(left.act_l(x, v), right.act_r(sp.apply(v), ab.apply(x))),
        lambda v, x: vec_add(left.act_l(ba.apply(x), ps.apply(v)), right.act_r(v, x)),
    )
    return BiHomBimodule(A, left.mdim, phi, psi, L, R, f"special_pair({left.label})")


# ----------------------------------------------------------- split null extension

SELECTORS = ("alternative", "jordan")


def split_null_extension(A: BiHomAlgebra, V: BiHomBimodule, selector: str) -> BiHomAlgebra:
    """A (+) V with (a+m)(b+n) = ab + a.n + m.b and twists alpha (+) phi, beta (+) psi."""
    if selector not in SELECTORS:
        raise ValueError(f"selector must be one of {SELECTORS}")
    if V.host is not A and not V.host.same_tensor(A):
        raise PrereqFailed("bimodule is over a different algebra")
    if selector == "alternative":
        if not check_alt_bimodule(V).passed:
            raise PrereqFailed("bimodule is not BiHom-alternative")
    elif not check_jordan_bimodule(V).passed:
        raise PrereqFailed("bimodule is not BiHom-Jordan")
    n, m = A.dim, V.mdim
    N = n + m
    zero = [0] * N
    mu = [[list(zero) for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            mu[i][j] = A.product_vec(i, j) + [0] * m
        for p in range(m):
            mu[i][n + p] = [0] * n + list(V.rho_l[i][p])
            mu[n + p][i] = [0] * n + list(V.rho_r[p][i])
    return BiHomAlgebra(
        N, mu, block_diag(A.alpha, V.phi), block_diag(A.beta, V.psi),
        f"split_null_extension({A.label}, {V.label})", blocks=(n, m),
    )


def extension_projection(E: BiHomAlgebra) -> LinearMap:
    """pi: A (+) V -> A."""
    n = E.blocks[0]
    return LinearMap.from_columns([unit_vec(n, i) if i < n else [0] * n for i in range(E.dim)], rows=n)


def extension_section(E: BiHomAlgebra) -> LinearMap:
    """sigma: A -> A (+) V, a -> (a, 0)."""
    n = E.blocks[0]
    return LinearMap.from_columns([unit_vec(E.dim, i) for i in range(n)], rows=E.dim)


def extension_kernel(E: BiHomAlgebra) -> Subspace:
    n = E.blocks[0]
    return Subspace(E.dim, [unit_vec(E.dim, n + p) for p in range(E.dim - n)])


def induced_bimodule(E: BiHomAlgebra, A: BiHomAlgebra) -> BiHomBimodule:
    """The A-bimodule on i(V) = ker(pi), acting through the canonical lift sigma."""
    n = A.dim
    m = E.dim - n
    sigma = extension_section(E)
    lift = [sigma.column(i) for i in range(n)]
    inc = [unit_vec(E.dim, n + p) for p in range(m)]
    L = [[E.mul(lift[i], inc[p])[n:] for p in range(m)] for i in range(n)]
    R = [[E.mul(inc[p], lift[i])[n:] for i in range(n)] for p in range(m)]
    phi = LinearMap.from_columns([E.alpha.apply(v)[n:] for v in inc], rows=m)
    psi = LinearMap.from_columns([E.beta.apply(v)[n:] for v in inc], rows=m)
    return BiHomBimodule(A, m, phi, psi, L, R, "induced")
