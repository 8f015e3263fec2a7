from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom.algebra import BiHomAlgebra, block_subspace
from bihom.bimodule import (
    BiHomBimodule,
    BimoduleMorphism,
    check_alt_bimodule,
    check_assoc_bimodule,
    check_bimodule_morphism,
    check_jordan_bimodule,
    check_left_jordan_module,
    check_left_special,
    check_operator_commutativity,
    check_right_jordan_module,
    check_right_special,
    module_associator,
)
from bihom.bimodule_constructions import ideal_bimodule, regular_bimodule, shift_bimodule
from bihom.catalog import automorphism, example_e1_pair, example_e5, lookup, octonions
from bihom.constructions import direct_sum, plus_algebra, yau_twist
from bihom.errors import DimensionMismatch, InvalidStructure, PatternMismatch, PrereqFailed, PsiNotInvertible
from bihom.identities import check_left_alternative, check_right_alternative
from bihom.linalg import LinearMap
from bihom.report import CheckMode

from strategies import twisted_matrices

SYMBOLIC = CheckMode.symbolic()


def nonassoc():
    return BiHomAlgebra.from_products(2, {(0, 0): [0, 1], (1, 0): [1, 0]})


def zero_module(A, m=2):
    return BiHomBimodule(A, m)


def twisted_octonions():
    O = octonions()
    return yau_twist(O, automorphism("sign_flip", O), automorphism("sign_flip_145", O))


def raw_extension(A, V):
    """Independent oracle for A (+) V: no prerequisite checks."""
    n, m = A.dim, V.mdim
    N = n + m
    mu = [[[0] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            mu[i][j][:n] = A.product_vec(i, j)
        for p in range(m):
            mu[i][n + p][n:] = V.rho_l[i][p]
            mu[n + p][i][n:] = V.rho_r[p][i]
    from bihom.linalg import block_diag

    return BiHomAlgebra(N, mu, block_diag(A.alpha, V.phi), block_diag(A.beta, V.psi))


# ---------------------------------------------------------------- construction


def test_invariants_enforced():
    O = octonions()
    with pytest.raises(InvalidStructure):
        BiHomBimodule(O, 2, LinearMap.from_rows([[1, 1], [0, 1]]), LinearMap.diagonal([1, 2]))
    A = BiHomAlgebra(1, [[[1]]])
    L = [[[0, 1], [1, 0]]]
    with pytest.raises(InvalidStructure):
        BiHomBimodule(A, 2, LinearMap.diagonal([1, 2]), None, L, None)
    with pytest.raises(DimensionMismatch):
        BiHomBimodule(A, 2, None, None, [[[1]]])


def test_module_associator_examples():
    E5 = example_e5((2, 3))
    V = regular_bimodule(E5)
    basis = [[1, 0], [0, 1]]
    for x in basis:
        for y in basis:
            for z in basis:
                for pat in ("VAA", "AVA", "AAV"):
                    assert all(c == 0 for c in module_associator(V, pat, x, y, z))
    assert module_associator(V, "VAA", [0, 0], [1, 0], [0, 1]) == [0, 0]
    W = BiHomBimodule(E5, 2, E5.alpha, E5.beta, None, V.rho_r)
    assert module_associator(W, "AAV", [1, 0], [0, 1], [1, 1]) == [0, 0]
    with pytest.raises(PatternMismatch):
        module_associator(V, "VVA", [1, 0], [1, 0], [1, 0])


def test_assoc_bimodule_examples():
    assert check_assoc_bimodule(regular_bimodule(example_e5())).passed
    assert check_assoc_bimodule(zero_module(octonions())).passed
    rep = check_assoc_bimodule(regular_bimodule(nonassoc()))
    assert not rep.passed and rep.witnesses[0].where == (1, 1, 1)


def test_alt_bimodule_examples():
    V = regular_bimodule(octonions())
    assert check_alt_bimodule(V).passed
    assert check_alt_bimodule(V, SYMBOLIC).passed
    assert not check_assoc_bimodule(V).passed
    assert check_alt_bimodule(zero_module(octonions())).passed
    D = direct_sum(*example_e1_pair())
    assert check_alt_bimodule(ideal_bimodule(D, block_subspace(D, 1))).passed
    assert not check_alt_bimodule(regular_bimodule(nonassoc())).passed


def test_jordan_module_examples():
    J = lookup("jordan_sym2")
    V = regular_bimodule(J)
    assert check_right_jordan_module(V).passed and check_left_jordan_module(V).passed
    Z = zero_module(J)
    assert check_right_jordan_module(Z).passed and check_left_jordan_module(Z).passed
    with pytest.raises(PrereqFailed):
        check_right_jordan_module(regular_bimodule(lookup("matrix2x2")))
    singular = BiHomBimodule(J, 1, None, LinearMap.zero(1))
    with pytest.raises(PsiNotInvertible):
        check_left_jordan_module(singular)
    assert check_right_jordan_module(singular).passed


def test_special_examples():
    M = lookup("matrix2x2")
    V = regular_bimodule(M).with_host(plus_algebra(M))
    assert check_right_special(V).passed and check_left_special(V).passed
    J = lookup("jordan_sym2")
    Z = zero_module(J)
    assert check_right_special(Z).passed and check_left_special(Z).passed
    with pytest.raises(PsiNotInvertible):
        check_left_special(BiHomBimodule(J, 1, None, LinearMap.zero(1)))
    # a Jordan algebra acting on itself is not special
    assert not check_right_special(regular_bimodule(J)).passed


def test_alternative_module_over_plus_host_is_special():
    O = octonions()
    V = regular_bimodule(O).with_host(plus_algebra(O))
    assert check_right_special(V).passed and check_left_special(V).passed


def test_jordan_bimodule_examples():
    J = lookup("jordan_sym2")
    assert check_jordan_bimodule(regular_bimodule(J)).passed
    assert check_jordan_bimodule(zero_module(J)).passed
    P = plus_algebra(example_e5())
    assert check_jordan_bimodule(regular_bimodule(P)).passed
    with pytest.raises(PrereqFailed):
        check_jordan_bimodule(regular_bimodule(octonions()))


def test_operator_commutativity_examples():
    V = regular_bimodule(example_e5())
    assert check_operator_commutativity(V).passed
    Z = zero_module(example_e5())
    assert check_operator_commutativity(Z, V).passed and check_operator_commutativity(V, Z).passed
    rep = check_operator_commutativity(regular_bimodule(nonassoc()))
    assert not rep.passed and rep.witnesses[0].where == (1, 1, 1)


def test_bimodule_morphism_examples():
    V = regular_bimodule(twisted_octonions())
    assert check_bimodule_morphism(BimoduleMorphism(V, V, LinearMap.identity(8))).passed
    assert check_bimodule_morphism(BimoduleMorphism(V, V, LinearMap.zero(8))).passed
    W = shift_bimodule(V, 1, 0)
    rep = check_bimodule_morphism(BimoduleMorphism(V, W, LinearMap.identity(8)))
    assert not rep.passed and rep.witnesses
    with pytest.raises(DimensionMismatch):
        BimoduleMorphism(V, V, LinearMap.identity(3))


def test_digest_is_stable():
    V = regular_bimodule(example_e5())
    assert V.digest() == regular_bimodule(example_e5()).digest()
    assert V.digest() != regular_bimodule(example_e5((2, 3))).digest()


# ------------------------------------------------------------------ properties


@st.composite
def unit_modules(draw):
    """Random actions of the 1-dim unital algebra on a 1- or 2-dim space."""
    A = lookup("unit")
    m = draw(st.integers(1, 2))
    c = st.sampled_from([0, 0, 1, -1, 2]).map(Fraction)
    L = [[[draw(c) for _ in range(m)] for _ in range(m)]]
    R = [[[draw(c) for _ in range(m)]] for _ in range(m)]
    return BiHomBimodule(A, m, None, None, L, R)


@settings(max_examples=40)
@given(unit_modules())
def test_alt_bimodule_iff_extension_alternative(V):
    E = raw_extension(V.host, V)
    ext = check_left_alternative(E).passed and check_right_alternative(E).passed
    assert check_alt_bimodule(V).passed == ext
    assert check_alt_bimodule(V, SYMBOLIC).passed == ext


@settings(max_examples=6)
@given(twisted_matrices())
def test_special_implies_jordan_module(A):
    V = regular_bimodule(A).with_host(plus_algebra(A))
    if check_right_special(V).passed:
        assert check_right_jordan_module(V).passed
    if check_left_special(V).passed:
        assert check_left_jordan_module(V).passed
    assert check_operator_commutativity(regular_bimodule(A)).passed


@settings(max_examples=6)
@given(st.sampled_from(["jordan_sym2", "e5plus", "m2plus"]))
def test_jordan_bimodule_implies_one_sided(name):
    host = {
        "jordan_sym2": lambda: lookup("jordan_sym2"),
        "e5plus": lambda: plus_algebra(example_e5((2, 3))),
        "m2plus": lambda: plus_algebra(lookup("matrix2x2")),
    }[name]()
    V = regular_bimodule(host)
    if check_jordan_bimodule(V).passed:
        assert check_right_jordan_module(V).passed
        assert check_left_jordan_module(V).passed
