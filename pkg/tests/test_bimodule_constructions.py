import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom.algebra import AlgebraMorphism, BiHomAlgebra, block_subspace, check_morphism, is_two_sided_ideal
from bihom.bimodule import (
    BiHomBimodule,
    check_alt_bimodule,
    check_assoc_bimodule,
    check_jordan_bimodule,
    check_right_special,
)
from bihom.bimodule_constructions import (
    bimodule_via_surjection,
    extension_kernel,
    extension_projection,
    extension_section,
    ideal_bimodule,
    induced_bimodule,
    jordan_deform_bimodule,
    jordan_deform_bimodule_powers,
    jordan_shift_bimodule,
    rb_twist_bimodule,
    regular_bimodule,
    shift_bimodule,
    special_pair_to_jordan_bimodule,
    split_null_extension,
    twist_bimodule,
    twist_bimodule_powers,
)
from bihom.catalog import automorphism, example_e1_pair, example_e5, lookup, octonions
from bihom.constructions import direct_sum, plus_algebra, quotient, quotient_projection, yau_twist
from bihom.errors import (
    IntertwiningFailed,
    NonCommutingMaps,
    NotAMorphism,
    NotAnIdeal,
    NotRegular,
    NotSurjective,
    PhiPsiNotInvertible,
    PrereqFailed,
)
from bihom.identities import (
    check_bihom_commutative,
    check_bihom_jordan,
    check_left_alternative,
    check_right_alternative,
)
from bihom.linalg import LinearMap, Subspace

O = octonions()
SF = automorphism("sign_flip", O)
SF145 = automorphism("sign_flip_145", O)
OT = yau_twist(O, SF, SF145)
J = lookup("jordan_sym2")
CJ = automorphism("conj_diag", J)
SW = automorphism("swap", J)
M = lookup("matrix2x2")


def alternative(A):
    return check_left_alternative(A).passed and check_right_alternative(A).passed


def zero_algebra(n):
    return BiHomAlgebra(n, [[[0] * n] * n] * n)


def test_regular_and_ideal():
    V = regular_bimodule(O)
    assert check_alt_bimodule(V).passed
    Z = regular_bimodule(zero_algebra(2))
    assert all(c == 0 for t in (Z.rho_l, Z.rho_r) for a in t for b in a for c in b)
    assert check_alt_bimodule(Z).passed and check_jordan_bimodule(Z).passed
    D = direct_sum(*example_e1_pair())
    I = ideal_bimodule(D, block_subspace(D, 1))
    assert I.mdim == 2 and check_alt_bimodule(I).passed
    with pytest.raises(NotAnIdeal):
        ideal_bimodule(M, Subspace(4, [[1, 0, 0, 0]]))


def test_bimodule_via_surjection():
    A = example_e5((2, 3))
    assert bimodule_via_surjection(AlgebraMorphism(A, A, LinearMap.identity(2))).same_tensors(regular_bimodule(A))
    D = direct_sum(O, lookup("unit"))
    I = block_subspace(D, 1)
    f = AlgebraMorphism(D, quotient(D, I), quotient_projection(D, I))
    assert check_morphism(f).passed
    assert check_alt_bimodule(bimodule_via_surjection(f)).passed
    with pytest.raises(NotSurjective):
        bimodule_via_surjection(AlgebraMorphism(O, O, LinearMap.zero(8)))
    with pytest.raises(NotAMorphism):
        bimodule_via_surjection(AlgebraMorphism(O, O, LinearMap.diagonal([2] * 8)))


def test_shift_examples():
    V = regular_bimodule(OT)
    assert shift_bimodule(V, 0, 0) is V
    W = shift_bimodule(V, 1, 0)
    assert check_alt_bimodule(W).passed
    w = OT.alpha
    for i in range(8):
        for p in range(8):
            expect = [sum(w.entries[j][i] * V.rho_l[j][p][q] for j in range(8)) for q in range(8)]
            assert list(W.rho_l[i][p]) == expect
    with pytest.raises(PrereqFailed):
        shift_bimodule(regular_bimodule(BiHomAlgebra.from_products(2, {(0, 0): [0, 1], (1, 0): [1, 0]})), 1, 0)


@settings(max_examples=4)
@given(st.integers(0, 2), st.integers(0, 2))
def test_shift_closure(n, m):
    assert check_alt_bimodule(shift_bimodule(regular_bimodule(OT), n, m)).passed


def test_twist_examples():
    V = regular_bimodule(O)
    I8 = LinearMap.identity(8)
    T = twist_bimodule(V, I8, I8, I8, I8)
    assert T.same_tensors(V) and T.host.same_tensor(O)
    TV = twist_bimodule(V, SF, SF145, SF, SF145)
    assert TV.host.same_tensor(OT)
    assert check_alt_bimodule(TV).passed
    with pytest.raises(IntertwiningFailed):
        twist_bimodule(V, SF, SF145, I8, I8)


def test_twist_commutation_required():
    A = BiHomAlgebra(1, [[[0]]])
    V = BiHomBimodule(A, 2, LinearMap.diagonal([1, 2]))
    shear = LinearMap.from_rows([[1, 1], [0, 1]])
    I1 = LinearMap.identity(1)
    with pytest.raises(NonCommutingMaps):
        twist_bimodule(V, I1, I1, shear, LinearMap.identity(2))


def test_twist_powers():
    V = regular_bimodule(OT)
    assert check_alt_bimodule(twist_bimodule_powers(V, 1, 1, 1, 2, 1, 2)).passed
    assert check_alt_bimodule(twist_bimodule_powers(V, 0, 2, 2, 0, 2, 0)).passed
    with pytest.raises(IntertwiningFailed):
        twist_bimodule_powers(V, 0, 0, 1, 0, 0, 0)


def test_rb_twist():
    A, R = lookup("rb_toy"), lookup("rb_toy_R")
    W = rb_twist_bimodule(regular_bimodule(A), R)
    assert check_alt_bimodule(W).passed
    for i in range(2):
        for p in range(2):
            expect = [sum(R.entries[j][i] * A.product_vec(j, p)[q] for j in range(2)) for q in range(2)]
            assert list(W.rho_l[i][p]) == expect
    Z = rb_twist_bimodule(regular_bimodule(O), LinearMap.zero(8))
    assert all(c == 0 for row in Z.host.mu for v in row for c in v)
    assert check_alt_bimodule(Z).passed


def test_jordan_shift():
    V = regular_bimodule(J)
    assert jordan_shift_bimodule(V, 0) is V
    for n in (1, 2):
        assert check_jordan_bimodule(jordan_shift_bimodule(V, n)).passed
    VJ = twist_bimodule(V, CJ, CJ, CJ, CJ)
    assert check_jordan_bimodule(VJ).passed
    S = jordan_shift_bimodule(VJ, 1)
    assert check_jordan_bimodule(S).passed
    A = VJ.host
    assert list(S.rho_r[0][2]) == list(VJ.act_r(VJ.basis(0), A.beta.column(2)))
    with pytest.raises(PrereqFailed):
        jordan_shift_bimodule(BiHomBimodule(J, 1, None, None, [[[1]]] * 3), 1)


def test_jordan_shift_needs_equal_twists():
    # with alpha != beta the shifted pair breaks beta(x).phi(v) = psi(v).alpha(x)
    D = jordan_deform_bimodule(regular_bimodule(J), CJ, SW, CJ, SW)
    assert check_jordan_bimodule(D).passed
    rep = check_jordan_bimodule(jordan_shift_bimodule(D, 1))
    assert not rep.passed
    assert rep.witnesses[0].equation == "beta x.phi v = psi v.alpha x"


def test_jordan_deform():
    V = regular_bimodule(J)
    I3 = LinearMap.identity(3)
    assert jordan_deform_bimodule(V, I3, I3, I3, I3).same_tensors(V)
    assert check_jordan_bimodule(jordan_deform_bimodule(V, CJ, SW, CJ, SW)).passed
    assert check_jordan_bimodule(jordan_deform_bimodule(V, CJ, CJ, CJ, CJ)).passed
    assert check_jordan_bimodule(jordan_deform_bimodule_powers(V, CJ, CJ, CJ, CJ, 1)).passed
    assert not check_jordan_bimodule(jordan_deform_bimodule_powers(V, CJ, SW, CJ, SW, 1)).passed
    with pytest.raises(PrereqFailed):
        jordan_deform_bimodule(twist_bimodule(V, CJ, CJ, CJ, CJ), I3, I3, I3, I3)
    with pytest.raises(IntertwiningFailed):
        jordan_deform_bimodule(V, CJ, CJ, I3, I3)
    with pytest.raises(NotAMorphism):
        jordan_deform_bimodule(V, LinearMap.diagonal([1, 1, 2]), I3, I3, I3)


def test_special_pair_examples():
    P = plus_algebra(M)
    V = regular_bimodule(M).with_host(P)
    SP = special_pair_to_jordan_bimodule(V)
    assert check_jordan_bimodule(SP).passed
    for i in range(4):
        for p in range(4):
            assert list(SP.rho_l[i][p]) == [x + y for x, y in zip(M.product_vec(i, p), M.product_vec(p, i))]
            assert list(SP.rho_r[p][i]) == [x + y for x, y in zip(M.product_vec(i, p), M.product_vec(p, i))]
    E = example_e5()
    VE = regular_bimodule(E).with_host(plus_algebra(E))
    assert check_jordan_bimodule(special_pair_to_jordan_bimodule(VE)).passed


def test_special_pair_on_twisted_matrices():
    Mt = yau_twist(M, automorphism("conj_diag", M), automorphism("conj_diag2", M))
    V = regular_bimodule(Mt).with_host(plus_algebra(Mt))
    SP = special_pair_to_jordan_bimodule(V)
    assert check_jordan_bimodule(SP).passed
    E = split_null_extension(SP.host, SP, "jordan")
    assert check_bihom_commutative(E).passed and check_bihom_jordan(E).passed


def test_special_pair_errors():
    P = plus_algebra(M)
    V = regular_bimodule(M).with_host(P)
    with pytest.raises(PhiPsiNotInvertible):
        special_pair_to_jordan_bimodule(BiHomBimodule(P, 1, None, LinearMap.zero(1)))
    with pytest.raises(PrereqFailed):
        special_pair_to_jordan_bimodule(regular_bimodule(J))
    nil = BiHomAlgebra(1, [[[0]]], LinearMap.zero(1))
    with pytest.raises(NotRegular):
        special_pair_to_jordan_bimodule(BiHomBimodule(nil, 1))
    assert check_right_special(V).passed


def test_split_null_extension_alternative():
    V = regular_bimodule(O)
    E = split_null_extension(O, V, "alternative")
    assert E.dim == 16 and E.blocks == (8, 8)
    assert alternative(E)
    for p in range(8, 16):
        for q in range(8, 16):
            assert all(c == 0 for c in E.product_vec(p, q))
    with pytest.raises(PrereqFailed):
        split_null_extension(O, V, "jordan")
    with pytest.raises(ValueError):
        split_null_extension(O, V, "associative")


def test_split_null_extension_jordan():
    P = plus_algebra(M)
    SP = special_pair_to_jordan_bimodule(regular_bimodule(M).with_host(P))
    E = split_null_extension(P, SP, "jordan")
    assert check_bihom_commutative(E).passed and check_bihom_jordan(E).passed


@pytest.mark.parametrize("which", ["octonions", "twisted_octonions", "e5"])
def test_extension_round_trip(which):
    A = {"octonions": O, "twisted_octonions": OT, "e5": example_e5()}[which]
    V = regular_bimodule(A)
    E = split_null_extension(A, V, "alternative")
    pi, sigma = extension_projection(E), extension_section(E)
    assert check_morphism(AlgebraMorphism(E, A, pi)).passed
    assert check_morphism(AlgebraMorphism(A, E, sigma)).passed
    assert pi @ sigma == LinearMap.identity(A.dim)
    K = extension_kernel(E)
    assert is_two_sided_ideal(E, K).passed
    assert quotient(E, K).same_tensor(A)
    assert induced_bimodule(E, A).same_tensors(V)


def test_assoc_bimodule_feeds_special_pair():
    V = regular_bimodule(M)
    assert check_assoc_bimodule(V).passed
    assert check_jordan_bimodule(special_pair_to_jordan_bimodule(V.with_host(plus_algebra(M)))).passed
