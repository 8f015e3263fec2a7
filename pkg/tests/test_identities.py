from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom.algebra import BiHomAlgebra
from bihom.catalog import algebra_names, example_e1_first, example_e5, lookup, octonions
from bihom.constructions import plus_algebra
from bihom.errors import PrereqFailed
from bihom.identities import (
    check_bihom_associative,
    check_bihom_commutative,
    check_bihom_jordan,
    check_left_alternative,
    check_right_alternative,
    check_rota_baxter,
    is_involutive,
    is_regular,
)
from bihom.linalg import LinearMap
from bihom.report import CheckMode, CheckReport, Witness

from strategies import algebras, twisted_matrices

SYMBOLIC = CheckMode.symbolic()


def nonassoc_example():
    return BiHomAlgebra.from_products(2, {(0, 0): [0, 1], (1, 0): [1, 0]})


def zero_algebra(n, alpha=None, beta=None):
    return BiHomAlgebra(n, [[[0] * n] * n] * n, alpha, beta)


def test_report_invariants():
    with pytest.raises(ValueError):
        CheckReport("x", "fail")
    with pytest.raises(ValueError):
        CheckReport("x", "pass", [Witness((1,), ["1"])])
    with pytest.raises(ValueError):
        CheckMode("sampled", points=0)
    rep = check_bihom_associative(nonassoc_example())
    assert "elapsed_s" not in rep.to_dict(timing=False)["stats"]


def test_associativity_examples():
    assert check_bihom_associative(example_e5()).passed
    A = zero_algebra(2, LinearMap.diagonal([2, 3]), LinearMap.diagonal([-1, 5]))
    assert check_bihom_associative(A).passed
    rep = check_bihom_associative(nonassoc_example())
    assert not rep.passed and rep.witnesses[0].where == (1, 1, 1)
    assert rep.witnesses[0].residual == ["1", "0"]


def test_alternativity_examples():
    O = octonions()
    for check in (check_left_alternative, check_right_alternative):
        rep = check(O)
        assert rep.passed and rep.stats["tuples"] == 512
    rep = check_left_alternative(nonassoc_example())
    assert not rep.passed and rep.witnesses[0].where == (1, 1, 1)
    assert not check_left_alternative(nonassoc_example(), SYMBOLIC).passed


def test_octonions_not_associative():
    rep = check_bihom_associative(octonions())
    assert not rep.passed
    assert rep.witnesses[0].where == (2, 3, 5)


def test_first_example_symbolic():
    A = example_e1_first()
    assert check_bihom_associative(A).passed
    assert check_left_alternative(A).passed and check_right_alternative(A).passed


def test_commutativity_examples():
    assert check_bihom_commutative(plus_algebra(example_e5())).passed
    assert check_bihom_commutative(lookup("jordan_sym2")).passed
    rep = check_bihom_commutative(lookup("matrix2x2"))
    assert not rep.passed and rep.witnesses[0].where == (1, 2)


def test_jordan_examples():
    assert check_bihom_jordan(lookup("jordan_sym2")).passed
    assert check_bihom_jordan(zero_algebra(3)).passed
    P = plus_algebra(example_e5())
    assert check_bihom_jordan(P).passed
    assert check_bihom_jordan(P, SYMBOLIC).passed
    assert check_bihom_jordan(P, CheckMode.sampled(10, 3)).passed
    with pytest.raises(PrereqFailed):
        check_bihom_jordan(lookup("matrix2x2"))


def test_rota_baxter_examples():
    A, R = lookup("rb_toy"), lookup("rb_toy_R")
    assert check_rota_baxter(A, R, 0).passed
    for name in algebra_names():
        B = lookup(name)
        assert check_rota_baxter(B, LinearMap.zero(B.dim), Fraction(7)).passed
        assert check_rota_baxter(B, LinearMap.identity(B.dim), -1).passed
    rep = check_rota_baxter(lookup("matrix2x2"), LinearMap.identity(4), 0)
    assert not rep.passed
    assert rep.notes["commutes_with_alpha"] and rep.notes["commutes_with_beta"]


def test_regular_involutive_examples():
    assert is_regular(example_e5())
    assert is_involutive(octonions())
    nil = LinearMap.from_columns([[0, 0], [1, 0]])
    assert not is_regular(zero_algebra(2, nil))
    assert not is_involutive(example_e1_first())


def test_sampled_mode_records_seed():
    rep = check_left_alternative(nonassoc_example(), CheckMode.sampled(5, 11))
    assert rep.notes["mode"] == "sampled(points=5, seed=11)"
    again = check_left_alternative(nonassoc_example(), CheckMode.sampled(5, 11))
    assert rep.to_dict(False) == again.to_dict(False)


@settings(max_examples=25)
@given(algebras(max_dim=2))
def test_polarization_agreement(A):
    for check in (check_left_alternative, check_right_alternative):
        lin = check(A).passed
        assert check(A, SYMBOLIC).passed == lin
        sampled = check(A, CheckMode.sampled(20, 1)).passed
        # a sampled failure is a concrete counterexample
        assert sampled or not lin


@settings(max_examples=15)
@given(algebras(max_dim=2, sparse=True))
def test_jordan_polarization_agreement(A):
    if not check_bihom_commutative(A).passed:
        with pytest.raises(PrereqFailed):
            check_bihom_jordan(A)
        return
    assert check_bihom_jordan(A, SYMBOLIC).passed == check_bihom_jordan(A).passed


@settings(max_examples=10)
@given(twisted_matrices())
def test_associative_implies_alternative(A):
    assert check_bihom_associative(A).passed
    assert check_left_alternative(A).passed and check_right_alternative(A).passed


def test_witness_is_lexicographically_least():
    A = nonassoc_example()
    rep = check_bihom_associative(A)
    first = rep.witnesses[0].where
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t = (i + 1, j + 1, k + 1)
                if t < first:
                    e = [[1, 0], [0, 1]]
                    assert all(c == 0 for c in A.assoc(e[i], e[j], e[k]))
