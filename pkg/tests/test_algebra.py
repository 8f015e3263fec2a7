from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bihom.algebra import (
    AlgebraMorphism,
    BiHomAlgebra,
    associator,
    block_subspace,
    check_morphism,
    graph_subspace,
    is_subalgebra,
    is_two_sided_ideal,
    multiply,
    validate,
)
from bihom.catalog import algebra_names, automorphism, example_e1_first, lookup, octonions
from bihom.constructions import direct_sum
from bihom.errors import DimensionMismatch, InvalidStructure
from bihom.linalg import LinearMap, Subspace, vec_add
from bihom.scalar import ParameterContext, scalar_eq

from strategies import algebras, coeff, vectors

a, b = ParameterContext(("a", "b")).variables()


def nonassoc_example():
    return BiHomAlgebra.from_products(2, {(0, 0): [0, 1], (1, 0): [1, 0]})


def test_multiply_examples():
    A = example_e1_first()
    assert multiply(A, [1, 0], [1, 0]) == [1, 0]
    assert multiply(A, [0, 0], [1, 1]) == [0, 0]
    x, y = multiply(A, [0, 1], [0, 1])
    assert scalar_eq(x, -(a**2) * (b - 2) / (b - 1) ** 2) and scalar_eq(y, a)
    with pytest.raises(DimensionMismatch):
        multiply(A, [1, 0, 0], [1, 0])


def test_associator_example():
    A = nonassoc_example()
    assert associator(A, [1, 0], [1, 0], [1, 0]) == [1, 0]


def test_associator_vanishes_in_associative_example():
    A = lookup("e5")
    for x in ([1, 0], [0, 1], [2, -1]):
        assert all(c == 0 for c in associator(A, x, [1, 1], [0, 3]))


def test_construction_invariants():
    with pytest.raises(InvalidStructure):
        BiHomAlgebra(2, [[[0, 0]] * 2] * 2, LinearMap.from_rows([[1, 1], [0, 1]]), LinearMap.diagonal([1, 2]))
    with pytest.raises(DimensionMismatch):
        BiHomAlgebra(2, [[[0, 0]] * 2] * 2, LinearMap.identity(3))


def test_validate_examples():
    assert validate(example_e1_first()).passed
    swap = LinearMap.from_columns([[0, 1], [1, 0]])
    A = BiHomAlgebra.from_products(2, {(0, 0): [1, 0]}, alpha=swap)
    rep = validate(A)
    assert not rep.passed
    w = rep.witnesses[0]
    assert w.where == (1, 1) and w.residual == ["0", "1"]


@pytest.mark.parametrize("name", algebra_names())
def test_catalog_algebras_validate(name):
    assert validate(lookup(name)).passed


def test_subspace_closure_examples():
    O = octonions()
    for H in (Subspace.whole(8), Subspace.zero(8)):
        assert is_subalgebra(O, H).passed and is_two_sided_ideal(O, H).passed
    D = direct_sum(example_e1_first(), lookup("e1.second"))
    assert is_two_sided_ideal(D, block_subspace(D, 1)).passed
    quaternions = Subspace(8, [[1 if k == i else 0 for k in range(8)] for i in range(4)])
    assert is_subalgebra(O, quaternions).passed
    assert not is_two_sided_ideal(O, quaternions).passed
    with pytest.raises(DimensionMismatch):
        is_subalgebra(O, Subspace.whole(3))


def test_morphism_examples():
    A = example_e1_first()
    assert check_morphism(AlgebraMorphism(A, A, LinearMap.identity(2))).passed
    B = octonions()
    assert check_morphism(AlgebraMorphism(A, B, LinearMap.zero(8, 2))).passed
    swap = AlgebraMorphism(A, A, LinearMap.from_columns([[0, 1], [1, 0]]))
    rep = check_morphism(swap)
    assert not rep.passed and rep.witnesses[0].where == (1, 1)
    with pytest.raises(DimensionMismatch):
        AlgebraMorphism(A, B, LinearMap.identity(2))


def test_graph_subspace_examples():
    A = lookup("jordan_sym2")
    g = graph_subspace(AlgebraMorphism(A, A, LinearMap.identity(3)))
    assert g == Subspace(6, [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1]])
    z = graph_subspace(AlgebraMorphism(A, A, LinearMap.zero(3)))
    D = direct_sum(A, A)
    assert z == block_subspace(D, 0)
    m = AlgebraMorphism(A, A, automorphism("swap", A))
    assert is_subalgebra(D, graph_subspace(m)).passed


@given(algebras(), st.data())
def test_associator_trilinear(A, data):
    n = A.dim
    x, x2, y, z = (data.draw(vectors(n)) for _ in range(4))
    c = data.draw(coeff)
    lhs = associator(A, vec_add(x, [c * t for t in x2]), y, z)
    rhs = vec_add(associator(A, x, y, z), [c * t for t in associator(A, x2, y, z)])
    assert lhs == rhs
    assert associator(A, y, vec_add(x, x2), z) == vec_add(associator(A, y, x, z), associator(A, y, x2, z))
    assert associator(A, y, z, vec_add(x, x2)) == vec_add(associator(A, y, z, x), associator(A, y, z, x2))


@st.composite
def morphism_cases(draw):
    """Valid morphisms (identity, zero, catalog automorphisms, scaled) and arbitrary maps."""
    kind = draw(st.sampled_from(["catalog", "random", "scaled"]))
    if kind == "random":
        A = draw(algebras(max_dim=2))
        f = LinearMap.from_rows([[draw(coeff) for _ in range(A.dim)] for _ in range(A.dim)])
        return AlgebraMorphism(A, A, f)
    name = draw(st.sampled_from(["octonions", "matrix2x2", "jordan_sym2"]))
    A = lookup(name)
    from bihom.catalog import automorphism_tags

    f = automorphism(draw(st.sampled_from(automorphism_tags(A))), A)
    if kind == "scaled":
        f = f.scale(Fraction(draw(st.sampled_from([0, 1, 2, -1]))))
    return AlgebraMorphism(A, A, f)


@given(morphism_cases())
def test_graph_theorem(m):
    D = direct_sum(m.source, m.target)
    assert check_morphism(m).passed == is_subalgebra(D, graph_subspace(m)).passed
