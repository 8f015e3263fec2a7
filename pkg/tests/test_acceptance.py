"""Acceptance criteria 1-10, one test each; a summary line per criterion is printed at the end.

Run standalone with ``python3 tests/test_acceptance.py`` for the same lines without pytest.
"""

import os
import subprocess
import sys
import time

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from bihom.algebra import AlgebraMorphism, check_morphism, graph_subspace, is_subalgebra, is_two_sided_ideal, validate
from bihom.bimodule import (
    check_alt_bimodule,
    check_assoc_bimodule,
    check_jordan_bimodule,
    check_left_jordan_module,
    check_left_special,
    check_operator_commutativity,
    check_right_jordan_module,
    check_right_special,
)
from bihom.bimodule_constructions import (
    extension_kernel,
    extension_projection,
    induced_bimodule,
    jordan_deform_bimodule,
    jordan_shift_bimodule,
    rb_twist_bimodule,
    regular_bimodule,
    shift_bimodule,
    special_pair_to_jordan_bimodule,
    split_null_extension,
    twist_bimodule,
)
from bihom.catalog import algebra_names, automorphism, e5_errata, example_e1_first, example_e1_pair, example_e5, lookup
from bihom.constructions import direct_sum, plus_algebra, quotient, rota_baxter_deformation, yau_twist
from bihom.identities import (
    check_bihom_associative,
    check_bihom_commutative,
    check_bihom_jordan,
    check_left_alternative,
    check_right_alternative,
    check_rota_baxter,
)
from bihom.linalg import LinearMap
from bihom.report import CheckMode

RESULTS = {}


def alternative(A, mode=None):
    if mode is None:
        return check_left_alternative(A).passed and check_right_alternative(A).passed
    return check_left_alternative(A, mode).passed and check_right_alternative(A, mode).passed


def criterion_1():
    A = example_e1_first()
    assert validate(A).passed
    assert check_bihom_associative(A).passed
    assert alternative(A)


def criterion_2():
    D = direct_sum(*example_e1_pair())
    assert D.dim == 4 and alternative(D)


def criterion_3():
    O = lookup("octonions")
    for check in (check_left_alternative, check_right_alternative):
        rep = check(O)
        assert rep.passed and rep.stats["tuples"] == 512
    rep = check_bihom_associative(O)
    assert not rep.passed and rep.witnesses
    Ot = yau_twist(O, automorphism("sign_flip", O), automorphism("sign_flip_145", O))
    assert alternative(Ot)


def criterion_4():
    P = plus_algebra(example_e5())
    assert check_bihom_commutative(P).passed
    rep = check_bihom_jordan(P)
    assert rep.passed and rep.stats["tuples"] == 16
    entry = {e.item: e for e in e5_errata()}["mu'(e1,e1)"]
    assert entry.computed == "(2)*e1" and entry.printed == "((b - 1)/b)*e1"


def criterion_5():
    symbolic, sampled = CheckMode.symbolic(), CheckMode.sampled(50, 7)
    for name in algebra_names():
        A = lookup(name)
        for check in (check_left_alternative, check_right_alternative):
            lin = check(A).passed
            assert check(A, symbolic).passed == lin, name
            assert check(A, sampled).passed == lin, name
        if check_bihom_commutative(A).passed:
            lin = check_bihom_jordan(A).passed
            assert check_bihom_jordan(A, symbolic).passed == lin, name
            assert check_bihom_jordan(A, sampled).passed == lin, name


def criterion_6():
    A, R = lookup("rb_toy"), lookup("rb_toy_R")
    assert check_rota_baxter(A, R, 0).passed
    M = lookup("matrix2x2")
    assert check_rota_baxter(M, LinearMap.identity(4), -1).passed
    assert alternative(rota_baxter_deformation(A, R))
    assert check_alt_bimodule(rb_twist_bimodule(regular_bimodule(A), R)).passed


def criterion_7():
    O = lookup("octonions")
    s, s145 = automorphism("sign_flip", O), automorphism("sign_flip_145", O)
    V = regular_bimodule(O)
    assert check_alt_bimodule(V).passed
    W = regular_bimodule(yau_twist(O, s, s145))
    for n in range(3):
        for m in range(3):
            assert check_alt_bimodule(shift_bimodule(W, n, m)).passed, (n, m)
    assert check_alt_bimodule(twist_bimodule(V, s, s145, s, s145)).passed
    E = split_null_extension(O, V, "alternative")
    assert E.dim == 16 and alternative(E)
    K = extension_kernel(E)
    assert is_two_sided_ideal(E, K).passed
    assert quotient(E, K).same_tensor(O)
    assert induced_bimodule(E, O).same_tensors(V)


def criterion_8():
    J = lookup("jordan_sym2")
    V = regular_bimodule(J)
    assert check_jordan_bimodule(V).passed
    for n in (1, 2):
        assert check_jordan_bimodule(jordan_shift_bimodule(V, n)).passed
    M = lookup("matrix2x2")
    P = plus_algebra(M)
    SP = special_pair_to_jordan_bimodule(regular_bimodule(M).with_host(P))
    assert check_jordan_bimodule(SP).passed
    c, sw = automorphism("conj_diag", J), automorphism("swap", J)
    assert check_jordan_bimodule(jordan_deform_bimodule(V, c, sw, c, sw)).passed
    E = split_null_extension(P, SP, "jordan")
    assert check_bihom_commutative(E).passed and check_bihom_jordan(E).passed


def criterion_9():
    M, O, J = lookup("matrix2x2"), lookup("octonions"), lookup("jordan_sym2")
    Mt = yau_twist(M, automorphism("conj_diag", M), automorphism("conj_diag2", M))
    corpus = [M, Mt, example_e5()]
    for A in corpus:
        V = regular_bimodule(A)
        assert check_assoc_bimodule(V).passed and check_operator_commutativity(V).passed
        W = V.with_host(plus_algebra(A))
        assert check_right_special(W).passed and check_right_jordan_module(W).passed
        assert check_left_special(W).passed and check_left_jordan_module(W).passed
    # alternative modules read over the plus algebra are special
    OW = regular_bimodule(O).with_host(plus_algebra(O))
    assert check_right_special(OW).passed and check_left_special(OW).passed
    E = split_null_extension(O, regular_bimodule(O), "alternative")
    valid = [
        AlgebraMorphism(O, O, automorphism("sign_flip", O)),
        AlgebraMorphism(M, M, automorphism("conj_diag2", M)),
        AlgebraMorphism(J, J, automorphism("swap", J)),
        AlgebraMorphism(E, O, extension_projection(E)),
    ]
    corrupted = [
        AlgebraMorphism(O, O, LinearMap.identity(8).scale(2)),
        AlgebraMorphism(M, M, LinearMap.from_columns([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])),
        AlgebraMorphism(J, J, LinearMap.diagonal([1, 1, 2])),
        AlgebraMorphism(example_e5(), example_e5(), LinearMap.diagonal([1, 2])),
    ]
    for m in valid + corrupted:
        graph = is_subalgebra(direct_sum(m.source, m.target), graph_subspace(m)).passed
        assert check_morphism(m).passed == graph == (m in valid)


def criterion_10():
    cmd = [sys.executable, "-m", "bihom", "replicate-paper", "--format", "structured", "--no-timing"]
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(__file__), "..", "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    first = subprocess.run(cmd, capture_output=True, env=env, check=False)
    second = subprocess.run(cmd, capture_output=True, env=env, check=False)
    assert first.returncode == 0, first.stderr.decode()
    assert second.returncode == 0
    assert first.stdout == second.stdout and first.stdout


CRITERIA = [
    (1, "first parametric algebra: validate, associative, alternative", 5, criterion_1),
    (2, "direct sum of the parametric pair is alternative", 10, criterion_2),
    (3, "octonions and their twist are alternative, not associative", 6, criterion_3),
    (4, "plus algebra of the associative example is Jordan; erratum recorded", 10, criterion_4),
    (5, "polarization consistency on every catalog algebra", 30, criterion_5),
    (6, "Rota-Baxter suite", 1, criterion_6),
    (7, "alternative bimodule suite", 60, criterion_7),
    (8, "Jordan bimodule suite", 120, criterion_8),
    (9, "theorem implications and graph/morphism equivalence", 120, criterion_9),
    (10, "replicate-paper exits 0 and is byte-stable", 180, criterion_10),
]


def run_criterion(num):
    _, title, budget, fn = CRITERIA[num - 1]
    start = time.perf_counter()
    error = None
    try:
        fn()
    except AssertionError as exc:
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < budget
    RESULTS[num] = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} {elapsed:7.2f} s (budget {budget} s)  {title}"
    return ok, error, elapsed, budget


@pytest.mark.parametrize("num", [c[0] for c in CRITERIA])
def test_criterion(num):
    ok, error, elapsed, budget = run_criterion(num)
    print(RESULTS[num])
    if error is not None:
        raise error
    assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"


if __name__ == "__main__":
    status = 0
    for num, *_ in CRITERIA:
        ok, *_ = run_criterion(num)
        print(RESULTS[num], flush=True)
        status |= not ok
    sys.exit(status)
