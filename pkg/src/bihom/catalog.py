"""Built-in instances: the parametric examples and classical seed algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import BiHomAlgebra
from .errors import ParameterExcluded, UnknownTag
from .linalg import LinearMap
from .scalar import ParameterContext, format_num, is_zero

AB = ParameterContext(("a", "b"))


@dataclass(frozen=True)
class At:
    """Numeric specialization of the parameters a, b."""

    a: Fraction
    b: Fraction


SYMBOLIC = "symbolic"


def _params(mode, excluded):
    if mode == SYMBOLIC or mode is None:
        return AB.variables()
    if isinstance(mode, At):
        a, b = Fraction(mode.a), Fraction(mode.b)
    else:
        a, b = (Fraction(v) for v in mode)
    for name, value in (("a", a), ("b", b)):
        if value in excluded.get(name, ()):
            raise ParameterExcluded(f"{name} = {value} is excluded")
    return a, b


def _alg2(alpha_e2, beta_e2, mu, label):
    """2-dim algebra with alpha(e1)=e1, beta(e1)=e1 and the given images of e2."""
    alpha = LinearMap.from_columns([[1, 0], alpha_e2])
    beta = LinearMap.from_columns([[1, 0], beta_e2])
    return BiHomAlgebra.from_products(2, mu, alpha, beta, label)


def _e1_first(a, b, label):
    return _alg2(
        [2 * a / (b - 1), -1],
        [-a, b],
        {
            (0, 0): [1, 0],
            (0, 1): [-a, b],
            (1, 0): [2 * a / (b - 1), -1],
            (1, 1): [-(a**2) * (b - 2) / (b - 1) ** 2, a],
        },
        label,
    )


def _e1_second(a, b, label):
    return _alg2(
        [b * (1 - a) / a, a],
        [b, 1 - a],
        {
            (0, 0): [1, 0],
            (0, 1): [b, 1 - a],
            (1, 0): [b * (1 - a) / a, a],
            (1, 1): [0, b / a],
        },
        label,
    )


def example_e1_pair(mode=SYMBOLIC):
    """The two 2-dim algebras of the first parametric example (b != 1, a != 0)."""
    a, b = _params(mode, {"b": (1,), "a": (0,)})
    return _e1_first(a, b, "e1.first"), _e1_second(a, b, "e1.second")


def example_e1_first(mode=SYMBOLIC):
    a, b = _params(mode, {"b": (1,)})
    return _e1_first(a, b, "e1.first")


def example_e1_second(mode=SYMBOLIC):
    a, b = _params(mode, {"a": (0,)})
    return _e1_second(a, b, "e1.second")


def example_e5(mode=SYMBOLIC):
    """Same table as e1.first, with b not in {0, 1}; BiHom-associative and regular."""
    a, b = _params(mode, {"b": (0, 1)})
    return _e1_first(a, b, "e5")


# ------------------------------------------------------------- printed tables


def printed_e1_sum_table():
    """The 2-dim table printed as the 'direct sum' of the e1 pair (erratum candidate)."""
    a, b = AB.variables()
    a2 = (2 * a**2 + b * (b - 1) * (1 - a)) / (a * (b - 1))
    alpha = LinearMap.from_columns([[2, 0], [a2, a - 1]])
    beta = LinearMap.from_columns([[2, 0], [-(a + b), b + 1 - a]])
    mu = {
        (0, 0): [2, 0],
        (0, 1): [b - a, b + 1 - a],
        (1, 0): [a2, a - 1],
        (1, 1): [-(a**2) * (b - 2) / (b - 1) ** 2, (a**2 + b) / a],
    }
    return {"alpha": alpha, "beta": beta, "mu": mu}


def printed_e5_inverses():
    a, b = AB.variables()
    return {
        "alpha^-1": LinearMap.from_columns([[-1, 0], [2 * a / (b - 1), 1]]),
        "beta^-1": LinearMap.from_columns([[1 / b, 0], [a / b, 1]]),
    }


def printed_e5_plus_table():
    a, b = AB.variables()
    return {
        (0, 0): [(b - 1) / b, 0],
        (0, 1): [a * (-1 + 1 / b + 4 / (b - 1)), b],
        (1, 0): [a * (1 + 1 / b), b - 1],
        (1, 1): [a**2 * (3 * b**2 + 11 * b - 8) / (b - 1) ** 2 + a**2 * (1 + b) / b, -4 * a * b**2 / (b - 1)],
    }


# ----------------------------------------------------------- classical seeds

_FANO = [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)]


def octonions():
    """Cayley table on 1=e0, e1..e7 from the oriented Fano triples."""
    prods = {}
    n = 8

    def put(i, j, k, s):
        v = [0] * n
        v[k] = s
        prods[(i, j)] = v

    for i in range(n):
        put(0, i, i, 1)
        put(i, 0, i, 1)
    for i in range(1, n):
        put(i, i, 0, -1)
    for i, j, k in _FANO:
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            put(x, y, z, 1)
            put(y, x, z, -1)
    return BiHomAlgebra.from_products(n, prods, label="octonions")


def _matrix_unit_product(p, q):
    # basis order E11, E12, E21, E22; index -> (row, col)
    rc = [(0, 0), (0, 1), (1, 0), (1, 1)]
    (a, b), (c, d) = rc[p], rc[q]
    v = [0] * 4
    if b == c:
        v[rc.index((a, d))] = 1
    return v


def matrix2x2():
    prods = {(p, q): _matrix_unit_product(p, q) for p in range(4) for q in range(4)}
    return BiHomAlgebra.from_products(4, prods, label="matrix2x2")


def jordan_sym2():
    """Symmetric 2x2 matrices S1=E11, S2=E22, S3=E12+E21 under (xy+yx)/2."""
    h = Fraction(1, 2)
    prods = {
        (0, 0): [1, 0, 0],
        (1, 1): [0, 1, 0],
        (0, 2): [0, 0, h],
        (2, 0): [0, 0, h],
        (1, 2): [0, 0, h],
        (2, 1): [0, 0, h],
        (2, 2): [1, 1, 0],
    }
    return BiHomAlgebra.from_products(3, prods, label="jordan_sym2")


def rb_toy():
    """mu(e1,e1)=e2, identity twists, with the weight-0 Rota-Baxter operator diag(0,1)."""
    A = BiHomAlgebra.from_products(2, {(0, 0): [0, 1]}, label="rb_toy")
    return A, LinearMap.diagonal([0, 1])


def unit_algebra():
    return BiHomAlgebra.from_products(1, {(0, 0): [1]}, label="unit")


# -------------------------------------------------------------- automorphisms

_AUTOMORPHISMS = {
    "octonions": {
        "sign_flip": [1, 1, 1, 1, -1, -1, -1, -1],
        "sign_flip_145": [1, 1, -1, -1, 1, 1, -1, -1],
    },
    "matrix2x2": {
        "conj_diag": [1, -1, -1, 1],
        "conj_diag2": [1, Fraction(1, 2), 2, 1],
    },
    "jordan_sym2": {
        "conj_diag": [1, 1, -1],
    },
}


def automorphism(tag: str, host: BiHomAlgebra) -> LinearMap:
    if tag == "id":
        return LinearMap.identity(host.dim)
    if host.label == "jordan_sym2" and tag == "swap":
        return LinearMap.from_columns([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    table = _AUTOMORPHISMS.get(host.label, {})
    if tag not in table:
        raise UnknownTag(f"no automorphism {tag!r} for {host.label or 'this algebra'}")
    return LinearMap.diagonal(table[tag])


def automorphism_tags(host: BiHomAlgebra):
    tags = ["id"] + sorted(_AUTOMORPHISMS.get(host.label, {}))
    if host.label == "jordan_sym2":
        tags.append("swap")
    return tags


# ---------------------------------------------------------------- registry

ENTRIES = {
    "e1.first": ("first algebra of the parametric alternative example (b != 1)", example_e1_first),
    "e1.second": ("second algebra of the parametric alternative example (a != 0)", example_e1_second),
    "e5": ("the parametric BiHom-associative example (b not in {0, 1})", example_e5),
    "octonions": ("8-dim Cayley octonions, identity twists", octonions),
    "matrix2x2": ("2x2 matrices on E11, E12, E21, E22, identity twists", matrix2x2),
    "jordan_sym2": ("symmetric 2x2 matrices under (xy+yx)/2, identity twists", jordan_sym2),
    "rb_toy": ("mu(e1,e1)=e2, identity twists (algebra of the Rota-Baxter pair)", lambda: rb_toy()[0]),
    "rb_toy_R": ("the Rota-Baxter operator diag(0,1) on rb_toy", lambda: rb_toy()[1]),
    "unit": ("1-dim unital algebra", unit_algebra),
}


def lookup(name: str):
    if name not in ENTRIES:
        raise KeyError(name)
    return ENTRIES[name][1]()


def list_catalog():
    return [(name, desc) for name, (desc, _) in sorted(ENTRIES.items())]


def algebra_names():
    return [n for n in sorted(ENTRIES) if n != "rb_toy_R"]


# ------------------------------------------------------------- erratum ledger


@dataclass(frozen=True)
class ErratumEntry:
    source: str
    item: str
    printed: str
    computed: str

    def to_dict(self):
        return {"source": self.source, "item": self.item, "printed": self.printed, "computed": self.computed}

    def __str__(self):
        return f"{self.source} {self.item}: printed {self.printed}, computed {self.computed}"


def _vec_text(v):
    terms = [f"({format_num(c)})*e{k + 1}" for k, c in enumerate(v) if not is_zero(c)]
    return " + ".join(terms) if terms else "0"


def _compare_maps(source, name, printed: LinearMap, computed: LinearMap):
    out = []
    for j in range(printed.cols):
        p, c = printed.column(j), computed.column(j)
        if any(not is_zero(x - y) for x, y in zip(p, c)):
            out.append(ErratumEntry(source, f"{name}(e{j + 1})", _vec_text(p), _vec_text(c)))
    return out


def e5_errata():
    from .constructions import plus_algebra
    from .linalg import mat_inverse

    A = example_e5()
    out = []
    out += _compare_maps("e5", "alpha^-1", printed_e5_inverses()["alpha^-1"], mat_inverse(A.alpha))
    out += _compare_maps("e5", "beta^-1", printed_e5_inverses()["beta^-1"], mat_inverse(A.beta))
    P = plus_algebra(A)
    for (i, j), printed in sorted(printed_e5_plus_table().items()):
        computed = P.product_vec(i, j)
        if any(not is_zero(x - y) for x, y in zip(printed, computed)):
            out.append(ErratumEntry("e5", f"mu'(e{i + 1},e{j + 1})", _vec_text(printed), _vec_text(computed)))
    return out


def e1_sum_errata():
    """Compare the printed 2-dim 'sum' table with the entrywise sum of the pair."""
    A1, A2 = example_e1_pair()
    printed = printed_e1_sum_table()
    out = []
    out += _compare_maps("e1.sum", "alpha", printed["alpha"], A1.alpha + A2.alpha)
    out += _compare_maps("e1.sum", "beta", printed["beta"], A1.beta + A2.beta)
    for (i, j), pv in sorted(printed["mu"].items()):
        cv = [x + y for x, y in zip(A1.product_vec(i, j), A2.product_vec(i, j))]
        if any(not is_zero(x - y) for x, y in zip(pv, cv)):
            out.append(ErratumEntry("e1.sum", f"mu(e{i + 1},e{j + 1})", _vec_text(pv), _vec_text(cv)))
    return out


ERRATA = {"e5": e5_errata, "e1.sum": e1_sum_errata}


def erratum_ledger(names=None):
    names = sorted(ERRATA) if names is None else names
    out = []
    for n in names:
        out.extend(ERRATA[n]())
    return out
