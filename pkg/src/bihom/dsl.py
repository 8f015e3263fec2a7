"""Line-oriented definition language for algebras, bimodules, constructions and checks.

Grammar (one statement per line, ``#`` starts a comment):

    params a b
    algebra A dim 2
    map A.alpha = [[1, 2a/(b-1)], [0, -1]]   # rows of the matrix; column j is the image of e_j
    map A.beta e2 = -a*e1 + b*e2             # pointwise form; unset images default to e_j
    mu A e1 e2 = -a*e1 + b*e2                # unset products are zero
    bimodule V over A dim 2
    map V.phi = [[1, 0], [0, 1]]
    actl V e1 v2 = v1                        # e1 . v2
    actr V v2 e1 = v1                        # v2 . e1
    matrix M = [[0, 1], [1, 0]]
    let B = direct_sum(A, A)
    use catalog.octonions as O
    check B left-alternative mode=linearized
    check O associative expect=fail
    check A, R rota-baxter weight=-1
    errata e5
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import bimodule as bm
from . import bimodule_constructions as bc
from . import catalog
from . import constructions as cons
from . import identities as ids
from .algebra import (
    AlgebraMorphism,
    BiHomAlgebra,
    block_subspace,
    check_morphism,
    graph_subspace,
    is_subalgebra,
    is_two_sided_ideal,
    validate,
)
from .bimodule import BiHomBimodule, BimoduleMorphism
from .errors import BihomError, DSLError, DSLSyntaxError, RedefinedName, RunError, UnknownIdentifier
from .expr import ExprParser, TokenStream, Vec, tokenize
from .linalg import LinearMap, Subspace, mat_inverse
from .report import LINEARIZED, CheckMode, CheckReport, Witness
from .scalar import ParameterContext, Scalar, format_num, is_zero

# ---------------------------------------------------------------- documents


@dataclass(frozen=True)
class Statement:
    kind: str
    args: tuple
    line: int = field(default=0, compare=False)
    data: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Document:
    statements: tuple

    def __len__(self):
        return len(self.statements)


_SEALABLE = ("algebra", "bimodule")
_HOST_MAPS = ("alpha", "beta")
_MODULE_MAPS = ("phi", "psi")

# function name -> argument kinds; "word" positions take bare words, "*" marks optional tail
FUNCTIONS = {
    "direct_sum": ("A", "A"),
    "tensor_product": ("A", "A"),
    "quotient": ("A", "S"),
    "yau_twist": ("A", "M", "M"),
    "power_twist": ("A", "int"),
    "rota_baxter_deformation": ("A", "M"),
    "plus_algebra": ("A",),
    "split_null_extension": ("A", "V", "word"),
    "automorphism": ("str", "A"),
    "identity": ("A",),
    "alpha": ("A",),
    "beta": ("A",),
    "phi": ("V",),
    "psi": ("V",),
    "compose": ("M", "M"),
    "power": ("M", "int"),
    "inverse": ("M",),
    "scale": ("scalar", "M"),
    "add": ("M", "M"),
    "morphism": ("A", "A", "M"),
    "quotient_projection": ("A", "S"),
    "graph": ("F",),
    "block": ("A", "int"),
    "span": ("int", "M"),
    "extension_kernel": ("A",),
    "regular_bimodule": ("A",),
    "ideal_bimodule": ("A", "S"),
    "bimodule_via_surjection": ("F",),
    "shift_bimodule": ("V", "int", "int"),
    "twist_bimodule": ("V", "M", "M", "M", "M"),
    "twist_bimodule_powers": ("V", "int", "int", "int", "int", "int", "int"),
    "rb_twist_bimodule": ("V", "M"),
    "jordan_shift_bimodule": ("V", "int"),
    "jordan_deform_bimodule": ("V", "M", "M", "M", "M"),
    "jordan_deform_bimodule_powers": ("V", "M", "M", "M", "M", "int"),
    "special_pair_to_jordan_bimodule": ("V", "*V"),
    "rehost": ("V", "A"),
    "induced_bimodule": ("A", "A"),
    "bimodule_morphism": ("V", "V", "M"),
}

_WORDS = {"split_null_extension": {2: bc.SELECTORS}}


def _slice(text, first, last):
    """Source text spanning tokens first..last (inclusive)."""
    return text[first.col - 1 : last.col - 1 + len(last.text)].strip()


class _Parser:
    def __init__(self):
        self.ctx = None
        self.names = {}  # name -> ("algebra", dim) | ("bimodule", host, dim) | ("value", kind)
        self.sealed = set()
        self.statements = []

    # helpers -----------------------------------------------------------------
    def define(self, tok, info):
        if tok.text in self.names or (self.ctx is not None and tok.text in self.ctx.names):
            raise RedefinedName(f"{tok.text!r} is already defined", tok.line, tok.col)
        self.names[tok.text] = info

    def use_name(self, tok):
        if tok.text not in self.names:
            raise UnknownIdentifier(f"unknown name {tok.text!r}", tok.line, tok.col)
        self.sealed.add(tok.text)
        return self.names[tok.text]

    def open_definition(self, tok, kind):
        info = self.names.get(tok.text)
        if info is None or info[0] != kind:
            raise UnknownIdentifier(f"{tok.text!r} is not a defined {kind}", tok.line, tok.col)
        if tok.text in self.sealed:
            raise DSLError(f"definition of {tok.text!r} is closed once it has been used", tok.line, tok.col)
        return info

    def resolver(self, bases):
        """Identifiers resolve to parameters or basis vectors e1.. / v1.. of the given spaces."""

        def resolve(tok):
            if self.ctx is not None and tok.text in self.ctx.names:
                return self.ctx.variable(tok.text)
            for prefix, (space, dim) in bases.items():
                if tok.text.startswith(prefix) and tok.text[len(prefix) :].isdigit():
                    k = int(tok.text[len(prefix) :])
                    if 1 <= k <= dim:
                        return Vec(dim, {k - 1: Fraction(1)}, space)
            raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.line, tok.col)

        return resolve

    def expression(self, s, text, bases=None):
        first = s.peek()
        value = ExprParser(s, self.resolver(bases or {})).expr()
        last = s.tokens[s.pos - 1]
        return _slice(text, first, last), value

    def vector(self, s, text, space, prefix, dim):
        first = s.peek()
        src, value = self.expression(s, text, {prefix: (space, dim)})
        if isinstance(value, Vec):
            return src, value.dense()
        if is_zero(value):
            return src, [Fraction(0)] * dim
        raise DSLSyntaxError(first.line, first.col, f"a vector in the {prefix}-basis", src)

    def matrix(self, s, text):
        first = s.expect("OP", "[")
        rows = []
        while True:
            s.expect("OP", "[")
            row = []
            while True:
                tok = s.peek()
                _, v = self.expression(s, text)
                if isinstance(v, Vec):
                    raise DSLSyntaxError(tok.line, tok.col, "a scalar matrix entry", tok.text)
                row.append(v)
                if not s.accept("OP", ","):
                    break
            s.expect("OP", "]")
            rows.append(row)
            if not s.accept("OP", ","):
                break
        last = s.expect("OP", "]")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DSLSyntaxError(first.line, first.col, "rows of equal length")
        return _slice(text, first, last), rows

    def index(self, tok, prefix, dim):
        t = tok.text
        if tok.kind == "IDENT" and t.startswith(prefix) and t[len(prefix) :].isdigit():
            k = int(t[len(prefix) :])
            if 1 <= k <= dim:
                return k
        raise UnknownIdentifier(f"{t!r} is not a basis vector {prefix}1..{prefix}{dim}", tok.line, tok.col)

    def dashed(self, s):
        """IDENT ('-' IDENT)* joined with dashes."""
        parts = [s.expect("IDENT").text]
        while s.at("OP", "-") and s.peek(1).kind == "IDENT" and s.peek(1).adjacent and s.peek().adjacent:
            s.next()
            parts.append(s.next().text)
        return "-".join(parts)

    # statements --------------------------------------------------------------
    def statement(self, text, lineno):
        toks = tokenize(text, lineno)
        s = TokenStream(toks)
        if s.at("EOL"):
            return None
        head = s.expect("IDENT", what="a statement keyword")
        kw = head.text
        method = getattr(self, f"st_{kw}", None)
        if method is None:
            raise DSLSyntaxError(head.line, head.col, "a statement keyword", kw)
        st = method(s, text, lineno)
        s.expect("EOL", what="end of line")
        return st

    def st_params(self, s, text, line):
        names = []
        while s.at("IDENT"):
            tok = s.next()
            if tok.text in self.names or (self.ctx is not None and tok.text in self.ctx.names):
                raise RedefinedName(f"{tok.text!r} is already defined", tok.line, tok.col)
            names.append(tok.text)
        if not names:
            t = s.peek()
            raise DSLSyntaxError(t.line, t.col, "parameter names", t.text or "end of line")
        self.ctx = self.ctx.extend(names) if self.ctx else ParameterContext(tuple(names))
        return Statement("params", tuple(names), line)

    def st_algebra(self, s, text, line):
        name = s.expect("IDENT", what="algebra name")
        s.expect("IDENT", "dim")
        dim = int(s.expect("NUM", what="dimension").text)
        self.define(name, ("algebra", dim))
        return Statement("algebra", (name.text, dim), line)

    def st_bimodule(self, s, text, line):
        name = s.expect("IDENT", what="bimodule name")
        s.expect("IDENT", "over")
        host = s.expect("IDENT", what="host algebra")
        info = self.use_name(host)
        if info[0] != "algebra" and info != ("value", "A"):
            raise UnknownIdentifier(f"{host.text!r} is not an algebra", host.line, host.col)
        s.expect("IDENT", "dim")
        dim = int(s.expect("NUM", what="dimension").text)
        hdim = info[1] if info[0] == "algebra" else None
        self.define(name, ("bimodule", host.text, dim, hdim))
        return Statement("bimodule", (name.text, host.text, dim), line)

    def st_map(self, s, text, line):
        target = s.expect("IDENT", what="algebra or bimodule name")
        s.expect("OP", ".")
        which = s.expect("IDENT", what="alpha, beta, phi or psi")
        info = self.names.get(target.text)
        if info is None:
            raise UnknownIdentifier(f"unknown name {target.text!r}", target.line, target.col)
        kind = info[0]
        allowed = _HOST_MAPS if kind == "algebra" else _MODULE_MAPS
        if which.text not in allowed:
            raise DSLSyntaxError(which.line, which.col, " or ".join(allowed), which.text)
        self.open_definition(target, kind)
        dim = info[1] if kind == "algebra" else info[2]
        prefix = "e" if kind == "algebra" else "v"
        if s.accept("OP", "="):
            src, rows = self.matrix(s, text)
            if len(rows) != dim or len(rows[0]) != dim:
                raise DSLSyntaxError(line, which.col, f"a {dim}x{dim} matrix", f"{len(rows)}x{len(rows[0])}")
            return Statement("map", (target.text, which.text, None, src), line, rows)
        k = self.index(s.next(), prefix, dim)
        s.expect("OP", "=")
        src, vec = self.vector(s, text, target.text, prefix, dim)
        return Statement("map", (target.text, which.text, k, src), line, vec)

    def st_mu(self, s, text, line):
        target = s.expect("IDENT", what="algebra name")
        _, dim = self.open_definition(target, "algebra")
        i = self.index(s.next(), "e", dim)
        j = self.index(s.next(), "e", dim)
        s.expect("OP", "=")
        src, vec = self.vector(s, text, target.text, "e", dim)
        return Statement("mu", (target.text, i, j, src), line, vec)

    def _action(self, s, text, line, left):
        target = s.expect("IDENT", what="bimodule name")
        info = self.open_definition(target, "bimodule")
        _, host, mdim, hdim = info
        if hdim is None:
            hdim = 10**9  # host dimension known only at run time
        if left:
            i = self.index(s.next(), "e", hdim)
            p = self.index(s.next(), "v", mdim)
        else:
            p = self.index(s.next(), "v", mdim)
            i = self.index(s.next(), "e", hdim)
        s.expect("OP", "=")
        src, vec = self.vector(s, text, target.text, "v", mdim)
        return Statement("actl" if left else "actr", (target.text, i, p, src) if left else (target.text, p, i, src), line, vec)

    def st_actl(self, s, text, line):
        return self._action(s, text, line, True)

    def st_actr(self, s, text, line):
        return self._action(s, text, line, False)

    def st_matrix(self, s, text, line):
        name = s.expect("IDENT", what="matrix name")
        s.expect("OP", "=")
        src, rows = self.matrix(s, text)
        self.define(name, ("value", "M"))
        return Statement("matrix", (name.text, src), line, rows)

    def st_use(self, s, text, line):
        s.expect("IDENT", "catalog")
        s.expect("OP", ".")
        parts = [s.expect("IDENT", what="catalog entry").text]
        while s.accept("OP", "."):
            parts.append(s.expect("IDENT").text)
        entry = ".".join(parts)
        if entry not in catalog.ENTRIES:
            t = s.tokens[s.pos - 1]
            raise UnknownIdentifier(f"no catalog entry {entry!r}", t.line, t.col)
        s.expect("IDENT", "as")
        alias = s.expect("IDENT", what="alias")
        self.define(alias, ("value", "M" if entry == "rb_toy_R" else "A"))
        return Statement("use", (entry, alias.text), line)

    def st_let(self, s, text, line):
        name = s.expect("IDENT", what="binding name")
        s.expect("OP", "=")
        fn = s.expect("IDENT", what="function name")
        if fn.text not in FUNCTIONS:
            raise UnknownIdentifier(f"unknown function {fn.text!r}", fn.line, fn.col)
        args, values = self.call_args(s, text, fn.text)
        self.define(name, ("value", _result_kind(fn.text)))
        return Statement("let", (name.text, fn.text, tuple(args)), line, tuple(values))

    def call_args(self, s, text, fname):
        s.expect("OP", "(")
        args, values = [], []
        if not s.at("OP", ")"):
            while True:
                src, val = self.argument(s, text, fname, len(args))
                args.append(src)
                values.append(val)
                if not s.accept("OP", ","):
                    break
        s.expect("OP", ")")
        return args, values

    def argument(self, s, text, fname, pos):
        tok = s.peek()
        if tok.kind == "STR":
            s.next()
            return tok.text, ("str", tok.text[1:-1])
        if tok.kind == "OP" and tok.text == "[":
            src, rows = self.matrix(s, text)
            return src, ("matrix", rows)
        nxt = s.peek(1)
        if tok.kind == "IDENT" and nxt.kind == "OP" and nxt.text == "(" and tok.text in FUNCTIONS:
            s.next()
            _, values = self.call_args(s, text, tok.text)
            return _slice(text, tok, s.tokens[s.pos - 1]), ("call", tok.text, tuple(values))
        if tok.kind == "IDENT" and nxt.kind in ("OP", "EOL") and nxt.text in (",", ")", ""):
            if tok.text in self.names:
                s.next()
                self.use_name(tok)
                return tok.text, ("name", tok.text)
            words = _WORDS.get(fname, {}).get(pos)
            if words is not None:
                s.next()
                if tok.text not in words:
                    raise DSLSyntaxError(tok.line, tok.col, " or ".join(words), tok.text)
                return tok.text, ("word", tok.text)
        src, value = self.expression(s, text)
        if isinstance(value, Vec):
            raise DSLSyntaxError(tok.line, tok.col, "a scalar argument", src)
        return src, ("expr", value)

    def st_check(self, s, text, line):
        targets = []
        while True:
            tok = s.expect("IDENT", what="check target")
            self.use_name(tok)
            targets.append(tok.text)
            if not s.accept("OP", ","):
                break
        ntok = s.peek()
        name = self.dashed(s)
        if name not in CHECKS:
            raise UnknownIdentifier(f"unknown check {name!r}", ntok.line, ntok.col)
        opts = []
        while s.at("IDENT"):
            key = s.next()
            s.expect("OP", "=")
            vt = s.peek()
            if vt.kind == "IDENT" and not (self.ctx and vt.text in self.ctx.names):
                value = self.dashed(s)
            else:
                value, _ = self.expression(s, text)
            if key.text not in _OPTIONS:
                raise UnknownIdentifier(f"unknown option {key.text!r}", key.line, key.col)
            if key.text in ("premise", "conclusion") and value not in CHECKS:
                raise UnknownIdentifier(f"unknown check {value!r}", vt.line, vt.col)
            opts.append((key.text, value))
        return Statement("check", (tuple(targets), name, tuple(opts)), line)

    def st_errata(self, s, text, line):
        tok = s.peek()
        parts = [s.expect("IDENT", what="erratum source").text]
        while s.accept("OP", "."):
            parts.append(s.expect("IDENT").text)
        name = ".".join(parts)
        if name not in catalog.ERRATA:
            raise UnknownIdentifier(f"no erratum ledger for {name!r}", tok.line, tok.col)
        return Statement("errata", (name,), line)


_OPTIONS = ("mode", "points", "seed", "expect", "weight", "premise", "conclusion")


def _result_kind(fname):
    if fname in ("automorphism", "identity", "alpha", "beta", "phi", "psi", "compose", "power", "inverse", "scale", "add"):
        return "M"
    if fname in ("morphism", "quotient_projection"):
        return "F"
    if fname in ("graph", "block", "span", "extension_kernel"):
        return "S"
    if fname == "bimodule_morphism":
        return "G"
    if fname.endswith("bimodule") or fname in ("bimodule_via_surjection", "shift_bimodule", "rehost") or "bimodule" in fname:
        return "V"
    return "A"


def parse(source: str) -> Document:
    p = _Parser()
    for lineno, text in enumerate(source.splitlines(), start=1):
        st = p.statement(text, lineno)
        if st is not None:
            p.statements.append(st)
    return Document(tuple(p.statements))


def render(doc: Document) -> str:
    out = []
    for st in doc.statements:
        k, a = st.kind, st.args
        if k == "params":
            out.append("params " + " ".join(a))
        elif k == "algebra":
            out.append(f"algebra {a[0]} dim {a[1]}")
        elif k == "bimodule":
            out.append(f"bimodule {a[0]} over {a[1]} dim {a[2]}")
        elif k == "map":
            prefix = "e" if a[1] in _HOST_MAPS else "v"
            at = f" {prefix}{a[2]}" if a[2] is not None else ""
            out.append(f"map {a[0]}.{a[1]}{at} = {a[3]}")
        elif k == "mu":
            out.append(f"mu {a[0]} e{a[1]} e{a[2]} = {a[3]}")
        elif k == "actl":
            out.append(f"actl {a[0]} e{a[1]} v{a[2]} = {a[3]}")
        elif k == "actr":
            out.append(f"actr {a[0]} v{a[1]} e{a[2]} = {a[3]}")
        elif k == "matrix":
            out.append(f"matrix {a[0]} = {a[1]}")
        elif k == "use":
            out.append(f"use catalog.{a[0]} as {a[1]}")
        elif k == "let":
            out.append(f"let {a[0]} = {a[1]}({', '.join(a[2])})")
        elif k == "check":
            opts = "".join(f" {key}={val}" for key, val in a[2])
            out.append(f"check {', '.join(a[0])} {a[1]}{opts}")
        elif k == "errata":
            out.append(f"errata {a[0]}")
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- checks


def _mode(opts, default):
    strategy = opts.get("mode", default.strategy)
    points = int(opts.get("points", default.points))
    seed = int(opts.get("seed", default.seed))
    return CheckMode(strategy, points, seed)


def _alg_check(fn, modal=False):
    def run(objs, opts, mode):
        (A,) = _expect(objs, (BiHomAlgebra,))
        return fn(A, mode) if modal else fn(A)

    return run


def _mod_check(fn, modal=False):
    def run(objs, opts, mode):
        (V,) = _expect(objs, (BiHomBimodule,))
        return fn(V, mode) if modal else fn(V)

    return run


def _expect(objs, types):
    if len(objs) != len(types) or not all(isinstance(o, t) for o, t in zip(objs, types)):
        got = ", ".join(type(o).__name__ for o in objs)
        want = ", ".join(t.__name__ for t in types)
        raise TypeError(f"check expects ({want}), got ({got})")
    return objs


def _bool_report(name, ok, detail):
    if ok:
        return CheckReport(name, "pass", [], {"tuples": 1}, {})
    return CheckReport(name, "fail", [Witness("structure", [detail], name)], {"tuples": 1}, {})


def _both_alt(A, mode):
    left = ids.check_left_alternative(A, mode)
    right = ids.check_right_alternative(A, mode)
    wit = left.witnesses + right.witnesses
    stats = {"tuples": left.stats.get("tuples", 0) + right.stats.get("tuples", 0),
             "elapsed_s": round(left.stats.get("elapsed_s", 0) + right.stats.get("elapsed_s", 0), 6)}
    return CheckReport("alternative", "fail" if wit else "pass", wit, stats, {"mode": mode.describe()})


def _polarization(objs, opts, mode):
    """Agreement of linearized, symbolic and sampled verdicts."""
    (X,) = objs
    sampled = CheckMode("sampled", int(opts.get("points", 50)), int(opts.get("seed", 0)))
    modes = (CheckMode.linearized(), CheckMode.symbolic(), sampled)
    if isinstance(X, BiHomAlgebra):
        checks = [("left-alternative", ids.check_left_alternative), ("right-alternative", ids.check_right_alternative)]
        if ids.check_bihom_commutative(X).passed:
            checks.append(("jordan", ids.check_bihom_jordan))
    elif isinstance(X, BiHomBimodule):
        checks = [("alt-bimodule", bm.check_alt_bimodule)]
    else:
        raise TypeError("polarization applies to algebras and bimodules")
    start = time.perf_counter()
    notes, witnesses, tuples = {}, [], 0
    for name, fn in checks:
        reps = [fn(X, m) for m in modes]
        tuples += sum(r.stats.get("tuples", 0) for r in reps)
        verdicts = [r.verdict for r in reps]
        notes[name] = "/".join(verdicts)
        if len(set(verdicts)) > 1:
            witnesses.append(Witness(name, [f"{m.describe()}: {v}" for m, v in zip(modes, verdicts)], "verdicts agree"))
    notes["modes"] = "/".join(m.describe() for m in modes)
    stats = {"tuples": tuples, "elapsed_s": round(time.perf_counter() - start, 6)}
    return CheckReport("polarization", "fail" if witnesses else "pass", witnesses, stats, notes)


def _implies(objs, opts, mode):
    premise, conclusion = opts.get("premise"), opts.get("conclusion")
    if not premise or not conclusion:
        raise TypeError("implies needs premise= and conclusion=")
    p = CHECKS[premise](objs, opts, mode)
    notes = {"premise": f"{premise}: {p.verdict}"}
    if not p.passed:
        notes["conclusion"] = f"{conclusion}: not needed"
        return CheckReport("implies", "pass", [], {"tuples": p.stats.get("tuples", 0)}, notes)
    c = CHECKS[conclusion](objs, opts, mode)
    notes["conclusion"] = f"{conclusion}: {c.verdict}"
    stats = {"tuples": p.stats.get("tuples", 0) + c.stats.get("tuples", 0)}
    if c.passed:
        return CheckReport("implies", "pass", [], stats, notes)
    return CheckReport("implies", "fail", list(c.witnesses), stats, notes)


def _graph_equivalence(objs, opts, mode):
    (f,) = _expect(objs, (AlgebraMorphism,))
    m = check_morphism(f)
    S = cons.direct_sum(f.source, f.target)
    g = is_subalgebra(S, graph_subspace(f))
    notes = {"morphism": m.verdict, "graph_subalgebra": g.verdict}
    stats = {"tuples": m.stats.get("tuples", 0) + g.stats.get("tuples", 0)}
    if m.verdict == g.verdict:
        return CheckReport("graph-morphism-equivalence", "pass", [], stats, notes)
    return CheckReport("graph-morphism-equivalence", "fail", [Witness("verdicts", [m.verdict, g.verdict], "morphism <=> graph subalgebra")], stats, notes)


def _equal(objs, opts, mode):
    X, Y = objs
    if isinstance(X, BiHomAlgebra) and isinstance(Y, BiHomAlgebra):
        ok = X.same_tensor(Y)
    elif isinstance(X, BiHomBimodule) and isinstance(Y, BiHomBimodule):
        ok = X.same_tensors(Y)
    elif isinstance(X, LinearMap) and isinstance(Y, LinearMap):
        ok = X == Y
    elif isinstance(X, Subspace) and isinstance(Y, Subspace):
        ok = X == Y
    else:
        raise TypeError("equal compares two values of the same kind")
    return _bool_report("equal", ok, f"{_digest(X)} != {_digest(Y)}")


def _rota_baxter(objs, opts, mode):
    A, R = _expect(objs, (BiHomAlgebra, LinearMap))
    return ids.check_rota_baxter(A, R, opts.get("weight_value", 0))


def _pair(fn, types):
    def run(objs, opts, mode):
        return fn(*_expect(objs, types))

    return run


def _opcomm(objs, opts, mode):
    if len(objs) == 1:
        return bm.check_operator_commutativity(*_expect(objs, (BiHomBimodule,)))
    return bm.check_operator_commutativity(*_expect(objs, (BiHomBimodule, BiHomBimodule)))


CHECKS = {
    "validate": _alg_check(validate),
    "associative": _alg_check(ids.check_bihom_associative),
    "left-alternative": _alg_check(ids.check_left_alternative, True),
    "right-alternative": _alg_check(ids.check_right_alternative, True),
    "alternative": _alg_check(_both_alt, True),
    "commutative": _alg_check(ids.check_bihom_commutative),
    "jordan": _alg_check(ids.check_bihom_jordan, True),
    "regular": _alg_check(lambda A: _bool_report("regular", ids.is_regular(A), "twists not invertible or not multiplicative")),
    "involutive": _alg_check(lambda A: _bool_report("involutive", ids.is_involutive(A), "alpha^2 or beta^2 is not the identity")),
    "rota-baxter": _rota_baxter,
    "subalgebra": _pair(is_subalgebra, (BiHomAlgebra, Subspace)),
    "ideal": _pair(is_two_sided_ideal, (BiHomAlgebra, Subspace)),
    "morphism": _pair(check_morphism, (AlgebraMorphism,)),
    "graph-morphism-equivalence": _graph_equivalence,
    "assoc-bimodule": _mod_check(bm.check_assoc_bimodule),
    "alt-bimodule": _mod_check(bm.check_alt_bimodule, True),
    "right-jordan-module": _mod_check(bm.check_right_jordan_module, True),
    "left-jordan-module": _mod_check(bm.check_left_jordan_module, True),
    "right-special": _mod_check(bm.check_right_special),
    "left-special": _mod_check(bm.check_left_special),
    "jordan-bimodule": _mod_check(bm.check_jordan_bimodule),
    "operator-commutativity": _opcomm,
    "bimodule-morphism": _pair(bm.check_bimodule_morphism, (BimoduleMorphism,)),
    "polarization": _polarization,
    "implies": _implies,
    "equal": _equal,
}


# ---------------------------------------------------------------- execution


def _digest(obj):
    if isinstance(obj, (BiHomAlgebra, BiHomBimodule)):
        return obj.digest()
    if isinstance(obj, LinearMap):
        text = obj.render()
    elif isinstance(obj, Subspace):
        rows, _ = obj.rref()
        text = f"{obj.ambient_dim}|" + ";".join(",".join(format_num(c) for c in r) for r in rows)
    elif isinstance(obj, (AlgebraMorphism, BimoduleMorphism)):
        text = obj.map.render()
    else:
        text = repr(obj)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _summary(name, obj, line):
    if isinstance(obj, BiHomAlgebra):
        kind, dims = "algebra", [obj.dim]
    elif isinstance(obj, BiHomBimodule):
        kind, dims = "bimodule", [obj.host.dim, obj.mdim]
    elif isinstance(obj, LinearMap):
        kind, dims = "map", [obj.rows, obj.cols]
    elif isinstance(obj, Subspace):
        kind, dims = "subspace", [obj.ambient_dim, obj.dim]
    elif isinstance(obj, AlgebraMorphism):
        kind, dims = "morphism", [obj.source.dim, obj.target.dim]
    else:
        kind, dims = "bimodule-morphism", [obj.source.mdim, obj.target.mdim]
    return {"name": name, "kind": kind, "dims": dims, "digest": _digest(obj), "line": line}


@dataclass
class DirectiveResult:
    line: int
    targets: tuple
    check: str
    expect: str
    report: CheckReport

    @property
    def ok(self):
        return self.report.passed == (self.expect == "pass")

    def to_dict(self, timing=True):
        return {
            "line": self.line,
            "targets": list(self.targets),
            "check": self.check,
            "expect": self.expect,
            "ok": self.ok,
            "report": self.report.to_dict(timing),
        }


@dataclass
class RunReport:
    directives: list = field(default_factory=list)
    bindings: list = field(default_factory=list)
    errata: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def exit_status(self):
        return 0 if all(d.ok for d in self.directives) else 1

    def to_dict(self, timing=True):
        return {
            "directives": [d.to_dict(timing) for d in self.directives],
            "bindings": list(self.bindings),
            "errata": [e.to_dict() for e in self.errata],
            "warnings": list(self.warnings),
            "summary": {
                "directives": len(self.directives),
                "ok": sum(d.ok for d in self.directives),
                "exit_status": self.exit_status,
            },
        }

    def structured(self, timing=True):
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    def text(self, timing=True):
        lines = []
        for b in self.bindings:
            dims = "x".join(str(d) for d in b["dims"])
            lines.append(f"bind {b['name']}: {b['kind']} {dims} digest {b['digest']} (line {b['line']})")
        for d in self.directives:
            r = d.report
            status = "ok" if d.ok else "NOT OK"
            exp = " expect=fail" if d.expect == "fail" else ""
            t = f", {r.stats.get('elapsed_s', 0):.3f} s" if timing and "elapsed_s" in r.stats else ""
            lines.append(
                f"[line {d.line}] check {', '.join(d.targets)} {d.check}{exp}: "
                f"{r.verdict.upper()} ({r.stats.get('tuples', 0)} tuples{t}) {status}"
            )
            for w in r.witnesses:
                where = "(" + ", ".join(str(i) for i in w.where) + ")" if isinstance(w.where, tuple) else w.where
                lines.append(f"    witness [{w.equation}] at {where}: ({', '.join(w.residual)})")
            for k in sorted(r.notes):
                lines.append(f"    {k}: {r.notes[k]}")
        if self.errata:
            lines.append("errata:")
            lines.extend(f"    {e}" for e in self.errata)
        for w in self.warnings:
            lines.append(f"warning: {w}")
        ok = sum(d.ok for d in self.directives)
        lines.append(f"{ok}/{len(self.directives)} directives ok; exit {self.exit_status}")
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self, kind, dim, host=None):
        self.kind = kind
        self.dim = dim
        self.host = host
        self.maps = {}
        self.points = {}
        self.mu = {}
        self.actl = {}
        self.actr = {}

    def linear_map(self, which, dim):
        if which in self.maps:
            f = self.maps[which]
        else:
            f = LinearMap.identity(dim)
        if which in self.points:
            cols = [f.column(j) for j in range(dim)]
            for k, vec in self.points[which].items():
                cols[k - 1] = vec
            f = LinearMap.from_columns(cols, rows=dim)
        return f

    def build(self, name):
        if self.kind == "algebra":
            n = self.dim
            prods = {(i - 1, j - 1): v for (i, j), v in self.mu.items()}
            return BiHomAlgebra.from_products(n, prods, self.linear_map("alpha", n), self.linear_map("beta", n), name)
        H = self.host
        n, m = H.dim, self.dim
        L = [[self.actl.get((i + 1, p + 1), [0] * m) for p in range(m)] for i in range(n)]
        R = [[self.actr.get((p + 1, i + 1), [0] * m) for i in range(n)] for p in range(m)]
        return BiHomBimodule(H, m, self.linear_map("phi", m), self.linear_map("psi", m), L, R, name)


class _Runner:
    def __init__(self, default_mode):
        self.env = {}
        self.lines = {}
        self.order = []
        self.builders = {}
        self.used = set()
        self.mode = default_mode
        self.report = RunReport()
        self._ctx = None

    def bind(self, name, obj, line):
        self.env[name] = obj
        self.lines[name] = line
        self.order.append(name)

    def get(self, name):
        self.used.add(name)
        if name in self.builders:
            b = self.builders.pop(name)
            self.env[name] = b.build(name)
        return self.env[name]

    def execute(self, st):
        getattr(self, f"ex_{st.kind}")(st)

    def ex_params(self, st):
        pass

    def ex_algebra(self, st):
        name, dim = st.args
        self.builders[name] = _Builder("algebra", dim)
        self.lines[name] = st.line
        self.order.append(name)

    def ex_bimodule(self, st):
        name, host, dim = st.args
        H = self.get(host)
        if not isinstance(H, BiHomAlgebra):
            raise TypeError(f"{host!r} is not an algebra")
        self.builders[name] = _Builder("bimodule", dim, H)
        self.lines[name] = st.line
        self.order.append(name)

    def ex_map(self, st):
        target, which, k, _ = st.args
        b = self.builders[target]
        if k is None:
            self.builders[target].maps[which] = LinearMap.from_rows(st.data)
        else:
            b.points.setdefault(which, {})[k] = st.data

    def ex_mu(self, st):
        target, i, j, _ = st.args
        self.builders[target].mu[(i, j)] = st.data

    def ex_actl(self, st):
        target, i, p, _ = st.args
        b = self.builders[target]
        if i > b.host.dim:
            raise IndexError(f"e{i} is outside the host of dimension {b.host.dim}")
        b.actl[(i, p)] = st.data

    def ex_actr(self, st):
        target, p, i, _ = st.args
        b = self.builders[target]
        if i > b.host.dim:
            raise IndexError(f"e{i} is outside the host of dimension {b.host.dim}")
        b.actr[(p, i)] = st.data

    def ex_matrix(self, st):
        self.bind(st.args[0], LinearMap.from_rows(st.data), st.line)

    def ex_use(self, st):
        entry, alias = st.args
        self.bind(alias, catalog.lookup(entry), st.line)

    def ex_let(self, st):
        name, fname, _ = st.args
        self.bind(name, self.evaluate_call(fname, st.data), st.line)

    def evaluate_call(self, fname, data):
        args = []
        for item in data:
            kind = item[0]
            if kind == "name":
                args.append(self.get(item[1]))
            elif kind == "matrix":
                args.append(LinearMap.from_rows(item[1]))
            elif kind == "call":
                args.append(self.evaluate_call(item[1], item[2]))
            else:
                args.append(item[1])
        return _call(fname, args)

    def ex_check(self, st):
        targets, name, opts = st.args
        opts = dict(opts)
        expect = opts.get("expect", "pass")
        if expect not in ("pass", "fail"):
            raise ValueError("expect must be pass or fail")
        if "weight" in opts:
            from .scalar import parse_scalar

            opts["weight_value"] = parse_scalar(opts["weight"], self._ctx)
        objs = [self.get(t) for t in targets]
        mode = _mode(opts, self.mode)
        rep = CHECKS[name](objs, opts, mode)
        self.report.directives.append(DirectiveResult(st.line, targets, name, expect, rep))

    def ex_errata(self, st):
        self.report.errata.extend(catalog.erratum_ledger([st.args[0]]))

    def finish(self):
        for name in self.order:
            if name in self.builders:
                self.get(name)
            obj = self.env[name]
            self.report.bindings.append(_summary(name, obj, self.lines[name]))
        for name in self.order:
            if isinstance(self.env[name], LinearMap) and name not in self.used:
                self.report.warnings.append(f"matrix {name} (line {self.lines[name]}) is never used")
        return self.report


def _as_int(x):
    if isinstance(x, Scalar) or Fraction(x).denominator != 1:
        raise TypeError(f"expected an integer, got {x}")
    return int(x)


def _call(fname, args):
    kinds = FUNCTIONS[fname]
    required = [k for k in kinds if not k.startswith("*")]
    if not len(required) <= len(args) <= len(kinds):
        raise TypeError(f"{fname} takes {len(required)} arguments, got {len(args)}")
    types = {"A": BiHomAlgebra, "V": BiHomBimodule, "M": LinearMap, "S": Subspace, "F": AlgebraMorphism}
    for k, a in zip(kinds, args):
        t = types.get(k.lstrip("*"))
        if t is not None and not isinstance(a, t):
            raise TypeError(f"{fname}: expected {t.__name__}, got {type(a).__name__}")
    if fname in ("power_twist", "power", "block", "span", "shift_bimodule", "twist_bimodule_powers", "jordan_shift_bimodule"):
        args = [_as_int(a) if k == "int" else a for k, a in zip(kinds, args)]
    if fname == "jordan_deform_bimodule_powers":
        args = args[:5] + [_as_int(args[5])]
    impl = {
        "direct_sum": cons.direct_sum,
        "tensor_product": cons.tensor_product,
        "quotient": cons.quotient,
        "yau_twist": cons.yau_twist,
        "power_twist": cons.power_twist,
        "rota_baxter_deformation": cons.rota_baxter_deformation,
        "plus_algebra": cons.plus_algebra,
        "split_null_extension": bc.split_null_extension,
        "automorphism": catalog.automorphism,
        "identity": lambda A: LinearMap.identity(A.dim),
        "alpha": lambda A: A.alpha,
        "beta": lambda A: A.beta,
        "phi": lambda V: V.phi,
        "psi": lambda V: V.psi,
        "compose": lambda f, g: f @ g,
        "power": lambda f, k: f.power(k),
        "inverse": mat_inverse,
        "scale": lambda c, f: f.scale(c),
        "add": lambda f, g: f + g,
        "morphism": lambda A, B, M: AlgebraMorphism(A, B, M),
        "quotient_projection": lambda A, S: AlgebraMorphism(A, cons.quotient(A, S), cons.quotient_projection(A, S)),
        "graph": graph_subspace,
        "block": lambda A, k: block_subspace(A, k - 1),
        "span": lambda n, M: Subspace.span(n, M.columns()),
        "extension_kernel": bc.extension_kernel,
        "regular_bimodule": bc.regular_bimodule,
        "ideal_bimodule": bc.ideal_bimodule,
        "bimodule_via_surjection": bc.bimodule_via_surjection,
        "shift_bimodule": bc.shift_bimodule,
        "twist_bimodule": bc.twist_bimodule,
        "twist_bimodule_powers": bc.twist_bimodule_powers,
        "rb_twist_bimodule": bc.rb_twist_bimodule,
        "jordan_shift_bimodule": bc.jordan_shift_bimodule,
        "jordan_deform_bimodule": bc.jordan_deform_bimodule,
        "jordan_deform_bimodule_powers": bc.jordan_deform_bimodule_powers,
        "special_pair_to_jordan_bimodule": bc.special_pair_to_jordan_bimodule,
        "rehost": lambda V, H: V.with_host(H),
        "induced_bimodule": bc.induced_bimodule,
        "bimodule_morphism": lambda V, W, M: BimoduleMorphism(V, W, M),
    }[fname]
    if fname == "automorphism":
        if not isinstance(args[0], str):
            raise TypeError("automorphism takes a quoted tag")
    return impl(*args)


def run(doc: Document, mode: CheckMode = LINEARIZED) -> RunReport:
    r = _Runner(mode)
    ctx = None
    for st in doc.statements:
        if st.kind == "params":
            ctx = ctx.extend(st.args) if ctx else ParameterContext(tuple(st.args))
        r._ctx = ctx
        try:
            r.execute(st)
        except (BihomError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
            if isinstance(exc, DSLError):
                raise
            raise RunError(f"{type(exc).__name__}: {exc}", st.line, exc) from exc
    return r.finish()


def run_text(source: str, mode: CheckMode = LINEARIZED) -> RunReport:
    return run(parse(source), mode)
