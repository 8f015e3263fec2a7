"""Exact scalars: rationals and rational functions in named parameters.

Constants are plain ``Fraction`` values everywhere in the package; a
``Scalar`` instance only appears when a value genuinely depends on a
parameter.  Arithmetic between the two mixes freely, and any result that
normalizes to a constant collapses back to a ``Fraction``.

A Scalar keeps its denominator as a product of primitive polynomial
factors.  Sums take the least common multiple over those factors, and the
numerator is trial-divided by each factor after every operation.  There
is no multivariate GCD; equality is decided by cross-multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Union

from .errors import ContextMismatch, DivisionByZero, PoleAtPoint

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ParameterContext:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for n in names:
            if not isinstance(n, str) or not _IDENT.match(n):
                raise ValueError(f"bad parameter identifier {n!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def extend(self, names):
        return ParameterContext(self.names + tuple(names))

    def variable(self, name):
        return Scalar._from_poly(Polynomial.variable(self, name))

    def variables(self):
        return [self.variable(n) for n in self.names]


# ---------------------------------------------------------------- polynomials


def _emul(e, f):
    return tuple(a + b for a, b in zip(e, f))


def _divides(f, e):
    return all(a <= b for a, b in zip(f, e))


class Polynomial:
    """Sparse polynomial over Q: exponent tuple -> nonzero Fraction."""

    __slots__ = ("ctx", "terms", "_key")

    def __init__(self, ctx: ParameterContext, terms=None):
        self.ctx = ctx
        if terms is None:
            terms = {}
        elif any(c == 0 for c in terms.values()):
            terms = {e: c for e, c in terms.items() if c != 0}
        self.terms = terms
        self._key = None

    @classmethod
    def constant(cls, ctx, c):
        c = Fraction(c)
        return cls(ctx, {(0,) * len(ctx): c} if c else {})

    @classmethod
    def variable(cls, ctx, name):
        e = [0] * len(ctx)
        e[ctx.index(name)] = 1
        return cls(ctx, {tuple(e): ONE})

    def key(self):
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self):
        if not self.terms:
            return ZERO
        return next(iter(self.terms.values()))

    def lead(self):
        return max(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx.names} vs {other.ctx.names}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ctx, out)

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Polynomial(self.ctx)
        return Polynomial(self.ctx, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        if len(other.terms) == 1:
            (f, d), = other.terms.items()
            return Polynomial(self.ctx, {_emul(e, f): c * d for e, c in self.terms.items()})
        out = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                k = _emul(e, f)
                v = out.get(k, ZERO) + c * d
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Polynomial(self.ctx, out)

    def __pow__(self, k):
        out = Polynomial.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divexact(self, q):
        """Return self / q if q divides self exactly, else None."""
        if not q.terms:
            raise DivisionByZero("division by the zero polynomial")
        if not self.terms:
            return Polynomial(self.ctx)
        lq = q.lead()
        if not _divides(lq, self.lead()):
            return None
        # the lex-least monomials must divide as well
        if not _divides(min(q.terms), min(self.terms)):
            return None
        cq = q.terms[lq]
        r = dict(self.terms)
        quo = {}
        while r:
            lr = max(r)
            if not _divides(lq, lr):
                return None
            m = tuple(a - b for a, b in zip(lr, lq))
            c = r[lr] / cq
            quo[m] = c
            for f, d in q.terms.items():
                k = _emul(f, m)
                v = r.get(k, ZERO) - c * d
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
        return Polynomial(self.ctx, quo)

    def eval(self, values):
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.ctx.names, e) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)


def _primitive(p: Polynomial):
    """Split p = c * x^mono * prim with prim primitive over Z, positive lead."""
    dens = 1
    for c in p.terms.values():
        dens = lcm(dens, c.denominator)
    g = 0
    for c in p.terms.values():
        g = gcd(g, (c * dens).numerator)
    lead_c = p.terms[p.lead()]
    content = Fraction(g, dens) * (1 if lead_c > 0 else -1)
    mono = tuple(min(e[i] for e in p.terms) for i in range(len(p.ctx)))
    prim = {tuple(a - b for a, b in zip(e, mono)): c / content for e, c in p.terms.items()}
    return content, mono, Polynomial(p.ctx, prim)


def _factor_poly(p: Polynomial):
    """p -> (constant, {key: [factor, exp]}) with primitive factors."""
    content, mono, prim = _primitive(p)
    factors = {}
    for i, k in enumerate(mono):
        if k:
            v = Polynomial.variable(p.ctx, p.ctx.names[i])
            factors[v.key()] = [v, k]
    if not prim.is_constant():
        factors[prim.key()] = [prim, 1]
    return content, factors


def _refine(d1, d2):
    """Rewrite two factor tables over a common divisibility-refined base."""
    d1 = {k: list(v) for k, v in d1.items()}
    d2 = {k: list(v) for k, v in d2.items()}
    changed = True
    while changed:
        changed = False
        for src, other in ((d1, d2), (d2, d1)):
            for k1 in list(src):
                if k1 in other or k1 not in src:
                    continue
                f1, e1 = src[k1]
                for k2, (f2, _) in list(other.items()):
                    if k2 in src:
                        continue
                    if f2.total_degree() >= f1.total_degree():
                        continue
                    h = f1.divexact(f2)
                    if h is None:
                        continue
                    del src[k1]
                    for g in (f2, h):
                        if g.is_constant():
                            continue
                        if g.key() in src:
                            src[g.key()][1] += e1
                        else:
                            src[g.key()] = [g, e1]
                    changed = True
                    break
                if changed:
                    break
            if changed:
                break
    return d1, d2


def _expand(ctx, factors, skip=None):
    out = Polynomial.constant(ctx, 1)
    for k, (f, e) in factors.items():
        if skip is not None:
            e -= skip.get(k, (None, 0))[1]
        if e:
            out = out * (f ** e)
    return out


# -------------------------------------------------------------------- scalars

Num = Union[Fraction, "Scalar"]


class Scalar:
    """A non-constant rational function num / prod(factor^exp)."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den):
        self.ctx = ctx
        self.num = num
        self.den = den  # tuple of (factor, exp), sorted by factor key

    # construction ---------------------------------------------------------
    @staticmethod
    def _from_poly(p):
        if p.is_constant():
            return p.constant_value()
        return Scalar(p.ctx, p, ())

    @staticmethod
    def _normalize(ctx, num, factors):
        if num.is_zero():
            return ZERO
        remaining = []
        for k in sorted(factors):
            f, e = factors[k]
            while e:
                q = num.divexact(f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                remaining.append((f, e))
        if not remaining and num.is_constant():
            return num.constant_value()
        return Scalar(ctx, num, tuple(remaining))

    def _factors(self):
        return {f.key(): [f, e] for f, e in self.den}

    # public views ---------------------------------------------------------
    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        return _expand(self.ctx, self._factors())

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx.names} vs {other.ctx.names}")
            return other.num, other._factors()
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ctx, other), {}
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self.ctx, self.num, self._factors(), o[0], o[1])

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ctx, -self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self.ctx, self.num, self._factors(), -o[0], o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _add(self.ctx, o[0], o[1], -self.num, self._factors())

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Scalar(self.ctx, self.num.scale(Fraction(other)), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _mul(self.ctx, self.num, self._factors(), o[0], o[1])

    __rmul__ = __mul__

    def inverse(self):
        content, factors = _factor_poly(self.num)
        num = _expand(self.ctx, self._factors()).scale(1 / content)
        return Scalar._normalize(self.ctx, num, factors)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return Scalar(self.ctx, self.num.scale(1 / Fraction(other)), self.den)
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False  # normalized non-constant scalars never equal constants
        if not isinstance(other, Scalar):
            return NotImplemented
        return scalar_eq(self, other)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return True

    def __hash__(self):
        try:
            return hash(self.eval_values(_hash_point(len(self.ctx))))
        except PoleAtPoint:
            return 0

    # evaluation -----------------------------------------------------------
    def eval_values(self, values):
        d = ONE
        for f, e in self.den:
            d *= f.eval(values) ** e
        if not d:
            raise PoleAtPoint(f"denominator of {self} vanishes")
        return self.num.eval(values) / d

    def size(self):
        return sum(len(f.terms) for f, _ in self.den) + len(self.num.terms)

    def degree(self):
        return self.num.total_degree() + sum(f.total_degree() * e for f, e in self.den)

    def __str__(self):
        ns = str(self.num)
        if not self.den:
            return ns
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        parts = []
        for f, e in self.den:
            fs = str(f)
            if len(f.terms) > 1:
                fs = f"({fs})"
            parts.append(fs if e == 1 else f"{fs}^{e}")
        ds = "*".join(parts)
        if len(parts) > 1 or (len(self.den) == 1 and self.den[0][1] > 1):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"Scalar({self})"


def _hash_point(n):
    return [Fraction(1009 + 10 * i, 7 + 2 * i) for i in range(n)]


def _add(ctx, n1, f1, n2, f2):
    if not f1 and not f2:
        return Scalar._from_poly(n1 + n2)
    if f1.keys() != f2.keys():
        f1, f2 = _refine(f1, f2)
    lcm_f = {}
    for k, (f, e) in list(f1.items()) + list(f2.items()):
        if k not in lcm_f or lcm_f[k][1] < e:
            lcm_f[k] = [f, e]
    num = n1 * _expand(ctx, lcm_f, f1) + n2 * _expand(ctx, lcm_f, f2)
    return Scalar._normalize(ctx, num, lcm_f)


def _mul(ctx, n1, f1, n2, f2):
    num = n1 * n2
    if num.is_zero():
        return ZERO
    merged = {k: list(v) for k, v in f1.items()}
    for k, (f, e) in f2.items():
        if k in merged:
            merged[k][1] += e
        else:
            merged[k] = [f, e]
    return Scalar._normalize(ctx, num, merged)


# ------------------------------------------------------------ module-level API


def is_zero(x) -> bool:
    return not isinstance(x, Scalar) and x == 0


def as_num(x):
    """Coerce ints to Fraction; leave Fraction and Scalar alone."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def context_of(x):
    return x.ctx if isinstance(x, Scalar) else None


def inv(x):
    if is_zero(x):
        raise DivisionByZero("inverse of zero")
    if isinstance(x, Scalar):
        return x.inverse()
    return 1 / Fraction(x)


def div(x, y):
    if is_zero(y):
        raise DivisionByZero("division by zero")
    if isinstance(x, Scalar) or isinstance(y, Scalar):
        return x * inv(y)
    return Fraction(x) / Fraction(y)


def scalar_arith(op, x, y=None):
    x = as_num(x)
    y = as_num(y) if y is not None else None
    if isinstance(x, Scalar) and isinstance(y, Scalar) and x.ctx != y.ctx:
        raise ContextMismatch(f"{x.ctx.names} vs {y.ctx.names}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return div(x, y)
    if op == "neg":
        return -x
    if op == "inv":
        return inv(x)
    raise ValueError(f"unknown op {op!r}")


def scalar_eq(x, y) -> bool:
    """Cross-multiplication test num(x)*den(y) == num(y)*den(x)."""
    x, y = as_num(x), as_num(y)
    if not isinstance(x, Scalar) and not isinstance(y, Scalar):
        return x == y
    if isinstance(x, Scalar) and isinstance(y, Scalar):
        if x.ctx != y.ctx:
            raise ContextMismatch(f"{x.ctx.names} vs {y.ctx.names}")
        if x.den == y.den:
            return x.num == y.num
        ctx = x.ctx
        return x.num * _expand(ctx, y._factors()) == y.num * _expand(ctx, x._factors())
    # a normalized Scalar never equals a constant
    return False


def scalar_eval(x, point: Mapping[str, Fraction]):
    x = as_num(x)
    if not isinstance(x, Scalar):
        return x
    try:
        values = [Fraction(point[n]) for n in x.ctx.names]
    except KeyError as exc:
        raise ValueError(f"point does not assign parameter {exc.args[0]!r}") from None
    return x.eval_values(values)


def embed(x, ctx: ParameterContext):
    """Re-express x in a context whose names extend x's context."""
    if not isinstance(x, Scalar) or x.ctx == ctx:
        return x
    old = x.ctx.names
    if ctx.names[: len(old)] != old:
        raise ContextMismatch(f"{ctx.names} does not extend {old}")
    pad = (0,) * (len(ctx) - len(old))

    def lift(p):
        return Polynomial(ctx, {e + pad: c for e, c in p.terms.items()})

    return Scalar(ctx, lift(x.num), tuple((lift(f), e) for f, e in x.den))


def num_size(x):
    """Cost used for pivot selection: (term count, total degree)."""
    if isinstance(x, Scalar):
        return (x.size(), x.degree())
    return (1, 0)


def format_num(x) -> str:
    if isinstance(x, Scalar):
        return str(x)
    x = Fraction(x)
    return str(x)


def parse_scalar(text: str, ctx: ParameterContext | None = None):
    from .expr import evaluate_scalar_text

    return evaluate_scalar_text(text, ctx)
