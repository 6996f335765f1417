"""Exact rational functions with integer coefficients in named generators.

The polynomial layer is python-flint's sparse ``fmpz_mpoly``. Every Scalar
lives in the context of the generators it was built from; binary operations
lift both operands to the union context. Keeping contexts small matters: flint
packs exponent vectors into machine words and slows down sharply once more than
seven generators share a word.

``q`` is never a generator. It always means ``s**2``, so ``q**(1/2) = s`` stays
polynomial.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

from .errors import DivisionByZero, PoleAtSpecialization

GENERATORS: tuple[str, ...] = (
    "s", "t", "Q", "r", "u1", "u2", "v1", "v2", "a",
    "beta", "N", "alpha", "a1", "z", "w", "eps",
) + tuple(f"y{i}" for i in range(1, 13))
_RANK = {name: i for i, name in enumerate(GENERATORS)}

# generators sent to their reciprocals by ``dual``
INVERTED_BY_DUAL = ("s", "t", "Q", "r")


class GenSet:
    """Ordered set of generator names; order is the fixed global one."""

    __slots__ = ("names", "ctx")

    def __init__(self, names: tuple[str, ...]):
        self.names = names
        self.ctx = flint.fmpz_mpoly_ctx.get(names, "lex")

    def __repr__(self) -> str:
        return f"GenSet({', '.join(self.names)})"

    def __or__(self, other: "GenSet") -> "GenSet":
        return genset(self.names + other.names)


def genset(names: Iterable[str]) -> GenSet:
    names = set(names)
    unknown = names - set(_RANK)
    if unknown:
        raise ValueError(f"unknown generators: {sorted(unknown)}")
    return _genset(tuple(sorted(names, key=_RANK.__getitem__)))


@lru_cache(maxsize=None)
def _genset(names: tuple[str, ...]) -> GenSet:
    return GenSet(names)


@lru_cache(maxsize=None)
def _union_ctx(c1, c2):
    return genset(c1.names() + c2.names()).ctx


def _reduce(num, den):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        ctx = num.context()
        return ctx.from_dict({}), ctx.constant(1)
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
    return num, den


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Reduced fraction ``num/den`` with a sign-normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced: bool = False):
        if den is None:
            den = num.context().constant(1)
            reduced = True
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- construction ---------------------------------------------------
    @staticmethod
    def const(value, gs: GenSet | None = None) -> "Scalar":
        ctx = (gs or _genset(())).ctx
        value = Fraction(value)
        return Scalar(ctx.constant(value.numerator), ctx.constant(value.denominator), reduced=True)

    @staticmethod
    def gen(name: str) -> "Scalar":
        if name == "q":
            return Scalar.gen("s") ** 2
        ctx = genset([name]).ctx
        return Scalar(ctx.gens()[0])

    @property
    def ctx(self):
        return self.num.context()

    def lift(self, ctx) -> "Scalar":
        if self.num.context() is ctx:
            return self
        return Scalar(self.num.project_to_context(ctx), self.den.project_to_context(ctx), reduced=True)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def used_generators(self) -> tuple[str, ...]:
        names = self.ctx.names()
        dn, dd = self.num.degrees(), self.den.degrees()
        return tuple(n for n, a, b in zip(names, dn, dd) if a > 0 or b > 0)

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(_const_term(self.num)), int(_const_term(self.den)))

    # -- arithmetic -----------------------------------------------------
    def _pair(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
        c1, c2 = self.num.context(), other.num.context()
        if c1 is c2:
            return self.num, self.den, other.num, other.den
        ctx = _union_ctx(c1, c2)
        a, b = self.lift(ctx), other.lift(ctx)
        return a.num, a.den, b.num, b.den

    def __add__(self, other):
        an, ad, bn, bd = self._pair(other)
        if ad.is_one() and bd.is_one():
            return Scalar(an + bn, ad, reduced=True)
        if ad == bd:
            return Scalar(an + bn, ad)
        g = ad.gcd(bd)
        if g.is_one():
            return Scalar(an * bd + bn * ad, ad * bd, reduced=True)
        ad1, bd1 = ad // g, bd // g
        n = an * bd1 + bn * ad1
        if n.is_zero():
            return Scalar(n)
        h = n.gcd(g)
        if not h.is_one():
            n = n // h
            g = g // h
        return Scalar(n, ad1 * bd1 * g, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        an, ad, bn, bd = self._pair(other)
        if an.is_zero() or bn.is_zero():
            return Scalar(an.context().from_dict({}))
        if ad.is_one() and bd.is_one():
            return Scalar(an * bn, ad, reduced=True)
        g1 = an.gcd(bd)
        g2 = bn.gcd(ad)
        if not g1.is_one():
            an, bd = an // g1, bd // g1
        if not g2.is_one():
            bn, ad = bn // g2, ad // g2
        return Scalar(an * bn, ad * bd, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise DivisionByZero("division by zero Scalar")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar(num, den, reduced=True)

    def __truediv__(self, other):
        other = _coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("Scalar powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        an, ad, bn, bd = self._pair(other)
        return an == bn and ad == bd

    def __hash__(self):
        return hash((self.num.str(), self.den.str()))

    # -- text -----------------------------------------------------------
    def __str__(self):
        n = self.num.str()
        if self.den.is_one():
            return n
        return f"({n})/({self.den.str()})"

    def __repr__(self):
        return f"Scalar({self})"

    # -- evaluation -----------------------------------------------------
    def evalf(self, values: Mapping[str, complex]):
        """Numeric value with generators replaced by floats (q is not a key)."""
        d = _poly_evalf(self.den, values)
        if d == 0:
            raise DivisionByZero(f"denominator of {self} vanishes numerically")
        return _poly_evalf(self.num, values) / d


def _const_term(p):
    return p.to_dict().get((0,) * p.context().nvars(), 0)


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


def _poly_evalf(p, values):
    names = p.context().names()
    total = 0
    for exps, c in p.terms():
        term = int(c)
        for name, e in zip(names, exps):
            if e:
                term = term * values[name] ** int(e)
        total += term
    return total


# ---------------------------------------------------------------------------
# module-level helpers

ZERO = Scalar.const(0)
ONE = Scalar.const(1)


def S(value) -> Scalar:
    """Coerce an int, Fraction, generator name or Scalar to a Scalar."""
    if isinstance(value, str):
        return parse(value)
    return _coerce(value)


def gens(*names: str) -> tuple[Scalar, ...]:
    return tuple(Scalar.gen(n) for n in names)


def scalar_arith(a: Number, b: Number, op: str) -> Scalar:
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def parse(text: str) -> Scalar:
    """Inverse of ``str(Scalar)``; also accepts ``**`` and the name ``q``."""
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    return _eval_ast(tree.body)


def _eval_ast(node) -> Scalar:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Scalar.const(node.value)
    if isinstance(node, ast.Name):
        return Scalar.gen(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left)
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** (sign * exp.value)
        right = _eval_ast(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"cannot parse Scalar expression near {ast.dump(node)}")


# ---------------------------------------------------------------------------
# substitution


def _subs_poly(p, bindings: Mapping[str, Scalar], target):
    """Return (numerator, denominator) polynomials of p after substitution."""
    names = p.context().names()
    degs = p.degrees()
    bound = [i for i, n in enumerate(names) if n in bindings and degs[i] > 0]
    tpos = {n: target.variable_to_index(n) for n in names if n not in bindings}
    nt = target.nvars()
    if not bound:
        return p.project_to_context(target), target.constant(1)
    groups: dict[tuple, dict] = {}
    for exps, c in p.terms():
        key = tuple(exps[i] for i in bound)
        mono = [0] * nt
        for i, n in enumerate(names):
            if n in tpos and exps[i]:
                mono[tpos[n]] = exps[i]
        groups.setdefault(key, {})[tuple(mono)] = c
    vals = [bindings[names[i]].lift(target) for i in bound]
    dmax = [degs[i] for i in bound]
    num_pows = [_powers(v.num, d) for v, d in zip(vals, dmax)]
    den_pows = [_powers(v.den, d) for v, d in zip(vals, dmax)]
    total = target.from_dict({})
    for key, coeffs in groups.items():
        term = target.from_dict(coeffs)
        for j, e in enumerate(key):
            term = term * num_pows[j][e] * den_pows[j][dmax[j] - e]
        total = total + term
    den = target.constant(1)
    for j, d in enumerate(dmax):
        den = den * den_pows[j][d]
    return total, den


def _powers(p, d):
    out = [p.context().constant(1)]
    for _ in range(d):
        out.append(out[-1] * p)
    return out


def specialize(x: Scalar, bindings: Mapping[str, Number]) -> Scalar:
    """Ring homomorphism sending the bound generators to the given Scalars."""
    bindings = {k: _coerce(v) if not isinstance(v, str) else parse(v) for k, v in bindings.items()}
    if "q" in bindings:
        raise ValueError("bind s instead of q (q = s^2)")
    keep = [n for n in x.ctx.names() if n not in bindings]
    target = genset(keep).ctx
    for v in bindings.values():
        target = _union_ctx(target, v.ctx)
    nn, nd = _subs_poly(x.num, bindings, target)
    dn, dd = _subs_poly(x.den, bindings, target)
    if dn.is_zero():
        raise PoleAtSpecialization(f"denominator of {x} vanishes under {dict((k, str(v)) for k, v in bindings.items())}")
    return Scalar(nn * dd, nd * dn)


def _reverse(p, inv: list[int]):
    degs = p.degrees()
    out = {}
    for exps, c in p.terms():
        e = list(exps)
        for i in inv:
            e[i] = degs[i] - e[i]
        out[tuple(e)] = c
    return p.context().from_dict(out), [degs[i] for i in inv]


def dual(x: Scalar) -> Scalar:
    """Apply s, t, Q, r -> 1/s, 1/t, 1/Q, 1/r."""
    ctx = x.ctx
    names = ctx.names()
    inv = [i for i, n in enumerate(names) if n in INVERTED_BY_DUAL]
    if not inv:
        return x
    nrev, dn = _reverse(x.num, inv)
    drev, dd = _reverse(x.den, inv)
    # x(1/g) = nrev * g^dd / (drev * g^dn)
    up = [0] * len(names)
    down = [0] * len(names)
    for i, a, b in zip(inv, dn, dd):
        if b >= a:
            up[i] = b - a
        else:
            down[i] = a - b
    return Scalar(nrev * ctx.term(exp_vec=tuple(up)), drev * ctx.term(exp_vec=tuple(down)))


def leading_term(x: Scalar, name: str) -> tuple[int, Scalar]:
    """Order and coefficient of the leading term of x as ``name`` -> 0."""
    if x.is_zero():
        raise ValueError("zero has no leading term")
    names = x.ctx.names()
    if name not in names:
        return 0, x
    i = names.index(name)

    def low(p):
        terms = list(p.terms())
        m = min(e[i] for e, _ in terms)
        out = {}
        for e, c in terms:
            if e[i] == m:
                e = list(e)
                e[i] = 0
                out[tuple(e)] = c
        return m, p.context().from_dict(out)

    mn, pn = low(x.num)
    md, pd = low(x.den)
    return mn - md, Scalar(pn, pd)


def evaluate_numeric(x: Scalar, values: Mapping[str, complex]):
    return x.evalf(values)


# ---------------------------------------------------------------------------
# truncated power series in hbar


class HSeries:
    """Truncated power series sum_{n<=order} c_n hbar^n with Scalar coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: list, order: int):
        coeffs = [_coerce(c) for c in coeffs[: order + 1]]
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    def __getitem__(self, n: int) -> Scalar:
        return self.coeffs[n] if 0 <= n <= self.order else ZERO

    def truncate(self, order: int) -> "HSeries":
        return HSeries(self.coeffs, min(order, self.order))

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if not c.is_zero():
                return n
        return None

    def __add__(self, other: "HSeries") -> "HSeries":
        o = min(self.order, other.order)
        return HSeries([self[n] + other[n] for n in range(o + 1)], o)

    def __sub__(self, other: "HSeries") -> "HSeries":
        o = min(self.order, other.order)
        return HSeries([self[n] - other[n] for n in range(o + 1)], o)

    def __mul__(self, other) -> "HSeries":
        if not isinstance(other, HSeries):
            c = _coerce(other)
            return HSeries([x * c for x in self.coeffs], self.order)
        o = min(self.order, other.order)
        out = []
        for n in range(o + 1):
            acc = ZERO
            for k in range(n + 1):
                if not self.coeffs[k].is_zero() and not other.coeffs[n - k].is_zero():
                    acc = acc + self.coeffs[k] * other.coeffs[n - k]
            out.append(acc)
        return HSeries(out, o)

    __rmul__ = __mul__

    def inverse(self) -> "HSeries":
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise PoleAtSpecialization("series with vanishing constant term is not invertible")
        inv0 = c0.inverse()
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-acc * inv0)
        return HSeries(out, self.order)

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        o = min(self.order, other.order)
        return all(self[n] == other[n] for n in range(o + 1))

    def __repr__(self):
        return "HSeries(" + " + ".join(f"({c})*h^{n}" for n, c in enumerate(self.coeffs)) + ")"


# exponent rates: a monomial s^a t^b Q^c r^d becomes exp(hbar*(a/2 + b*beta + c*beta*N + d*alpha))
_HBAR_GENS = ("s", "t", "Q", "r", "u1")


def _exp_series_poly(p, order: int) -> list[Scalar]:
    """Coefficients of p(e^{h/2}, e^{beta h}, e^{beta N h}, e^{alpha h}) for p free of u1."""
    names = p.context().names()
    present = [n for n in ("s", "t", "Q", "r") if n in names]
    rest = [n for n in names if n not in present]
    work = genset(tuple(names) + ("beta", "N", "alpha")).ctx
    beta, N, alpha = (Scalar.gen(n).lift(work).num for n in ("beta", "N", "alpha"))
    # 2*theta with theta the Euler operator of the exponent rates
    rate2 = {"s": work.constant(1), "t": 2 * beta, "Q": 2 * beta * N, "r": 2 * alpha}
    g = {n: work.gens()[work.variable_to_index(n)] for n in present}
    out_ctx = genset(tuple(rest) + ("beta", "N", "alpha")).ctx
    cur = p.project_to_context(work)
    out = []
    scale = 1
    for k in range(order + 1):
        if k:
            scale *= 2 * k
            nxt = work.from_dict({})
            for n in present:
                nxt = nxt + rate2[n] * g[n] * cur.derivative(n)
            cur = nxt
        at_one = cur.subs({n: 1 for n in present}) if present else cur
        out.append(Scalar(at_one.project_to_context(out_ctx)) / scale)
    return out


def _split_by(p, name: str) -> dict[int, object]:
    names = p.context().names()
    if name not in names:
        return {0: p}
    i = names.index(name)
    groups: dict[int, dict] = {}
    for exps, c in p.terms():
        e = list(exps)
        k = e[i]
        e[i] = 0
        groups.setdefault(k, {})[tuple(e)] = c
    return {k: p.context().from_dict(v) for k, v in groups.items()}


def _poly_hseries(p, order: int) -> HSeries:
    a1 = Scalar.gen("a1")
    # u1 = -(1 - e^{-h}) a1
    um = [ZERO] + [Scalar.const(Fraction((-1) ** n, math.factorial(n))) * a1 for n in range(1, order + 1)]
    u1s = HSeries(um, order)
    total = HSeries([], order)
    for k, part in sorted(_split_by(p, "u1").items()):
        if k > order:
            continue
        ser = HSeries(_exp_series_poly(part, order), order)
        for _ in range(k):
            ser = ser * u1s
        total = total + ser
    return total


def hseries_substitute(x: Scalar, order: int) -> HSeries:
    """Taylor expansion in hbar under q=e^h, t=e^{beta h}, Q=e^{beta N h}, r=e^{alpha h},
    u1=-(1-e^{-h}) a1. Other generators (beta, N, alpha, a1) pass through."""
    extra = 0
    while True:
        den = _poly_hseries(x.den, order + extra)
        v = den.valuation()
        if v is not None and v <= extra:
            break
        if extra > 4 * max(1, order) + 16:
            raise PoleAtSpecialization(f"denominator of {x} vanishes identically in hbar")
        extra = extra + 1 if v is None else v
    num = _poly_hseries(x.num, order + v)
    nv = num.valuation()
    if nv is not None and nv < v:
        raise PoleAtSpecialization(f"{x} has a pole of order {v - nv} in hbar")
    shifted_num = HSeries(num.coeffs[v:], order)
    shifted_den = HSeries(den.coeffs[v:], order)
    return shifted_num * shifted_den.inverse()
