"""Truncated ring of symmetric functions in the power-sum basis.

A SymFn maps partitions lam (the monomial p_lam) to Scalar coefficients and
drops everything above its truncation degree D.
"""

from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping, Sequence, Union

from .errors import TruncationMismatch
from .partitions import (
    Partition, enumerate_partitions, format_partition, parse_partition, z_lambda,
)
from .scalars import ONE, ZERO, Scalar, gens, parse, _coerce

s_, t_ = gens("s", "t")
q_ = s_ ** 2

EvalMap = Union[Callable[[int], Scalar], Sequence, Mapping[int, Scalar]]


def merge(a: Partition, b: Partition) -> Partition:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def as_evalmap(phi: EvalMap) -> Callable[[int], Scalar]:
    if callable(phi):
        return lambda k: _coerce(phi(k))
    if isinstance(phi, Mapping):
        return lambda k: _coerce(phi.get(k, 0))
    # sequences are indexed from k = 1
    return lambda k: _coerce(phi[k - 1]) if k - 1 < len(phi) else ZERO


class SymFn:
    __slots__ = ("D", "coeffs")

    def __init__(self, coeffs: Mapping[Partition, Scalar] | None, D: int):
        self.D = D
        out = {}
        for lam, c in (coeffs or {}).items():
            if sum(lam) <= D:
                c = _coerce(c)
                if not c.is_zero():
                    out[lam] = c
        self.coeffs = out

    @staticmethod
    def _raw(coeffs: dict, D: int) -> "SymFn":
        f = SymFn.__new__(SymFn)
        f.D = D
        f.coeffs = coeffs
        return f

    # -- constructors ---------------------------------------------------
    @staticmethod
    def one(D: int) -> "SymFn":
        return SymFn._raw({(): ONE}, D)

    @staticmethod
    def zero(D: int) -> "SymFn":
        return SymFn._raw({}, D)

    @staticmethod
    def p(lam: Partition | int, D: int, coeff=1) -> "SymFn":
        if isinstance(lam, int):
            lam = (lam,)
        return SymFn({tuple(sorted(lam, reverse=True)): _coerce(coeff)}, D)

    # -- access ---------------------------------------------------------
    def __getitem__(self, lam: Partition) -> Scalar:
        return self.coeffs.get(lam, ZERO)

    def items(self):
        return self.coeffs.items()

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_piece(self, n: int) -> "SymFn":
        return SymFn._raw({k: v for k, v in self.coeffs.items() if sum(k) == n}, self.D)

    def truncate(self, D: int) -> "SymFn":
        return SymFn._raw({k: v for k, v in self.coeffs.items() if sum(k) <= D}, D)

    def with_degree(self, D: int) -> "SymFn":
        """Same coefficients under a new truncation degree (dropping the excess)."""
        return self.truncate(D) if D < self.D else SymFn._raw(dict(self.coeffs), D)

    def top_degree(self) -> int:
        return max((sum(k) for k in self.coeffs), default=-1)

    def low_degree(self) -> int:
        return min((sum(k) for k in self.coeffs), default=-1)

    # -- ring operations ------------------------------------------------
    def _check(self, other: "SymFn"):
        if self.D != other.D:
            raise TruncationMismatch(f"truncation degrees differ: {self.D} vs {other.D}")

    def __add__(self, other):
        if not isinstance(other, SymFn):
            other = SymFn.one(self.D) * _coerce(other)
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w.is_zero():
                    del out[k]
                else:
                    out[k] = w
        return SymFn._raw(out, self.D)

    __radd__ = __add__

    def __neg__(self):
        return SymFn._raw({k: -v for k, v in self.coeffs.items()}, self.D)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SymFn):
            c = _coerce(other)
            if c.is_zero():
                return SymFn.zero(self.D)
            return SymFn._raw({k: v * c for k, v in self.coeffs.items()}, self.D)
        self._check(other)
        out: dict = {}
        D = self.D
        for ka, va in self.coeffs.items():
            na = sum(ka)
            for kb, vb in other.coeffs.items():
                if na + sum(kb) > D:
                    continue
                k = merge(ka, kb)
                prod = va * vb
                w = out.get(k)
                out[k] = prod if w is None else w + prod
        return SymFn._raw({k: v for k, v in out.items() if not v.is_zero()}, D)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (ONE / _coerce(other))

    def __eq__(self, other):
        if not isinstance(other, SymFn):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[k] == other[k] for k in keys)

    def map_coeffs(self, fn: Callable[[Scalar], Scalar]) -> "SymFn":
        return SymFn({k: fn(v) for k, v in self.coeffs.items()}, self.D)

    def __repr__(self):
        if not self.coeffs:
            return f"SymFn(0, D={self.D})"
        terms = [f"({v})*p[{format_partition(k)}]" for k, v in sorted(self.coeffs.items(), key=_order_key)]
        return "SymFn(" + " + ".join(terms) + f", D={self.D})"

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        names = set()
        for v in self.coeffs.values():
            names.update(v.used_generators())
        from .scalars import _RANK
        return {
            "D": self.D,
            "generators": sorted(names, key=_RANK.__getitem__),
            "coeffs": {format_partition(k): str(v) for k, v in sorted(self.coeffs.items(), key=_order_key)},
        }

    @staticmethod
    def from_json(data: Mapping | str) -> "SymFn":
        if isinstance(data, str):
            data = json.loads(data)
        return SymFn({parse_partition(k): parse(v) for k, v in data["coeffs"].items()}, int(data["D"]))


def _order_key(item):
    lam = item[0]
    return (sum(lam), [-p for p in lam])


def ring_ops(f: SymFn, g, op: str) -> SymFn:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f * _coerce(g)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# differential operators


def _remove_part(lam: Partition, k: int) -> Partition:
    i = lam.index(k)
    return lam[:i] + lam[i + 1:]


def p_derivative(f: SymFn, k: int) -> SymFn:
    """d/dp_k."""
    out: dict = {}
    for lam, c in f.coeffs.items():
        m = lam.count(k)
        if m:
            key = _remove_part(lam, k)
            w = out.get(key)
            out[key] = c * m if w is None else w + c * m
    return SymFn({k_: v for k_, v in out.items()}, f.D)


def perp_factor(k: int) -> Scalar:
    return k * (1 - q_ ** k) / (1 - t_ ** k)


def p_perp(f: SymFn, k: int) -> SymFn:
    """Adjoint of multiplication by p_k for the Macdonald product."""
    return p_derivative(f, k) * perp_factor(k)


# ---------------------------------------------------------------------------
# plethystic exponentials and classical bases


def pleth_exp(c: EvalMap, D: int) -> SymFn:
    """exp(sum_k c_k p_k / k) truncated at degree D.

    The coefficient of p_lam is prod_k (c_k/k)^{m_k} / m_k!; the graded
    recurrence n E_n = sum_k c_k p_k E_{n-k} gives the same series and is used
    as the cross-check in the tests.
    """
    c = as_evalmap(c)
    a = [None] + [c(k) / k for k in range(1, D + 1)]
    out = {}
    for n in range(D + 1):
        for lam in enumerate_partitions(n):
            val = ONE
            for part, mult in Counter(lam).items():
                if a[part].is_zero():
                    val = ZERO
                    break
                val = val * a[part] ** mult / factorial(mult)
            if not val.is_zero():
                out[lam] = val
    return SymFn._raw(out, D)


def pleth_exp_recurrence(c: EvalMap, D: int) -> SymFn:
    c = as_evalmap(c)
    pieces = [SymFn.one(D)]
    for n in range(1, D + 1):
        acc = SymFn.zero(D)
        for k in range(1, n + 1):
            ck = c(k)
            if not ck.is_zero():
                acc = acc + SymFn.p(k, D, ck) * pieces[n - k]
        pieces.append(acc / n)
    total = SymFn.zero(D)
    for piece in pieces:
        total = total + piece
    return total


def pleth_piece(c: EvalMap, n: int, D: int | None = None) -> SymFn:
    """Degree-n part of pleth_exp(c), e.g. h_n of a modified alphabet."""
    return pleth_exp(c, n).degree_piece(n).with_degree(D if D is not None else n)


@lru_cache(maxsize=None)
def h(d: int, D: int) -> SymFn:
    if d < 0:
        return SymFn.zero(D)
    return pleth_piece(lambda k: 1, d, D)


@lru_cache(maxsize=None)
def e(d: int, D: int) -> SymFn:
    if d < 0:
        return SymFn.zero(D)
    return pleth_piece(lambda k: (-1) ** (k - 1), d, D)


@lru_cache(maxsize=None)
def schur(lam: Partition, D: int) -> SymFn:
    """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j})."""
    n = len(lam)
    if n == 0:
        return SymFn.one(D)
    memo: dict = {}

    def minor(i: int, used: frozenset) -> SymFn:
        # expansion along row i over unused columns
        if i == n:
            return SymFn.one(D)
        key = (i, used)
        if key in memo:
            return memo[key]
        acc = SymFn.zero(D)
        free = [j for j in range(n) if j not in used]
        for pos, j in enumerate(free):
            idx = lam[i] - i + j
            if idx < 0:
                continue
            sign = -1 if pos % 2 else 1
            sub = minor(i + 1, used | {j})
            if sub.is_zero():
                continue
            acc = acc + h(idx, D) * sub * sign
        memo[key] = acc
        return acc

    return minor(0, frozenset())


def classical_bases(lam: Partition, which: str, D: int) -> SymFn:
    if which == "h":
        out = SymFn.one(D)
        for part in lam:
            out = out * h(part, D)
        return out
    if which == "e":
        out = SymFn.one(D)
        for part in lam:
            out = out * e(part, D)
        return out
    if which == "schur":
        return schur(lam, D)
    raise ValueError(f"unknown basis {which!r}")


# ---------------------------------------------------------------------------
# inner products and evaluation


@lru_cache(maxsize=None)
def gram(lam: Partition, which: str = "macdonald") -> Scalar:
    """<p_lam, p_lam> for the Hall or Macdonald product."""
    val = Scalar.const(z_lambda(lam))
    if which == "macdonald":
        for k in lam:
            val = val * (1 - q_ ** k) / (1 - t_ ** k)
    elif which != "hall":
        raise ValueError(f"unknown inner product {which!r}")
    return val


def inner_product(f: SymFn, g: SymFn, which: str = "macdonald") -> Scalar:
    if len(g.coeffs) < len(f.coeffs):
        f, g = g, f
    acc = ZERO
    for lam, c in f.coeffs.items():
        d = g.coeffs.get(lam)
        if d is not None:
            acc = acc + c * d * gram(lam, which)
    return acc


def evaluate(f: SymFn, phi: EvalMap) -> Scalar:
    """Apply the ring homomorphism p_k -> phi_k."""
    phi = as_evalmap(phi)
    cache: dict = {}

    def power(k, m):
        key = (k, m)
        if key not in cache:
            cache[key] = phi(k) ** m
        return cache[key]

    acc = ZERO
    for lam, c in f.coeffs.items():
        val = c
        for part, mult in Counter(lam).items():
            val = val * power(part, mult)
            if val.is_zero():
                break
        acc = acc + val
    return acc


def evaluate_numeric(f: SymFn, values: Mapping[str, complex], pk: Sequence[complex]):
    """Numeric evaluation with p_k -> pk[k-1] and generators set to floats."""
    total = 0
    for lam, c in f.coeffs.items():
        term = c.evalf(values)
        for part in lam:
            term = term * pk[part - 1]
        total += term
    return total


def second_alphabet(k: int) -> Scalar:
    """Power sum p_k(y) of the second alphabet, stored as the generator y_k."""
    return Scalar.gen(f"y{k}")


def in_second_alphabet(f: SymFn) -> Scalar:
    """f(y) as a Scalar in the generators y_1..y_D."""
    return evaluate(f, second_alphabet)
