"""Fock representation of quantum toroidal gl(1) on truncated symmetric functions.

A LinOp stores the image of every power-sum monomial p_lam with |lam| <= D,
truncated at degree D. Two pieces of bookkeeping keep truncation honest:

* the shift window (dmin, dmax) bounds how far the operator moves degree;
* ``valid`` is the largest input degree whose stored image is exact in every
  output degree <= D. Composition lowers it whenever a truncated intermediate
  could have fed back into low degrees.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Mapping

from .errors import ModeOutOfSupport, SingularEigenvalue, WindowOverflow
from .partitions import Partition, enumerate_partitions, partitions_upto
from .scalars import ONE, Scalar, gens, _coerce
from .symfunc import SymFn, gram, pleth_exp

s_, t_ = gens("s", "t")
q_ = s_ ** 2


class LinOp:
    __slots__ = ("D", "dmin", "dmax", "valid", "cols")

    def __init__(self, cols: Mapping[Partition, SymFn], D: int, dmin: int, dmax: int, valid: int | None = None):
        self.D = D
        self.dmin = dmin
        self.dmax = dmax
        self.valid = D if valid is None else min(valid, D)
        self.cols = {lam: f for lam, f in cols.items() if not f.is_zero()}

    # -- construction ---------------------------------------------------
    @staticmethod
    def from_function(fn: Callable[[Partition], SymFn], D: int, dmin: int, dmax: int, valid: int | None = None) -> "LinOp":
        cols = {}
        for lam in partitions_upto(D):
            if sum(lam) + dmin > D:
                continue
            cols[lam] = fn(lam)
        return LinOp(cols, D, dmin, dmax, valid)

    @staticmethod
    def identity(D: int) -> "LinOp":
        return LinOp({lam: SymFn.p(lam, D) for lam in partitions_upto(D)}, D, 0, 0)

    @staticmethod
    def zero(D: int) -> "LinOp":
        return LinOp({}, D, 0, 0)

    @staticmethod
    def multiplication(f: SymFn) -> "LinOp":
        D = f.D
        lo, hi = max(f.low_degree(), 0), max(f.top_degree(), 0)
        return LinOp.from_function(lambda lam: SymFn.p(lam, D) * f, D, lo, hi)

    @staticmethod
    def derivative(k: int, D: int) -> "LinOp":
        """d/dp_k."""
        def col(lam):
            m = lam.count(k)
            if not m:
                return SymFn.zero(D)
            i = lam.index(k)
            return SymFn.p(lam[:i] + lam[i + 1:], D, m)
        return LinOp.from_function(col, D, -k, -k)

    # -- application ----------------------------------------------------
    def column(self, lam: Partition) -> SymFn:
        f = self.cols.get(lam)
        return f if f is not None else SymFn.zero(self.D)

    def apply(self, f: SymFn) -> SymFn:
        acc: dict = {}
        for lam, c in f.coeffs.items():
            col = self.cols.get(lam)
            if col is None:
                continue
            for mu, v in col.coeffs.items():
                w = acc.get(mu)
                acc[mu] = v * c if w is None else w + v * c
        return SymFn(acc, self.D)

    __call__ = apply

    def safe_output_degree(self, series: bool = True) -> int:
        """Largest output degree that is exact when applied to a D-truncated series."""
        if series:
            return min(self.D, self.valid + self.dmin)
        return self.D

    # -- algebra --------------------------------------------------------
    def _check(self, other: "LinOp"):
        if self.D != other.D:
            raise ValueError(f"operators on different truncations: {self.D} vs {other.D}")

    def __add__(self, other: "LinOp") -> "LinOp":
        self._check(other)
        cols = dict(self.cols)
        for lam, f in other.cols.items():
            cols[lam] = cols[lam] + f if lam in cols else f
        if not self.cols:
            lo, hi = other.dmin, other.dmax
        elif not other.cols:
            lo, hi = self.dmin, self.dmax
        else:
            lo, hi = min(self.dmin, other.dmin), max(self.dmax, other.dmax)
        return LinOp(cols, self.D, lo, hi, min(self.valid, other.valid))

    def __neg__(self):
        return self * (-1)

    def __sub__(self, other: "LinOp") -> "LinOp":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LinOp):
            return compose(self, other)
        c = _coerce(other)
        if c.is_zero():
            return LinOp({}, self.D, self.dmin, self.dmax, self.valid)
        return LinOp({lam: f * c for lam, f in self.cols.items()}, self.D, self.dmin, self.dmax, self.valid)

    def __rmul__(self, other):
        return self * other

    def __matmul__(self, other: "LinOp") -> "LinOp":
        return compose(self, other)

    def __truediv__(self, other):
        return self * (ONE / _coerce(other))

    def map_entries(self, fn: Callable[[Scalar], Scalar]) -> "LinOp":
        return LinOp({lam: f.map_coeffs(fn) for lam, f in self.cols.items()}, self.D, self.dmin, self.dmax, self.valid)

    def restrict(self, max_in: int) -> "LinOp":
        return LinOp({lam: f for lam, f in self.cols.items() if sum(lam) <= max_in}, self.D, self.dmin, self.dmax, self.valid)

    def entries(self):
        for lam, f in self.cols.items():
            for mu, v in f.coeffs.items():
                yield lam, mu, v

    def term_count(self) -> int:
        return sum(len(f.coeffs) for f in self.cols.values())

    def __repr__(self):
        return f"LinOp(D={self.D}, window=({self.dmin},{self.dmax}), valid={self.valid}, nnz={self.term_count()})"


def compose(A: LinOp, B: LinOp) -> LinOp:
    """A after B, projected to degree <= D only after composing."""
    A._check(B)
    D = A.D
    lo, hi = A.dmin + B.dmin, A.dmax + B.dmax
    if lo < -D or hi > D:
        lo, hi = max(lo, -D), min(hi, D)
        if A.dmin + B.dmin < -2 * D or A.dmax + B.dmax > 2 * D:
            raise WindowOverflow(f"composed window ({A.dmin + B.dmin}, {A.dmax + B.dmax}) exceeds D={D}")
    valid = B.valid
    if A.dmin < 0:
        # intermediates above D are lost and A could bring them back down
        valid = min(valid, D - max(B.dmax, 0))
    if A.valid < D:
        valid = min(valid, A.valid - B.dmax)
    cols = {lam: A.apply(f) for lam, f in B.cols.items()}
    return LinOp(cols, D, lo, hi, valid)


def commutator(A: LinOp, B: LinOp) -> LinOp:
    return compose(A, B) - compose(B, A)


def adjoint_qt(A: LinOp) -> LinOp:
    """Adjoint for the Macdonald product: G^{-1} A^T G with G the diagonal Gram matrix."""
    D = A.D
    acc: dict = {}
    for lam, mu, v in A.entries():
        # A p_lam has coefficient v on p_mu, so the adjoint sends p_mu to v * G_mu/G_lam p_lam
        acc.setdefault(mu, {})[lam] = v * gram(mu) / gram(lam)
    cols = {mu: SymFn(d, D) for mu, d in acc.items()}
    return LinOp(cols, D, -A.dmax, -A.dmin, A.valid + A.dmin)


def op_algebra(A: LinOp, B: LinOp | None, op: str) -> LinOp:
    if op == "compose":
        return compose(A, B)
    if op == "add":
        return A + B
    if op == "commutator":
        return commutator(A, B)
    if op == "adjoint_qt":
        return adjoint_qt(A)
    raise ValueError(f"unknown op {op!r}")


def op_difference(A: LinOp, B: LinOp, max_in: int, max_out: int | None = None):
    """First (input, output, difference) where A and B disagree, or None.

    Compares images of p_lam for |lam| <= max_in in output degrees <= max_out.
    """
    A._check(B)
    max_out = A.D if max_out is None else max_out
    for lam in partitions_upto(min(max_in, A.D)):
        fa, fb = A.column(lam), B.column(lam)
        for mu in set(fa.coeffs) | set(fb.coeffs):
            if sum(mu) > max_out:
                continue
            d = fa[mu] - fb[mu]
            if not d.is_zero():
                return lam, mu, d
    return None


def ops_equal(A: LinOp, B: LinOp, max_in: int, max_out: int | None = None) -> bool:
    return op_difference(A, B, max_in, max_out) is None


def proportionality(A: LinOp, B: LinOp, max_in: int, max_out: int | None = None) -> Scalar | None:
    """The Scalar c with A = c*B on the given range, or None if there is none."""
    max_out = A.D if max_out is None else max_out
    ratio = None
    for lam in partitions_upto(min(max_in, A.D)):
        fa, fb = A.column(lam), B.column(lam)
        for mu in set(fa.coeffs) | set(fb.coeffs):
            if sum(mu) > max_out:
                continue
            a, b = fa[mu], fb[mu]
            if ratio is None:
                if b.is_zero():
                    return None
                ratio = a / b
            elif not (a - ratio * b).is_zero():
                return None
    return ratio


# ---------------------------------------------------------------------------
# vertex operators


def translate_pieces(lam: Partition, shift: Callable[[int], Scalar], D: int) -> dict[int, SymFn]:
    """exp(sum_k shift_k z^{-k} d/dp_k) p_lam, split by the power of z^{-1}.

    The exponential translates p_k -> p_k + shift_k z^{-k}, so the z^{-i} piece is
    a sum over sub-multisets of lam of total size i.
    """
    counts = sorted(Counter(lam).items(), reverse=True)
    out: dict[int, dict] = {}
    choices = [range(m + 1) for _, m in counts]
    for pick in product(*choices):
        coeff = ONE
        removed = 0
        rest: list[int] = []
        for (part, mult), j in zip(counts, pick):
            if j:
                coeff = coeff * comb(mult, j) * shift(part) ** j
                removed += part * j
            rest.extend([part] * (mult - j))
        if coeff.is_zero():
            continue
        key = tuple(rest)
        bucket = out.setdefault(removed, {})
        bucket[key] = bucket[key] + coeff if key in bucket else coeff
    return {i: SymFn(d, D) for i, d in out.items()}


class VertexCurrent:
    """exp(sum_k up_k z^k p_k / k) exp(sum_k down_k z^{-k} d/dp_k)."""

    def __init__(self, up: Callable[[int], Scalar] | None, down: Callable[[int], Scalar] | None, D: int):
        self.D = D
        self.up = up
        self.down = down
        self._create = pleth_exp(up, D) if up is not None else SymFn.one(D)
        self._pieces = {n: self._create.degree_piece(n) for n in range(D + 1)}

    def mode(self, n: int) -> LinOp:
        """Coefficient of z^n: shifts degree by exactly n."""
        D = self.D

        def col(lam):
            m = sum(lam)
            if m + n > D or m + n < 0:
                return SymFn.zero(D)
            if self.down is None:
                low = {0: SymFn.p(lam, D)}
            else:
                low = translate_pieces(lam, self.down, D)
            acc = SymFn.zero(D)
            for i, piece in low.items():
                j = n + i
                if j < 0 or j > D:
                    continue
                acc = acc + self._pieces[j] * piece
            return acc

        return LinOp.from_function(col, D, n, n)


@lru_cache(maxsize=None)
def x_current(sign: int, D: int) -> VertexCurrent:
    sg = 1 if sign in (1, "+") else -1
    return VertexCurrent(lambda k: 1 - t_ ** (-sg * k), lambda k: -(1 - q_ ** (sg * k)), D)


def _sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"bad sign {sign!r}")


@lru_cache(maxsize=None)
def x_mode(sign, n: int, D: int) -> LinOp:
    """x^{+-}_{-n}: the z^n coefficient of x^{+-}(z) = sum_k z^k x^{+-}_{-k} (raises degree by n)."""
    if abs(n) > D:
        raise ValueError(f"mode {n} outside |n| <= D={D}")
    return x_current(_sign(sign), D).mode(n)


def x_index(sign, k: int, D: int) -> LinOp:
    """x^{+-}_k with the standard mode index (shifts degree by -k)."""
    return x_mode(sign, -k, D)


@lru_cache(maxsize=None)
def _psi_current(sign: int, D: int) -> VertexCurrent:
    if sign > 0:
        return VertexCurrent(None, lambda k: -(1 - q_ ** k) * (1 - t_ ** k * q_ ** (-k)), D)
    return VertexCurrent(lambda k: (1 - t_ ** (-k)) * (1 - t_ ** k * q_ ** (-k)), None, D)


@lru_cache(maxsize=None)
def psi_mode(sign, n: int, D: int) -> LinOp:
    """Degree-n piece of psi^{+-}(z); psi^+ lowers (n <= 0), psi^- raises (n >= 0)."""
    sg = _sign(sign)
    if (sg > 0 and n > 0) or (sg < 0 and n < 0):
        raise ModeOutOfSupport(f"psi{'+' if sg > 0 else '-'} has no degree-{n} mode")
    return _psi_current(sg, D).mode(n)


def p_op(k: int, D: int, coeff=1) -> LinOp:
    """Multiplication by coeff * p_k."""
    return LinOp.multiplication(SymFn.p(k, D, coeff))


def p_perp_op(k: int, D: int) -> LinOp:
    return LinOp.derivative(k, D) * (k * (1 - q_ ** k) / (1 - t_ ** k))


@lru_cache(maxsize=None)
def degree_op(D: int) -> LinOp:
    return LinOp({lam: SymFn.p(lam, D, sum(lam)) for lam in partitions_upto(D)}, D, 0, 0)


def power_of_degree(c: Scalar, D: int) -> LinOp:
    """c^{D-hat}: multiplies the degree-n piece by c^n."""
    c = _coerce(c)
    return LinOp({lam: SymFn.p(lam, D, c ** sum(lam)) for lam in partitions_upto(D)}, D, 0, 0)


def exp_series(A: LinOp, coeff=1) -> LinOp:
    """exp(coeff*A) for a strictly raising operator (nilpotent on the truncation)."""
    if A.dmin <= 0 and A.cols:
        raise ValueError("exp_series needs a strictly raising operator")
    D = A.D
    total = LinOp.identity(D)
    term = LinOp.identity(D)
    c = _coerce(coeff)
    for k in range(1, D + 1):
        term = compose(A, term) * (c / k)
        if not term.cols:
            break
        total = total + term
    return total


# ---------------------------------------------------------------------------
# operators diagonal in the Macdonald basis


def diag_op(eigen: Callable[[Partition], Scalar], basis) -> LinOp:
    """Operator with P_lam -> eigen(lam) P_lam, written in the p-basis."""
    D = basis.D
    cols = {}
    for n in range(D + 1):
        lams = enumerate_partitions(n)
        eig = {lam: _coerce(eigen(lam)) for lam in lams}
        for mu in lams:
            # p_mu = sum_lam c_{lam mu} P_lam
            acc = SymFn.zero(D)
            for lam in lams:
                c = basis.p_to_P(mu, lam)
                if not c.is_zero():
                    acc = acc + basis.P[lam] * (c * eig[lam])
            cols[mu] = acc
    return LinOp(cols, D, 0, 0)


def diag_eigen_op(eigen: Callable[[Partition], Scalar], D: int) -> LinOp:
    from .macdonald import build_macdonald
    return diag_op(eigen, build_macdonald(D))


@lru_cache(maxsize=None)
def framing_T(power: int, D: int) -> LinOp:
    """T^power with T P_lam = T_lam P_lam."""
    from .partitions import framing_eigenvalue
    return diag_eigen_op(lambda lam: framing_eigenvalue(lam) ** power, D)


def delta_op(sign, z, D: int, inverse: bool = False) -> LinOp:
    """Delta^{+-}(z) (or its inverse), P_lam -> prod_box (1 - z chi^{+-1}) P_lam."""
    from .partitions import delta_eigenvalue
    sg = _sign(sign)
    z = Scalar.gen(z) if isinstance(z, str) else _coerce(z)

    def eig(lam):
        v = delta_eigenvalue(lam, sg, z)
        if inverse:
            if v.is_zero():
                raise SingularEigenvalue(f"Delta eigenvalue vanishes at {lam}")
            return 1 / v
        return v

    return diag_eigen_op(eig, D)


# ---------------------------------------------------------------------------
# the Macdonald frame: columns and rows labelled by P_lam instead of p_lam


def to_P_frame(A: LinOp, basis) -> LinOp:
    """Matrix of A in the basis P_lam (column mu holds the P-coefficients of A P_mu).

    Operators diagonal in P_lam become plain diagonal matrices here, which keeps
    conjugations by delta and framing operators cheap.
    """
    D = A.D
    cols = {}
    for mu in partitions_upto(D):
        if sum(mu) + A.dmin > D:
            continue
        img = A.apply(basis.P[mu])
        cols[mu] = SymFn(basis.to_P_basis(img), D)
    return LinOp(cols, D, A.dmin, A.dmax, A.valid)


def from_P_frame(A: LinOp, basis) -> LinOp:
    """Inverse of to_P_frame: back to the power-sum basis."""
    D = A.D
    cols = {}
    for mu in partitions_upto(D):
        acc = SymFn.zero(D)
        for lam in enumerate_partitions(sum(mu)):
            c = basis.p_to_P(mu, lam)
            if c.is_zero():
                continue
            img = A.column(lam)
            if not img.is_zero():
                acc = acc + basis.from_P_basis(img.coeffs) * c
        cols[mu] = acc
    return LinOp(cols, D, A.dmin, A.dmax, A.valid)


def diag_P(eigen: Callable[[Partition], Scalar], D: int) -> LinOp:
    """Diagonal operator written in the Macdonald frame."""
    cols = {}
    for lam in partitions_upto(D):
        v = _coerce(eigen(lam))
        if not v.is_zero():
            cols[lam] = SymFn._raw({lam: v}, D)
    return LinOp(cols, D, 0, 0)


def operator_identity_suite(D_check: int = 4, D: int | None = None) -> list[dict]:
    """Report on the Fock-space operator identities (see macdim.identities)."""
    from .identities import operator_identity_suite as run
    return run(D_check, D)
