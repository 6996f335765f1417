"""Semiclassical layer: hbar expansion of q,t-operators and the classical models.

The limit is q = e^h, t = e^{beta h} with Q = t^N, r = q^alpha and
u1 = -(1 - q^{-1}) a1. Operators are expanded entrywise in the power-sum basis.
Classical operators are LinOps whose entries involve only N, alpha, beta, a1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Callable

from .fockops import LinOp, commutator, compose, degree_op, exp_series, p_op, x_mode
from .models import recursion_operator
from .partitions import (
    Partition, boxes, enumerate_partitions, format_partition, partitions_upto,
)
from .scalars import ONE, ZERO, Scalar, _coerce, gens, hseries_substitute, specialize
from .symfunc import SymFn, evaluate, inner_product, p_derivative, schur

N, alpha, beta, a1 = gens("N", "alpha", "beta", "a1")

ClassicalOp = LinOp


# ---------------------------------------------------------------------------
# hbar expansion


def hbar_expand_op(A: LinOp, order: int, max_in: int | None = None) -> list[LinOp]:
    """Coefficient operators of hbar^0 .. hbar^order, expanding every matrix entry."""
    max_in = A.D if max_in is None else max_in
    cols: list[dict] = [dict() for _ in range(order + 1)]
    for lam in partitions_upto(max_in):
        per: list[dict] = [dict() for _ in range(order + 1)]
        for mu, c in A.column(lam).coeffs.items():
            ser = hseries_substitute(c, order)
            for n in range(order + 1):
                if not ser[n].is_zero():
                    per[n][mu] = ser[n]
        for n in range(order + 1):
            cols[n][lam] = SymFn(per[n], A.D)
    return [LinOp(c, A.D, A.dmin, A.dmax, min(A.valid, max_in)) for c in cols]


# ---------------------------------------------------------------------------
# classical differential operators


def cut_join_op(D: int, shift: int, join, split, linear: Callable[[int], Scalar] | None = None,
                constant: SymFn | None = None) -> LinOp:
    """sum_{a,b} join*a*b p_{a+b+shift} d_a d_b + split*(a+b-shift) p_a p_b d_{a+b-shift}
    + sum_k linear(k) k p_{k+shift} d_k + constant."""
    join, split = _coerce(join), _coerce(split)

    def col(lam: Partition) -> SymFn:
        f = SymFn.p(lam, D)
        acc = SymFn.zero(D)
        parts = sorted(set(lam))
        for a in parts:
            for b in parts:
                if a + b + shift > D:
                    continue
                dd = p_derivative(p_derivative(f, a), b)
                if not dd.is_zero():
                    acc = acc + dd * SymFn.p(a + b + shift, D, join * a * b)
        for n in range(1, sum(lam) + 1):
            if n not in lam:
                continue
            dn = p_derivative(f, n)
            m = n + shift  # a + b = n + shift
            for a_ in range(1, m):
                b_ = m - a_
                acc = acc + dn * SymFn.p((max(a_, b_), min(a_, b_)), D, split * n)
        if linear is not None:
            for k in parts:
                if k + shift < 1:
                    continue
                acc = acc + p_derivative(f, k) * SymFn.p(k + shift, D, linear(k) * k)
        if constant is not None:
            acc = acc + f * constant
        return acc

    return LinOp.from_function(col, D, shift, shift)


def classical_w_ops(which: str, D: int) -> LinOp:
    """The printed cut-and-join operators: W-2_GUE, W-1_WL, Wbeta-1, Wbeta0."""
    if which == "W-2_GUE":
        const = SymFn.p(2, D, N ** 2) + SymFn.p((1, 1), D, N)
        return cut_join_op(D, 2, 1, 1, lambda k: 2 * N, const)
    if which == "W-1_WL":
        return cut_join_op(D, 1, 1, 1, lambda k: 2 * N + alpha, SymFn.p(1, D, N * (N + alpha)))
    if which == "Wbeta-1":
        return cut_join_op(D, 1, 1, beta, lambda k: alpha + (1 - beta) * (k + 1) + 2 * beta * N,
                           SymFn.p(1, D, beta * N * (alpha + beta * (N - 1) + 1)))
    if which == "Wbeta0":
        return cut_join_op(D, 0, 1, beta, lambda k: (1 - beta) * k)
    raise ValueError(f"unknown operator {which!r}")


def gue_virasoro(m: int, D: int) -> LinOp:
    """L_m of the Gaussian model, m >= -1."""
    if m < -1:
        raise ValueError("the Gaussian constraints start at m = -1")

    def col(lam: Partition) -> SymFn:
        f = SymFn.p(lam, D)
        acc = p_derivative(f, m + 2) * (-(m + 2))
        for a_ in range(1, m):
            acc = acc + p_derivative(p_derivative(f, m - a_), a_) * (a_ * (m - a_))
        for k in set(lam):
            if k - m >= 1:
                # (k' + m) p_{k'} d_{k'+m} with k' + m = k
                acc = acc + p_derivative(f, k) * SymFn.p(k - m, D, k)
        if m >= 1:
            acc = acc + p_derivative(f, m) * (2 * N * m)
        if m == 0:
            acc = acc + f * N ** 2
        if m == -1:
            acc = acc + f * SymFn.p(1, D, N)
        return acc

    return LinOp.from_function(col, D, -(m + 2), max(-m, 0))


# ---------------------------------------------------------------------------
# Schur-diagonal operators and the classical superintegrable models


def gue_C(lam: Partition) -> Scalar:
    return prod((N + (j - i) for i, j in boxes(lam)), start=ONE)


def wl_C(lam: Partition) -> Scalar:
    return prod(((N + (j - i)) * (N + alpha + (j - i)) for i, j in boxes(lam)), start=ONE)


def schur_diag_op(eigen: Callable[[Partition], Scalar], D: int) -> LinOp:
    """s_lam -> eigen(lam) s_lam, written in the p-basis."""
    cols = {}
    for n in range(D + 1):
        lams = enumerate_partitions(n)
        for mu in lams:
            pmu = SymFn.p(mu, D)
            acc = SymFn.zero(D)
            for lam in lams:
                c = inner_product(pmu, schur(lam, D), "hall")
                if c:
                    acc = acc + schur(lam, D) * (c * eigen(lam))
            cols[mu] = acc
    return LinOp(cols, D, 0, 0)


def _delta_k(j: int) -> Callable[[int], Scalar]:
    return lambda k: ONE if k == j else ZERO


def classical_si_check(model: str, D: int = 6) -> dict:
    """W = C p C^{-1}, exp(W) . 1 = sum C_lam s_lam(phi) s_lam, and (for GUE) Virasoro."""
    if model == "GUE":
        C, k, w, scale = gue_C, 2, "W-2_GUE", Fraction(1, 2)
    elif model == "WL":
        C, k, w, scale = wl_C, 1, "W-1_WL", Fraction(1)
    else:
        raise ValueError(f"unknown classical model {model!r}")
    W = classical_w_ops(w, D)
    Cop, Cinv = schur_diag_op(C, D), schur_diag_op(lambda lam: 1 / C(lam), D)
    conj = compose(Cop, compose(p_op(k, D), Cinv))
    conj_ok = all(conj.column(lam) == W.column(lam) for lam in partitions_upto(D))
    series = exp_series(W, scale).apply(SymFn.one(D))
    phi = _delta_k(k)
    target = SymFn.zero(D)
    for lam in partitions_upto(D):
        target = target + schur(lam, D) * (C(lam) * evaluate(schur(lam, D), phi))
    out = {"model": model, "conjugation": conj_ok, "series": series == target}
    if model == "GUE":
        out["even"] = all(sum(mu) % 2 == 0 for mu in series.coeffs)
        vir = {}
        for m in range(-1, 4):
            res = gue_virasoro(m, D).apply(series)
            vir[m] = res.truncate(D - (m + 2)).is_zero()
        out["virasoro"] = vir
    # the conjugates of p_1 and p_k commute
    W1 = compose(Cop, compose(p_op(1, D), Cinv))
    out["commuting"] = all(c.is_zero() for c in commutator(W1, conj).cols.values())
    return out


# ---------------------------------------------------------------------------
# the recursion operator of one fundamental in the limit


def classical_limit_check(D: int = 5, max_in: int = 4) -> dict:
    """hbar^0 and hbar^1 of A vanish and hbar^2 equals -beta (deg - W^beta_{-1}/a1)."""
    A = recursion_operator("SI3", "explicit", D)
    terms = hbar_expand_op(A, 2, max_in)
    target = (degree_op(D) - classical_w_ops("Wbeta-1", D) / a1) * (-beta)
    ok0 = all(terms[0].column(lam).is_zero() for lam in partitions_upto(max_in))
    ok1 = all(terms[1].column(lam).is_zero() for lam in partitions_upto(max_in))
    ok2 = all(terms[2].column(lam) == target.column(lam) for lam in partitions_upto(max_in))
    return {"degree_range": [0, max_in], "h0_vanishes": ok0, "h1_vanishes": ok1, "h2_matches": ok2}


def zero_mode_limit_check(D: int = 4) -> dict:
    """1 - x^-_0 = -h^2 beta deg + h^3 (beta/2) W^beta_0 + O(h^4)."""
    X = LinOp.identity(D) - x_mode("-", 0, D)
    terms = hbar_expand_op(X, 3)
    lams = partitions_upto(D)
    W0 = classical_w_ops("Wbeta0", D)
    return {
        "h0_h1_vanish": all(terms[n].column(lam).is_zero() for n in (0, 1) for lam in lams),
        "h2": all(terms[2].column(lam) == (degree_op(D) * (-beta)).column(lam) for lam in lams),
        "h3": all(terms[3].column(lam) == (W0 * (beta / 2)).column(lam) for lam in lams),
    }


def commutator_route_check(D: int = 4) -> dict:
    """x^{+-}_{-1} = [(1 - x^{+-}_0)/(1 - q^{+-1}), p_1], exactly and to order hbar^2."""
    s, t = gens("s", "t")
    q = s ** 2
    out = {}
    p1 = p_op(1, D)
    W0 = classical_w_ops("Wbeta0", D)
    lams = partitions_upto(D - 1)
    for sign, sg in (("+", 1), ("-", -1)):
        X0 = LinOp.identity(D) - x_mode(sign, 0, D)
        lhs = x_mode(sign, 1, D)
        rhs = commutator(X0 / (1 - q ** sg), p1)
        exact = all(lhs.column(lam) == rhs.column(lam) for lam in lams)
        terms = hbar_expand_op(lhs, 2, D - 1)
        first = p1 * (sg * beta)
        second = (p1 - commutator(W0, p1)) * (-beta / 2)
        series = (all(terms[0].column(lam).is_zero() for lam in lams)
                  and all(terms[1].column(lam) == first.column(lam) for lam in lams)
                  and all(terms[2].column(lam) == second.column(lam) for lam in lams))
        out[sign] = {"exact": exact, "series": series}
    return out


# ---------------------------------------------------------------------------
# Gaussian eigenvalue oracle


Poly = dict  # exponent tuple -> Fraction


def _pmul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _power_sum(k: int, n: int) -> Poly:
    return {tuple(k if i == j else 0 for i in range(n)): Fraction(1) for j in range(n)}


@lru_cache(maxsize=None)
def _vandermonde_sq(n: int) -> tuple:
    v: Poly = {(0,) * n: Fraction(1)}
    for i in range(n):
        for j in range(i + 1, n):
            diff = {tuple(1 if m == i else 0 for m in range(n)): Fraction(1),
                    tuple(1 if m == j else 0 for m in range(n)): Fraction(-1)}
            v = _pmul(v, _pmul(diff, diff))
    return tuple(v.items())


def _gauss_moment(k: int) -> int:
    """int x^k e^{-x^2/2} / sqrt(2 pi) = (k-1)!! for even k, 0 otherwise."""
    if k % 2:
        return 0
    return prod(range(k - 1, 0, -2), start=1)


def _integrate(f: Poly) -> Fraction:
    return sum((c * prod(_gauss_moment(k) for k in e) for e, c in f.items()), start=Fraction(0))


def wick_power_sum_average(lam: Partition, n: int) -> Fraction:
    """<p_lam> in the n x n Gaussian ensemble, by expanding into one-variable moments."""
    f: Poly = {(0,) * n: Fraction(1)}
    for k in lam:
        f = _pmul(f, _power_sum(k, n))
    v = dict(_vandermonde_sq(n))
    return _integrate(_pmul(f, v)) / _integrate(v)


def wick_schur_average(lam: Partition, n: int) -> Fraction:
    """<s_lam> from s_lam = sum_mu chi/z_mu p_mu."""
    s_lam = schur(lam, sum(lam))
    acc = Fraction(0)
    for mu, c in s_lam.coeffs.items():
        acc += c.to_fraction() * wick_power_sum_average(mu, n)
    return acc


def wick_check(max_size: int = 4, sizes=(2, 3)) -> list[dict]:
    out = []
    for n in sizes:
        for lam in partitions_upto(max_size):
            oracle = wick_schur_average(lam, n)
            formula = (gue_C(lam) * evaluate(schur(lam, sum(lam)), _delta_k(2)))
            value = specialize(formula, {"N": n}).to_fraction()
            out.append({"N": n, "lam": format_partition(lam), "oracle": str(oracle),
                        "formula": str(value), "ok": oracle == value})
    return out
