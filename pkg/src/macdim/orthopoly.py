"""Dual families W_lam, Z_lam of a superintegrable model and related identities.

W_lam = (G^perp)^{-1} P_lam is a polynomial with top component P_lam and
Z_lam = G P_lam a series starting at P_lam. Everything is computed in the
Macdonald frame, where the diagonal factors of G are trivial; the expansion
formulas through skew Macdonald functions give an independent second route.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .fockops import (
    LinOp, compose, diag_P, p_op, p_perp_op, proportionality, to_P_frame, translate_pieces,
    x_mode, x_index,
)
from .macdonald import build_macdonald, skew
from .models import (
    ModelSpec, _as_model, average, gauge_operator, recursion_operator,
)
from .partitions import (
    Partition, b_norm, contains, format_partition, framing_eigenvalue, partitions_upto,
    symbols,
)
from .scalars import ONE, ZERO, Scalar, _coerce, dual, gens, specialize
from .symfunc import SymFn, evaluate, in_second_alphabet, inner_product, pleth_exp, pleth_piece

s, t, Q, a = gens("s", "t", "Q", "a")
q = s ** 2
tq = t / q


# ---------------------------------------------------------------------------
# specialised models


def specialize_model(model, bindings: dict, new_id: str | None = None) -> ModelSpec:
    """The model with some parameters fixed (C factors, M^{+-} and phi all substituted)."""
    m = _as_model(model)
    sub = lambda x: specialize(_coerce(x), bindings)
    factors = tuple(dataclasses.replace(f, z=sub(f.z)) if f.z is not None else f for f in m.c_factors)
    label = ",".join(f"{k}={v}" for k, v in sorted(bindings.items()))
    extras = {k: sub(v) if isinstance(v, Scalar) else v for k, v in m.extras.items()}
    return dataclasses.replace(
        m, id=new_id or f"{m.id}[{label}]", Mminus=tuple(sub(x) for x in m.Mminus),
        Mplus=tuple(sub(x) for x in m.Mplus), c_factors=factors,
        phi=lambda k, _phi=m.phi: sub(_phi(k)), extras=extras,
        generators=tuple(g for g in m.generators if g not in bindings),
    )


# r at which the rCS gauge matches the interpolation construction exactly
RCS_R = t / (s * q * Q)


@lru_cache(maxsize=None)
def rcs_model() -> ModelSpec:
    return specialize_model("SI1", {"r": RCS_R}, "SI1[r=t/(s^3 Q)]")


ASC_BINDINGS = {"u1": ONE, "u2": 1 / a}


@lru_cache(maxsize=None)
def asc_model() -> ModelSpec:
    """Two fundamentals at u1 = 1, u2 = 1/a."""
    return specialize_model("SI5", ASC_BINDINGS, "SI5[u1=1,u2=1/a]")


# ---------------------------------------------------------------------------
# the dual pair


def adjoint_P(A: LinOp) -> LinOp:
    """Adjoint for the Macdonald product of an operator written in the Macdonald frame."""
    acc: dict = {}
    for lam, mu, v in A.entries():
        # A P_lam has coefficient v on P_mu, so the adjoint sends P_mu to (b_lam/b_mu) v P_lam
        acc.setdefault(mu, {})[lam] = v * b_norm(lam) / b_norm(mu)
    cols = {mu: SymFn._raw(d, A.D) for mu, d in acc.items()}
    return LinOp(cols, A.D, -A.dmax, -A.dmin, min(A.D, A.valid + max(A.dmin, 0)))


@lru_cache(maxsize=None)
def _frame_gauges(model, D: int) -> tuple[LinOp, LinOp]:
    """(G, (G^perp)^{-1}) in the Macdonald frame."""
    G = gauge_operator(model, D, frame="P")
    Gperp_inv = adjoint_P(gauge_operator(model, D, inverse=True, frame="P"))
    return G, Gperp_inv


@dataclass
class DualPair:
    model: str
    D: int
    W: dict[Partition, SymFn]
    Z: dict[Partition, SymFn]

    def to_json(self) -> dict:
        return {
            "model": self.model, "D": self.D,
            "W": {format_partition(k): v.to_json() for k, v in self.W.items()},
            "Z": {format_partition(k): v.to_json() for k, v in self.Z.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def build_dual_pair(model, D: int) -> DualPair:
    m = _as_model(model)
    basis = build_macdonald(D)
    G, Gperp_inv = _frame_gauges(m, D)
    W, Z = {}, {}
    for lam in partitions_upto(D):
        W[lam] = basis.from_P_basis(Gperp_inv.column(lam).coeffs)
        Z[lam] = basis.from_P_basis(G.column(lam).coeffs)
    return DualPair(m.id, D, W, Z)


def W_expansion(model, mu: Partition) -> dict[Partition, Scalar]:
    """Macdonald coefficients of W_mu from C_mu/C_lam P_{mu/lam}(-phi)."""
    m = _as_model(model)
    neg = lambda k: -m.phi(k)
    out = {}
    for lam in partitions_upto(sum(mu)):
        if not contains(mu, lam):
            continue
        c = m.C_eigen(mu) / m.C_eigen(lam) * evaluate(skew(mu, lam), neg)
        if not c.is_zero():
            out[lam] = c
    return out


def Z_expansion(model, mu: Partition, D: int) -> dict[Partition, Scalar]:
    """Macdonald coefficients of Z_mu up to degree D from C_lam/C_mu Q_{lam/mu}(phi).

    Q_{lam/mu} = (b_lam/b_mu) P_{lam/mu} is the dual skew function; with P_{lam/mu}
    itself the mu = 0 case would miss the b_lam of the generating function.
    """
    m = _as_model(model)
    out = {}
    for lam in partitions_upto(D):
        if not contains(lam, mu):
            continue
        c = m.C_eigen(lam) / m.C_eigen(mu) * b_norm(lam) / b_norm(mu) * evaluate(skew(lam, mu), m.phi)
        if not c.is_zero():
            out[lam] = c
    return out


def expansion_check(model, D: int) -> list[dict]:
    """Compare operator-built W_mu, Z_mu with the skew expansions."""
    m = _as_model(model)
    G, Gperp_inv = _frame_gauges(m, D)
    out = []
    for mu in partitions_upto(D):
        w_ok = Gperp_inv.column(mu).coeffs == W_expansion(m, mu)
        z_ok = G.column(mu).coeffs == Z_expansion(m, mu, D)
        out.append({"model": m.id, "mu": format_partition(mu), "W": w_ok, "Z": z_ok})
    return out


def duality_check(pair: DualPair, max_size: int | None = None):
    """First (mu, lam, value) with <W_mu, Z_lam> != delta/b_lam, or None."""
    n = pair.D if max_size is None else max_size
    for mu in partitions_upto(n):
        for lam in partitions_upto(n):
            v = inner_product(pair.W[mu], pair.Z[lam])
            want = 1 / b_norm(lam) if lam == mu else ZERO
            if v != want:
                return mu, lam, v
    return None


def cauchy_check(pair: DualPair, n: int = 3) -> bool:
    """sum_lam b_lam W_lam(x) Z_lam(y) equals the Macdonald kernel in bidegrees <= n."""
    lhs = SymFn.zero(n)
    for lam in partitions_upto(n):
        zy = in_second_alphabet(pair.Z[lam].truncate(n))
        lhs = lhs + pair.W[lam].with_degree(n) * (b_norm(lam) * zy)
    rhs = pleth_exp(lambda k: (1 - t ** k) / (1 - q ** k) * Scalar.gen(f"y{k}"), n)
    return lhs == rhs


# ---------------------------------------------------------------------------
# interpolation polynomials and the rCS pairing


def translation_op(shift: Callable[[int], Scalar], D: int) -> LinOp:
    """exp(sum_k shift_k d/dp_k), i.e. f(p) -> f(p + shift)."""
    cols = {}
    for lam in partitions_upto(D):
        acc = SymFn.zero(D)
        for piece in translate_pieces(lam, shift, D).values():
            acc = acc + piece
        cols[lam] = acc
    return LinOp(cols, D, -D, 0)


def interpolation_alphabet(lam: Partition) -> Callable[[int], Scalar]:
    """p_k(u_lam) = sum_i (q^{k lam_i} - 1) Q^k t^{-ki} + (Q^k - 1)/(t^k - 1), with Q = t^N."""
    def pk(k: int) -> Scalar:
        acc = (Q ** k - 1) / (t ** k - 1)
        for i, part in enumerate(lam, start=1):
            acc = acc + (q ** (k * part) - 1) * Q ** k * t ** (-k * i)
        return acc
    return pk


def interpolation_macdonald(lam: Partition, D: int | None = None) -> SymFn:
    """Delta^+(Q)^{-1} exp(-sum d/dp_k /(1-t^k)) Delta^+(Q) P_lam."""
    from .partitions import delta_eigenvalue
    n = sum(lam)
    D = n if D is None else D
    basis = build_macdonald(max(D, n))
    f = basis.P[lam] * delta_eigenvalue(lam, 1, Q)
    shifted = translation_op(lambda k: -1 / (1 - t ** k), basis.D).apply(f)
    coeffs = basis.to_P_basis(shifted)
    return basis.from_P_basis({mu: c / delta_eigenvalue(mu, 1, Q) for mu, c in coeffs.items()}).with_degree(D)


def interpolation_check(max_size: int = 3) -> list[dict]:
    """P*_mu(u_lam) = 0 whenever mu is not inside lam; nonzero on the diagonal."""
    stars = {mu: interpolation_macdonald(mu) for mu in partitions_upto(max_size)}
    out = []
    for mu, f in stars.items():
        for lam in partitions_upto(max_size):
            v = evaluate(f, interpolation_alphabet(lam))
            expect_zero = not contains(lam, mu)
            ok = v.is_zero() if expect_zero else (not v.is_zero() if lam == mu else True)
            out.append({"mu": format_partition(mu), "lam": format_partition(lam),
                        "vanishes": v.is_zero(), "ok": ok})
    return out


def interpolation_vs_W(max_size: int = 3) -> bool:
    """W^rCS_lam = T_lam T^{-1} P*_lam."""
    pair = build_dual_pair(rcs_model(), max_size)
    basis = build_macdonald(max_size)
    for lam in partitions_upto(max_size):
        star = basis.to_P_basis(interpolation_macdonald(lam, max_size))
        Tl = framing_eigenvalue(lam)
        rhs = basis.from_P_basis({mu: c * Tl / framing_eigenvalue(mu) for mu, c in star.items()})
        if rhs != pair.W[lam]:
            return False
    return True


@lru_cache(maxsize=None)
def _rcs_pairing_matrix(D: int) -> LinOp:
    """G K G^perp in the Macdonald frame, K = C T^2 (-Q/t)^deg."""
    m = rcs_model()
    G = gauge_operator(m, D, frame="P")
    Gperp = adjoint_P(gauge_operator(m, D, frame="P"))
    K = diag_P(lambda lam: m.C_eigen(lam) * framing_eigenvalue(lam) ** 2 * (-Q / t) ** sum(lam), D)
    return compose(G, compose(K, Gperp))


def rcs_pairing(f: SymFn, g: SymFn, D: int | None = None) -> Scalar:
    """(f, g)^rCS = <f, G K G^perp g>_{q,t}."""
    D = max(f.D, g.D) if D is None else D
    basis = build_macdonald(D)
    M = _rcs_pairing_matrix(D)
    fc, gc = basis.to_P_basis(f.with_degree(D)), basis.to_P_basis(g.with_degree(D))
    acc = ZERO
    for mu, c in gc.items():
        col = M.column(mu)
        for lam, v in col.coeffs.items():
            if lam in fc:
                acc = acc + fc[lam] * v * c / b_norm(lam)
    return acc


def cmm_value(lam: Partition, mu: Partition) -> Scalar:
    """T_lam P_lam(u_0) P_mu(u_lam) T_mu."""
    D = max(sum(lam), sum(mu))
    basis = build_macdonald(D)
    return (framing_eigenvalue(lam) * evaluate(basis.P[lam], interpolation_alphabet(()))
            * evaluate(basis.P[mu], interpolation_alphabet(lam)) * framing_eigenvalue(mu))


def cmm_check(max_size: int = 3) -> list[dict]:
    basis = build_macdonald(max_size)
    out = []
    for lam in partitions_upto(max_size):
        for mu in partitions_upto(max_size):
            v = rcs_pairing(basis.P[lam], basis.P[mu], max_size)
            out.append({"lam": format_partition(lam), "mu": format_partition(mu),
                        "ok": v == cmm_value(lam, mu)})
    return out


def rcs_average_check(D: int = 6) -> list:
    """Partitions where <P_lam>^rCS != T_lam P_lam((1-Q^k)/(1-t^k)) (empty when all pass)."""
    m = rcs_model()
    basis = build_macdonald(D)
    principal = lambda k: (1 - Q ** k) / (1 - t ** k)
    return [lam for lam in partitions_upto(D)
            if average(m, lam) != framing_eigenvalue(lam) * evaluate(basis.P[lam], principal)]


# ---------------------------------------------------------------------------
# eigenvalue equations


@lru_cache(maxsize=None)
def _x0_P(sign: str, D: int) -> LinOp:
    return to_P_frame(x_mode(sign, 0, D), build_macdonald(D))


def eigen_equations_check(model, D: int, mus=None) -> list[dict]:
    """(G^perp)^{-1} x0 G^perp W_mu = x_mu W_mu and G x0 G^{-1} Z_mu = x_mu Z_mu, both signs.

    W_mu and Z_mu enter through their skew expansions; the operators are built
    from x0 in the power-sum basis and moved to the Macdonald frame.
    """
    m = _as_model(model)
    G = gauge_operator(m, D, frame="P")
    Ginv = gauge_operator(m, D, inverse=True, frame="P")
    Gperp, Gperp_inv = adjoint_P(G), adjoint_P(Ginv)
    mus = partitions_upto(D) if mus is None else mus
    out = []
    for sign in ("+", "-"):
        X = _x0_P(sign, D)
        opW = compose(Gperp_inv, compose(X, Gperp))
        opZ = compose(G, compose(X, Ginv))
        for mu in mus:
            x = symbols(mu).x
            ev = x if sign == "+" else dual(x)
            W = SymFn._raw(W_expansion(m, mu), D)
            Z = SymFn._raw(Z_expansion(m, mu, D), D)
            okW = opW.apply(W) == W * ev
            okZ = opZ.apply(Z) == Z * ev
            out.append({"model": m.id, "mu": format_partition(mu), "sign": sign, "W": okW, "Z": okZ})
    return out


# ---------------------------------------------------------------------------
# stable limit of the Al-Salam-Carlitz eigenoperator


def _h2_op(perp: bool, D: int) -> LinOp:
    """h_2 of the alphabet (1-t^{-k})(1-(t/q)^k) p_k, or with p_k -> p_k^perp."""
    c = lambda k: (1 - t ** (-k)) * (1 - tq ** k)
    if not perp:
        return LinOp.multiplication(pleth_piece(c, 2, D))
    p1, p2 = p_perp_op(1, D), p_perp_op(2, D)
    return (compose(p1, p1) * (c(1) ** 2) + p2 * c(2)) / 2


def asc_operator(mu: Partition, D: int, adjoint: bool) -> LinOp:
    """Stable limit of (H - u_mu^vee) (adjoint=False) or of its adjoint (adjoint=True)."""
    I = LinOp.identity(D)
    xv = dual(symbols(mu).x)
    pre = (1 / Q) / (1 - 1 / t)
    if adjoint:
        first = x_index("-", -1, D) / q + p_op(1, D) * (Q * (1 - 1 / t) * tq)
        second = (x_index("-", -2, D) / q ** 2 - _h2_op(False, D) * (Q / (1 - q / t))
                  - x_index("+", -2, D) * (Q ** 2 * tq))
    else:
        first = x_index("-", 1, D) + p_perp_op(1, D) * (Q * (1 - 1 / t) * tq)
        second = (x_index("-", 2, D) - _h2_op(True, D) * (Q / (1 - q / t))
                  - x_index("+", 2, D) * (Q ** 2 * tq / t ** 2))
    body = (I * xv - x_mode("-", 0, D)) + first * (1 + a) - second * a
    return body * pre


def asc_crosscheck(D: int = 5, max_size: int = 3) -> dict:
    """Operator match at mu = 0, kernel membership of W_mu and Z_mu, and normalisation."""
    m = asc_model()
    A = recursion_operator("SI5", "explicit", D).map_entries(lambda x: specialize(x, ASC_BINDINGS))
    H0 = asc_operator((), D, adjoint=True)
    max_in = min(A.valid, H0.valid, D - 2)
    factor = proportionality(H0, A, max_in)
    pair = build_dual_pair(m, D)
    basis = build_macdonald(D)
    kernel_W, kernel_Z, norm = {}, {}, {}
    for mu in partitions_upto(max_size):
        H = asc_operator(mu, D, adjoint=False)
        kernel_W[format_partition(mu)] = H.apply(pair.W[mu]).is_zero()
        Hp = asc_operator(mu, D, adjoint=True)
        img = Hp.apply(pair.Z[mu])
        safe = min(Hp.safe_output_degree(), D)
        kernel_Z[format_partition(mu)] = img.truncate(safe).is_zero()
        norm[format_partition(mu)] = inner_product(basis.P[mu], pair.W[mu]) == 1 / b_norm(mu)
    return {
        "operator_degree_range": [0, max_in],
        "operator_factor": None if factor is None else str(factor),
        "operator_matches": factor is not None and factor == (1 / Q) / (1 - 1 / t),
        "kernel_W": kernel_W, "kernel_Z": kernel_Z, "normalization": norm,
    }


# ---------------------------------------------------------------------------
# hypergeometric restatement


def hypergeometric_check(model, D: int = 4) -> dict:
    """sum_lam b_lam C_lam^{-1} <P_lam> P_lam(y) = exp(sum (1-t^k)/(1-q^k) phi_k p_k(y)/k)."""
    m = _as_model(model)
    basis = build_macdonald(D)
    rhs = pleth_exp(lambda k: (1 - t ** k) / (1 - q ** k) * m.phi(k), D)
    per_degree = {}
    for n in range(D + 1):
        lhs = ZERO
        for lam in partitions_upto(n):
            if sum(lam) != n:
                continue
            lhs = lhs + b_norm(lam) / m.C_eigen(lam) * average(m, lam) * in_second_alphabet(basis.P[lam])
        per_degree[n] = lhs == in_second_alphabet(rhs.degree_piece(n))
    return {"model": m.id, "degrees": per_degree, "ok": all(per_degree.values())}
