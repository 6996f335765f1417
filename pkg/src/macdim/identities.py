"""Operator identities of the quantum toroidal Fock representation, checked exactly.

Every check compares two LinOps on the input degrees where both are exact and
returns a report record; a failure carries the first disagreeing coefficient.
"""

from __future__ import annotations

import json
from typing import Callable

from .fockops import (
    LinOp, commutator, compose, diag_P, op_difference, p_op, p_perp_op, power_of_degree,
    psi_mode, to_P_frame, x_mode, x_index,
)
from .macdonald import build_macdonald
from .partitions import delta_eigenvalue, format_partition, framing_eigenvalue
from .scalars import Scalar, gens
from .symfunc import pleth_exp, pleth_piece

s, t, z, w = gens("s", "t", "z", "w")
q = s ** 2
tq = t / q


def _record(name: str, A: LinOp, B: LinOp, max_in: int | None = None, max_out: int | None = None) -> dict:
    max_in = min(A.valid, B.valid) if max_in is None else max_in
    diff = op_difference(A, B, max_in, max_out) if max_in >= 0 else None
    rec = {"identity": name, "degree_range": [0, max_in], "status": "pass" if max_in >= 0 else "skipped",
           "first_failing": None}
    if diff is not None:
        lam, mu, d = diff
        rec["status"] = "fail"
        rec["first_failing"] = {"input": format_partition(lam), "output": format_partition(mu), "difference": str(d)}
    return rec


class _Frame:
    """Diagonal operators and their conjugations in the Macdonald frame."""

    def __init__(self, D: int):
        self.D = D
        self.basis = build_macdonald(D)

    def P(self, A: LinOp) -> LinOp:
        return to_P_frame(A, self.basis)

    def T(self, power: int) -> LinOp:
        return diag_P(lambda lam: framing_eigenvalue(lam) ** power, self.D)

    def delta(self, sign: int, zz, power: int = 1) -> LinOp:
        return diag_P(lambda lam: delta_eigenvalue(lam, sign, zz) ** power, self.D)

    def conj(self, L: LinOp, X: LinOp, R: LinOp) -> LinOp:
        return compose(L, compose(self.P(X), R))


def _mult_exp(c: Callable[[int], Scalar], D: int) -> LinOp:
    return LinOp.multiplication(pleth_exp(c, D))


def check_heisenberg_commutators(D: int, modes=range(-2, 3)) -> list[dict]:
    """[x(z), p_1] = -(1-q^{+-1}) z^{-1} x(z) and [x(z), d/dp_1] = -(1-t^{-+1}) z x(z), mode by mode."""
    out = []
    p1, d1 = p_op(1, D), LinOp.derivative(1, D)
    for sign, sg in (("+", 1), ("-", -1)):
        for n in modes:
            lhs = commutator(x_mode(sign, n, D), p1)
            if abs(n + 1) <= D:
                rhs = x_mode(sign, n + 1, D) * (-(1 - q ** sg))
                out.append(_record(f"[x{sign}(z), p1] at z^{n}", lhs, rhs))
            lhs = commutator(x_mode(sign, n, D), d1)
            if abs(n - 1) <= D:
                rhs = x_mode(sign, n - 1, D) * (-(1 - t ** (-sg)))
                out.append(_record(f"[x{sign}(z), d/dp1] at z^{n}", lhs, rhs))
    return out


def check_framing_conjugation(D: int) -> list[dict]:
    f = _Frame(D)
    d1 = LinOp.derivative(1, D)
    cases = [
        ("T^-1 x+_{-1} T = (1-1/t) p1", f.conj(f.T(-1), x_index("+", -1, D), f.T(1)), p_op(1, D) * (1 - 1 / t)),
        ("T x-_{-1} T^-1 = (1-t) p1", f.conj(f.T(1), x_index("-", -1, D), f.T(-1)), p_op(1, D) * (1 - t)),
        ("T x+_1 T^-1 = -(1-q) d/dp1", f.conj(f.T(1), x_index("+", 1, D), f.T(-1)), d1 * (-(1 - q))),
        ("T^-1 x-_1 T = -(1-1/q) d/dp1", f.conj(f.T(-1), x_index("-", 1, D), f.T(1)), d1 * (-(1 - 1 / q))),
    ]
    return [_record(name, A, f.P(B)) for name, A, B in cases]


def check_five_term(D: int) -> list[dict]:
    """exp(-w p/(1-q)) Delta(z) exp(w p/(1-q)) Delta(z)^-1 = T exp((-zw) p/(1-q)) T^-1, exactly in w, z."""
    f = _Frame(D)
    Ew = lambda sign: f.P(_mult_exp(lambda k: sign * w ** k / (1 - q ** k), D))
    lhs = compose(Ew(-1), compose(f.delta(1, z), compose(Ew(1), f.delta(1, z, -1))))
    rhs = compose(f.T(1), compose(f.P(_mult_exp(lambda k: (-z * w) ** k / (1 - q ** k), D)), f.T(-1)))
    return [_record("five-term relation", lhs, rhs)]


def check_delta_corollary(D: int) -> list[dict]:
    f = _Frame(D)
    Dp, Dpi = f.delta(1, z), f.delta(1, z, -1)
    Dm, Dmi = f.delta(-1, 1 / z), f.delta(-1, 1 / z, -1)
    p1 = p_op(1, D)
    h2 = LinOp.multiplication(pleth_piece(lambda k: (1 - t ** (-k)) * (1 - tq ** k), 2, D))
    xm1, xm2 = x_index("-", -1, D), x_index("-", -2, D)
    cases = [
        ("Delta+ p1 Delta+^-1", f.conj(Dp, p1, Dpi), p1 - x_index("+", -1, D) * (z / (1 - 1 / t))),
        ("Delta+ q^-1 x-_{-1} Delta+^-1", f.conj(Dp, xm1 / q, Dpi), xm1 / q + p1 * (z * (1 - 1 / t) * tq)),
        ("Delta+ q^-2 x-_{-2} Delta+^-1", f.conj(Dp, xm2 / q ** 2, Dpi),
         xm2 / q ** 2 - h2 * (z / (1 - q / t)) - x_index("+", -2, D) * (z ** 2 * tq)),
        ("Delta+^-1 p1perp Delta+", f.conj(Dpi, p_perp_op(1, D), Dp),
         p_perp_op(1, D) + x_index("+", 1, D) * (z / (1 - t))),
        ("Delta-(1/z) p1 Delta-(1/z)^-1", f.conj(Dm, p1, Dmi), p1 - xm1 / (z * (1 - t))),
    ]
    return [_record(name, A, f.P(B)) for name, A, B in cases]


def check_delta_identity(D: int) -> list[dict]:
    """Delta^+(z) = (-z)^deg T Delta^-(1/z) as diagonal operators."""
    f = _Frame(D)
    rhs = compose(f.P(power_of_degree(-z, D)), compose(f.T(1), f.delta(-1, 1 / z)))
    return [_record("Delta+(z) = (-z)^deg T Delta-(1/z)", f.delta(1, z), rhs)]


def check_framing_exponential(D: int) -> list[dict]:
    """T exp(sum p_k/(k(1-q^k))) = exp(-sum (-1)^k p_k/(k(1-q^k))), both applied to 1."""
    f = _Frame(D)
    lhs_P = compose(f.T(1), f.P(_mult_exp(lambda k: 1 / (1 - q ** k), D))).column(())
    lhs = f.basis.from_P_basis(lhs_P.coeffs)
    rhs = pleth_exp(lambda k: -(-1) ** k / (1 - q ** k), D)
    diff = lhs - rhs
    rec = {"identity": "T exp(p/(1-q)) . 1 = exp(-(-1)^k p/(1-q))", "degree_range": [0, D],
           "status": "pass" if diff.is_zero() else "fail", "first_failing": None}
    if not diff.is_zero():
        mu, c = next(iter(diff.coeffs.items()))
        rec["first_failing"] = {"output": format_partition(mu), "difference": str(c)}
    return [rec]


def _psi_coefficient(sign: str, j: int, D: int) -> LinOp | None:
    """Coefficient of z^{-j} in psi^{sign}(z), or None if it vanishes identically."""
    if sign == "+":
        return psi_mode("+", -j, D) if j >= 0 and j <= D else None
    return psi_mode("-", -j, D) if j <= 0 and -j <= D else None


def check_xpxm_commutator(D: int, rng=range(-2, 3)) -> list[dict]:
    """[x+_a, x-_b] = K (t^{-b} psi+_{a+b} - q^{-b} psi-_{a+b}) at level (1, 0)."""
    K = (1 - q) * (1 - 1 / t) / (1 - q / t)
    out = []
    for a in rng:
        for b in rng:
            lhs = commutator(x_index("+", a, D), x_index("-", b, D))
            rhs = LinOp.zero(D)
            pp = _psi_coefficient("+", a + b, D)
            pm = _psi_coefficient("-", a + b, D)
            if pp is not None:
                rhs = rhs + pp * (K * t ** (-b))
            if pm is not None:
                rhs = rhs - pm * (K * q ** (-b))
            out.append(_record(f"[x+_{a}, x-_{b}]", lhs, rhs))
    return out


def _G(sign: int) -> list[Scalar]:
    """Coefficients of G^{+-}(u) = (1-q^{+-1}u)(1-t^{-+1}u)(1-t^{+-1}q^{-+1}u)."""
    roots = [q ** sign, t ** (-sign), t ** sign * q ** (-sign)]
    coeffs = [Scalar.const(1)]
    for c in roots:
        new = coeffs + [Scalar.const(0)]
        for i in range(len(coeffs)):
            new[i + 1] = new[i + 1] - c * coeffs[i]
        coeffs = new
    return coeffs


def check_exchange(D: int, pairs=((0, 0), (0, 1), (1, -1), (-1, 0))) -> list[dict]:
    """sum_k G^-+_k x_{A+k} x_{B-k} = sum_k G^+-_k x_{B-k} x_{A+k} for a few (A, B)."""
    out = []
    for sign, sg in (("+", 1), ("-", -1)):
        left, right = _G(-sg), _G(sg)
        for A, B in pairs:
            lhs, rhs = LinOp.zero(D), LinOp.zero(D)
            for k in range(4):
                if max(abs(A + k), abs(B - k)) > D:
                    continue
                XA, XB = x_index(sign, A + k, D), x_index(sign, B - k, D)
                lhs = lhs + compose(XA, XB) * left[k]
                rhs = rhs + compose(XB, XA) * right[k]
            out.append(_record(f"exchange x{sign} at ({A},{B})", lhs, rhs))
    return out


def operator_identity_suite(D_check: int = 4, D: int | None = None) -> list[dict]:
    """All identities; operators are built at truncation D (default D_check + 2)."""
    D = D_check + 2 if D is None else D
    report = []
    report += check_heisenberg_commutators(D)
    report += check_framing_conjugation(D_check)
    report += check_five_term(D_check)
    report += check_delta_corollary(D_check)
    report += check_delta_identity(D_check)
    report += check_framing_exponential(D)
    report += check_xpxm_commutator(D)
    report += check_exchange(D)
    return report


def report_json(report: list[dict]) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


# name used by the public interface
identity_suite_appC = operator_identity_suite
