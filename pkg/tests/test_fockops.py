import pytest
from hypothesis import given, strategies as st

from macdim.errors import ModeOutOfSupport, SingularEigenvalue
from macdim.fockops import (
    LinOp, adjoint_qt, commutator, compose, degree_op, delta_op, diag_op, exp_series, framing_T,
    from_P_frame, op_algebra, op_difference, ops_equal, p_op, p_perp_op, proportionality, psi_mode,
    to_P_frame, x_mode, x_index,
)
from macdim.macdonald import build_macdonald
from macdim.partitions import partitions_upto, symbols
from macdim.scalars import gens
from macdim.symfunc import SymFn, inner_product

s, t, Q, z = gens("s", "t", "Q", "z")
q = s ** 2
D = 4
ONE_D = SymFn.one(D)
p1 = SymFn.p(1, D)


def test_x_mode_examples():
    assert x_mode("+", 0, D).apply(ONE_D) == ONE_D
    assert x_index("+", -1, D).apply(ONE_D) == p1 * (1 - 1 / t)
    assert x_mode("+", 0, D).apply(p1) == p1 * (1 - (1 - q) * (1 - 1 / t))


def test_psi_mode_examples():
    I = LinOp.identity(D)
    assert ops_equal(psi_mode("+", 0, D), I, D)
    assert ops_equal(psi_mode("-", 0, D), I, D)
    assert psi_mode("-", 1, D).apply(ONE_D) == p1 * ((1 - 1 / t) * (1 - t / q))
    d1 = LinOp.derivative(1, D) * (-(1 - q) * (1 - t / q))
    assert ops_equal(psi_mode("+", -1, D), d1, D)
    with pytest.raises(ModeOutOfSupport):
        psi_mode("+", 1, D)


def test_framing_examples():
    P = build_macdonald(D).P
    T = framing_T(1, D)
    assert T.apply(ONE_D) == ONE_D
    assert T.apply(p1) == p1
    assert T.apply(P[(2,)]) == P[(2,)] * q


def test_delta_examples():
    P = build_macdonald(D).P
    assert delta_op("+", z, D).apply(ONE_D) == ONE_D
    assert delta_op("+", Q, D).apply(P[(1,)]) == P[(1,)] * (1 - Q)
    # z = 1/chi of the box (2,2)
    with pytest.raises(SingularEigenvalue):
        delta_op("+", t / q, D, inverse=True)


def test_degree_and_diag():
    assert degree_op(D).apply(ONE_D).is_zero()
    assert degree_op(D).apply(SymFn.p((3, 1), D)) == SymFn.p((3, 1), D) * 4
    assert ops_equal(diag_op(lambda lam: 1, build_macdonald(D)), LinOp.identity(D), D)


def test_adjoint_examples():
    for k in (1, 2, 3):
        assert ops_equal(adjoint_qt(p_op(k, D)), p_perp_op(k, D), D)
    for k in (1, 2):
        assert ops_equal(adjoint_qt(x_index("+", k, D)), x_index("+", -k, D) * t ** k, D - k)
        assert ops_equal(adjoint_qt(x_index("-", k, D)), x_index("-", -k, D) * q ** (-k), D - k)
    assert ops_equal(commutator(degree_op(D), p_op(1, D)), p_op(1, D), D - 1)


def test_op_algebra_dispatch():
    A, B = p_op(1, D), p_perp_op(1, D)
    assert ops_equal(op_algebra(A, B, "compose"), compose(A, B), D)
    assert ops_equal(op_algebra(A, B, "add"), A + B, D)
    assert ops_equal(op_algebra(A, B, "commutator"), commutator(A, B), D - 1)
    assert ops_equal(op_algebra(A, None, "adjoint_qt"), B, D)


def test_exp_series_of_raising_operator():
    # exp(p_1) . 1 = sum p_1^n / n!
    E = exp_series(p_op(1, D)).apply(ONE_D)
    from fractions import Fraction
    from math import factorial
    for n in range(D + 1):
        assert E[(1,) * n].to_fraction() == Fraction(1, factorial(n))


def test_x0_eigenvalues_on_macdonald():
    basis = build_macdonald(D)
    X = to_P_frame(x_mode("+", 0, D), basis)
    for lam in partitions_upto(D):
        col = X.column(lam)
        assert col.coeffs == {lam: symbols(lam).x}


def test_frame_roundtrip():
    basis = build_macdonald(D)
    A = x_index("-", -1, D)
    assert ops_equal(from_P_frame(to_P_frame(A, basis), basis), A, D - 1)


def test_op_difference_reports_first_mismatch():
    A = p_op(1, D)
    B = p_op(1, D) * 2
    lam, mu, d = op_difference(A, B, D - 1)
    assert lam == () and mu == (1,) and d == -1
    assert proportionality(A, B, D - 1).to_fraction() == 0.5


lams = st.sampled_from(partitions_upto(3))


@given(lams, lams)
def test_adjoint_is_gram_transpose(lam, mu):
    # <A p_lam, p_mu> = <p_lam, A^perp p_mu>
    A = x_index("+", -1, D)
    f, g = SymFn.p(lam, D), SymFn.p(mu, D)
    assert inner_product(A.apply(f), g) == inner_product(f, adjoint_qt(A).apply(g))


@given(st.integers(1, 3), st.integers(1, 3))
def test_heisenberg(k, j):
    C = commutator(p_perp_op(k, D), p_op(j, D))
    if k != j:
        assert op_difference(C, LinOp.zero(D), D - max(k, j)) is None
    else:
        from macdim.symfunc import perp_factor
        assert op_difference(C, LinOp.identity(D) * perp_factor(k), D - k) is None
