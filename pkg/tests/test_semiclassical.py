from fractions import Fraction

import pytest

from macdim import semiclassical as C
from macdim.fockops import LinOp, commutator, op_difference, ops_equal
from macdim.scalars import gens, specialize
from macdim.symfunc import SymFn, evaluate, schur

N, alpha, beta, a1 = gens("N", "alpha", "beta", "a1")
D = 4


def test_constant_terms_of_classical_operators():
    one = SymFn.one(D)
    assert C.classical_w_ops("W-2_GUE", D).apply(one) == SymFn.p(2, D, N ** 2) + SymFn.p((1, 1), D, N)
    assert C.classical_w_ops("W-1_WL", D).apply(one) == SymFn.p(1, D, N * (N + alpha))


def test_beta_operator_reduces_at_beta_one():
    W = C.classical_w_ops("Wbeta-1", D).map_entries(lambda x: specialize(x, {"beta": 1}))
    assert ops_equal(W, C.classical_w_ops("W-1_WL", D), D - 1)


def test_unknown_operator():
    with pytest.raises(ValueError):
        C.classical_w_ops("W-3", D)


def test_classical_limit_of_one_fundamental():
    rep = C.classical_limit_check(5, 4)
    assert rep["h0_vanishes"] and rep["h1_vanishes"] and rep["h2_matches"]


def test_zero_mode_limit():
    rep = C.zero_mode_limit_check(3)
    assert rep["h0_h1_vanish"] and rep["h2"] and rep["h3"]


def test_commutator_route():
    rep = C.commutator_route_check(3)
    assert all(v["exact"] and v["series"] for v in rep.values())


def test_hbar_expansion_of_identity():
    terms = C.hbar_expand_op(LinOp.identity(2), 2)
    assert ops_equal(terms[0], LinOp.identity(2), 2)
    assert all(op_difference(T, LinOp.zero(2), 2) is None for T in terms[1:])


@pytest.mark.parametrize("model", ["GUE", "WL"])
def test_classical_superintegrability(model):
    rep = C.classical_si_check(model, 5)
    assert rep["conjugation"] and rep["series"] and rep["commuting"]
    if model == "GUE":
        assert rep["even"] and all(rep["virasoro"].values())


def test_gue_schur_averages():
    phi = lambda k: 1 if k == 2 else 0
    assert C.gue_C((2,)) * evaluate(schur((2,), 2), phi) == N * (N + 1) / 2
    assert C.gue_C((1, 1)) * evaluate(schur((1, 1), 2), phi) == -N * (N - 1) / 2


def test_wick_oracle_values():
    assert C.wick_schur_average((2,), 2) == 3
    assert C.wick_power_sum_average((2,), 1) == 1
    assert C.wick_power_sum_average((1, 1), 2) == 2
    assert C.wick_power_sum_average((4,), 1) == 3


def test_wick_oracle_agrees_with_formula():
    recs = C.wick_check(3, (2,))
    assert all(rec["ok"] for rec in recs), [r for r in recs if not r["ok"]]


def test_gue_virasoro_commutation():
    # [L_1, L_-1] = 2 L_0 on low degrees
    L1, Lm1, L0 = C.gue_virasoro(1, D), C.gue_virasoro(-1, D), C.gue_virasoro(0, D)
    assert op_difference(commutator(L1, Lm1), L0 * 2, D - 2, D - 2) is None
    with pytest.raises(ValueError):
        C.gue_virasoro(-2, D)


def test_gauss_moments():
    assert [C._gauss_moment(k) for k in range(7)] == [1, 0, 1, 0, 3, 0, 15]
    assert C._integrate({(2, 2): Fraction(1)}) == 1
