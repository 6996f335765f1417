import json

import pytest

from macdim import orthopoly as O
from macdim.macdonald import build_macdonald
from macdim.models import MODEL_IDS, average, generating_function
from macdim.partitions import b_norm, framing_eigenvalue, partitions_upto
from macdim.scalars import gens
from macdim.symfunc import SymFn, evaluate

s, t, Q, a, u1, r = gens("s", "t", "Q", "a", "u1", "r")
q = s ** 2


@pytest.fixture(scope="module")
def si3_pair():
    return O.build_dual_pair("SI3", 3)


def test_empty_members(si3_pair):
    assert si3_pair.W[()] == SymFn.one(3)
    assert si3_pair.Z[()] == generating_function("SI3", 3)


def test_top_component_is_macdonald(si3_pair):
    basis = build_macdonald(3)
    for lam in partitions_upto(3):
        W = si3_pair.W[lam]
        assert W.degree_piece(sum(lam)) == basis.P[lam]
        assert W.top_degree() == sum(lam)


@pytest.mark.parametrize("mid", MODEL_IDS)
def test_duality_and_expansions(mid):
    pair = O.build_dual_pair(mid, 3)
    assert O.duality_check(pair) is None
    recs = O.expansion_check(mid, 3)
    assert all(rec["W"] and rec["Z"] for rec in recs), recs


def test_duality_catches_a_wrong_pair(si3_pair):
    bad = O.DualPair("SI3", 3, dict(si3_pair.W), dict(si3_pair.Z))
    bad.W[(1,)] = bad.W[(1,)] * 2
    mu, lam, _ = O.duality_check(bad)
    assert mu == (1,)


def test_cauchy_kernel(si3_pair):
    assert O.cauchy_check(si3_pair, 3)


def test_pair_json(si3_pair):
    data = json.loads(si3_pair.dumps())
    assert data["model"] == "SI3" and set(data["W"]) == {"0", "1", "2", "1,1", "3", "2,1", "1,1,1"}
    assert SymFn.from_json(data["Z"]["1"]) == si3_pair.Z[(1,)]


def test_interpolation_examples():
    assert O.interpolation_macdonald(()) == SymFn.one(0)
    P2 = O.interpolation_macdonald((2,))
    assert evaluate(P2, O.interpolation_alphabet((1,))).is_zero()
    P1 = O.interpolation_macdonald((1,))
    assert not evaluate(P1, O.interpolation_alphabet((1,))).is_zero()


def test_interpolation_alphabet_formula():
    # p_k(u_lam) = sum_i (q^{k lam_i} - 1) Q^k t^{-k i} + (Q^k - 1)/(t^k - 1)
    lam = (2, 1)
    for k in (1, 2, 3):
        want = (Q ** k - 1) / (t ** k - 1)
        for i, part in enumerate(lam, start=1):
            want = want + (q ** (k * part) - 1) * Q ** k * t ** (-k * i)
        assert O.interpolation_alphabet(lam)(k) == want


def test_interpolation_vanishing_and_W_relation():
    assert all(rec["ok"] for rec in O.interpolation_check(2))
    assert O.interpolation_vs_W(2)


def test_rcs_pairing_examples():
    D = 3
    assert O.rcs_pairing(SymFn.one(D), SymFn.one(D), D) == 1
    basis = build_macdonald(D)
    for lam in partitions_upto(D):
        assert O.rcs_pairing(basis.P[lam], SymFn.one(D), D) == average(O.rcs_model(), lam)


def test_cmm_small():
    assert all(rec["ok"] for rec in O.cmm_check(2))
    lam = (1,)
    assert O.cmm_value(lam, ()) == framing_eigenvalue(lam) * evaluate(
        build_macdonald(1).P[lam], O.interpolation_alphabet(()))


def test_rcs_average_principal():
    assert O.rcs_average_check(4) == []


@pytest.mark.parametrize("mid,mus", [("SI1", [()]), ("SI3", [(1,)]), ("SI10", [(1,)])])
def test_eigen_equations(mid, mus):
    recs = O.eigen_equations_check(mid, 3, mus)
    assert {rec["sign"] for rec in recs} == {"+", "-"}
    assert all(rec["W"] and rec["Z"] for rec in recs), recs


def test_asc_crosscheck():
    rep = O.asc_crosscheck(4, 2)
    assert rep["operator_matches"]
    assert all(rep["kernel_W"].values()) and all(rep["kernel_Z"].values())
    assert all(rep["normalization"].values())


@pytest.mark.parametrize("mid", ["SI3", "SI5", "SI7"])
def test_hypergeometric(mid):
    assert O.hypergeometric_check(mid, 3)["ok"]


def test_hypergeometric_degree_one_by_hand():
    from macdim.models import get_model
    m = get_model("SI3")
    lhs = b_norm((1,)) / m.C_eigen((1,)) * average(m, (1,))
    assert lhs == (1 - t) / (1 - q) * m.phi(1)


def test_specialized_models_have_their_own_ids():
    assert O.rcs_model().id != "SI1"
    assert O.asc_model().id != "SI5"
    assert O.asc_model().phi(1) == (1 + a) / (1 - t)
