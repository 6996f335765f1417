import json

import pytest

from macdim import identities as I
from macdim.fockops import p_op, x_index
from macdim.scalars import gens

s, t = gens("s", "t")
q = s ** 2


def _all_pass(records):
    bad = [r for r in records if r["status"] != "pass"]
    assert not bad, bad


@pytest.mark.parametrize("check", [
    I.check_framing_conjugation, I.check_five_term, I.check_delta_corollary, I.check_delta_identity,
    I.check_framing_exponential,
])
def test_diagonal_frame_identities(check):
    _all_pass(check(3))


def test_heisenberg_mode_relations():
    recs = I.check_heisenberg_commutators(4)
    assert len(recs) == 20
    _all_pass(recs)


def test_xpxm_commutators():
    recs = I.check_xpxm_commutator(4)
    assert len(recs) == 25
    _all_pass(recs)


def test_exchange_relations():
    _all_pass(I.check_exchange(4))


def test_wrong_identity_is_reported_with_first_failure():
    D = 3
    wrong = p_op(1, D) * (1 - t)  # the correct factor is (1 - 1/t)
    f = I._Frame(D)
    lhs = f.conj(f.T(-1), x_index("+", -1, D), f.T(1))
    rec = I._record("deliberately wrong", lhs, f.P(wrong))
    assert rec["status"] == "fail"
    assert rec["first_failing"]["input"] == "0"
    assert rec["first_failing"]["output"] == "1"


def test_report_is_json():
    recs = I.check_delta_identity(2)
    data = json.loads(I.report_json(recs))
    assert data[0]["status"] == "pass"
    assert set(data[0]) == {"identity", "degree_range", "status", "first_failing"}
