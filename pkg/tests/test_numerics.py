import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from macdim import numerics as Nm
from macdim.errors import InvalidConfig


def test_qpoch_trivial():
    assert Nm.qpoch(0, 0.3) == 1
    val, tail = Nm.qpoch(0.5, 0.3, with_tail=True)
    assert tail < 1e-15


@given(st.floats(-2, 2), st.floats(0.05, 0.9))
def test_qpoch_matches_mpmath(z, q):
    ref = float(mpmath.qp(z, q))
    assert abs(Nm.qpoch(z, q) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_qpoch_rejects_bad_q():
    with pytest.raises(InvalidConfig):
        Nm.qpoch(0.5, 1.2)


@given(st.floats(0.2, 3.0), st.floats(0.1, 0.8))
def test_theta_inversion_symmetry(x, q):
    # theta_q(q/x) = theta_q(x) straight from the product definition
    a, b = Nm.theta_q(x, q), Nm.theta_q(q / x, q)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_theta_matches_mpmath():
    for x, q in [(0.7, 0.3), (1.9, 0.5), (-0.4, 0.2)]:
        ref = mpmath.qp(q, q) * mpmath.qp(x, q) * mpmath.qp(q / x, q)
        assert abs(Nm.theta_q(x, q) - complex(ref)) < 1e-13


def test_gamma_q_constant_example():
    assert abs(Nm.gamma_q(0.3 * 0.7, 0.3) - Nm.gamma_q(0.7, 0.3)) < 1e-10


@pytest.mark.parametrize("q", [0.2, 0.3, 0.5])
def test_gamma_q_constant_on_grid(q):
    for x in [0.11, 0.37, 0.7, 1.3, 2.9]:
        g = Nm.gamma_q(x, q)
        assert abs(Nm.gamma_q(q * x, q) - g) <= 1e-10 * max(1.0, abs(g))


def test_q_special_dispatch():
    assert Nm.q_special("qpoch", 0, 0.4) == 1
    with pytest.raises(ValueError):
        Nm.q_special("zeta", 1)


@pytest.mark.parametrize("kwargs", [
    dict(model="SI2", N=1, q=0.3, beta=1),
    dict(model="SI3", N=4, q=0.3, beta=1),
    dict(model="SI3", N=1, q=1.2, beta=1),
    dict(model="SI3", N=1, q=0.3, beta=1.5),
])
def test_invalid_configs(kwargs):
    with pytest.raises(InvalidConfig):
        Nm.NumericModelConfig(**kwargs)


def test_normalisation():
    for cfg in (Nm.NumericModelConfig("SI3", 2, 0.3, 2), Nm.NumericModelConfig("SI5", 2, 0.25, 1),
                Nm.NumericModelConfig("SI7", 2, 0.3, 1)):
        assert Nm.jackson_average(cfg, ()).value == pytest.approx(1, abs=1e-15)


@pytest.mark.parametrize("cfg,lam", [
    (Nm.NumericModelConfig("SI3", 1, 0.3, 1, {"r": 1, "u1": 1.0}), (1,)),
    (Nm.NumericModelConfig("SI3", 2, 0.3, 2), (1,)),
    (Nm.NumericModelConfig("SI3", 2, 0.3, 2), (2,)),
    (Nm.NumericModelConfig("SI3", 2, 0.3, 2), (1, 1)),
    (Nm.NumericModelConfig("SI7", 2, 0.3, 1), (2, 1)),
    (Nm.NumericModelConfig("SI3", 3, 0.4, 1, {"r": 0.5, "u1": 0.7}), (2,)),
])
def test_jackson_matches_closed_formula(cfg, lam):
    row = Nm.compare(cfg, lam)
    assert row["relerr"] <= 1e-8
    assert row["tailbound"] <= 1e-10


def test_vanishing_average_is_exact_zero():
    cfg = Nm.NumericModelConfig("SI3", 1, 0.3, 1)
    assert Nm.symbolic_average(cfg, (1, 1)) == 0.0
    assert abs(Nm.jackson_average(cfg, (1, 1)).value) < 1e-15


def test_doubling_cutoff_within_bound():
    for cfg, lam in [(Nm.NumericModelConfig("SI3", 2, 0.3, 2), (2,)),
                     (Nm.NumericModelConfig("SI5", 2, 0.25, 1), (1, 1))]:
        rep = Nm.cutoff_doubling(cfg, lam)
        assert rep["change"] <= rep["bound"]


def test_slow_convergence_raises():
    cfg = Nm.NumericModelConfig("SI3", 1, 0.95, 1, cutoff=64, tail_tol=1e-14)
    with pytest.raises(Nm.ConvergenceFailure):
        Nm.jackson_average(cfg, (1,))


@settings(max_examples=10)
@given(st.floats(0.2, 0.5), st.floats(0.5, 2.0), st.sampled_from([(1,), (2,), (1, 1)]))
def test_two_routes_agree_one_fundamental(q, u1, lam):
    cfg = Nm.NumericModelConfig("SI3", 2, q, 1, {"u1": u1})
    row = Nm.compare(cfg, lam)
    assert row["relerr"] <= 1e-8


def test_orthogonality_probe_runs():
    cfg = Nm.NumericModelConfig("SI3", 2, 0.3, 1)
    assert Nm.numeric_probe_orthogonality(cfg, (), ()) == pytest.approx(1)
    off = Nm.numeric_probe_orthogonality(cfg, (1,), ())
    diag = Nm.numeric_probe_orthogonality(cfg, (1,), (1,))
    assert math.isfinite(off)
    assert math.isfinite(diag) and diag != 0
