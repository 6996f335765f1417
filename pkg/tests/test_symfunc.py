from fractions import Fraction
from math import factorial

import sympy as sp
from hypothesis import given, strategies as st

from macdim.partitions import enumerate_partitions, partitions_upto
from macdim.scalars import Scalar, gens
from macdim.symfunc import (
    SymFn, classical_bases, e, evaluate, h, inner_product, p_derivative, p_perp, pleth_exp,
    pleth_exp_recurrence, ring_ops, schur,
)

s, t, a, N = gens("s", "t", "a", "N")
q = s ** 2
D = 4


def P(lam, c=1):
    return SymFn.p(lam, D, c)


def test_ring_examples():
    assert (P(1) * P(1)).coeffs == {(1, 1): 1}
    f = P(2) + P((1, 1))
    assert ring_ops(f, SymFn.one(D), "mul") == f
    assert h(2, D) * e(2, D) == (P((1, 1, 1, 1)) - P((2, 2))) / 4


def test_derivative_examples():
    assert p_perp(P(2), 2) == SymFn.one(D) * (2 * (1 - q ** 2) / (1 - t ** 2))
    assert p_derivative(P((1, 1, 1)), 1) == P((1, 1), 3)
    assert p_perp(P(1), 2).is_zero()


def test_pleth_exp_examples():
    single = pleth_exp(lambda k: 1 if k == 1 else 0, D)
    for d in range(D + 1):
        assert single[(1,) * d] == Scalar.const(Fraction(1, factorial(d)))
    geo = pleth_exp(lambda k: a ** k, D)
    for d in range(D + 1):
        assert geo.degree_piece(d) == h(d, D) * a ** d
    assert pleth_exp(lambda k: 0, D) == SymFn.one(D)


def test_classical_examples():
    assert classical_bases((2,), "h", D) == (P((1, 1)) + P(2)) / 2
    assert classical_bases((2,), "e", D) == (P((1, 1)) - P(2)) / 2
    assert schur((2,), D) == h(2, D)
    assert schur((1, 1), D) == e(2, D)
    assert schur((), D) == SymFn.one(D)


def test_inner_product_examples():
    assert inner_product(P(2), P(2)) == 2 * (1 - q ** 2) / (1 - t ** 2)
    assert inner_product(schur((2,), D), schur((1, 1), D), "hall") == 0
    assert inner_product(SymFn.one(D), P(1)) == 0


def test_evaluate_examples():
    assert evaluate(P((1, 1)), lambda k: 1 if k == 2 else 0) == 0
    phi = lambda k: 1 / (1 - t ** k)
    assert evaluate(h(2, D), phi) == (phi(1) ** 2 + phi(2)) / 2
    assert evaluate(schur((2,), D), lambda k: N) == N * (N + 1) / 2


def _bialternant(lam, xs):
    n = len(xs)
    lam = list(lam) + [0] * (n - len(lam))
    num = sp.Matrix(n, n, lambda i, j: xs[i] ** (lam[j] + n - 1 - j))
    den = sp.Matrix(n, n, lambda i, j: xs[i] ** (n - 1 - j))
    return sp.Rational(num.det(), den.det())


def test_schur_matches_bialternant():
    xs = [sp.Rational(2), sp.Rational(-1, 3), sp.Rational(5, 7), sp.Rational(3, 2)]
    for lam in partitions_upto(5):
        if len(lam) > len(xs):
            continue
        val = evaluate(schur(lam, 5), lambda k: Scalar.const(Fraction(str(sum(x ** k for x in xs)))))
        assert val.to_fraction() == Fraction(str(_bialternant(lam, xs)))


def test_schur_hall_orthonormal():
    for n in range(5):
        for lam in enumerate_partitions(n):
            for mu in enumerate_partitions(n):
                v = inner_product(schur(lam, n), schur(mu, n), "hall")
                assert v == (1 if lam == mu else 0)


atoms = st.sampled_from([s, t, a, Scalar.const(1), Scalar.const(-3), 1 - t])


@st.composite
def symfns(draw, deg=3):
    coeffs = {}
    for _ in range(draw(st.integers(1, 3))):
        mu = draw(st.sampled_from(partitions_upto(deg)))
        coeffs[mu] = draw(atoms)
    return SymFn(coeffs, 2 * deg)


@given(symfns(), symfns(), st.integers(1, 3))
def test_leibniz(f, g, k):
    assert p_derivative(f * g, k) == p_derivative(f, k) * g + f * p_derivative(g, k)


@given(symfns(), symfns())
def test_inner_product_symmetric(f, g):
    assert inner_product(f, g) == inner_product(g, f)


@given(symfns(), st.integers(1, 3))
def test_perp_is_adjoint_of_multiplication(f, k):
    g = SymFn(dict(f.coeffs), f.D)
    pk = SymFn.p(k, f.D)
    probe = SymFn.p((1,) * 2, f.D) + SymFn.p((k, 1), f.D)
    assert inner_product((pk * g).truncate(f.D), probe) == inner_product(g, p_perp(probe, k))


@given(st.lists(atoms, min_size=4, max_size=4))
def test_pleth_exp_two_routes(cs):
    c = lambda k: cs[k - 1]
    assert pleth_exp(c, 4) == pleth_exp_recurrence(c, 4)


@given(symfns(), symfns())
def test_json_roundtrip(f, g):
    x = f * g
    assert SymFn.from_json(x.to_json()) == x
