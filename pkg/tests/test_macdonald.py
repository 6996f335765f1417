from hypothesis import given, strategies as st

from macdim.macdonald import (
    build_macdonald, eigen_check, macdonald_norm_check, macdonald_P, pieri_p1, skew,
)
from macdim.partitions import b_norm, contains, partitions_upto
from macdim.scalars import gens, parse
from macdim.symfunc import SymFn, inner_product, p_perp

s, t = gens("s", "t")
q = s ** 2

# P_[2,1] in the p-basis, from diagonalising the three-variable Macdonald difference
# operator on monomial symmetric polynomials with sympy
P21_ORACLE = {
    (3,): "-(s^2 - 1)*(t^2 + t + 1)/(3*(s^2*t^2 - 1))",
    (2, 1): "(s^2 - t)*(t + 1)/(2*(s^2*t^2 - 1))",
    (1, 1, 1): "(t - 1)*(2*s^2*t + s^2 + t + 2)/(6*(s^2*t^2 - 1))",
}


def test_low_degree_examples():
    D = 3
    p = lambda lam: SymFn.p(lam, D)
    assert macdonald_P((1,), D) == p(1)
    assert macdonald_P((1, 1), D) == (p((1, 1)) - p(2)) / 2
    c = (1 + q) * (1 - t) / (1 - q * t)
    assert macdonald_P((2,), D) == p(2) + (p((1, 1)) - p(2)) / 2 * c


def test_p21_against_independent_oracle():
    P = macdonald_P((2, 1))
    assert set(P.coeffs) == set(P21_ORACLE)
    for mu, text in P21_ORACLE.items():
        assert P[mu] == parse(text)


def test_norm_examples():
    basis = build_macdonald(2)
    assert inner_product(basis.P[(1,)], basis.P[(1,)]) == (1 - q) / (1 - t)
    assert inner_product(basis.P[()], basis.P[()]) == 1
    assert inner_product(basis.P[(2,)], basis.P[(2,)]) == (1 - q ** 2) * (1 - q) / ((1 - q * t) * (1 - t))


def test_norms_and_eigenvalues_to_degree_4():
    basis = build_macdonald(4)
    assert macdonald_norm_check(basis) == []
    assert eigen_check(basis) == []


def test_pieri_examples():
    assert pieri_p1(()) == {(1,): 1}
    c = pieri_p1((1,))
    # P_[2] is monic, so its coefficient is 1; (1-t)(1+q)/(1-qt) is the m_[1,1] coefficient inside P_[2]
    assert c[(2,)] == 1
    assert c[(1, 1)] == (1 + t) * (1 - q) / (1 - q * t)
    basis = build_macdonald(2)
    prod = SymFn.p(1, 2) * basis.P[(1,)]
    for nu, v in c.items():
        assert v == inner_product(basis.P[nu], prod) * b_norm(nu)
    assert set(pieri_p1((2,))) <= {(3,), (2, 1)}


def test_skew_examples():
    basis = build_macdonald(3)
    assert skew((2, 1), ()) == basis.P[(2, 1)]
    assert skew((2, 1), (2, 1)) == SymFn.one(3)
    sk = skew((2,), (1,))
    assert sk == p_perp(basis.P[(2,)], 1) * b_norm((1,))
    assert set(sk.coeffs) == {(1,)}


lams = st.sampled_from(partitions_upto(4))


@given(lams, lams)
def test_orthogonality(lam, mu):
    basis = build_macdonald(4)
    v = inner_product(basis.P[lam], basis.P[mu])
    assert v == (1 / b_norm(lam) if lam == mu else 0)


@given(lams)
def test_homogeneous(lam):
    P = build_macdonald(4).P[lam]
    assert P.top_degree() == sum(lam)
    assert P.low_degree() == sum(lam)


@given(lams, lams)
def test_skew_support(lam, mu):
    sk = skew(lam, mu)
    if not contains(lam, mu):
        assert sk.is_zero()
    else:
        assert not sk.is_zero()
        assert all(sum(nu) == sum(lam) - sum(mu) for nu in sk.coeffs)


@given(lams)
def test_p_to_P_roundtrip(lam):
    basis = build_macdonald(4)
    f = SymFn.p(lam, 4)
    assert basis.from_P_basis(basis.to_P_basis(f)) == f


@given(lams)
def test_schur_at_t_equals_q(lam):
    from macdim.scalars import specialize
    from macdim.symfunc import schur
    P = build_macdonald(4).P[lam].map_coeffs(lambda c: specialize(c, {"t": q}))
    assert P == schur(lam, 4)
