"""Macdonald polynomials P_lam as eigenvectors of the zero mode x^+_0."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DegenerateSpectrum
from .fockops import x_mode
from .linalg import nullspace_vector
from .partitions import (
    Partition, b_norm, contains, enumerate_partitions, symbols,
)
from .scalars import ZERO, Scalar
from .symfunc import SymFn, gram, inner_product, p_perp, schur


@lru_cache(maxsize=None)
def _block(n: int) -> dict[Partition, dict[Partition, Scalar]]:
    """P_lam for |lam| = n as coefficient dicts in the p-basis."""
    lams = enumerate_partitions(n)
    X = x_mode("+", 0, n)
    # matrix of x^+_0 on the degree-n block: rows = output, columns = input
    mat = [[X.column(nu)[mu] for nu in lams] for mu in lams]
    eigs = {lam: symbols(lam).x for lam in lams}
    seen = list(eigs.values())
    for i in range(len(seen)):
        for j in range(i):
            if seen[i] == seen[j]:
                raise DegenerateSpectrum(f"equal eigenvalues in degree {n}")
    out = {}
    for lam in lams:
        shifted = [[mat[i][j] - (eigs[lam] if i == j else ZERO) for j in range(len(lams))] for i in range(len(lams))]
        vec = nullspace_vector(shifted)
        v = SymFn(dict(zip(lams, vec)), n)
        norm = inner_product(schur(lam, n), v, "hall")
        v = v / norm
        out[lam] = dict(v.coeffs)
    return out


@dataclass
class MacdonaldBasis:
    D: int
    P: dict[Partition, SymFn]
    _inv: dict = field(default_factory=dict, repr=False)

    def p_to_P(self, mu: Partition, lam: Partition) -> Scalar:
        """Coefficient c with p_mu = sum_lam c P_lam (via orthogonality)."""
        key = (mu, lam)
        if key not in self._inv:
            self._inv[key] = b_norm(lam) * gram(mu) * self.P[lam][mu]
        return self._inv[key]

    def to_P_basis(self, f: SymFn) -> dict[Partition, Scalar]:
        out: dict = {}
        for mu, c in f.coeffs.items():
            for lam in enumerate_partitions(sum(mu)):
                d = self.p_to_P(mu, lam)
                if not d.is_zero():
                    out[lam] = out[lam] + c * d if lam in out else c * d
        return {k: v for k, v in out.items() if not v.is_zero()}

    def from_P_basis(self, coeffs: dict[Partition, Scalar]) -> SymFn:
        acc = SymFn.zero(self.D)
        for lam, c in coeffs.items():
            acc = acc + self.P[lam] * c
        return acc


@lru_cache(maxsize=None)
def build_macdonald(D: int) -> MacdonaldBasis:
    P = {}
    for n in range(D + 1):
        for lam, coeffs in _block(n).items():
            P[lam] = SymFn(coeffs, D)
    return MacdonaldBasis(D, P)


def macdonald_P(lam: Partition, D: int | None = None) -> SymFn:
    D = sum(lam) if D is None else D
    return build_macdonald(D).P[lam] if D >= sum(lam) else SymFn.zero(D)


def macdonald_norm_check(basis: MacdonaldBasis) -> list:
    """Partitions whose norm differs from 1/b_lam (empty when all pass)."""
    failures = []
    for lam, f in basis.P.items():
        if inner_product(f, f) * b_norm(lam) != 1:
            failures.append(lam)
    return failures


def eigen_check(basis: MacdonaldBasis) -> list:
    """Partitions where x^+_0 P = x P or x^-_0 P = x^vee P fails."""
    from .scalars import dual
    failures = []
    D = basis.D
    xp, xm = x_mode("+", 0, D), x_mode("-", 0, D)
    for lam, f in basis.P.items():
        x = symbols(lam).x
        if xp.apply(f) != f * x or xm.apply(f) != f * dual(x):
            failures.append(lam)
    return failures


def pieri_p1(lam: Partition, D: int | None = None) -> dict[Partition, Scalar]:
    """Coefficients of p_1 P_lam in the Macdonald basis."""
    D = sum(lam) + 1 if D is None else D
    if sum(lam) >= D:
        raise ValueError("pieri_p1 needs |lam| < D")
    basis = build_macdonald(D)
    prod = SymFn.p(1, D) * basis.P[lam]
    return basis.to_P_basis(prod)


def perp_substitute(f: SymFn, g: SymFn) -> SymFn:
    """f(p_k -> p_k^perp) applied to g."""
    acc = SymFn.zero(g.D)
    for mu, c in f.coeffs.items():
        h = g
        for k in mu:
            h = p_perp(h, k)
            if h.is_zero():
                break
        if not h.is_zero():
            acc = acc + h * c
    return acc


def skew(lam: Partition, mu: Partition, D: int | None = None) -> SymFn:
    """P_{lam/mu} = b_mu P_mu(p^perp) P_lam; zero when mu is not inside lam."""
    D = sum(lam) if D is None else D
    if not contains(lam, mu):
        return SymFn.zero(D)
    basis = build_macdonald(max(D, sum(lam)))
    out = perp_substitute(basis.P[mu], basis.P[lam]) * b_norm(mu)
    return out.with_degree(D)
