"""Floating-point oracle: q-special functions and finite-N Jackson sums.

The averages of a model with N eigenvalues are ratios of N-fold Jackson sums
over the lattice x = endpoint * q^n. With t = q^beta for a positive integer
beta the deformed Vandermonde is a finite product, so every lattice term is
an ordinary float. The closed formulas from the symbolic side are evaluated at
the same numbers, which makes these two routes independent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConvergenceFailure, InvalidConfig
from .partitions import Partition, b_norm
from .symfunc import SymFn

MODELS = ("SI3", "SI5", "SI7")
EPS = 1e-16


# ---------------------------------------------------------------------------
# q-special functions


def qpoch(z: complex, q: float, tol: float = EPS, max_terms: int = 100_000, with_tail: bool = False):
    """(z; q)_inf by partial products, stopped once |z q^k| < tol."""
    if not abs(q) < 1:
        raise InvalidConfig("need |q| < 1")
    val = 1.0
    term = z
    for k in range(max_terms):
        if abs(term) < tol:
            # log of the remaining product is bounded by sum |z q^j| / (1 - |z q^j|)
            tail = abs(term) / ((1 - abs(q)) * (1 - abs(term)))
            return (val, tail) if with_tail else val
        val *= 1 - term
        term *= q
    raise ConvergenceFailure(f"(z;q)_inf did not converge in {max_terms} factors")


def theta_q(x: complex, q: float) -> complex:
    """(q;q)_inf (x;q)_inf (q/x;q)_inf."""
    return qpoch(q, q) * qpoch(x, q) * qpoch(q / x, q)


def gamma_q(x: complex, q: float) -> complex:
    """exp(-log^2(-x)/(2 log q)) x^{1/2} / theta_q(x), principal branches."""
    x = complex(x)
    lg = cmath.log(-x)
    return cmath.exp(-lg * lg / (2 * math.log(q))) * cmath.sqrt(x) / theta_q(x, q)


def q_special(fn: str, *args):
    table = {"qpoch": qpoch, "theta": theta_q, "gamma_q": gamma_q}
    if fn not in table:
        raise ValueError(f"unknown function {fn!r}; expected one of {sorted(table)}")
    return table[fn](*args)


# ---------------------------------------------------------------------------
# configurations


@dataclass
class NumericModelConfig:
    model: str
    N: int
    q: float
    beta: int
    params: dict = field(default_factory=dict)
    cutoff: int = 400          # largest lattice index per coordinate
    tail_tol: float = 1e-12    # target relative tail of each sum

    def __post_init__(self):
        self.model = self.model.upper().replace(".", "")
        if self.model not in MODELS:
            raise InvalidConfig(f"numeric model must be one of {MODELS}, got {self.model}")
        if not 1 <= self.N <= 3:
            raise InvalidConfig("N must be 1, 2 or 3")
        if not 0 < self.q < 1:
            raise InvalidConfig("q must lie in (0, 1)")
        if int(self.beta) != self.beta or self.beta < 1:
            raise InvalidConfig("beta must be a positive integer")
        defaults = {"SI3": {"r": 1.0, "u1": 1.0}, "SI5": {"u1": 1.0, "u2": -0.5},
                    "SI7": {"r": 1.0, "u1": 1.0, "v1": 0.3}}[self.model]
        self.params = {**defaults, **{k: float(v) for k, v in self.params.items()}}

    @property
    def t(self) -> float:
        return self.q ** self.beta

    def symbolic_values(self) -> dict:
        """Generator values for evaluating exact Scalars at this configuration."""
        vals = {"s": math.sqrt(self.q), "t": self.t, "Q": self.t ** self.N}
        vals.update(self.params)
        return vals


# ---------------------------------------------------------------------------
# the lattice


@dataclass
class Lattice:
    x: list            # N coordinate arrays over the grid
    weight: np.ndarray  # measure times deformed Vandermonde
    layer: np.ndarray   # max lattice index, for tail estimates
    q: float


def _one_dim(cfg: NumericModelConfig, M: int):
    """Lattice points, one-particle weights and lattice indices for one coordinate."""
    q, p = cfg.q, cfg.params
    alpha = math.log(p.get("r", 1.0)) / math.log(q)
    power = cfg.beta * (cfg.N - 1) + alpha
    n = np.arange(M)
    if cfg.model == "SI5":
        ends = [(1 / (q * p["u1"]), -1.0), (1 / (q * p["u2"]), 1.0)]
    else:
        ends = [(1 / (q * p["u1"]), 1.0)]
    xs, ws, idx = [], [], []
    for a, sign in ends:
        x = a * q ** n
        if np.any(x < 0) and power != int(power):
            raise InvalidConfig("non-integer power of a negative lattice point")
        w = sign * (1 - q) * x * x ** power
        for i, xi in enumerate(x):
            f = qpoch(q * p["u1"] * xi, q)
            if cfg.model == "SI5":
                f *= qpoch(q * p["u2"] * xi, q)
            if cfg.model == "SI7":
                f /= qpoch(q * p["v1"] * xi, q)
            w[i] *= f
        xs.append(x)
        ws.append(w)
        idx.append(n)
    return np.concatenate(xs), np.concatenate(ws), np.concatenate(idx)


def build_lattice(cfg: NumericModelConfig, M: int) -> Lattice:
    x1, w1, n1 = _one_dim(cfg, M)
    grids = np.meshgrid(*([x1] * cfg.N), indexing="ij")
    wgrid = np.ones_like(grids[0])
    for g in np.meshgrid(*([w1] * cfg.N), indexing="ij"):
        wgrid = wgrid * g
    layer = np.zeros(grids[0].shape, dtype=int)
    for g in np.meshgrid(*([n1] * cfg.N), indexing="ij"):
        layer = np.maximum(layer, g)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(cfg.N):
            for j in range(cfg.N):
                if i == j:
                    continue
                ratio = grids[i] / grids[j]
                for k in range(cfg.beta):
                    wgrid = wgrid * (1 - cfg.q ** k * ratio)
    return Lattice(grids, np.nan_to_num(wgrid), layer, cfg.q)


def _tail_bound(terms: np.ndarray, layer: np.ndarray) -> float:
    """Geometric extrapolation of the absolute layer sums past the cutoff."""
    sums = np.bincount(layer.ravel(), weights=np.abs(terms).ravel())
    last = sums[-3:]
    if last[-1] == 0:
        return 0.0
    rho = max(last[-1] / last[-2] if last[-2] else 1.0, last[-2] / last[-3] if last[-3] else 1.0)
    if rho >= 1:
        return math.inf
    return float(last[-1] * rho / (1 - rho))


def _error_bound(terms: np.ndarray, layer: np.ndarray) -> float:
    """Absolute truncation tail plus a rounding floor for pairwise summation."""
    rounding = (math.log2(terms.size) + 10) * np.finfo(float).eps * float(np.abs(terms).sum())
    return _tail_bound(terms, layer) + rounding


class _NumericSymFn:
    """A SymFn with coefficients evaluated to floats."""

    def __init__(self, f: SymFn, values: dict):
        self.terms = [(mu, complex(c.evalf(values)).real) for mu, c in f.coeffs.items()]

    def on(self, lat: Lattice) -> np.ndarray:
        cache: dict[int, np.ndarray] = {}

        def pk(k):
            if k not in cache:
                cache[k] = sum(x ** k for x in lat.x)
            return cache[k]

        out = np.zeros(lat.weight.shape)
        for mu, c in self.terms:
            term = np.full(lat.weight.shape, c)
            for part in mu:
                term = term * pk(part)
            out = out + term
        return out


@dataclass
class JacksonResult:
    value: float
    abs_error: float  # truncation tail plus rounding floor
    cutoff: int

    @property
    def tail(self) -> float:
        """The error bound relative to |value| (the absolute bound if value is 0)."""
        return self.abs_error / abs(self.value) if self.value else self.abs_error


def jackson_expectation(cfg: NumericModelConfig, f: SymFn | None) -> JacksonResult:
    """<f> as a ratio of two truncated lattice sums; the cutoff doubles until the error is small.

    The stopping rule compares the error with the larger of |<f>| and the absolute
    sum, so observables with a vanishing average still terminate.
    """
    values = cfg.symbolic_values()
    nf = None if f is None else _NumericSymFn(f, values)
    M = 32
    while True:
        lat = build_lattice(cfg, M)
        den_terms = lat.weight
        num_terms = den_terms if nf is None else den_terms * nf.on(lat)
        den, num = den_terms.sum(), num_terms.sum()
        if den == 0:
            raise ConvergenceFailure("vanishing normalisation")
        value = num / den
        err = (_error_bound(num_terms, lat.layer) + abs(value) * _error_bound(den_terms, lat.layer)) / abs(den)
        scale = max(abs(value), float(np.abs(num_terms).sum()) / abs(den))
        if err <= cfg.tail_tol * scale:
            return JacksonResult(float(value), float(err), M)
        if M >= cfg.cutoff:
            raise ConvergenceFailure(f"error {err:.3g} above {cfg.tail_tol:.3g} x {scale:.3g} at cutoff {M}")
        M = min(2 * M, cfg.cutoff)


def jackson_average(cfg: NumericModelConfig, lam: Partition) -> JacksonResult:
    """<P_lam> by Jackson summation, with |lam| <= 3."""
    from .macdonald import build_macdonald
    if sum(lam) > 3:
        raise InvalidConfig("jackson_average supports |lam| <= 3")
    if not lam:
        return jackson_expectation(cfg, None)
    P = build_macdonald(sum(lam)).P[lam]
    return jackson_expectation(cfg, P)


def symbolic_average(cfg: NumericModelConfig, lam: Partition) -> float:
    """The closed formula C_lam P_lam(phi) evaluated at the configuration.

    Q = t^N and t = q^beta are substituted exactly first, so averages that vanish
    at this N (for example l(lam) > N) come out as an exact zero.
    """
    from .models import average
    from .scalars import gens, specialize
    s, = gens("s")
    t = s ** (2 * cfg.beta)
    x = specialize(average(cfg.model, lam), {"t": t, "Q": t ** cfg.N})
    if x.is_zero():
        return 0.0
    return complex(x.evalf(cfg.symbolic_values())).real


def compare(cfg: NumericModelConfig, lam: Partition) -> dict:
    """Both routes at one configuration; relerr falls back to the absolute error when the exact value is 0."""
    res = jackson_average(cfg, lam)
    sym = symbolic_average(cfg, lam)
    relerr = abs(res.value - sym) / abs(sym) if sym else abs(res.value)
    return {"model": cfg.model, "N": cfg.N, "q": cfg.q, "beta": cfg.beta, "params": dict(cfg.params),
            "lambda": list(lam), "numeric": res.value, "symbolic": sym, "relerr": relerr,
            "tailbound": res.tail if sym else res.abs_error, "cutoff": res.cutoff}


def cutoff_doubling(cfg: NumericModelConfig, lam: Partition) -> dict:
    """Change in the average when the fixed cutoff M is doubled, against the tail bound at M."""
    from .macdonald import build_macdonald
    P = None if not lam else _NumericSymFn(build_macdonald(sum(lam)).P[lam], cfg.symbolic_values())
    res = jackson_average(cfg, lam)
    out = {}
    for M in (res.cutoff, 2 * res.cutoff):
        lat = build_lattice(cfg, M)
        num = lat.weight if P is None else lat.weight * P.on(lat)
        out[M] = float(num.sum() / lat.weight.sum())
    change = abs(out[2 * res.cutoff] - out[res.cutoff])
    return {"cutoff": res.cutoff, "change": change, "bound": res.abs_error}


# ---------------------------------------------------------------------------
# orthogonality probe


@lru_cache(maxsize=None)
def _dual_pair(model: str, D: int):
    from .orthopoly import build_dual_pair
    return build_dual_pair(model, D)


def numeric_probe_orthogonality(cfg: NumericModelConfig, lam: Partition, mu: Partition) -> float:
    """<W_lam W_mu> normalised: the correlation for lam != mu, b_lam <W_lam^2> for lam = mu.

    This is an experiment on finite N; nothing here is asserted.
    """
    if sum(lam) > 2 or sum(mu) > 2:
        raise InvalidConfig("probe supports |lam|, |mu| <= 2")
    pair = _dual_pair(cfg.model, 4)
    Wl, Wm = pair.W[lam].with_degree(4), pair.W[mu].with_degree(4)
    if lam == mu:
        v = jackson_expectation(cfg, Wl * Wl).value
        return v * complex(b_norm(lam).evalf(cfg.symbolic_values())).real
    lm = jackson_expectation(cfg, Wl * Wm).value
    ll = jackson_expectation(cfg, Wl * Wl).value
    mm = jackson_expectation(cfg, Wm * Wm).value
    return lm / math.sqrt(abs(ll * mm))
