"""Quick randomized property checks on the core layers, for `macdim selftest`."""

from __future__ import annotations

import random

from .fockops import LinOp, commutator, op_difference, p_op, p_perp_op
from .partitions import b_norm, conjugate, enumerate_partitions, framing_eigenvalue, size
from .scalars import ONE, Scalar, gens, parse
from .symfunc import SymFn, inner_product, p_derivative, perp_factor

s, t, Q, r = gens("s", "t", "Q", "r")
POOL = [s, t, Q, r, ONE, Scalar.const(2), 1 - t, s * t - Q, 1 / (1 - s ** 2)]


def _rand_scalar(rng: random.Random) -> Scalar:
    x = rng.choice(POOL)
    for _ in range(rng.randint(0, 2)):
        y = rng.choice(POOL)
        x = x * y if rng.random() < 0.5 else x + y
    return x


def _rand_symfn(rng: random.Random, D: int) -> SymFn:
    coeffs = {}
    for _ in range(3):
        mu = rng.choice(enumerate_partitions(rng.randint(0, D)))
        coeffs[mu] = _rand_scalar(rng)
    return SymFn(coeffs, 2 * D)


def check_scalars(rng, trials=30) -> bool:
    for _ in range(trials):
        a, b, c = (_rand_scalar(rng) for _ in range(3))
        if not (a * (b + c) - a * b - a * c).is_zero():
            return False
        if not (b.is_zero() or (a / b * b - a).is_zero()):
            return False
        if not (parse(str(a)) - a).is_zero():
            return False
    return True


def check_partitions(rng, trials=30) -> bool:
    for _ in range(trials):
        lam = rng.choice(enumerate_partitions(rng.randint(0, 7)))
        if conjugate(conjugate(lam)) != lam or size(conjugate(lam)) != size(lam):
            return False
        if b_norm(lam).is_zero() or framing_eigenvalue(lam).is_zero():
            return False
    return True


def check_symfunc(rng, trials=15) -> bool:
    for _ in range(trials):
        f, g = _rand_symfn(rng, 3), _rand_symfn(rng, 3)
        k = rng.randint(1, 3)
        lhs = p_derivative(f * g, k)
        rhs = p_derivative(f, k) * g + f * p_derivative(g, k)
        if not (lhs - rhs).is_zero():
            return False
        if not (inner_product(f, g) - inner_product(g, f)).is_zero():
            return False
    return True


def check_fockops(rng, D=4) -> bool:
    for k in range(1, D + 1):
        for j in range(1, D + 1):
            C = commutator(p_perp_op(k, D), p_op(j, D))
            I = LinOp.identity(D) * perp_factor(k) if j == k else LinOp.zero(D)
            if op_difference(C, I, D - max(j, k), D - max(j, k)) is not None:
                return False
    return True


SUITES = {"scalars": check_scalars, "partitions": check_partitions,
          "symfunc": check_symfunc, "fockops": check_fockops}


def run(seed: int = 0) -> list[dict]:
    out = []
    for name, fn in SUITES.items():
        ok = fn(random.Random(seed))
        out.append({"check": f"selftest.{name}", "model": None, "degree_range": None,
                    "status": "pass" if ok else "fail", "detail": None})
    return out
