"""Integer partitions and the q,t-symbols attached to Young diagrams.

A partition is a plain tuple of positive weakly decreasing ints; () is the
empty partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from collections import Counter

from .scalars import ONE, ZERO, Scalar, gens

Partition = tuple[int, ...]

s_, t_ = gens("s", "t")
q_ = s_ ** 2


def make_partition(parts) -> Partition:
    parts = tuple(int(p) for p in parts if int(p) != 0)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"parts must be weakly decreasing: {parts}")
    return parts


def parse_partition(text: str) -> Partition:
    """Parse "3,1,1"; "0" and "" denote the empty partition."""
    text = text.strip()
    if text in ("", "0", "()", "[]"):
        return ()
    return make_partition(int(p) for p in text.strip("()[]").split(","))


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam)) if lam else "0"


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def rec(m, cap):
        if m == 0:
            yield ()
            return
        for first in range(min(m, cap), 0, -1):
            for rest in rec(m - first, first):
                yield (first,) + rest

    return tuple(rec(n, n))


def partitions_upto(D: int) -> tuple[Partition, ...]:
    return tuple(lam for n in range(D + 1) for lam in enumerate_partitions(n))


def size(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def boxes(lam: Partition):
    """Boxes (i, j), 1-based, in row-major order."""
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def n_lambda(lam: Partition) -> int:
    return sum(i * p for i, p in enumerate(lam))


def z_lambda(lam: Partition) -> int:
    out = 1
    for part, mult in Counter(lam).items():
        out *= factorial(mult) * part ** mult
    return out


def contains(lam: Partition, mu: Partition) -> bool:
    """True when the diagram of mu sits inside the diagram of lam."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def add_one_box(lam: Partition) -> list[Partition]:
    out = []
    ext = list(lam) + [0]
    for i in range(len(ext)):
        if i == 0 or ext[i - 1] > ext[i]:
            nu = ext.copy()
            nu[i] += 1
            out.append(make_partition(nu))
    return out


def content(i: int, j: int) -> Scalar:
    return q_ ** (j - 1) * t_ ** (1 - i)


@dataclass(frozen=True)
class Symbols:
    n: int
    z: int
    chi: Scalar
    T: Scalar
    x: Scalar
    u: Scalar
    eps_ratio: Scalar


@lru_cache(maxsize=None)
def symbols(lam: Partition) -> Symbols:
    Q = Scalar.gen("Q")
    chi = ZERO
    T = ONE
    for i, j in boxes(lam):
        c = content(i, j)
        chi = chi + c
        T = T * c
    x = 1 - (1 - q_) * (1 - 1 / t_) * chi
    u = (1 - Q * x) / (1 - t_)
    # eps_lam / eps_empty with eps_lam = sum_i q^{lam_i} t^{-i}; eps_empty = 1/(t-1)
    tail = ZERO
    for i, p in enumerate(lam, start=1):
        tail = tail + (q_ ** p - 1) * t_ ** (-i)
    eps_ratio = 1 + (t_ - 1) * tail
    return Symbols(n_lambda(lam), z_lambda(lam), chi, T, x, u, eps_ratio)


def framing_eigenvalue(lam: Partition) -> Scalar:
    """T_lam = q^{n(lam')} t^{-n(lam)}."""
    return q_ ** n_lambda(conjugate(lam)) * t_ ** (-n_lambda(lam))


@lru_cache(maxsize=None)
def b_norm(lam: Partition) -> Scalar:
    """prod over boxes of (1 - q^{a} t^{l+1}) / (1 - q^{a+1} t^{l}), a = arm, l = leg."""
    lc = conjugate(lam)
    out = ONE
    for i, j in boxes(lam):
        arm = lam[i - 1] - j
        leg = lc[j - 1] - i
        out = out * (1 - q_ ** arm * t_ ** (leg + 1)) / (1 - q_ ** (arm + 1) * t_ ** leg)
    return out


def delta_eigenvalue(lam: Partition, sign: int, z: Scalar | str) -> Scalar:
    """prod over boxes of (1 - z * chi^{sign})."""
    if isinstance(z, str):
        z = Scalar.gen(z)
    out = ONE
    for i, j in boxes(lam):
        c = content(i, j)
        out = out * (1 - z * (c if sign > 0 else 1 / c))
    return out
