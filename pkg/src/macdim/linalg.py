"""Fraction-free (Bareiss) elimination over the polynomial ring."""

from __future__ import annotations

from .errors import DegenerateSpectrum
from .scalars import ONE, ZERO, Scalar


def _clear_row(row: list[Scalar]):
    """Scale a row of Scalars to polynomial numerators sharing one denominator."""
    if not row:
        return []
    ctx = row[0].ctx
    for x in row[1:]:
        if x.ctx is not ctx:
            from .scalars import _union_ctx
            ctx = _union_ctx(ctx, x.ctx)
    row = [x.lift(ctx) for x in row]
    lcm = ctx.constant(1)
    for x in row:
        if not x.den.is_one():
            g = lcm.gcd(x.den)
            lcm = lcm * (x.den // g)
    return [x.num * (lcm // x.den) for x in row]


def nullspace_vector(matrix: list[list[Scalar]]) -> list[Scalar]:
    """A nonzero kernel vector of a square matrix of corank one.

    Rows are cleared of denominators, Bareiss elimination brings the matrix to
    echelon form with exact polynomial divisions, and the single free column is
    set to 1 before back substitution in the fraction field.
    """
    n = len(matrix)
    if n == 0:
        return []
    rows = [_clear_row(r) for r in matrix]
    ctx = rows[0][0].context()
    for r in rows:
        for x in r:
            if x.context() is not ctx:
                from .scalars import _union_ctx
                ctx = _union_ctx(ctx, x.context())
    rows = [[x.project_to_context(ctx) for x in r] for r in rows]
    prev = ctx.constant(1)
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, n):
            if not rows[i][col].is_zero():
                if piv is None or len(rows[i][col]) < len(rows[piv][col]):
                    piv = i
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, n):
            a = rows[i][col]
            new = [ctx.from_dict({})] * col
            for j in range(col, n):
                v = p * rows[i][j] - a * rows[rank][j]
                new.append(v // prev if not prev.is_one() else v)
            rows[i] = new
        prev = p
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise DegenerateSpectrum(f"expected a one-dimensional kernel, found dimension {len(free)}")
    sol: list[Scalar | None] = [None] * n
    sol[free[0]] = ONE
    for r in range(rank - 1, -1, -1):
        col = pivots[r]
        acc = ZERO
        for j in range(col + 1, n):
            if sol[j] is not None and not rows[r][j].is_zero():
                acc = acc + Scalar(rows[r][j]) * sol[j]
        sol[col] = -acc / Scalar(rows[r][col])
    return [x if x is not None else ZERO for x in sol]


def rank(matrix: list[list[Scalar]]) -> int:
    """Rank over the fraction field."""
    if not matrix:
        return 0
    rows = [_clear_row(r) for r in matrix]
    from .scalars import _union_ctx
    ctx = rows[0][0].context()
    for r in rows:
        for x in r:
            ctx = _union_ctx(ctx, x.context()) if x.context() is not ctx else ctx
    rows = [[x.project_to_context(ctx) for x in r] for r in rows]
    m, n = len(rows), len(rows[0])
    prev = ctx.constant(1)
    rk = 0
    for col in range(n):
        piv = next((i for i in range(rk, m) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        for i in range(rk + 1, m):
            a = rows[i][col]
            rows[i] = [(p * rows[i][j] - a * rows[rk][j]) // prev for j in range(n)]
        prev = p
        rk += 1
    return rk
