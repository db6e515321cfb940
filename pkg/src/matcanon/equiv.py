"""Canonical forms under U- and B-equivalence, ``Y = h' X k``.

Rows are processed top to bottom.  The leftmost nonzero entry of the current
row is the pivot; entries below it are cleared with row operations (row
``i`` added to a later row, a lower unitriangular left factor ``h'``) and
entries to its right with column operations (pivot column added to a later
column, an upper unitriangular ``k``).  For B the pivots are then scaled to 1.
The result is a sub-permutation matrix, unique in its orbit.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, FieldMismatch
from .matrix import Matrix


@dataclass(frozen=True)
class EquivWitness:
    h: Matrix
    k: Matrix
    group: str  # "U" or "B"

    def check(self, x: Matrix, y: Matrix) -> bool:
        """``h' X k == Y`` with ``h, k`` in the claimed group."""
        unit = self.group == "U"
        return (self.h.is_upper_triangular(unit) and self.k.is_upper_triangular(unit)
                and self.h.is_invertible() and self.k.is_invertible()
                and self.h.T @ x @ self.k == y)


def _identity_rows(ctx, n):
    z, o = ctx.zero, ctx.one
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def _eliminate(x: Matrix, scale: bool, with_witness: bool):
    ctx = x.ctx
    n = x.n
    z = ctx.zero
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    a = [list(r) for r in x.rows]
    # left = h' (accumulates row operations), right = k (column operations)
    left = _identity_rows(ctx, n) if with_witness else None
    right = _identity_rows(ctx, n) if with_witness else None
    for i in range(n):
        row = a[i]
        j = next((c for c in range(n) if row[c] != z), None)
        if j is None:
            continue
        pinv = inv(row[j])
        for r in range(i + 1, n):
            v = a[r][j]
            if v == z:
                continue
            c = neg(mul(v, pinv))
            ar = a[r]
            for t in range(j, n):
                if row[t] != z:
                    ar[t] = add(ar[t], mul(c, row[t]))
            if left is not None:
                lr, li = left[r], left[i]
                for t in range(n):
                    if li[t] != z:
                        lr[t] = add(lr[t], mul(c, li[t]))
        # column j is now zero below row i and (by construction) above it,
        # so column operations only touch row i
        for t in range(j + 1, n):
            v = row[t]
            if v == z:
                continue
            c = neg(mul(v, pinv))
            row[t] = z
            if right is not None:
                for rr in right:
                    if rr[j] != z:
                        rr[t] = add(rr[t], mul(c, rr[j]))
        if scale and row[j] != ctx.one:
            if left is not None:
                left[i] = [mul(pinv, v) for v in left[i]]
            row[j] = ctx.one
    y = Matrix(ctx, a)
    if not with_witness:
        return y, None
    return y, EquivWitness(Matrix(ctx, left).T, Matrix(ctx, right), "B" if scale else "U")


def b_equiv_canonical(x: Matrix, with_witness: bool = True):
    """The unique sub-permutation (0,1)-matrix ``Y = h' X k``, ``h, k`` in B."""
    return _eliminate(x, True, with_witness)


def u_equiv_canonical(x: Matrix, with_witness: bool = True):
    """The unique sub-permutation matrix ``Y = h' X k``, ``h, k`` in U."""
    return _eliminate(x, False, with_witness)


def _check_pair(a: Matrix, b: Matrix):
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx.spec} vs {b.ctx.spec}")
    if a.n != b.n:
        raise DimensionMismatch(f"{a.n} vs {b.n}")


def b_equivalent(a: Matrix, b: Matrix) -> bool:
    _check_pair(a, b)
    return b_equiv_canonical(a, False)[0] == b_equiv_canonical(b, False)[0]


def u_equivalent(a: Matrix, b: Matrix) -> bool:
    _check_pair(a, b)
    return u_equiv_canonical(a, False)[0] == u_equiv_canonical(b, False)[0]
