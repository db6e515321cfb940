"""Canonical forms under U- and B-congruence, ``Y = u' X u``.

Symmetric matrices in characteristic != 2 and alternating matrices in any
characteristic reduce to sub-permutation matrices.  Symmetric matrices in
characteristic 2 (over a perfect field) reduce to specialized
pseudo-permutations: a first pass leaves behind the diagonal entries that a
congruence cannot kill, a second pass removes problematic pairs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import Char2, NotAlternating, NotChar2, NotPseudoPermutation, NotSymmetric
from .matrix import Matrix, is_pseudo_permutation, pair_structure

__all__ = [
    "CongrWitness", "u_congr_canonical_sym", "u_congr_canonical_alt",
    "b_congr_canonical_sym", "b_congr_canonical_alt", "u_congr_canonical_sym_char2",
    "b_congr_canonical_sym_char2", "hat", "u_congr_canonical", "b_congr_canonical",
]


@dataclass(frozen=True)
class CongrWitness:
    u: Matrix
    group: str  # "U" or "B"

    def check(self, x: Matrix, y: Matrix) -> bool:
        u = self.u
        return (u.is_upper_triangular(self.group == "U") and u.is_invertible()
                and u.T @ x @ u == y)


class _Work:
    """Mutable working copy plus the accumulated right factor ``u``."""

    def __init__(self, x: Matrix, with_witness: bool):
        self.ctx = ctx = x.ctx
        self.n = x.n
        self.a = [list(r) for r in x.rows]
        z, o = ctx.zero, ctx.one
        self.u = ([[o if i == j else z for j in range(self.n)] for i in range(self.n)]
                  if with_witness else None)

    def add(self, i: int, k: int, c):
        """Congruence by ``I + c E_ik`` (``i < k``): row k += c row i, col k += c col i."""
        assert i < k
        ctx = self.ctx
        add, mul, z = ctx.add, ctx.mul, ctx.zero
        a = self.a
        ri, rk = a[i], a[k]
        for t in range(self.n):
            if ri[t] != z:
                rk[t] = add(rk[t], mul(c, ri[t]))
        for row in a:
            if row[i] != z:
                row[k] = add(row[k], mul(c, row[i]))
        if self.u is not None:
            for row in self.u:
                if row[i] != z:
                    row[k] = add(row[k], mul(c, row[i]))

    def scale(self, d: list):
        """Congruence by ``diag(d)``."""
        mul = self.ctx.mul
        n = self.n
        self.a = [[mul(mul(d[i], self.a[i][j]), d[j]) for j in range(n)] for i in range(n)]
        if self.u is not None:
            self.u = [[mul(self.u[i][j], d[j]) for j in range(n)] for i in range(n)]

    def result(self, group: str):
        y = Matrix(self.ctx, self.a)
        if self.u is None:
            return y, None
        return y, CongrWitness(Matrix(self.ctx, self.u), group)


def _reduce(w: _Work, kill_diagonal: bool):
    """Symmetric elimination down to a sub-permutation (or, when the diagonal
    of a pair partner cannot be killed, a pseudo-permutation)."""
    ctx, a, n = w.ctx, w.a, w.n
    z = ctx.zero
    mul, neg, inv = ctx.mul, ctx.neg, ctx.inv
    used = [False] * n
    for i in range(n):
        if used[i]:
            continue
        row = a[i]
        j = next((c for c in range(n) if row[c] != z), None)
        if j is None:
            continue
        assert j >= i, "entries left of the diagonal should already be cleared"
        pinv = inv(row[j])
        if j == i:
            for k in range(i + 1, n):
                if row[k] != z:
                    w.add(i, k, neg(mul(row[k], pinv)))
            used[i] = True
            continue
        for l in range(j + 1, n):
            if row[l] != z:
                w.add(j, l, neg(mul(row[l], pinv)))
        for k in range(i + 1, n):
            if k != j and a[k][j] != z:
                w.add(i, k, neg(mul(a[k][j], pinv)))
        if a[j][j] != z and kill_diagonal:
            w.add(i, j, neg(ctx.div(a[j][j], ctx.add(row[j], row[j]))))
        used[i] = used[j] = True


def _clear_pairs(w: _Work):
    """Remove problematic pairs of a char-2 pseudo-permutation, one at a time."""
    ctx = w.ctx
    z = ctx.zero
    while True:
        ps = pair_structure(Matrix(ctx, w.a))
        if not ps.problematic:
            return
        i, j = min(ps.problematic, key=lambda p: (p[1], p[0]))
        a = w.a
        inside = ps.inside((i, j))
        s = inside[0][1] if inside else ps.interior((i, j))[0]
        # a^2 * Z_ss = Z_jj kills the (j, j) entry in characteristic 2
        w.add(s, j, ctx.sqrt(ctx.div(a[j][j], a[s][s])))
        assert a[j][j] == z
        pivot = a[i][j]
        for t in range(w.n):
            if t not in (i, j) and a[j][t] != z:
                w.add(i, t, ctx.neg(ctx.div(a[j][t], pivot)))
        after = pair_structure(Matrix(ctx, w.a))
        assert len(after.pairs) < len(ps.pairs), "pair elimination made no progress"


def _require_symmetric(x: Matrix):
    if not x.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")


def _require_alternating(x: Matrix):
    if not x.is_alternating():
        raise NotAlternating("matrix is not alternating")


def u_congr_canonical_sym(x: Matrix, with_witness: bool = True):
    """Symmetric, char != 2: the unique sub-permutation ``u' X u``, ``u`` in U."""
    _require_symmetric(x)
    if x.ctx.char == 2:
        raise Char2("characteristic 2: use u_congr_canonical_sym_char2")
    w = _Work(x, with_witness)
    _reduce(w, kill_diagonal=True)
    return w.result("U")


def u_congr_canonical_alt(x: Matrix, with_witness: bool = True):
    _require_alternating(x)
    w = _Work(x, with_witness)
    _reduce(w, kill_diagonal=True)
    return w.result("U")


def _unit_scaling(ctx, a, n) -> list:
    """Diagonal ``d`` with ``d_i a_ij d_j`` equal to 1 on every couple above
    (or on) the diagonal.  Diagonal entries fix ``d_j`` via a square root;
    off-diagonal couple entries are then matched by ``d_i``."""
    z, one = ctx.zero, ctx.one
    d = [one] * n
    for j in range(n):
        if a[j][j] != z:
            d[j] = ctx.inv(ctx.sqrt(a[j][j]))
    for j in range(n):
        for i in range(j):
            if a[i][j] != z:
                if a[j][j] != z:
                    d[i] = ctx.inv(ctx.mul(a[i][j], d[j]))
                else:
                    d[j] = ctx.inv(a[i][j])
    return d


def b_congr_canonical_sym(x: Matrix, with_witness: bool = True):
    """Symmetric, char != 2, square roots available: the unique symmetric
    sub-permutation (0,1)-matrix in the B-congruence class."""
    _require_symmetric(x)
    if x.ctx.char == 2:
        raise Char2("characteristic 2: use b_congr_canonical_sym_char2")
    w = _Work(x, with_witness)
    _reduce(w, kill_diagonal=True)
    w.scale(_unit_scaling(w.ctx, w.a, w.n))
    return w.result("B")


def b_congr_canonical_alt(x: Matrix, with_witness: bool = True):
    """Alternating: the unique (1,-1)-matrix in the B-congruence class."""
    _require_alternating(x)
    w = _Work(x, with_witness)
    _reduce(w, kill_diagonal=True)
    w.scale(_unit_scaling(w.ctx, w.a, w.n))
    return w.result("B")


def _require_char2_sym(x: Matrix):
    _require_symmetric(x)
    if x.ctx.char != 2:
        raise NotChar2("characteristic-2 canonical form requested for odd characteristic")


def u_congr_canonical_sym_char2(x: Matrix, with_witness: bool = True):
    """Symmetric, char 2, perfect field: the unique specialized
    pseudo-permutation in the U-congruence class."""
    _require_char2_sym(x)
    w = _Work(x, with_witness)
    _reduce(w, kill_diagonal=False)
    _clear_pairs(w)
    return w.result("U")


def b_congr_canonical_sym_char2(x: Matrix, with_witness: bool = True):
    """As :func:`u_congr_canonical_sym_char2`, then scaled to a (0,1)-matrix."""
    _require_char2_sym(x)
    w = _Work(x, with_witness)
    _reduce(w, kill_diagonal=False)
    _clear_pairs(w)
    w.scale(_unit_scaling(w.ctx, w.a, w.n))
    return w.result("B")


def hat(y: Matrix) -> Matrix:
    """Zero the ``(j, j)`` entry of every pair ``(i, j)``; the result is a
    sub-permutation equivalent (not congruent) to ``y``."""
    if not is_pseudo_permutation(y):
        raise NotPseudoPermutation("hat() needs a pseudo-permutation")
    rows = [list(r) for r in y.rows]
    for _, j in pair_structure(y).pairs:
        rows[j][j] = y.ctx.zero
    return Matrix(y.ctx, rows)


def u_congr_canonical(x: Matrix, with_witness: bool = True):
    """Dispatch on the matrix class and characteristic."""
    if x.is_alternating():
        return u_congr_canonical_alt(x, with_witness)
    if not x.is_symmetric():
        raise NotSymmetric("congruence canonical forms need a symmetric or alternating matrix")
    if x.ctx.char == 2:
        return u_congr_canonical_sym_char2(x, with_witness)
    return u_congr_canonical_sym(x, with_witness)


def b_congr_canonical(x: Matrix, with_witness: bool = True):
    if x.is_alternating():
        return b_congr_canonical_alt(x, with_witness)
    if not x.is_symmetric():
        raise NotSymmetric("congruence canonical forms need a symmetric or alternating matrix")
    if x.ctx.char == 2:
        return b_congr_canonical_sym_char2(x, with_witness)
    return b_congr_canonical_sym(x, with_witness)
