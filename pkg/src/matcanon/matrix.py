"""Dense square matrices over a :class:`~matcanon.field.FieldCtx`.

Entries are stored as raw field values (see :mod:`matcanon.field`) in a tuple
of row tuples, so a :class:`Matrix` is an immutable, hashable value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotSubPermutation, ParseError
from .field import FieldCtx, FieldElem, PrimeField, field_from_spec


class Matrix:
    __slots__ = ("ctx", "rows", "_hash")

    def __init__(self, ctx: FieldCtx, rows: Iterable[Iterable]):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrices must be square")
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_values(cls, ctx: FieldCtx, values: Sequence[Sequence]) -> "Matrix":
        """Build from ints, text tokens or :class:`FieldElem` entries."""
        return cls(ctx, [[ctx.coerce(v) for v in row] for row in values])

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "Matrix":
        z = ctx.zero
        return cls(ctx, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Matrix":
        return cls.diagonal(ctx, [ctx.one] * n)

    @classmethod
    def diagonal(cls, ctx: FieldCtx, diag: Sequence) -> "Matrix":
        diag = [ctx.coerce(v) for v in diag]
        n = len(diag)
        z = ctx.zero
        return cls(ctx, [[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def antidiagonal(cls, ctx: FieldCtx, n: int) -> "Matrix":
        z, o = ctx.zero, ctx.one
        return cls(ctx, [[o if i + j == n - 1 else z for j in range(n)] for i in range(n)])

    # -- basic protocol ---------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def elem(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.ctx, self.rows[i][j])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.ctx.format(v) for v in r) for r in self.rows)
        return f"Matrix({self.ctx.spec}, [{body}])"

    def __str__(self):
        return "\n".join(" ".join(self.ctx.format(v) for v in r) for r in self.rows)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ctx, zip(*self.rows))

    transpose = T

    def _check_same(self, other: "Matrix"):
        if other.ctx != self.ctx:
            raise FieldMismatch(f"{self.ctx.spec} vs {other.ctx.spec}")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        ctx = self.ctx
        add, mul, z = ctx.add, ctx.mul, ctx.zero
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a != z and b != z:
                        acc = add(acc, mul(a, b))
                new.append(acc)
            out.append(new)
        return Matrix(ctx, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        add = self.ctx.add
        return Matrix(self.ctx, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.ctx.neg
        return Matrix(self.ctx, [[neg(a) for a in r] for r in self.rows])

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        z = self.ctx.zero
        return all(v == z for r in self.rows for v in r)

    def is_symmetric(self) -> bool:
        rows = self.rows
        n = len(rows)
        return all(rows[i][j] == rows[j][i] for i in range(n) for j in range(i + 1, n))

    def is_alternating(self) -> bool:
        """``X' = -X`` with zero diagonal (correct in characteristic 2 too)."""
        rows, ctx = self.rows, self.ctx
        n = len(rows)
        z, neg = ctx.zero, ctx.neg
        if any(rows[i][i] != z for i in range(n)):
            return False
        return all(rows[j][i] == neg(rows[i][j]) for i in range(n) for j in range(i + 1, n))

    def is_upper_triangular(self, unit: bool = False) -> bool:
        rows, z = self.rows, self.ctx.zero
        n = len(rows)
        if any(rows[i][j] != z for i in range(n) for j in range(i)):
            return False
        if unit:
            return all(rows[i][i] == self.ctx.one for i in range(n))
        return True

    def is_invertible(self) -> bool:
        return rank(self) == self.n

    def is_sub_permutation(self) -> bool:
        z = self.ctx.zero
        for line in (self.rows, zip(*self.rows)):
            for r in line:
                if sum(v != z for v in r) > 1:
                    return False
        return True

    def is_zero_one(self) -> bool:
        z, o = self.ctx.zero, self.ctx.one
        return all(v == z or v == o for r in self.rows for v in r)

    # -- text format ------------------------------------------------------
    def dumps(self) -> str:
        return f"field {self.ctx.spec}\nn {self.n}\n{self}\n"

    @classmethod
    def loads(cls, text: str) -> "Matrix":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if len(lines) < 2 or not lines[0].startswith("field ") or not lines[1].startswith("n "):
            raise ParseError("expected 'field <spec>' and 'n <n>' header lines")
        ctx = field_from_spec(lines[0][6:])
        try:
            n = int(lines[1][2:])
        except ValueError:
            raise ParseError(f"bad dimension line {lines[1]!r}") from None
        if n < 1:
            raise ParseError("n must be positive")
        body = lines[2:]
        if len(body) != n:
            raise ParseError(f"expected {n} rows, found {len(body)}")
        rows = []
        for ln in body:
            tokens = ln.split()
            if len(tokens) != n:
                raise ParseError(f"expected {n} entries in row {ln!r}")
            rows.append([ctx.parse(t) for t in tokens])
        return cls(ctx, rows)


def read_matrix(path) -> Matrix:
    with open(path) as fh:
        return Matrix.loads(fh.read())


def write_matrix(path, m: Matrix):
    with open(path, "w") as fh:
        fh.write(m.dumps())


def _is_gf2(ctx: FieldCtx) -> bool:
    return isinstance(ctx, PrimeField) and ctx.p == 2


def _rank_gf2(rows: Sequence[int]) -> int:
    """Rank of GF(2) rows packed into ints (xor basis keyed by leading bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return len(basis)


def _rank_rows(ctx: FieldCtx, rows: list[list]) -> int:
    if not rows or not rows[0]:
        return 0
    if _is_gf2(ctx):
        return _rank_gf2([int("".join(map(str, r)), 2) for r in rows])
    z = ctx.zero
    add, mul, neg, inv = ctx.add, ctx.mul, ctx.neg, ctx.inv
    work = [list(r) for r in rows]
    m, ncols = len(work), len(work[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if work[i][c] != z), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pinv = inv(work[r][c])
        for i in range(r + 1, m):
            if work[i][c] != z:
                f = neg(mul(work[i][c], pinv))
                row_r, row_i = work[r], work[i]
                for k in range(c, ncols):
                    if row_r[k] != z:
                        row_i[k] = add(row_i[k], mul(f, row_r[k]))
        r += 1
        if r == m:
            break
    return r


def rank(a: Matrix) -> int:
    """Rank by exact Gaussian elimination."""
    return _rank_rows(a.ctx, [list(r) for r in a.rows])


def top_left_rank(a: Matrix, rows: int, cols: int) -> int:
    """Rank of the top-left ``rows`` x ``cols`` block; 0 when either is 0."""
    if rows <= 0 or cols <= 0:
        return 0
    if rows > a.n or cols > a.n:
        raise DimensionMismatch(f"block {rows}x{cols} exceeds n={a.n}")
    return _rank_rows(a.ctx, [list(r[:cols]) for r in a.rows[:rows]])


def rank_profile(a: Matrix) -> list[list[int]]:
    """``out[r][c]`` = rank of the top-left ``r`` x ``c`` block, 0 <= r, c <= n."""
    n = a.n
    out = [[0] * (n + 1) for _ in range(n + 1)]
    if _is_gf2(a.ctx):
        for c in range(1, n + 1):
            packed = [int("".join(map(str, row[:c])), 2) for row in a.rows]
            for r in range(1, n + 1):
                out[r][c] = _rank_gf2(packed[:r])
        return out
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            out[r][c] = top_left_rank(a, r, c)
    return out


# ---------------------------------------------------------------------------
# pseudo-permutation structure


@dataclass(frozen=True)
class PairStructure:
    """X-pairs ``(i, j)``, X-indices ``s`` and the problematic pairs (0-based)."""

    pairs: tuple[tuple[int, int], ...]
    indices: tuple[int, ...]
    problematic: tuple[tuple[int, int], ...]

    def inside(self, pair):
        """X-pairs strictly inside ``pair``."""
        i, j = pair
        return [(k, l) for k, l in self.pairs if i < k < l < j]

    def interior(self, pair):
        i, j = pair
        return [s for s in self.indices if i < s < j]


def is_pseudo_permutation(a: Matrix) -> bool:
    if not a.is_symmetric():
        return False
    z = a.ctx.zero
    n = a.n
    for j in range(n):
        nz = [i for i in range(n) if a.rows[i][j] != z]
        if len(nz) <= 1:
            continue
        if len(nz) > 2 or nz[1] != j or nz[0] >= j:
            return False
    return True


def pair_structure(a: Matrix) -> PairStructure:
    """Pair/index bookkeeping of a pseudo-permutation (no validity check)."""
    z = a.ctx.zero
    rows, n = a.rows, a.n
    pairs = []
    indices = []
    for j in range(n):
        if rows[j][j] == z:
            continue
        partner = [i for i in range(j) if rows[i][j] != z]
        if partner:
            pairs.append((partner[0], j))
        elif all(rows[i][j] == z for i in range(n) if i != j):
            indices.append(j)
    problematic = []
    for i, j in pairs:
        if any(i < k < l < j for k, l in pairs) or any(i < s < j for s in indices):
            problematic.append((i, j))
    return PairStructure(tuple(pairs), tuple(indices), tuple(problematic))


@dataclass(frozen=True)
class Flags:
    symmetric: bool
    alternating: bool
    sub_permutation: bool
    zero_one: bool
    one_minus_one: bool
    pseudo_permutation: bool
    specialized_pseudo_permutation: bool


def is_one_minus_one(a: Matrix) -> bool:
    """Alternating sub-permutation whose nonzero entries above the diagonal are 1."""
    if not (a.is_alternating() and a.is_sub_permutation()):
        return False
    z, o = a.ctx.zero, a.ctx.one
    n = a.n
    return all(a.rows[i][j] in (z, o) for i in range(n) for j in range(i + 1, n))


def classify(a: Matrix) -> Flags:
    pseudo = is_pseudo_permutation(a)
    specialized = pseudo and not pair_structure(a).problematic
    return Flags(
        symmetric=a.is_symmetric(),
        alternating=a.is_alternating(),
        sub_permutation=a.is_sub_permutation(),
        zero_one=a.is_zero_one(),
        one_minus_one=is_one_minus_one(a),
        pseudo_permutation=pseudo,
        specialized_pseudo_permutation=specialized,
    )


# ---------------------------------------------------------------------------
# couples


@dataclass(frozen=True)
class SubPermCouple:
    """``X e_i = f[i] e_{sigma[i]}`` with 0-based indices; ``f`` holds raw values."""

    ctx: FieldCtx
    f: tuple
    sigma: tuple[int, ...]

    @property
    def support(self) -> frozenset[int]:
        z = self.ctx.zero
        return frozenset(i for i, v in enumerate(self.f) if v != z)

    def to_matrix(self) -> Matrix:
        n = len(self.f)
        rows = [[self.ctx.zero] * n for _ in range(n)]
        for i, (v, s) in enumerate(zip(self.f, self.sigma)):
            if v != self.ctx.zero:
                rows[s][i] = v
        return Matrix(self.ctx, rows)

    def order(self) -> int:
        k, p = 1, list(self.sigma)
        ident = list(range(len(p)))
        while p != ident:
            p = [self.sigma[x] for x in p]
            k += 1
        return k


def couple(a: Matrix) -> SubPermCouple:
    """The couple ``(f, sigma)`` of a sub-permutation matrix.

    Off the support, ``sigma`` fixes every index when ``a`` is symmetric or
    alternating and otherwise pairs the unused columns with the unused rows
    in increasing order.
    """
    if not a.is_sub_permutation():
        raise NotSubPermutation("couple() needs a sub-permutation matrix")
    n, z = a.n, a.ctx.zero
    f = [z] * n
    sigma: list = [None] * n
    for i in range(n):
        for r in range(n):
            if a.rows[r][i] != z:
                f[i] = a.rows[r][i]
                sigma[i] = r
    if a.is_symmetric() or a.is_alternating():
        sigma = [i if s is None else s for i, s in enumerate(sigma)]
    else:
        free_rows = iter(sorted(set(range(n)) - {s for s in sigma if s is not None}))
        sigma = [next(free_rows) if s is None else s for s in sigma]
    return SubPermCouple(a.ctx, tuple(f), tuple(sigma))


def permutation_matrix(ctx: FieldCtx, perm: Sequence[int]) -> Matrix:
    """Matrix ``w`` with ``w e_i = e_{perm[i]}``."""
    n = len(perm)
    rows = [[ctx.zero] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[p][i] = ctx.one
    return Matrix(ctx, rows)
