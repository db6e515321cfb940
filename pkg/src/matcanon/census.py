"""Orbit counts: the two recurrences, enumeration of canonical shapes, and a
brute-force orbit partition used as the independent oracle.

The brute-force oracle enumerates a whole matrix class over a small finite
field as integer indices (row-major free entries read as base-q digits, so
index order is lexicographic order), applies every group generator to all
matrices at once with numpy table lookups, and merges the resulting
permutation graph into connected components.  The representative of an
orbit is its smallest index, i.e. its lexicographically least member.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .errors import BudgetExceeded, TooLarge
from .field import BinaryField, FieldCtx, PrimeField, field_from_spec
from .matrix import Matrix, is_pseudo_permutation, pair_structure
from .parabolic import ParabolicDescriptor, borel

DEFAULT_BUDGET = 1 << 30
GROUPS = ("U", "B", "P", "trivial")
RELATIONS = ("equivalence", "congruence")
CLASSES = ("all", "symmetric", "alternating")


# ---------------------------------------------------------------------------
# recurrences


@lru_cache(maxsize=None)
def _alt(n: int) -> int:
    a, b = 1, 1  # C(0), C(1)
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b if n else a


def count_alt_orbits(n: int) -> int:
    """B-congruence orbits of n x n alternating matrices:
    ``C(n) = C(n-1) + (n-1) C(n-2)``, ``C(0) = C(1) = 1``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _alt(n)


def count_sym_orbits(n: int) -> int:
    """B-congruence orbits of symmetric matrices (char != 2, square-closed
    field): ``D(n) = 2 D(n-1) + (n-1) D(n-2)``, ``D(0) = 1, D(1) = 2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    a, b = 1, 2
    for k in range(2, n + 1):
        a, b = b, 2 * b + (k - 1) * a
    return b


# ---------------------------------------------------------------------------
# canonical shapes

CANFORM_KINDS = ("alt_one_minus_one", "sym_zero_one_subperm",
                 "specialized_pseudo_perm", "specialized_pseudo_perm_01")


def _shapes(n: int, kind: str, nonzero: list) -> Iterator[dict]:
    """Yield ``{(i, j): value}`` upper-triangle supports, one index at a time."""

    def rec(i: int, free: frozenset, acc: dict):
        while i < n and i not in free:
            i += 1
        if i == n:
            yield dict(acc)
            return
        rest = free - {i}
        yield from rec(i + 1, rest, acc)  # index unused
        if kind != "alt_one_minus_one":
            for v in nonzero:  # diagonal index
                acc[(i, i)] = v
                yield from rec(i + 1, rest, acc)
                del acc[(i, i)]
        for j in sorted(rest):
            for v in nonzero:
                acc[(i, j)] = v
                yield from rec(i + 1, rest - {j}, acc)
                if kind.startswith("specialized"):
                    for dv in nonzero:  # pair with a nonzero (j, j)
                        acc[(j, j)] = dv
                        yield from rec(i + 1, rest - {j}, acc)
                        del acc[(j, j)]
                del acc[(i, j)]

    yield from rec(0, frozenset(range(n)), {})


def enumerate_canforms(n: int, kind: str, field: FieldCtx | str | None = None):
    """All canonical-shape matrices of ``kind``; returns ``(count, matrices)``.

    * ``alt_one_minus_one`` -- (1,-1)-matrices (B-congruence, alternating).
    * ``sym_zero_one_subperm`` -- symmetric sub-permutation (0,1)-matrices.
    * ``specialized_pseudo_perm`` -- specialized pseudo-permutations with
      arbitrary nonzero values from ``field`` (U-congruence, char 2).
    * ``specialized_pseudo_perm_01`` -- the (0,1) ones (B-congruence, char 2).
    """
    if kind not in CANFORM_KINDS:
        raise ValueError(f"unknown canonical-form kind {kind!r}")
    if n > 8:
        raise TooLarge(f"enumeration is limited to n <= 8, got {n}")
    if isinstance(field, str):
        field = field_from_spec(field)
    if field is None:
        if kind.startswith("specialized"):
            raise ValueError("specialized pseudo-permutations need an explicit field")
        field = PrimeField(3)
    if kind == "specialized_pseudo_perm":
        if field.order is None:
            raise TooLarge("cannot enumerate values of an infinite field")
        nonzero = [v for v in field.elements() if v != field.zero]
        if len(nonzero) ** n > 1 << 20:
            raise TooLarge(f"too many specialized pseudo-permutations for n={n} over {field.spec}")
    else:
        nonzero = [field.one]
    out = []
    for shape in _shapes(n, kind, nonzero):
        rows = [[field.zero] * n for _ in range(n)]
        for (i, j), v in shape.items():
            rows[i][j] = v
            if i != j:
                rows[j][i] = field.neg(v) if kind == "alt_one_minus_one" else v
        m = Matrix(field, rows)
        if kind.startswith("specialized"):
            assert is_pseudo_permutation(m)
            if pair_structure(m).problematic:
                continue
        out.append(m)
    return len(out), out


# ---------------------------------------------------------------------------
# brute-force orbits


def _field_tables(ctx: FieldCtx):
    if not isinstance(ctx, (PrimeField, BinaryField)) or ctx.order > 256:
        raise BudgetExceeded(f"brute force needs a small finite field, not {ctx.spec}")
    q = ctx.order
    els = ctx.elements()
    add = np.array([[ctx.add(a, b) for b in els] for a in els], dtype=np.uint8)
    mul = np.array([[ctx.mul(a, b) for b in els] for a in els], dtype=np.uint8)
    neg = np.array([ctx.neg(a) for a in els], dtype=np.uint8)
    return q, add, mul, neg


class MatrixSpace:
    """All matrices of one class over a small finite field, indexed 0..size-1.

    Raw field values double as digit codes (prime residues, binary bitmasks).
    """

    def __init__(self, ctx: FieldCtx, n: int, matrix_class: str = "all"):
        if matrix_class not in CLASSES:
            raise ValueError(f"unknown matrix class {matrix_class!r}")
        self.ctx, self.n, self.matrix_class = ctx, n, matrix_class
        self.q, self.ADD, self.MUL, self.NEG = _field_tables(ctx)
        if matrix_class == "all":
            self.positions = [(i, j) for i in range(n) for j in range(n)]
        elif matrix_class == "symmetric":
            self.positions = [(i, j) for i in range(n) for j in range(i, n)]
        else:
            self.positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
        k = len(self.positions)
        self.size = self.q ** k
        self.weights = np.array([self.q ** (k - 1 - t) for t in range(k)], dtype=np.int64)

    def decode(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        n, q = self.n, self.q
        out = np.zeros((len(idx), n, n), dtype=np.uint8)
        rem = idx.copy()
        for t in range(len(self.positions) - 1, -1, -1):
            i, j = self.positions[t]
            digit = (rem % q).astype(np.uint8)
            rem //= q
            out[:, i, j] = digit
            if i != j:
                if self.matrix_class == "symmetric":
                    out[:, j, i] = digit
                elif self.matrix_class == "alternating":
                    out[:, j, i] = self.NEG[digit]
        return out

    def encode(self, arr: np.ndarray) -> np.ndarray:
        if not self.positions:
            return np.zeros(len(arr), dtype=np.int64)
        codes = np.stack([arr[:, i, j] for i, j in self.positions], axis=1).astype(np.int64)
        return codes @ self.weights

    def matrix(self, idx: int) -> Matrix:
        return Matrix(self.ctx, self.decode(np.array([idx]))[0].tolist())

    def index(self, m: Matrix) -> int:
        return int(sum(int(m.rows[i][j]) * int(w) for (i, j), w in zip(self.positions, self.weights)))

    def __iter__(self) -> Iterator[Matrix]:
        chunk = 4096
        for start in range(0, self.size, chunk):
            for rows in self.decode(np.arange(start, min(start + chunk, self.size))).tolist():
                yield Matrix(self.ctx, rows)

    def __len__(self):
        return self.size


@dataclass(frozen=True)
class Action:
    group: str
    relation: str
    matrix_class: str = "all"
    parabolic: ParabolicDescriptor | None = None

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"unknown group {self.group!r}")
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if self.matrix_class not in CLASSES:
            raise ValueError(f"unknown matrix class {self.matrix_class!r}")
        if self.relation == "equivalence" and self.matrix_class != "all":
            raise ValueError("equivalence does not preserve symmetric/alternating classes")
        if self.group == "P" and self.parabolic is None:
            raise ValueError("group P needs a parabolic descriptor")


def generators(action: Action, ctx: FieldCtx, n: int) -> list[tuple]:
    """Group generators as elementary operations.

    ``("add", i, j, c)`` is ``h = I + c E_ij``; ``("scale", i, d)`` is the
    diagonal matrix with ``d`` at ``i``.  Transvections cover every position
    allowed by the group shape and every nonzero ``c``; B and P add scalings.
    """
    if action.group == "trivial":
        return []
    nonzero = [v for v in ctx.elements() if v != ctx.zero]
    if action.group == "P":
        shape = action.parabolic
        if shape.n != n:
            raise ValueError("parabolic size does not match n")
    else:
        shape = borel(n)
    gens = [("add", i, j, c) for i in range(n) for j in range(n)
            if i != j and shape.contains_position(i, j) for c in nonzero]
    if action.group in ("B", "P"):
        gens += [("scale", i, d) for i in range(n) for d in nonzero if d != ctx.one]
    return gens


def _apply(space: MatrixSpace, arr: np.ndarray, gen: tuple, side: str) -> np.ndarray:
    """Apply ``h' X`` (side "left"), ``X h`` ("right") or ``h' X h`` ("both")."""
    ADD, MUL = space.ADD, space.MUL
    out = arr.copy()
    if gen[0] == "add":
        _, i, j, c = gen
        if side in ("left", "both"):  # h' X: row j += c row i
            out[:, j, :] = ADD[out[:, j, :], MUL[c, out[:, i, :]]]
        if side in ("right", "both"):  # X h: col j += c col i
            out[:, :, j] = ADD[out[:, :, j], MUL[c, out[:, :, i]]]
    else:
        _, i, d = gen
        if side in ("left", "both"):
            out[:, i, :] = MUL[d, out[:, i, :]]
        if side in ("right", "both"):
            out[:, :, i] = MUL[d, out[:, :, i]]
    return out


def _images(space: MatrixSpace, moves: list[tuple], lo: int, hi: int) -> list[np.ndarray]:
    arr = space.decode(np.arange(lo, hi))
    return [space.encode(_apply(space, arr, gen, side)) for gen, side in moves]


@dataclass
class Partition:
    space: MatrixSpace
    action: Action
    labels: np.ndarray  # labels[i] = least index in the orbit of i

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.labels == np.arange(self.space.size)))

    @property
    def rep_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labels == np.arange(self.space.size))

    def representatives(self) -> list[Matrix]:
        return [self.space.matrix(int(i)) for i in self.rep_indices]

    def orbit_sizes(self) -> dict[int, int]:
        reps, counts = np.unique(self.labels, return_counts=True)
        return dict(zip(reps.tolist(), counts.tolist()))

    def label_of(self, m: Matrix) -> int:
        return int(self.labels[self.space.index(m)])


def _merge(size: int, perms: list[np.ndarray]) -> np.ndarray:
    """Connected components of the union of permutation graphs, labelled by
    their least member (min-label propagation with pointer jumping)."""
    labels = np.arange(size, dtype=np.int64)
    inverses = []
    for p in perms:
        inv = np.empty_like(p)
        inv[p] = np.arange(size, dtype=np.int64)
        inverses.append(inv)
    while True:
        new = labels.copy()
        for p, inv in zip(perms, inverses):
            np.minimum(new, new[p], out=new)
            np.minimum(new, new[inv], out=new)
        while True:
            jumped = new[new]
            if np.array_equal(jumped, new):
                break
            new = jumped
        if np.array_equal(new, labels):
            return labels
        labels = new


def brute_orbits(n: int, field: FieldCtx | str, group: str = "B", relation: str = "equivalence",
                 matrix_class: str = "all", parabolic: ParabolicDescriptor | None = None,
                 budget: int = DEFAULT_BUDGET, shards: int = 1, threads: int = 1,
                 generator_order: Callable[[list], list] | None = None) -> Partition:
    """Exact orbit partition of a matrix class by exhaustive search.

    ``shards`` splits the index space into chunks whose generator images are
    computed independently (on ``threads`` workers) and merged in one pass;
    the result does not depend on either setting.
    """
    ctx = field_from_spec(field) if isinstance(field, str) else field
    action = Action(group, relation, matrix_class, parabolic)
    space = _space(ctx, n, matrix_class)
    gens = generators(action, ctx, n)
    if generator_order is not None:
        gens = list(generator_order(list(gens)))
    sides = ["both"] if relation == "congruence" else ["left", "right"]
    moves = [(g, s) for g in gens for s in sides]
    if space.size * max(len(moves), 1) > budget:
        raise BudgetExceeded(
            f"{space.size} matrices x {len(moves)} generators exceeds budget {budget}")
    bounds = np.linspace(0, space.size, max(shards, 1) + 1).astype(np.int64)
    chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda ab: _images(space, moves, *ab), chunks))
    else:
        parts = [_images(space, moves, a, b) for a, b in chunks]
    perms = [np.concatenate([part[m] for part in parts]) for m in range(len(moves))]
    for p in perms:
        if np.bincount(p, minlength=space.size).max(initial=1) != 1:
            raise AssertionError("generator does not act bijectively on the matrix class")
    return Partition(space, action, _merge(space.size, perms))


@lru_cache(maxsize=64)
def _space(ctx: FieldCtx, n: int, matrix_class: str) -> MatrixSpace:
    return MatrixSpace(ctx, n, matrix_class)


def canonical_labels(space: MatrixSpace, canon: Callable[[Matrix], Matrix]) -> np.ndarray:
    """Index of ``canon(X)`` for every ``X`` in the space."""
    out = np.empty(space.size, dtype=np.int64)
    for t, m in enumerate(space):
        out[t] = space.index(canon(m))
    return out


def same_partition(a: np.ndarray, b: np.ndarray) -> bool:
    """Do two labelings induce the same partition of the index set?"""
    pairs = np.unique(np.stack([a, b], axis=1), axis=0)
    return len(pairs) == len(np.unique(a)) == len(np.unique(b))


@dataclass
class OrbitCensus:
    n: int
    action: Action
    field_spec: str
    count: int
    representatives: list[Matrix] | None = field(default=None, repr=False)


def census_brute(n: int, field: FieldCtx | str, group: str, relation: str,
                 matrix_class: str = "all", parabolic: ParabolicDescriptor | None = None,
                 reps: bool = False, **kw) -> OrbitCensus:
    part = brute_orbits(n, field, group, relation, matrix_class, parabolic, **kw)
    return OrbitCensus(n, part.action, part.space.ctx.spec, part.count,
                       part.representatives() if reps else None)


def all_matrices(ctx: FieldCtx, n: int) -> Iterator[Matrix]:
    els = ctx.elements()
    for vals in itertools.product(els, repeat=n * n):
        yield Matrix(ctx, [vals[i * n:(i + 1) * n] for i in range(n)])
