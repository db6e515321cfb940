"""Standard parabolic subgroups and the P-equivalence / P-congruence deciders.

A standard parabolic P is given by a composition of n: the diagonal block
sizes of its block upper triangular matrices.  Its Weyl group W permutes
indices inside each block, so the W-orbits on {1..n} are the blocks.

All indices in this module are 0-based; orbit ``b`` covers
``range(starts[b], starts[b] + sizes[b])`` and ``maxima[b]`` is its last
index plus one (the 1-based largest index).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .congr import b_congr_canonical_alt, b_congr_canonical_sym
from .equiv import b_equiv_canonical
from .errors import (BadComposition, Char2, CriteriaDisagree, DimensionMismatch,
                     FieldMismatch, KindMismatch, NonSquare, NotInvolutive, NotReduced,
                     NotSubPermutation)
from .matrix import Matrix, couple, rank_profile


@dataclass(frozen=True)
class ParabolicDescriptor:
    sizes: tuple[int, ...]

    def __post_init__(self):
        if not self.sizes or any((not isinstance(s, int)) or s < 1 for s in self.sizes):
            raise BadComposition(f"composition must be positive integers, got {self.sizes!r}")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    @cached_property
    def maxima(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.sizes))

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        starts = (0,) + self.maxima[:-1]
        return tuple(tuple(range(s, m)) for s, m in zip(starts, self.maxima))

    @cached_property
    def orbit_of(self) -> tuple[int, ...]:
        return tuple(b for b, orb in enumerate(self.orbits) for _ in orb)

    @property
    def J(self) -> frozenset[int]:
        """Adjacent transpositions ``(i, i+1)`` in P, as the 0-based ``i``."""
        o = self.orbit_of
        return frozenset(i for i in range(self.n - 1) if o[i] == o[i + 1])

    @property
    def is_borel(self) -> bool:
        return self.r == self.n

    @property
    def is_whole_group(self) -> bool:
        return self.r == 1

    def contains_position(self, i: int, j: int) -> bool:
        """May an element of P be nonzero at (i, j)?"""
        return self.orbit_of[i] <= self.orbit_of[j]

    def weyl_group(self):
        """All elements of W as permutations (tuples, ``w[i]`` is the image of ``i``)."""
        factors = [list(itertools.permutations(orb)) for orb in self.orbits]
        for choice in itertools.product(*factors):
            yield tuple(x for block in choice for x in block)

    def __str__(self):
        return ",".join(map(str, self.sizes))


def parabolic_from_composition(sizes: Sequence[int], n: int | None = None) -> ParabolicDescriptor:
    desc = ParabolicDescriptor(tuple(sizes))
    if n is not None and desc.n != n:
        raise BadComposition(f"composition {desc} does not sum to n={n}")
    return desc


def parabolic_from_generators(n: int, J) -> ParabolicDescriptor:
    """From the set of adjacent transpositions ``(i, i+1)`` (0-based ``i``) in P."""
    J = set(J)
    if any(not 0 <= i < n - 1 for i in J):
        raise BadComposition(f"transposition index out of range for n={n}")
    sizes, cur = [], 1
    for i in range(n - 1):
        if i in J:
            cur += 1
        else:
            sizes.append(cur)
            cur = 1
    sizes.append(cur)
    return ParabolicDescriptor(tuple(sizes))


def parse_composition(text: str) -> ParabolicDescriptor:
    try:
        return ParabolicDescriptor(tuple(int(t) for t in text.split(",")))
    except ValueError:
        raise BadComposition(f"bad composition {text!r}") from None


def borel(n: int) -> ParabolicDescriptor:
    return ParabolicDescriptor((1,) * n)


def all_parabolics(n: int) -> list[ParabolicDescriptor]:
    """The 2^(n-1) standard parabolics of GL_n."""
    return [parabolic_from_generators(n, J)
            for k in range(n) for J in itertools.combinations(range(n - 1), k)]


@dataclass(frozen=True)
class InvariantTable:
    """``values[i][j]`` for orbits ``i, j`` (0-based)."""

    kind: str  # "block_rank" or "cross_count"
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.values[i][j]

    def at(self, i: int, j: int) -> int:
        """1-based access with the virtual zero row/column at index 0."""
        if i == 0 or j == 0:
            return 0
        return self.values[i - 1][j - 1]

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.values]


def _check_n(m: Matrix, p: ParabolicDescriptor):
    if m.n != p.n:
        raise DimensionMismatch(f"matrix is {m.n}x{m.n}, parabolic is for n={p.n}")


def block_rank_table(c: Matrix, p: ParabolicDescriptor) -> InvariantTable:
    """``C[i, j]``: rank of the top-left block with ``M_j`` rows and ``M_i`` columns."""
    _check_n(c, p)
    prof = rank_profile(c)
    mx = p.maxima
    return InvariantTable("block_rank", tuple(
        tuple(prof[mx[j]][mx[i]] for j in range(p.r)) for i in range(p.r)))


def cross_counts(y: Matrix, p: ParabolicDescriptor) -> InvariantTable:
    """``Y{i, j}``: number of supported ``k`` in orbit ``i`` with ``sigma(k)`` in orbit ``j``."""
    _check_n(y, p)
    if not y.is_sub_permutation():
        raise NotSubPermutation("cross counts need a sub-permutation matrix")
    cp = couple(y)
    o = p.orbit_of
    table = [[0] * p.r for _ in range(p.r)]
    for k in cp.support:
        table[o[k]][o[cp.sigma[k]]] += 1
    return InvariantTable("cross_count", tuple(map(tuple, table)))


def inclusion_exclusion_holds(y: Matrix, p: ParabolicDescriptor) -> bool:
    """``Y[i,j] - Y[i-1,j] - Y[i,j-1] + Y[i-1,j-1] == Y{i,j}`` for all orbits."""
    br = block_rank_table(y, p)
    cc = cross_counts(y, p)
    return all(br.at(i, j) - br.at(i - 1, j) - br.at(i, j - 1) + br.at(i - 1, j - 1)
               == cc.at(i, j)
               for i in range(1, p.r + 1) for j in range(1, p.r + 1))


def _check_pair(c: Matrix, d: Matrix, p: ParabolicDescriptor):
    if c.ctx != d.ctx:
        raise FieldMismatch(f"{c.ctx.spec} vs {d.ctx.spec}")
    if c.n != d.n:
        raise DimensionMismatch(f"{c.n} vs {d.n}")
    _check_n(c, p)


@dataclass
class EquivalenceReport:
    block_ranks: tuple[InvariantTable, InvariantTable]
    canonical: tuple[Matrix, Matrix]
    cross_counts: tuple[InvariantTable, InvariantTable]
    by_block_rank: bool
    by_cross_count: bool
    w_search: bool | None = None


def p_equivalent(c: Matrix, d: Matrix, p: ParabolicDescriptor, w_search: bool = False):
    """Decide P-equivalence by block ranks; cross-check with cross counts of the
    B-equivalence canonical forms (and, optionally, an exhaustive W search).

    Returns ``(related, report)``.
    """
    _check_pair(c, d, p)
    bc, bd = block_rank_table(c, p), block_rank_table(d, p)
    y = b_equiv_canonical(c, False)[0]
    z = b_equiv_canonical(d, False)[0]
    for m in (y, z):
        if not inclusion_exclusion_holds(m, p):
            raise CriteriaDisagree(f"inclusion-exclusion identity fails for {m!r}")
    cy, cz = cross_counts(y, p), cross_counts(z, p)
    rep = EquivalenceReport((bc, bd), (y, z), (cy, cz), bc == bd, cy == cz)
    if rep.by_block_rank != rep.by_cross_count:
        raise CriteriaDisagree("block-rank and cross-count criteria disagree")
    if w_search:
        rep.w_search = _w_equivalent_search(y, z, p)
        if rep.w_search != rep.by_block_rank:
            raise CriteriaDisagree("exhaustive W search disagrees with block ranks")
    return rep.by_block_rank, rep


def _permute(m: Matrix, w1, w2) -> Matrix:
    """``w1' m w2`` for permutation matrices given as tuples (``w e_i = e_{w[i]}``)."""
    # (w1' m w2)[a][b] = m[w1[a]][w2[b]]
    n = m.n
    return Matrix(m.ctx, [[m.rows[w1[a]][w2[b]] for b in range(n)] for a in range(n)])


def _w_equivalent_search(y: Matrix, z: Matrix, p: ParabolicDescriptor) -> bool:
    group = list(p.weyl_group())
    for w1 in group:
        for w2 in group:
            if _permute(y, w1, w2) == z:
                return True
    return False


def w_equivalent(y: Matrix, z: Matrix, p: ParabolicDescriptor, oracle: bool | None = None) -> bool:
    """Are the sub-permutation matrices ``y, z`` related by ``w1' y w2``, ``w1, w2`` in W?

    Decided by equal cross counts.  ``oracle`` runs the exhaustive search too
    (default: whenever n <= 5) and raises :class:`CriteriaDisagree` on mismatch.
    """
    _check_pair(y, z, p)
    for m in (y, z):
        if not m.is_sub_permutation():
            raise NotSubPermutation("w_equivalent needs sub-permutation matrices")
    same = cross_counts(y, p) == cross_counts(z, p)
    if oracle is None:
        oracle = p.n <= 5
    if oracle and same != _w_equivalent_search(y, z, p):
        raise CriteriaDisagree("cross counts disagree with exhaustive W search")
    return same


@dataclass(frozen=True)
class ReducedPermutation:
    """Disjoint transpositions ``(i, j)``, ``i < j``, each crossing two W-orbits."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def as_permutation(self) -> tuple[int, ...]:
        perm = list(range(self.n))
        for i, j in self.pairs:
            perm[i], perm[j] = j, i
        return tuple(perm)

    def crossing_counts(self, p: ParabolicDescriptor) -> dict[tuple[int, int], int]:
        o = p.orbit_of
        out: dict[tuple[int, int], int] = {}
        for i, j in self.pairs:
            key = tuple(sorted((o[i], o[j])))
            out[key] = out.get(key, 0) + 1
        return out


def reduced_permutation(y: Matrix, p: ParabolicDescriptor) -> ReducedPermutation:
    """Drop from ``sigma`` every transposition inside one W-orbit or off the support."""
    _check_n(y, p)
    if not y.is_sub_permutation():
        raise NotSubPermutation("reduced_permutation needs a sub-permutation matrix")
    if not (y.is_symmetric() or y.is_alternating()):
        raise NotInvolutive("couple of a non-symmetric, non-alternating matrix")
    cp = couple(y)
    sigma = cp.sigma
    if any(sigma[sigma[i]] != i for i in range(y.n)):
        raise NotInvolutive("sigma is not an involution")
    o = p.orbit_of
    supp = cp.support
    pairs = tuple((i, sigma[i]) for i in range(y.n)
                  if i < sigma[i] and i in supp and o[i] != o[sigma[i]])
    return ReducedPermutation(y.n, pairs)


def _check_reduced(s: ReducedPermutation, p: ParabolicDescriptor):
    o = p.orbit_of
    seen = set()
    for i, j in s.pairs:
        if o[i] == o[j] or i in seen or j in seen or i == j:
            raise NotReduced(f"transposition {(i, j)} is not reduced for parabolic {p}")
        seen.update((i, j))


def _w_conjugate_search(s: ReducedPermutation, t: ReducedPermutation, p: ParabolicDescriptor) -> bool:
    sp, tp = s.as_permutation(), t.as_permutation()
    for w in p.weyl_group():
        # w s w^-1 maps w(i) -> w(s(i))
        conj = [0] * s.n
        for i in range(s.n):
            conj[w[i]] = w[sp[i]]
        if tuple(conj) == tp:
            return True
    return False


def w_conjugate(s: ReducedPermutation, t: ReducedPermutation, p: ParabolicDescriptor,
                oracle: bool | None = None) -> bool:
    """Equal numbers of transpositions across each unordered pair of orbits."""
    _check_reduced(s, p)
    _check_reduced(t, p)
    same = s.crossing_counts(p) == t.crossing_counts(p)
    if oracle is None:
        oracle = p.n <= 5
    if oracle and same != _w_conjugate_search(s, t, p):
        raise CriteriaDisagree("crossing counts disagree with exhaustive conjugation search")
    return same


@dataclass
class CongruenceReport:
    kind: str
    equivalence: EquivalenceReport
    canonical: tuple[Matrix, Matrix]
    reduced: tuple[ReducedPermutation, ReducedPermutation]
    conjugate: bool
    diagonal_counts_equal: bool
    invertible: bool = False
    condition_a: bool = field(init=False)
    condition_a_without_diagonal: bool = field(init=False)

    def __post_init__(self):
        self.condition_a = self.conjugate and self.diagonal_counts_equal
        self.condition_a_without_diagonal = self.conjugate


def _congruence_kind(m: Matrix, kind: str):
    if kind == "symmetric":
        if not m.is_symmetric():
            raise KindMismatch("expected a symmetric matrix")
        if m.ctx.char == 2:
            raise Char2("symmetric P-congruence needs characteristic != 2")
        if not m.ctx.square_closed:
            raise NonSquare(f"symmetric P-congruence needs a square-closed field, not {m.ctx.spec}")
    elif kind == "alternating":
        if not m.is_alternating():
            raise KindMismatch("expected an alternating matrix")
    else:
        raise KindMismatch(f"unknown kind {kind!r}")


def p_congruence_report(c: Matrix, d: Matrix, p: ParabolicDescriptor, kind: str) -> CongruenceReport:
    """Evaluate all three conditions; raise :class:`CriteriaDisagree` unless
    they agree."""
    _check_pair(c, d, p)
    _congruence_kind(c, kind)
    _congruence_kind(d, kind)
    related, eq = p_equivalent(c, d, p)
    canon = b_congr_canonical_sym if kind == "symmetric" else b_congr_canonical_alt
    y, z = canon(c, False)[0], canon(d, False)[0]
    sy, sz = reduced_permutation(y, p), reduced_permutation(z, p)
    cy, cz = cross_counts(y, p), cross_counts(z, p)
    diag = all(cy[i, i] == cz[i, i] for i in range(p.r))
    rep = CongruenceReport(kind, eq, (y, z), (sy, sz), w_conjugate(sy, sz, p), diag,
                           c.is_invertible() and d.is_invertible())
    if rep.condition_a != related:
        raise CriteriaDisagree("W-conjugacy condition disagrees with P-equivalence")
    if rep.invertible and rep.condition_a_without_diagonal != related:
        raise CriteriaDisagree("diagonal-count check was needed for invertible inputs")
    return rep


def p_congruent(c: Matrix, d: Matrix, p: ParabolicDescriptor, kind: str,
                report: bool = False) -> bool:
    """P-congruence of two symmetric (char != 2, square-closed field) or two
    alternating matrices, which coincides with P-equivalence.  ``report``
    also evaluates the W-conjugacy condition and checks agreement."""
    if report:
        return p_congruence_report(c, d, p, kind).equivalence.by_block_rank
    _check_pair(c, d, p)
    _congruence_kind(c, kind)
    _congruence_kind(d, kind)
    return p_equivalent(c, d, p)[0]
