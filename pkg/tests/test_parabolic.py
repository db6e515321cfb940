import pytest
from hypothesis import given, strategies as st

from matcanon.census import brute_orbits
from matcanon.equiv import b_equiv_canonical
from matcanon.errors import (BadComposition, Char2, DimensionMismatch,
                             KindMismatch, NonSquare, NotReduced, NotSubPermutation)
from matcanon.matrix import Matrix, permutation_matrix
from matcanon.parabolic import (ReducedPermutation, all_parabolics, block_rank_table, borel,
                                cross_counts, inclusion_exclusion_holds, p_congruence_report,
                                p_congruent, p_equivalent, parabolic_from_composition,
                                parabolic_from_generators, parse_composition, reduced_permutation,
                                w_conjugate, w_equivalent)
from oracles import F, M, matrices, rank_by_minors, upper

P21 = parabolic_from_composition((2, 1))


def random_parabolic_element(data, ctx, p, level=0):
    """``b1 w b2`` with ``b1, b2`` in B and ``w`` in W lies in P and is invertible."""
    w = permutation_matrix(ctx, data.draw(st.sampled_from(list(p.weyl_group()))))
    return data.draw(upper(ctx, p.n, level=level)) @ w @ data.draw(upper(ctx, p.n, level=level))


def test_descriptor_examples():
    g = parabolic_from_composition((3,), n=3)
    assert g.r == 1 and g.maxima == (3,) and g.is_whole_group
    b = parabolic_from_composition((1, 1, 1))
    assert b.r == 3 and b.maxima == (1, 2, 3) and b.is_borel
    assert P21.J == frozenset({0}) and P21.orbits == ((0, 1), (2,)) and P21.maxima == (2, 3)
    assert parabolic_from_generators(3, {0}) == P21
    assert parabolic_from_generators(3, set()) == borel(3)
    assert parse_composition("2,1") == P21 and str(P21) == "2,1"
    assert len(all_parabolics(4)) == 8
    assert sorted(len(list(p.weyl_group())) for p in all_parabolics(3)) == [1, 2, 2, 6]
    for bad in ("", "2,,1", "0,3", "a"):
        with pytest.raises(BadComposition):
            parse_composition(bad)
    with pytest.raises(BadComposition):
        parabolic_from_composition((2, 2), n=3)


def test_block_rank_examples():
    gf2 = F("GF(2)")
    assert block_rank_table(Matrix.zero(gf2, 3), P21).to_list() == [[0, 0], [0, 0]]
    tab = block_rank_table(Matrix.identity(gf2, 3), borel(3))
    assert tab.to_list() == [[min(i, j) + 1 for j in range(3)] for i in range(3)]
    a = Matrix.antidiagonal(gf2, 3)
    expected = [[rank_by_minors(a, P21.maxima[j], P21.maxima[i]) for j in range(2)]
                for i in range(2)]
    assert block_rank_table(a, P21).to_list() == expected == [[1, 2], [2, 3]]


def test_cross_count_examples():
    gf2 = F("GF(2)")
    assert cross_counts(Matrix.zero(gf2, 3), P21).to_list() == [[0, 0], [0, 0]]
    assert cross_counts(Matrix.identity(gf2, 3), P21).to_list() == [[2, 0], [0, 1]]
    assert cross_counts(Matrix.antidiagonal(gf2, 3), P21).to_list() == [[1, 1], [1, 0]]
    with pytest.raises(NotSubPermutation):
        cross_counts(M(gf2, [[1, 1, 0], [0, 0, 0], [0, 0, 0]]), P21)


@pytest.mark.parametrize("spec", ["GF(2)", "GF(3)", "GF(4)"])
@given(data=st.data())
def test_block_ranks_against_minors(spec, data):
    ctx = F(spec)
    x = data.draw(matrices(ctx, max_n=4))
    p = data.draw(st.sampled_from(all_parabolics(x.n)))
    tab = block_rank_table(x, p)
    for i in range(p.r):
        for j in range(p.r):
            assert tab[i, j] == rank_by_minors(x, p.maxima[j], p.maxima[i])
    y = b_equiv_canonical(x, False)[0]
    assert inclusion_exclusion_holds(y, p)


def test_p_equivalent_examples():
    gf2 = F("GF(2)")
    i3, a3 = Matrix.identity(gf2, 3), Matrix.antidiagonal(gf2, 3)
    g = parabolic_from_composition((3,))
    assert p_equivalent(i3, a3, g, w_search=True)[0]
    assert not p_equivalent(i3, a3, borel(3), w_search=True)[0]
    for p in all_parabolics(3):
        assert p_equivalent(a3, a3, p)[0]
    with pytest.raises(DimensionMismatch):
        p_equivalent(i3, a3, borel(4))


def test_w_equivalent_examples():
    gf2 = F("GF(2)")
    i3, a3 = Matrix.identity(gf2, 3), Matrix.antidiagonal(gf2, 3)
    assert w_equivalent(a3, a3, P21)
    assert w_equivalent(i3, a3, parabolic_from_composition((3,)), oracle=True)
    assert not w_equivalent(i3, a3, borel(3), oracle=True)


def test_reduced_permutation_examples():
    gf2 = F("GF(2)")
    a3 = Matrix.antidiagonal(gf2, 3)
    assert reduced_permutation(a3, parabolic_from_composition((3,))).pairs == ()
    assert reduced_permutation(a3, P21).pairs == ((0, 2),)
    assert reduced_permutation(Matrix.zero(gf2, 3), P21).pairs == ()


def test_w_conjugate_examples():
    e = ReducedPermutation(3, ())
    s = ReducedPermutation(3, ((0, 2),))
    t = ReducedPermutation(3, ((1, 2),))
    assert w_conjugate(e, e, P21)
    assert w_conjugate(s, t, P21, oracle=True)
    assert not w_conjugate(s, e, P21, oracle=True)
    with pytest.raises(NotReduced):
        w_conjugate(ReducedPermutation(3, ((0, 1),)), e, P21)


def test_p_congruent_examples():
    gf3 = F("GF(3)")
    c = M(gf3, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    d = M(gf3, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    p22 = parabolic_from_composition((2, 2))
    rep = p_congruence_report(c, d, p22, "alternating")
    assert rep.reduced[0].pairs == () and rep.reduced[1].pairs == ((0, 2), (1, 3))
    assert not rep.condition_a and not p_congruent(c, d, p22, "alternating")
    assert p_congruent(c, d, parabolic_from_composition((4,)), "alternating", report=True)
    assert p_congruent(c, c, p22, "alternating", report=True)


def test_p_congruent_errors():
    gf3, gf2 = F("GF(3)"), F("GF(2)")
    p = borel(2)
    with pytest.raises(KindMismatch):
        p_congruent(Matrix.identity(gf3, 2), Matrix.identity(gf3, 2), p, "alternating")
    with pytest.raises(NonSquare):
        p_congruent(Matrix.identity(gf3, 2), Matrix.identity(gf3, 2), p, "symmetric")
    with pytest.raises(Char2):
        p_congruent(Matrix.identity(gf2, 2), Matrix.identity(gf2, 2), p, "symmetric")
    with pytest.raises(KindMismatch):
        p_congruent(Matrix.zero(gf3, 2), Matrix.zero(gf3, 2), p, "hermitian")


@pytest.mark.parametrize("spec,n", [("GF(2)", 3), ("GF(3)", 2), ("GF(3)", 3)])
def test_p_equivalence_matches_brute_orbits(spec, n):
    for p in all_parabolics(n):
        part = brute_orbits(n, spec, "P", "equivalence", parabolic=p)
        reps = part.representatives()
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                assert p_equivalent(a, b, p, w_search=True)[0] == (i == j)


@pytest.mark.parametrize("spec,n", [("GF(2)", 4), ("GF(3)", 3), ("GF(5)", 4)])
def test_alternating_p_congruence_matches_brute_orbits(spec, n):
    for p in all_parabolics(n):
        part = brute_orbits(n, spec, "P", "congruence", "alternating", parabolic=p)
        reps = part.representatives()
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                assert p_congruent(a, b, p, "alternating", report=True) == (i == j)


@given(data=st.data())
def test_tower_symmetric_p_congruence_invariance(data):
    t = F("TOWER(3)")
    x = data.draw(matrices(t, shape="symmetric", max_n=4))
    p = data.draw(st.sampled_from(all_parabolics(x.n)))
    g = random_parabolic_element(data, t, p, level=1)
    y = g.T @ x @ g
    # report=True also raises if the W-conjugacy condition disagrees
    assert p_congruent(x, y, p, "symmetric", report=True)


@pytest.mark.parametrize("spec", ["GF(2)", "GF(4)", "GF(5)"])
@given(data=st.data())
def test_p_equivalence_invariance(spec, data):
    ctx = F(spec)
    x = data.draw(matrices(ctx, max_n=4))
    p = data.draw(st.sampled_from(all_parabolics(x.n)))
    g = random_parabolic_element(data, ctx, p)
    h = random_parabolic_element(data, ctx, p)
    for m in (g, h):
        assert all(m[i, j] == ctx.zero for i in range(x.n) for j in range(x.n)
                   if not p.contains_position(i, j))
    assert block_rank_table(g.T @ x @ h, p) == block_rank_table(x, p)
    assert p_equivalent(x, g.T @ x @ h, p)[0]
