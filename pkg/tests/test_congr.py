import pytest
from hypothesis import given, strategies as st

from matcanon.census import brute_orbits
from matcanon.congr import (b_congr_canonical, b_congr_canonical_alt, b_congr_canonical_sym,
                            b_congr_canonical_sym_char2, hat, u_congr_canonical,
                            u_congr_canonical_alt, u_congr_canonical_sym,
                            u_congr_canonical_sym_char2)
from matcanon.equiv import u_equivalent
from matcanon.errors import (Char2, NonSquare, NotAlternating, NotChar2, NotPseudoPermutation,
                             NotSymmetric)
from matcanon.matrix import Matrix, classify, is_one_minus_one
from oracles import CHAR2, F, M, matrices, upper

X4 = [[0, 0, 1], [0, 1, 0], [1, 0, 1]]
Y4 = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]]
Y4_TARGET = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 0, 0, 0]]
SPECIALIZED = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]]


def test_u_sym_examples():
    gf3 = F("GF(3)")
    a = M(gf3, [[0, 1], [1, 0]])
    assert u_congr_canonical_sym(a)[0] == a
    x = M(gf3, [[0, 1], [1, 1]])
    y, w = u_congr_canonical_sym(x)
    assert y == a and w.check(x, y)
    # the single elimination step uses c = -1/2 = 1
    assert w.u == M(gf3, [[1, 1], [0, 1]])
    d = Matrix.diagonal(gf3, [2, 1])
    assert u_congr_canonical_sym(d)[0] == d


def test_u_alt_examples():
    gf3 = F("GF(3)")
    a = M(gf3, [[0, 1], [-1, 0]])
    assert u_congr_canonical_alt(a)[0] == a
    assert u_congr_canonical_alt(Matrix.zero(gf3, 3))[0] == Matrix.zero(gf3, 3)
    x = M(gf3, [[0, 1, 0, 1], [-1, 0, 0, 0], [0, 0, 0, 1], [-1, 0, -1, 0]])
    y, w = u_congr_canonical_alt(x)
    assert w.check(x, y)
    assert y == M(gf3, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


def test_b_sym_tower_examples():
    t = F("TOWER(3)")
    x = Matrix.diagonal(t, [2, 0])
    y, w = b_congr_canonical_sym(x)
    assert y == Matrix.diagonal(t, [1, 0])
    assert w.check(x, y)
    # u_11 squared is 1/2 = 2
    assert t.mul(w.u[0, 0], w.u[0, 0]) == (2,)
    assert t.level(w.u[0, 0]) == 1
    for m in (Matrix.identity(t, 3), Matrix.antidiagonal(t, 2)):
        assert b_congr_canonical_sym(m)[0] == m


def test_b_alt_examples():
    gf3, gf5 = F("GF(3)"), F("GF(5)")
    x = M(gf3, [[0, 2], [-2, 0]])
    y, w = b_congr_canonical_alt(x)
    assert y == M(gf3, [[0, 1], [-1, 0]]) and w.check(x, y)
    assert w.u == Matrix.diagonal(gf3, [1, gf3.inv(2)])
    assert b_congr_canonical_alt(Matrix.zero(gf3, 2))[0] == Matrix.zero(gf3, 2)
    x = M(gf5, [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    y, w = b_congr_canonical_alt(x)
    assert y == M(gf5, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert w.check(x, y)


def test_char2_examples():
    gf2 = F("GF(2)")
    x = M(gf2, X4)
    y, w = u_congr_canonical_sym_char2(x)
    assert y == Matrix.antidiagonal(gf2, 3) and w.check(x, y)
    yy = M(gf2, Y4)
    y, w = u_congr_canonical_sym_char2(yy)
    assert y == M(gf2, Y4_TARGET) and w.check(yy, y)
    s = M(gf2, SPECIALIZED)
    assert u_congr_canonical_sym_char2(s)[0] == s
    assert b_congr_canonical_sym_char2(s)[0] == s


def test_char2_gf4_examples():
    gf4 = F("GF(4)")
    w_ = 2
    x = Matrix.diagonal(gf4, [w_, 0])
    y, wit = b_congr_canonical_sym_char2(x)
    assert y == Matrix.diagonal(gf4, [1, 0]) and wit.check(x, y)
    # sqrt(w) = w + 1, and (w + 1)^-1 = w
    assert wit.u[0, 0] == gf4.inv(3) == 2
    x = Matrix.diagonal(gf4, [1, w_])
    y, wit = b_congr_canonical_sym_char2(x)
    assert y == Matrix.identity(gf4, 2) and wit.check(x, y)


def test_hat_examples():
    gf2 = F("GF(2)")
    assert hat(M(gf2, X4)) == Matrix.antidiagonal(gf2, 3)
    assert hat(M(gf2, Y4)) == Matrix.antidiagonal(gf2, 4)
    a = Matrix.antidiagonal(gf2, 3)
    assert hat(a) == a
    with pytest.raises(NotPseudoPermutation):
        hat(M(gf2, [[1, 1], [1, 1]]))


def test_errors():
    gf3, gf2 = F("GF(3)"), F("GF(2)")
    with pytest.raises(NotSymmetric):
        u_congr_canonical_sym(M(gf3, [[0, 1], [0, 0]]))
    with pytest.raises(Char2):
        u_congr_canonical_sym(Matrix.identity(gf2, 2))
    with pytest.raises(Char2):
        b_congr_canonical_sym(Matrix.identity(gf2, 2))
    with pytest.raises(NotAlternating):
        u_congr_canonical_alt(Matrix.identity(gf3, 2))
    with pytest.raises(NotChar2):
        u_congr_canonical_sym_char2(Matrix.identity(gf3, 2))
    with pytest.raises(NonSquare):
        b_congr_canonical_sym(Matrix.diagonal(gf3, [2, 0]))
    with pytest.raises(NotSymmetric):
        b_congr_canonical(M(gf3, [[1, 1], [0, 1]]))


def _invariance(canon, ctx, x, u):
    return canon(u.T @ x @ u, False)[0] == canon(x, False)[0]


@pytest.mark.parametrize("spec", ["GF(3)", "GF(5)", "GF(7)", "TOWER(3)"])
@given(data=st.data())
def test_u_sym_properties(spec, data):
    ctx = F(spec)
    x = data.draw(matrices(ctx, shape="symmetric", max_n=5))
    y, w = u_congr_canonical_sym(x)
    assert w.check(x, y) and y.is_sub_permutation() and y.is_symmetric()
    u = data.draw(upper(ctx, x.n, unit=True))
    assert _invariance(u_congr_canonical_sym, ctx, x, u)


@pytest.mark.parametrize("spec", ["GF(2)", "GF(3)", "GF(4)", "GF(5)", "TOWER(3)"])
@given(data=st.data())
def test_alt_properties(spec, data):
    ctx = F(spec)
    x = data.draw(matrices(ctx, shape="alternating", max_n=5))
    y, w = u_congr_canonical_alt(x)
    assert w.check(x, y) and y.is_sub_permutation() and y.is_alternating()
    assert _invariance(u_congr_canonical_alt, ctx, x, data.draw(upper(ctx, x.n, unit=True)))
    y, w = b_congr_canonical_alt(x)
    assert w.check(x, y) and is_one_minus_one(y)
    assert _invariance(b_congr_canonical_alt, ctx, x, data.draw(upper(ctx, x.n)))


@given(data=st.data())
def test_tower_b_sym_properties(data):
    t = F("TOWER(3)")
    x = data.draw(matrices(t, shape="symmetric", max_n=4))
    y, w = b_congr_canonical_sym(x)
    assert w.check(x, y)
    assert y.is_symmetric() and y.is_sub_permutation() and y.is_zero_one()
    b = data.draw(upper(t, x.n, level=1))
    assert _invariance(b_congr_canonical_sym, t, x, b)


@pytest.mark.parametrize("spec", CHAR2)
@given(data=st.data())
def test_char2_properties(spec, data):
    ctx = F(spec)
    x = data.draw(matrices(ctx, shape="symmetric", max_n=5))
    y, w = u_congr_canonical_sym_char2(x)
    assert w.check(x, y)
    assert classify(y).specialized_pseudo_permutation
    assert _invariance(u_congr_canonical_sym_char2, ctx, x, data.draw(upper(ctx, x.n, unit=True)))
    # hat(Y) is equivalent to Y, hence to X
    assert u_equivalent(hat(y), x)
    y, w = b_congr_canonical_sym_char2(x)
    assert w.check(x, y) and y.is_zero_one()
    assert _invariance(b_congr_canonical_sym_char2, ctx, x, data.draw(upper(ctx, x.n)))


@pytest.mark.parametrize("spec,n,cls,group", [
    ("GF(3)", 2, "symmetric", "U"), ("GF(5)", 2, "symmetric", "U"),
    ("GF(3)", 3, "alternating", "B"), ("GF(2)", 3, "symmetric", "B"),
    ("GF(4)", 2, "symmetric", "U"), ("GF(2)", 3, "alternating", "U"),
])
def test_dispatch_matches_brute_orbits(spec, n, cls, group):
    part = brute_orbits(n, spec, group, "congruence", cls)
    canon = u_congr_canonical if group == "U" else b_congr_canonical
    keys = {}
    for idx, m in enumerate(part.space):
        keys.setdefault(canon(m, False)[0], set()).add(int(part.labels[idx]))
    assert all(len(v) == 1 for v in keys.values())
    assert len(keys) == part.count
