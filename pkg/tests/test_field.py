import random

import pytest
from hypothesis import given, strategies as st

from matcanon.errors import NonSquare, ParseError, TowerLevelExceeded
from matcanon.field import (BinaryField, PrimeField, TowerField, field_from_spec, ff_sqrt,
                            tower_normalize)
from oracles import CHAR2, F, FINITE, elements


@pytest.mark.parametrize("spec", FINITE)
def test_tables_form_a_field(spec):
    ctx = F(spec)
    els = ctx.elements()
    assert len(set(els)) == len(els)
    for a in els:
        assert ctx.add(a, ctx.neg(a)) == ctx.zero
        if a != ctx.zero:
            assert ctx.mul(a, ctx.inv(a)) == ctx.one
        # x^q = x holds exactly in a field of q elements
        assert ctx.pow(a, len(els)) == a


@pytest.mark.parametrize("level", [0, 1, 2])
def test_tower_level_is_a_field_of_the_right_size(level):
    t = F("TOWER(3)")
    els = t.elements(level)
    q = 3 ** (1 << level)
    assert len(set(els)) == q
    for a in els:
        assert t.pow(a, q) == a
        if a != t.zero:
            assert t.mul(a, t.inv(a)) == t.one


@pytest.mark.parametrize("level", [0, 1, 2])
def test_tower_squareness_matches_brute_force(level):
    t = F("TOWER(3)")
    els = t.elements(level)
    squares = {t.mul(a, a) for a in els}
    for a in els:
        if t.level(a) == level:
            assert t.is_square(a) == (a in squares)
        # one level up, everything is a square
        s = t.sqrt(a)
        assert t.mul(s, s) == a
        assert t.level(s) <= t.level(a) + 1


@pytest.mark.parametrize("spec", ["GF(3)", "GF(5)", "GF(7)", "GF(101)"])
def test_prime_sqrt_exhaustive(spec):
    ctx = F(spec)
    squares = {ctx.mul(a, a) for a in ctx.elements()}
    for a in ctx.elements():
        if a in squares:
            r = ctx.sqrt(a)
            assert ctx.mul(r, r) == a
        else:
            with pytest.raises(NonSquare):
                ctx.sqrt(a)


def test_tonelli_shanks_large_prime():
    p = 1_000_000_007
    ctx = PrimeField(p)
    rng = random.Random(5)
    for _ in range(200):
        a = ctx.mul(x := rng.randrange(1, p), x)
        r = ctx.sqrt(a)
        assert ctx.mul(r, r) == a


def test_sqrt_examples():
    gf4 = F("GF(4)")
    w = gf4.elem(2)
    assert ff_sqrt(w) == w + 1
    assert ff_sqrt(gf4.elem(1)) == 1
    t = F("TOWER(3)")
    r = ff_sqrt(t.elem(2))
    assert r.value == t.generator(1) == (0, 1)
    assert r * r == t.elem(2)
    assert ff_sqrt(t.elem(1)) * ff_sqrt(t.elem(1)) == 1


def test_tower_normalize_examples():
    t = F("TOWER(3)")
    assert tower_normalize(t.elem((2, 0))).value == (2,)
    assert tower_normalize(t.elem((1,))).value == (1,)
    g = tower_normalize(t.elem((0, 1)))
    assert g.value == (0, 1) and t.level(g.value) == 1
    assert g ** 3 != g


def test_tower_nonsquares():
    t = F("TOWER(3)")
    assert t.nonsquare(0) == (2,)
    for level in range(3):
        ns = t.nonsquare(level)
        assert len(ns) == 1 << level
        assert not t.is_square(t.normalize(ns))


def test_tower_level_cap():
    t = TowerField(3, max_level=1)
    with pytest.raises(TowerLevelExceeded):
        t.sqrt(t.nonsquare(1))
    with pytest.raises(TowerLevelExceeded):
        t.lift((1,), 2)


@pytest.mark.parametrize("spec", FINITE)
@given(data=st.data())
def test_axioms(spec, data):
    ctx = F(spec)
    a, b, c = (data.draw(elements(ctx)) for _ in range(3))
    add, mul = ctx.add, ctx.mul
    assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert ctx.sub(add(a, b), b) == a


@pytest.mark.parametrize("level", [0, 1, 2, 3])
@given(data=st.data())
def test_tower_axioms(level, data):
    t = F("TOWER(3)")
    a, b, c = (data.draw(elements(t, level)) for _ in range(3))
    assert t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c))
    assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
    if a != t.zero:
        assert t.mul(a, t.inv(a)) == t.one
        assert t.div(t.mul(a, b), a) == b
    s = t.sqrt(a)
    assert t.mul(s, s) == a


@given(level=st.integers(0, 3), data=st.data())
def test_mixed_levels_normalize(level, data):
    t = F("TOWER(3)")
    a = data.draw(elements(t, 0))
    lifted = t.lift(a, level)
    assert t.normalize(lifted) == a
    assert t.add(lifted, t.zero) == a
    assert t.mul(lifted, t.one) == a


@pytest.mark.parametrize("spec", CHAR2)
@given(data=st.data())
def test_frobenius_char2(spec, data):
    ctx = F(spec)
    a, b = data.draw(elements(ctx)), data.draw(elements(ctx))
    s = ctx.add(a, b)
    assert ctx.mul(s, s) == ctx.add(ctx.mul(a, a), ctx.mul(b, b))
    r = ctx.sqrt(a)
    assert ctx.mul(r, r) == a


@pytest.mark.parametrize("spec", FINITE + ["TOWER(3)", "TOWER(5)"])
def test_text_roundtrip(spec):
    ctx = F(spec)
    els = ctx.elements(2) if ctx.kind == "tower" else ctx.elements()
    for a in els:
        assert ctx.parse(ctx.format(a)) == a


def test_text_syntax():
    gf8 = F("GF(2^3)")
    assert gf8.format(gf8.parse("1:0:1")) == "1:0:1"
    assert gf8.parse("1:0:1") == 0b101
    t = F("TOWER(3)")
    assert t.parse("L1;0:1") == (0, 1)
    assert t.format((0, 1)) == "L1;0:1"
    assert t.parse("L1;2:0") == (2,)
    assert F("GF(5)").parse("-1") == 4
    for bad in ("x", "1.5", "5", "-5"):
        with pytest.raises(ParseError):
            F("GF(5)").parse(bad)
    with pytest.raises(ParseError):
        t.parse("L1;0:3")
    with pytest.raises(ParseError):
        gf8.parse("1:0:2")


def test_field_specs():
    assert isinstance(field_from_spec("GF(2^2)"), BinaryField)
    assert field_from_spec("GF(4)") is field_from_spec("GF(2^2)")
    assert field_from_spec("GF(2**3)").spec == "GF(2^3)"
    assert isinstance(field_from_spec("GF(2^1)"), PrimeField)
    for bad in ("GF(6)", "GF(9)", "GF(3^2)", "Q", "TOWER(2)"):
        with pytest.raises(ParseError):
            field_from_spec(bad)


def test_binary_default_modulus_is_gf4_omega():
    gf4 = F("GF(4)")
    w = gf4.elem(2)
    assert w * w == w + 1
