"""The two reference implementations and alpha-equivalence.

These are the oracles the rest of the suite leans on, so they get the
heaviest scrutiny: exact frozen forms for small cases, plus mutual
agreement on random terms (the named and de Bruijn normalizers share no
code, so agreement is meaningful evidence).
"""

import random

import pytest

from conftest import gen_naive_term

from scopefoil import naive
from scopefoil.fuel import FuelExceededError
from scopefoil.oracles import (
    BVar,
    DBApp,
    DBLam,
    FVar,
    ShapePair,
    ShapeVar,
    ShapeWildcard,
    alpha_eq,
    from_debruijn,
    nf_debruijn,
    nf_named,
    shift_db,
    subst_named,
    to_debruijn,
    whnf_debruijn,
    whnf_named,
)
from scopefoil.syntax import parse_term, pretty_term


def _v(text):
    return naive.Var(naive.VarIdent(text))


def test_to_debruijn_exact_forms():
    assert to_debruijn(parse_term("lam x . lam y . x y")) == DBLam(
        ShapeVar(), DBLam(ShapeVar(), DBApp(BVar(1), BVar(0)))
    )
    # pattern binders become name-free shapes; the leftmost binder is
    # outermost, so in `lam (a, b) . b a` the b is index 1... no: b is the
    # rightmost binder, hence index 0
    assert to_debruijn(parse_term("lam (a, b) . b a")) == DBLam(
        ShapePair(ShapeVar(), ShapeVar()), DBApp(BVar(0), BVar(1))
    )
    assert to_debruijn(parse_term("lam _ . y")) == DBLam(
        ShapeWildcard(), FVar(naive.VarIdent("y"))
    )


def test_to_debruijn_is_alpha_canonical():
    a = to_debruijn(parse_term("lam x . lam y . x"))
    b = to_debruijn(parse_term("lam y . lam x . y"))
    assert a == b
    c = to_debruijn(parse_term("lam x . lam y . y"))
    assert a != c


def test_from_debruijn_roundtrip():
    rng = random.Random(808)
    for _ in range(150):
        term = gen_naive_term(rng, rng.randrange(1, 6))
        db = to_debruijn(term)
        assert to_debruijn(from_debruijn(db)) == db


def test_shift_db():
    # shifting affects only indices at or above the cutoff
    body = DBApp(BVar(0), BVar(3))
    assert shift_db(body, 2, cutoff=1) == DBApp(BVar(0), BVar(5))
    assert shift_db(body, 2) == DBApp(BVar(2), BVar(5))
    under = DBLam(ShapeVar(), DBApp(BVar(0), BVar(1)))
    assert shift_db(under, 1) == DBLam(ShapeVar(), DBApp(BVar(0), BVar(2)))


def test_named_substitution_avoids_capture():
    # [x := y] (lam y . x y)  must not capture the substituted y
    inner = naive.Lam(
        naive.PatternVar(naive.VarIdent("y")),
        naive.ScopedTerm(naive.App(_v("x"), _v("y"))),
    )
    out = subst_named({"x": _v("y")}, inner)
    assert alpha_eq(out, parse_term("lam w . y w"))
    # and the pretty form really does rename the binder
    assert "lam y ." not in pretty_term(out)


def test_named_substitution_respects_shadowing():
    term = parse_term("lam x . x")
    assert subst_named({"x": naive.Universe()}, term) == term


def test_whnf_named_versus_nf_named():
    term = parse_term("(lam x . (x, x)) ((lam y . y) U)")
    assert pretty_term(whnf_named(term)) == "((lam y . y) U, (lam y . y) U)"
    assert pretty_term(nf_named(term)) == "(U, U)"


def test_nf_named_pattern_beta():
    assert pretty_term(nf_named(parse_term("(lam (a, b) . (b, a)) q"))) == "(second q, first q)"
    assert pretty_term(nf_named(parse_term("(lam (a, b) . (b, a)) (x, y)"))) == "(y, x)"
    assert pretty_term(nf_named(parse_term("(lam _ . U) q"))) == "U"


def test_nf_debruijn_pattern_beta_matches_named():
    for src in (
        "(lam (a, b) . (b, a)) q",
        "(lam (a, b) . (b, a)) (x, y)",
        "(lam ((a, b), c) . (a, (b, c))) q",
        "(lam (_, b) . b) (x, y)",
    ):
        named = nf_named(parse_term(src))
        db = nf_debruijn(to_debruijn(parse_term(src)))
        assert to_debruijn(named) == db, src


def test_whnf_debruijn():
    term = to_debruijn(parse_term("(lam x . (x, x)) ((lam y . y) U)"))
    head = whnf_debruijn(term)
    assert head == to_debruijn(parse_term("((lam y . y) U, (lam y . y) U)"))


def test_fuel_exhausts_on_omega_in_both_oracles():
    omega = parse_term("(lam x . x x) (lam x . x x)")
    with pytest.raises(FuelExceededError):
        nf_named(omega, fuel=300)
    with pytest.raises(FuelExceededError):
        nf_debruijn(to_debruijn(omega), fuel=300)


def test_alpha_eq_basics():
    assert alpha_eq(parse_term("lam x . x"), parse_term("lam y . y"))
    assert not alpha_eq(parse_term("lam x . x"), parse_term("lam x . U"))
    # free variables compare by name
    assert alpha_eq(_v("a"), _v("a"))
    assert not alpha_eq(_v("a"), _v("b"))
    # bound names never leak into the comparison
    assert alpha_eq(parse_term("lam a . a b"), parse_term("lam q . q b"))
    assert not alpha_eq(parse_term("lam a . a b"), parse_term("lam q . q c"))


def test_alpha_eq_crosses_representations():
    from scopefoil.bridge import to_foil_closed
    from scopefoil.lambda_pi import direct_to_free

    surface = parse_term("lam f . lam x . f (f x)")
    direct = to_foil_closed(surface)
    free = direct_to_free(direct)
    db = to_debruijn(surface)
    for a in (surface, direct, free, db):
        for b in (surface, direct, free, db):
            assert alpha_eq(a, b)


def test_named_and_debruijn_normalizers_agree():
    rng = random.Random(424242)
    checked = 0
    while checked < 120:
        term = gen_naive_term(rng, rng.randrange(1, 5))
        try:
            named = nf_named(term, fuel=20_000)
            db = nf_debruijn(to_debruijn(term), fuel=20_000)
        except FuelExceededError:
            continue
        checked += 1
        assert to_debruijn(named) == db, pretty_term(term)
