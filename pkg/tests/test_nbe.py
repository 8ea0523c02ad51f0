"""Normalization by evaluation: agreement, laziness, no tree substitution."""

import random

import pytest

from scopefoil import generic, lambda_pi
from scopefoil.bench import gen_random
from scopefoil.bridge import default_ident, from_foil_term, to_foil_closed
from scopefoil.lambda_pi import direct_to_free, free_to_direct, nf_free
from scopefoil.names import Name, NameBinder, Scope
from scopefoil.nbe import EvalError, Thunk, eval_term, nf_nbe, quote
from scopefoil.oracles import alpha_eq
from scopefoil.syntax import parse_term

OMEGA = "(lam w . w w) (lam w . w w)"


def _free(src: str):
    return direct_to_free(to_foil_closed(parse_term(src)))


def _nbe(src: str):
    return from_foil_term(default_ident, free_to_direct(nf_nbe(Scope(), _free(src))))


def test_agrees_with_nf_free_on_basics():
    for src in (
        "(lam x . x) U",
        "(lam f . lam x . f (f x)) (lam y . y)",
        "lam f . (lam x . f x) U",
        "first ((lam x . x) U, U)",
        "second (U, lam x . x x)",
        "fun (A : (lam t . t) U) -> (lam y . y) A",
        "(lam x . x (lam y . y x)) (lam z . z)",
    ):
        free = _free(src)
        got = nf_nbe(Scope(), free)
        want = nf_free(Scope(), free)
        assert alpha_eq(got, want), src


def test_agrees_with_nf_free_on_random_corpus():
    for index in range(60):
        surface = gen_random(9000 + index, 12)
        free = direct_to_free(to_foil_closed(surface))
        assert alpha_eq(nf_nbe(Scope(), free), nf_free(Scope(), free)), index


def test_discarded_divergent_argument_converges():
    """Call-by-need: an argument that cannot normalize is fine if unused."""
    out = _nbe(f"(lam x . lam y . y) ({OMEGA})")
    assert alpha_eq(out, parse_term("lam y . y"))


def test_unforced_pair_component_converges():
    out = _nbe(f"first ((lam x . x) U, {OMEGA})")
    assert alpha_eq(out, parse_term("U"))


def test_thunks_memoize():
    term = _free("(lam x . x) U")
    thunk = Thunk(term, {})
    first = thunk.force()
    assert thunk.force() is first


def test_open_terms_evaluate_to_neutrals():
    scope = Scope().add(0)
    term = lambda_pi.mk_app(lambda_pi.mk_var(Name(0)), lambda_pi.mk_universe())
    out = nf_nbe(scope, term)
    assert out == term  # x0 U is already normal


def test_quote_refreshes_against_scope():
    # the binder x0 collides with the ambient name 0 and must be renamed
    term = lambda_pi.mk_lam(
        NameBinder(0),
        lambda_pi.mk_app(lambda_pi.mk_var(Name(0)), lambda_pi.mk_var(Name(0))),
    )
    scope = Scope().add(0)
    out = nf_nbe(scope, term)
    got = lambda_pi.as_lam(out)
    assert got is not None
    binder, _ = got
    assert binder.raw != 0


def test_ill_typed_eliminations_raise():
    with pytest.raises(EvalError):
        nf_nbe(Scope(), _free("U U"))
    with pytest.raises(EvalError):
        nf_nbe(Scope(), _free("first (lam x . x)"))
    with pytest.raises(EvalError):
        nf_nbe(Scope(), _free("(U, U) U"))


def test_never_calls_tree_substitution(monkeypatch):
    """The whole evaluate/quote pipeline stays out of `substitute`."""

    def boom(*args, **kwargs):
        raise AssertionError("nbe must not substitute into trees")

    monkeypatch.setattr(generic, "substitute", boom)
    monkeypatch.setattr(lambda_pi, "substitute", boom)
    free = _free("(lam f . lam x . f (f x)) (lam y . (y, y))")
    out = nf_nbe(Scope(), free)
    assert alpha_eq(out, parse_term("lam x . ((x, x), (x, x))"))


def test_eval_then_quote_composes():
    rng = random.Random(606)
    for _ in range(30):
        surface = gen_random(rng.randrange(10_000), 10)
        free = direct_to_free(to_foil_closed(surface))
        value = eval_term({}, free)
        out = quote(Scope(), value)
        # quoting is stable: normalizing the quoted form changes nothing
        assert alpha_eq(nf_nbe(Scope(), out), out)
