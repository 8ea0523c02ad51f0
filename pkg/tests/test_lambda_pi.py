"""The lambda-Pi instantiation of the generic layer.

Reduction expectations were computed with the independent named
normalizer and frozen as surface strings.
"""

import random

import pytest

from conftest import gen_naive_term

from scopefoil.bridge import default_ident, from_foil_term, to_foil_closed
from scopefoil.fuel import FuelExceededError
from scopefoil.lambda_pi import (
    UnsupportedPatternError,
    as_app,
    as_first,
    as_lam,
    as_pair,
    as_pi,
    as_second,
    direct_to_free,
    free_to_direct,
    is_universe,
    mk_app,
    mk_first,
    mk_lam,
    mk_pair,
    mk_pi,
    mk_second,
    mk_universe,
    mk_var,
    nf_free,
    whnf_free,
)
from scopefoil.names import Name, NameBinder, Scope
from scopefoil.oracles import alpha_eq, nf_named
from scopefoil.syntax import parse_term


def _nf_closed(src: str):
    term = direct_to_free(to_foil_closed(parse_term(src)))
    return from_foil_term(default_ident, free_to_direct(nf_free(Scope(), term)))


def test_views_invert_constructors():
    u = mk_universe()
    x = mk_var(Name(0))
    assert as_app(mk_app(x, u)) == (x, u)
    assert as_lam(mk_lam(NameBinder(0), x)) == (NameBinder(0), x)
    assert as_pi(mk_pi(NameBinder(0), u, x)) == (NameBinder(0), u, x)
    assert is_universe(u)
    assert not is_universe(x)
    assert as_pair(mk_pair(x, u)) == (x, u)
    assert as_first(mk_first(x)) == x
    assert as_second(mk_second(x)) == x


def test_views_reject_wrong_shapes():
    u = mk_universe()
    assert as_app(u) is None
    assert as_lam(u) is None
    assert as_pair(mk_first(u)) is None
    assert as_first(mk_second(u)) is None


def test_nf_beta():
    out = _nf_closed("(lam x . x x) (lam y . y)")
    assert alpha_eq(out, parse_term("lam y . y"))


def test_nf_reduces_under_binders():
    out = _nf_closed("lam f . (lam x . f x) U")
    assert alpha_eq(out, parse_term("lam f . f U"))


def test_nf_projections():
    out = _nf_closed("second (first ((U, lam x . x), U))")
    assert alpha_eq(out, parse_term("lam x . x"))


def test_nf_pi_domains_and_codomains():
    out = _nf_closed("fun (A : (lam t . t) U) -> (lam y . y) A")
    assert alpha_eq(out, parse_term("fun (A : U) -> A"))


def test_whnf_free_stops_at_weak_head():
    term = direct_to_free(to_foil_closed(parse_term("(lam x . (x, x)) ((lam y . y) U)")))
    head = from_foil_term(default_ident, free_to_direct(whnf_free(Scope(), term)))
    assert alpha_eq(head, parse_term("((lam y . y) U, (lam y . y) U)"))


def test_fuel_exhausts_on_omega():
    omega = direct_to_free(to_foil_closed(parse_term("(lam x . x x) (lam x . x x)")))
    with pytest.raises(FuelExceededError):
        nf_free(Scope(), omega, fuel=500)


def test_direct_free_roundtrip_on_single_binder_terms():
    rng = random.Random(404)
    kept = 0
    while kept < 60:
        surface = gen_naive_term(rng, rng.randrange(1, 5))
        try:
            direct = to_foil_closed(surface)
            free = direct_to_free(direct)
        except UnsupportedPatternError:
            continue  # pattern binders have no single-binder form
        kept += 1
        assert free_to_direct(free) == direct


def test_direct_to_free_rejects_pattern_binders():
    direct = to_foil_closed(parse_term("lam (a, b) . (b, a)"))
    with pytest.raises(UnsupportedPatternError):
        direct_to_free(direct)
    wild = to_foil_closed(parse_term("lam _ . U"))
    with pytest.raises(UnsupportedPatternError):
        direct_to_free(wild)


def test_free_agrees_with_named_oracle_on_random_terms():
    rng = random.Random(98765)
    checked = 0
    while checked < 80:
        surface = gen_naive_term(rng, rng.randrange(1, 5))
        try:
            free = direct_to_free(to_foil_closed(surface))
        except UnsupportedPatternError:
            continue
        try:
            expected = nf_named(surface, fuel=20_000)
            got = nf_free(Scope(), free, fuel=20_000)
        except FuelExceededError:
            continue
        checked += 1
        back = from_foil_term(default_ident, free_to_direct(got))
        assert alpha_eq(back, expected), surface
