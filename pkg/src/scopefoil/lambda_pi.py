"""Lambda-Pi with pairs, assembled on the signature-generic AST.

The language is the sum of two independent signature fragments: the core
(application, single-binder lambda, Pi, universe) on the left and pairs with
projections on the right.  Binding constructs here bind exactly one variable;
the direct representation's richer patterns convert only when they are single
variables (:class:`UnsupportedPatternError` otherwise).

Smart constructors (``mk_*``) hide the injections; the ``as_*`` views undo
them and return ``None`` on mismatch, so callers can pattern-match without
naming the sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import terms
from .fuel import Fuel
from .generic import AST, InL, InR, Node, ScopedAST, substitute
from .names import (
    Name,
    NameBinder,
    Scope,
    Var,
    add_rename,
    add_subst,
    extend_scope,
    identity_subst,
    name_of,
    with_refreshed,
)
from .patterns import PatternVar


class UnsupportedPatternError(Exception):
    """The single-binder representation cannot express this pattern."""


# --------------------------------------------------------------------------
# signature fragments
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AppSig:
    fun: AST
    arg: AST

    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return AppSig(f_term(self.fun), f_term(self.arg))


@dataclass(frozen=True, slots=True)
class LamSig:
    scoped: ScopedAST

    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return LamSig(f_scoped(self.scoped))


@dataclass(frozen=True, slots=True)
class PiSig:
    domain: AST
    codomain: ScopedAST

    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return PiSig(f_term(self.domain), f_scoped(self.codomain))


@dataclass(frozen=True, slots=True)
class UniverseSig:
    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return self


@dataclass(frozen=True, slots=True)
class PairSig:
    left: AST
    right: AST

    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return PairSig(f_term(self.left), f_term(self.right))


@dataclass(frozen=True, slots=True)
class FirstSig:
    term: AST

    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return FirstSig(f_term(self.term))


@dataclass(frozen=True, slots=True)
class SecondSig:
    term: AST

    def map_node(self, f_scoped, f_term):  # type: ignore[no-untyped-def]
        return SecondSig(f_term(self.term))


LambdaPiNode = Union[AppSig, LamSig, PiSig, UniverseSig]
PairNode = Union[PairSig, FirstSig, SecondSig]

# A lambda-Pi term is the generic AST over the summed signature.
Term = AST


# --------------------------------------------------------------------------
# smart constructors and views
# --------------------------------------------------------------------------


def mk_var(name: Name) -> Term:
    return Var(name)


def mk_app(fun: Term, arg: Term) -> Term:
    return Node(InL(AppSig(fun, arg)))


def mk_lam(binder: NameBinder, body: Term) -> Term:
    return Node(InL(LamSig(ScopedAST(binder, body))))


def mk_pi(binder: NameBinder, domain: Term, codomain: Term) -> Term:
    return Node(InL(PiSig(domain, ScopedAST(binder, codomain))))


def mk_universe() -> Term:
    return Node(InL(UniverseSig()))


def mk_pair(left: Term, right: Term) -> Term:
    return Node(InR(PairSig(left, right)))


def mk_first(term: Term) -> Term:
    return Node(InR(FirstSig(term)))


def mk_second(term: Term) -> Term:
    return Node(InR(SecondSig(term)))


def as_app(term: Term) -> tuple[Term, Term] | None:
    match term:
        case Node(InL(AppSig(fun, arg))):
            return fun, arg
    return None


def as_lam(term: Term) -> tuple[NameBinder, Term] | None:
    match term:
        case Node(InL(LamSig(ScopedAST(binder, body)))):
            return binder, body
    return None


def as_pi(term: Term) -> tuple[NameBinder, Term, Term] | None:
    match term:
        case Node(InL(PiSig(domain, ScopedAST(binder, codomain)))):
            return binder, domain, codomain
    return None


def is_universe(term: Term) -> bool:
    match term:
        case Node(InL(UniverseSig())):
            return True
    return False


def as_pair(term: Term) -> tuple[Term, Term] | None:
    match term:
        case Node(InR(PairSig(left, right))):
            return left, right
    return None


def as_first(term: Term) -> Term | None:
    match term:
        case Node(InR(FirstSig(t))):
            return t
    return None


def as_second(term: Term) -> Term | None:
    match term:
        case Node(InR(SecondSig(t))):
            return t
    return None


# --------------------------------------------------------------------------
# normalization
# --------------------------------------------------------------------------


def _whnf(scope: Scope, term: Term, fuel: Fuel) -> Term:
    match term:
        case Node(InR(FirstSig(t))):
            t2 = _whnf(scope, t, fuel)
            pair = as_pair(t2)
            if pair is not None:
                fuel.spend()
                return _whnf(scope, pair[0], fuel)
            return term if t2 is t else mk_first(t2)
        case Node(InR(SecondSig(t))):
            t2 = _whnf(scope, t, fuel)
            pair = as_pair(t2)
            if pair is not None:
                fuel.spend()
                return _whnf(scope, pair[1], fuel)
            return term if t2 is t else mk_second(t2)
        case Node(InL(AppSig(fun, arg))):
            fun2 = _whnf(scope, fun, fuel)
            lam = as_lam(fun2)
            if lam is not None:
                binder, body = lam
                fuel.spend()
                subst = add_subst(identity_subst(), binder, arg)
                return _whnf(scope, substitute(scope, subst, body), fuel)
            return term if fun2 is fun else mk_app(fun2, arg)
        case _:
            return term


def whnf_free(scope: Scope, term: Term, fuel: int | None = None) -> Term:
    """Weak head normal form via the generic substitution."""
    return _whnf(scope, term, Fuel(fuel))


def _nf(scope: Scope, term: Term, fuel: Fuel) -> Term:
    term = _whnf(scope, term, fuel)
    match term:
        case Var():
            return term
        case Node(InL(AppSig(fun, arg))):
            return mk_app(_nf(scope, fun, fuel), _nf(scope, arg, fuel))
        case Node(InL(LamSig(ScopedAST(binder, body)))):
            binder2 = with_refreshed(scope, name_of(binder))
            scope2 = extend_scope(binder2, scope)
            if binder2.raw != binder.raw:
                rename = add_rename(identity_subst(), binder, name_of(binder2))
                body = substitute(scope2, rename, body)
            return mk_lam(binder2, _nf(scope2, body, fuel))
        case Node(InL(PiSig(domain, ScopedAST(binder, codomain)))):
            binder2 = with_refreshed(scope, name_of(binder))
            scope2 = extend_scope(binder2, scope)
            if binder2.raw != binder.raw:
                rename = add_rename(identity_subst(), binder, name_of(binder2))
                codomain = substitute(scope2, rename, codomain)
            return mk_pi(binder2, _nf(scope, domain, fuel), _nf(scope2, codomain, fuel))
        case Node(InL(UniverseSig())):
            return term
        case Node(InR(PairSig(left, right))):
            return mk_pair(_nf(scope, left, fuel), _nf(scope, right, fuel))
        case Node(InR(FirstSig(t))):
            return mk_first(_nf(scope, t, fuel))
        case Node(InR(SecondSig(t))):
            return mk_second(_nf(scope, t, fuel))
    raise TypeError(f"not a term: {term!r}")


def nf_free(scope: Scope, term: Term, fuel: int | None = None) -> Term:
    """Full normal-order normalization via the generic substitution."""
    return _nf(scope, term, Fuel(fuel))


# --------------------------------------------------------------------------
# conversions to and from the direct representation
# --------------------------------------------------------------------------


def _single_binder(pattern) -> NameBinder:  # type: ignore[no-untyped-def]
    match pattern:
        case PatternVar(binder):
            return binder
    raise UnsupportedPatternError(
        "only single-variable patterns convert to the single-binder form "
        f"(got a {type(pattern).__name__} binder)"
    )


def direct_to_free(term: terms.Term) -> Term:
    match term:
        case Var():
            return term
        case terms.Pair(left, right):
            return mk_pair(direct_to_free(left), direct_to_free(right))
        case terms.First(t):
            return mk_first(direct_to_free(t))
        case terms.Second(t):
            return mk_second(direct_to_free(t))
        case terms.App(fun, arg):
            return mk_app(direct_to_free(fun), direct_to_free(arg))
        case terms.Lam(pattern, body):
            return mk_lam(_single_binder(pattern), direct_to_free(body))
        case terms.Pi(pattern, domain, codomain):
            return mk_pi(
                _single_binder(pattern),
                direct_to_free(domain),
                direct_to_free(codomain),
            )
        case terms.Universe():
            return mk_universe()
    raise TypeError(f"not a term: {term!r}")


def free_to_direct(term: Term) -> terms.Term:
    match term:
        case Var():
            return term
        case Node(InL(AppSig(fun, arg))):
            return terms.App(free_to_direct(fun), free_to_direct(arg))
        case Node(InL(LamSig(ScopedAST(binder, body)))):
            return terms.Lam(PatternVar(binder), free_to_direct(body))
        case Node(InL(PiSig(domain, ScopedAST(binder, codomain)))):
            return terms.Pi(
                PatternVar(binder),
                free_to_direct(domain),
                free_to_direct(codomain),
            )
        case Node(InL(UniverseSig())):
            return terms.Universe()
        case Node(InR(PairSig(left, right))):
            return terms.Pair(free_to_direct(left), free_to_direct(right))
        case Node(InR(FirstSig(t))):
            return terms.First(free_to_direct(t))
        case Node(InR(SecondSig(t))):
            return terms.Second(free_to_direct(t))
    raise TypeError(f"not a term: {term!r}")
