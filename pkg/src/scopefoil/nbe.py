"""Normalization by evaluation with delayed substitution.

Terms evaluate to values in an environment (raw name -> thunk/value); a
binder's body is never traversed by a substitution — it is captured in a
closure together with its environment and only evaluated when the closure
is applied.  Quotation reads normal forms back, applying closures to fresh
neutral variables under an extended scope.

Arguments and pair components are delayed with memoized thunks, so
evaluation demands exactly what normal order demands: terms whose arguments
fail to normalize (but are discarded) still converge, and results always
agree with the tree-substitution normalizers up to alpha.

Looking up a name the environment does not know yields a neutral value, so
open terms evaluate fine.  What does *not* evaluate is an ill-typed
elimination — applying a pair or projecting a lambda — because neutral
spines grow only from variables; those raise :class:`EvalError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .generic import InL, InR, Node, ScopedAST
from .lambda_pi import (
    AppSig,
    FirstSig,
    LamSig,
    PairSig,
    PiSig,
    SecondSig,
    Term,
    UniverseSig,
    mk_app,
    mk_first,
    mk_lam,
    mk_pair,
    mk_pi,
    mk_second,
    mk_universe,
)
from .names import (
    Name,
    NameBinder,
    Scope,
    Var,
    extend_scope,
    name_of,
    with_refreshed,
)


class EvalError(Exception):
    """An elimination hit a value of the wrong kind (ill-typed input)."""


class Thunk:
    """A delayed, memoized evaluation of ``term`` in ``env``."""

    __slots__ = ("term", "env", "value")

    def __init__(self, term: Term, env: "Env"):
        self.term = term
        self.env = env
        self.value: Value | None = None

    def force(self) -> "Value":
        v = self.value
        if v is None:
            v = eval_term(self.env, self.term)
            self.value = v
        return v


@dataclass(frozen=True, slots=True)
class EApp:
    arg: Thunk


@dataclass(frozen=True, slots=True)
class EFirst:
    pass


@dataclass(frozen=True, slots=True)
class ESecond:
    pass


Elim = Union[EApp, EFirst, ESecond]


@dataclass(frozen=True, slots=True)
class VNeutral:
    head: Name
    spine: tuple[Elim, ...]


@dataclass(frozen=True, slots=True)
class VLam:
    env: "Env"
    binder: NameBinder
    body: Term


@dataclass(frozen=True, slots=True)
class VPi:
    env: "Env"
    domain: "Value"
    binder: NameBinder
    codomain: Term


@dataclass(frozen=True, slots=True)
class VPair:
    left: Thunk
    right: Thunk


@dataclass(frozen=True, slots=True)
class VUniverse:
    pass


Value = Union[VNeutral, VLam, VPi, VPair, VUniverse]

# Environments map raw names to thunks (or already-forced values).
Env = dict


def _force(v) -> Value:  # type: ignore[no-untyped-def]
    return v.force() if type(v) is Thunk else v


def apply_value(fun: Value, arg: Thunk) -> Value:
    match fun:
        case VLam(env, binder, body):
            return eval_term({**env, binder.raw: arg}, body)
        case VNeutral(head, spine):
            return VNeutral(head, spine + (EApp(arg),))
    raise EvalError("cannot apply a non-function value")


def _project(value: Value, which: int) -> Value:
    match value:
        case VPair(left, right):
            return _force(left if which == 0 else right)
        case VNeutral(head, spine):
            return VNeutral(head, spine + ((EFirst() if which == 0 else ESecond()),))
    raise EvalError("cannot project a non-pair value")


def eval_term(env: Env, term: Term) -> Value:
    match term:
        case Var(name):
            hit = env.get(name.raw)
            return VNeutral(name, ()) if hit is None else _force(hit)
        case Node(InL(AppSig(fun, arg))):
            return apply_value(eval_term(env, fun), Thunk(arg, env))
        case Node(InL(LamSig(ScopedAST(binder, body)))):
            return VLam(env, binder, body)
        case Node(InL(PiSig(domain, ScopedAST(binder, codomain)))):
            return VPi(env, eval_term(env, domain), binder, codomain)
        case Node(InL(UniverseSig())):
            return VUniverse()
        case Node(InR(PairSig(left, right))):
            return VPair(Thunk(left, env), Thunk(right, env))
        case Node(InR(FirstSig(t))):
            return _project(eval_term(env, t), 0)
        case Node(InR(SecondSig(t))):
            return _project(eval_term(env, t), 1)
    raise TypeError(f"not a term: {term!r}")


def quote(scope: Scope, value: Value) -> Term:
    """Read a value back as a normal-form term under ``scope``."""
    match value:
        case VUniverse():
            return mk_universe()
        case VPair(left, right):
            return mk_pair(quote(scope, _force(left)), quote(scope, _force(right)))
        case VNeutral(head, spine):
            acc: Term = Var(head)
            for elim in spine:
                match elim:
                    case EApp(arg):
                        acc = mk_app(acc, quote(scope, _force(arg)))
                    case EFirst():
                        acc = mk_first(acc)
                    case ESecond():
                        acc = mk_second(acc)
            return acc
        case VLam(env, binder, body):
            binder2 = with_refreshed(scope, name_of(binder))
            scope2 = extend_scope(binder2, scope)
            body_value = eval_term(
                {**env, binder.raw: VNeutral(name_of(binder2), ())}, body
            )
            return mk_lam(binder2, quote(scope2, body_value))
        case VPi(env, domain, binder, codomain):
            binder2 = with_refreshed(scope, name_of(binder))
            scope2 = extend_scope(binder2, scope)
            codomain_value = eval_term(
                {**env, binder.raw: VNeutral(name_of(binder2), ())}, codomain
            )
            return mk_pi(binder2, quote(scope, domain), quote(scope2, codomain_value))
    raise TypeError(f"not a value: {value!r}")


def nf_nbe(scope: Scope, term: Term) -> Term:
    """Normal form by evaluate-then-quote; never substitutes into a tree."""
    return quote(scope, eval_term({}, term))
