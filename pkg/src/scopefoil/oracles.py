"""Reference normalizers and alpha-equivalence.

Two deliberately independent implementations over representations that do
not share the scope-indexed machinery:

* a plain named normalizer over the surface syntax, doing textbook
  capture-avoiding substitution with free-variable sets and a deterministic
  fresh-identifier supply, and
* a de Bruijn normalizer with shift/substitute index arithmetic.

``alpha_eq`` converts any representation in this package to the de Bruijn
form and compares structurally; it is the only alpha-equivalence used
anywhere.  Free variables compare by identifier, so cross-representation
comparisons of *open* terms must convert with a consistent raw -> identifier
mapping first (see :mod:`scopefoil.bridge`).

Binders in de Bruijn terms keep the *shape* of the pattern that bound them
(wildcard / variable / pair) but not its names; a pattern's variables are
numbered left to right with the rightmost innermost (index 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import bridge, generic, lambda_pi, naive, terms
from .fuel import Fuel
from .names import Var as FoilVar


# --------------------------------------------------------------------------
# named reference normalizer
# --------------------------------------------------------------------------


def _fresh_ident(base: str, avoid: set[str]) -> naive.VarIdent:
    if base not in avoid and base not in naive.RESERVED_WORDS:
        return naive.VarIdent(base)
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return naive.VarIdent(f"{base}{i}")


def _pattern_refresh(
    pattern: naive.Pattern, sub: dict[str, naive.Term], body: naive.Term
) -> tuple[naive.Pattern, dict[str, naive.Term]]:
    """Prepare to substitute under ``pattern``: drop shadowed entries, rename
    any binder that would capture a free variable of the remaining values."""
    bound = {i.text for i in naive.pattern_idents(pattern)}
    body_free = naive.free_idents(body)
    live = {k: v for k, v in sub.items() if k in body_free and k not in bound}
    if not live:
        return pattern, {}
    value_free: set[str] = set()
    for v in live.values():
        value_free |= naive.free_idents(v)
    avoid = value_free | set(body_free) | bound
    sub2 = dict(live)

    def rebuild(p: naive.Pattern) -> naive.Pattern:
        match p:
            case naive.PatternWildcard():
                return p
            case naive.PatternVar(ident):
                if ident.text in value_free:
                    fresh = _fresh_ident(ident.text, avoid)
                    avoid.add(fresh.text)
                    sub2[ident.text] = naive.Var(fresh)
                    return naive.PatternVar(fresh)
                return p
            case naive.PatternPair(left, right):
                return naive.PatternPair(rebuild(left), rebuild(right))
        raise TypeError(f"not a pattern: {p!r}")

    return rebuild(pattern), sub2


def subst_named(sub: dict[str, naive.Term], term: naive.Term) -> naive.Term:
    """Capture-avoiding parallel substitution on surface terms."""
    if not sub:
        return term
    match term:
        case naive.Var(ident):
            return sub.get(ident.text, term)
        case naive.Pair(left, right):
            return naive.Pair(subst_named(sub, left), subst_named(sub, right))
        case naive.First(t):
            return naive.First(subst_named(sub, t))
        case naive.Second(t):
            return naive.Second(subst_named(sub, t))
        case naive.App(fun, arg):
            return naive.App(subst_named(sub, fun), subst_named(sub, arg))
        case naive.Lam(pattern, naive.ScopedTerm(body)):
            pattern2, sub2 = _pattern_refresh(pattern, sub, body)
            return naive.Lam(pattern2, naive.ScopedTerm(subst_named(sub2, body)))
        case naive.Pi(pattern, domain, naive.ScopedTerm(codomain)):
            domain2 = subst_named(sub, domain)
            pattern2, sub2 = _pattern_refresh(pattern, sub, codomain)
            return naive.Pi(
                pattern2, domain2, naive.ScopedTerm(subst_named(sub2, codomain))
            )
        case naive.Universe():
            return term
    raise TypeError(f"not a term: {term!r}")


def _bindings_named(pattern: naive.Pattern, arg: naive.Term) -> dict[str, naive.Term]:
    match pattern:
        case naive.PatternWildcard():
            return {}
        case naive.PatternVar(ident):
            return {ident.text: arg}
        case naive.PatternPair(left, right):
            out = _bindings_named(left, naive.First(arg))
            out.update(_bindings_named(right, naive.Second(arg)))
            return out
    raise TypeError(f"not a pattern: {pattern!r}")


def _whnf_named(term: naive.Term, fuel: Fuel) -> naive.Term:
    match term:
        case naive.First(t):
            t2 = _whnf_named(t, fuel)
            if type(t2) is naive.Pair:
                fuel.spend()
                return _whnf_named(t2.left, fuel)
            return term if t2 is t else naive.First(t2)
        case naive.Second(t):
            t2 = _whnf_named(t, fuel)
            if type(t2) is naive.Pair:
                fuel.spend()
                return _whnf_named(t2.right, fuel)
            return term if t2 is t else naive.Second(t2)
        case naive.App(fun, arg):
            fun2 = _whnf_named(fun, fuel)
            if type(fun2) is naive.Lam:
                fuel.spend()
                sub = _bindings_named(fun2.pattern, arg)
                return _whnf_named(subst_named(sub, fun2.body.term), fuel)
            return term if fun2 is fun else naive.App(fun2, arg)
        case _:
            return term


def whnf_named(term: naive.Term, fuel: int | None = None) -> naive.Term:
    return _whnf_named(term, Fuel(fuel))


def _nf_named(term: naive.Term, fuel: Fuel) -> naive.Term:
    term = _whnf_named(term, fuel)
    match term:
        case naive.Var() | naive.Universe():
            return term
        case naive.Pair(left, right):
            return naive.Pair(_nf_named(left, fuel), _nf_named(right, fuel))
        case naive.First(t):
            return naive.First(_nf_named(t, fuel))
        case naive.Second(t):
            return naive.Second(_nf_named(t, fuel))
        case naive.App(fun, arg):
            return naive.App(_nf_named(fun, fuel), _nf_named(arg, fuel))
        case naive.Lam(pattern, naive.ScopedTerm(body)):
            return naive.Lam(pattern, naive.ScopedTerm(_nf_named(body, fuel)))
        case naive.Pi(pattern, domain, naive.ScopedTerm(codomain)):
            return naive.Pi(
                pattern,
                _nf_named(domain, fuel),
                naive.ScopedTerm(_nf_named(codomain, fuel)),
            )
    raise TypeError(f"not a term: {term!r}")


def nf_named(term: naive.Term, fuel: int | None = None) -> naive.Term:
    """Normal-order normalization on the surface syntax."""
    return _nf_named(term, Fuel(fuel))


# --------------------------------------------------------------------------
# de Bruijn representation
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ShapeWildcard:
    pass


@dataclass(frozen=True, slots=True)
class ShapeVar:
    pass


@dataclass(frozen=True, slots=True)
class ShapePair:
    left: "Shape"
    right: "Shape"


Shape = Union[ShapeWildcard, ShapeVar, ShapePair]


@dataclass(frozen=True, slots=True)
class BVar:
    index: int


@dataclass(frozen=True, slots=True)
class FVar:
    ident: naive.VarIdent


@dataclass(frozen=True, slots=True)
class DBApp:
    fun: "DBTerm"
    arg: "DBTerm"


@dataclass(frozen=True, slots=True)
class DBLam:
    shape: Shape
    body: "DBTerm"


@dataclass(frozen=True, slots=True)
class DBPi:
    shape: Shape
    domain: "DBTerm"
    codomain: "DBTerm"


@dataclass(frozen=True, slots=True)
class DBPair:
    left: "DBTerm"
    right: "DBTerm"


@dataclass(frozen=True, slots=True)
class DBFirst:
    term: "DBTerm"


@dataclass(frozen=True, slots=True)
class DBSecond:
    term: "DBTerm"


@dataclass(frozen=True, slots=True)
class DBUniverse:
    pass


DBTerm = Union[BVar, FVar, DBApp, DBLam, DBPi, DBPair, DBFirst, DBSecond, DBUniverse]


def _shape_of(pattern: naive.Pattern) -> tuple[Shape, list[str]]:
    match pattern:
        case naive.PatternWildcard():
            return ShapeWildcard(), []
        case naive.PatternVar(ident):
            return ShapeVar(), [ident.text]
        case naive.PatternPair(left, right):
            ls, ln = _shape_of(left)
            rs, rn = _shape_of(right)
            return ShapePair(ls, rs), ln + rn
    raise TypeError(f"not a pattern: {pattern!r}")


def shape_arity(shape: Shape) -> int:
    match shape:
        case ShapeWildcard():
            return 0
        case ShapeVar():
            return 1
        case ShapePair(left, right):
            return shape_arity(left) + shape_arity(right)
    raise TypeError(f"not a shape: {shape!r}")


def _shape_paths(shape: Shape) -> list[tuple[int, ...]]:
    """Projection paths to the shape's variables, left to right.  Step 0 is
    a ``first`` projection, step 1 a ``second``."""
    match shape:
        case ShapeWildcard():
            return []
        case ShapeVar():
            return [()]
        case ShapePair(left, right):
            return [(0,) + p for p in _shape_paths(left)] + [
                (1,) + p for p in _shape_paths(right)
            ]
    raise TypeError(f"not a shape: {shape!r}")


def to_debruijn(term: naive.Term) -> DBTerm:
    """Convert surface syntax to de Bruijn form; free variables stay named."""

    def go(t: naive.Term, ctx: list[str]) -> DBTerm:
        match t:
            case naive.Var(ident):
                text = ident.text
                for depth, name in enumerate(reversed(ctx)):
                    if name == text:
                        return BVar(depth)
                return FVar(naive.VarIdent(text))
            case naive.Pair(left, right):
                return DBPair(go(left, ctx), go(right, ctx))
            case naive.First(inner):
                return DBFirst(go(inner, ctx))
            case naive.Second(inner):
                return DBSecond(go(inner, ctx))
            case naive.App(fun, arg):
                return DBApp(go(fun, ctx), go(arg, ctx))
            case naive.Lam(pattern, naive.ScopedTerm(body)):
                shape, names = _shape_of(pattern)
                return DBLam(shape, go(body, ctx + names))
            case naive.Pi(pattern, domain, naive.ScopedTerm(codomain)):
                shape, names = _shape_of(pattern)
                return DBPi(shape, go(domain, ctx), go(codomain, ctx + names))
            case naive.Universe():
                return DBUniverse()
        raise TypeError(f"not a term: {t!r}")

    return go(term, [])


def from_debruijn(term: DBTerm) -> naive.Term:
    """Convert back to surface syntax, inventing binder names ``x0, x1, ...``
    deterministically (skipping any identifier that occurs free)."""
    taken = set()

    def collect_free(t: DBTerm) -> None:
        match t:
            case FVar(ident):
                taken.add(ident.text)
            case DBApp(fun, arg):
                collect_free(fun)
                collect_free(arg)
            case DBLam(_, body):
                collect_free(body)
            case DBPi(_, domain, codomain):
                collect_free(domain)
                collect_free(codomain)
            case DBPair(left, right):
                collect_free(left)
                collect_free(right)
            case DBFirst(inner) | DBSecond(inner):
                collect_free(inner)
            case _:
                pass

    collect_free(term)
    counter = 0

    def fresh() -> naive.VarIdent:
        nonlocal counter
        while f"x{counter}" in taken:
            counter += 1
        ident = naive.VarIdent(f"x{counter}")
        counter += 1
        return ident

    def pattern_of(shape: Shape) -> tuple[naive.Pattern, list[naive.VarIdent]]:
        match shape:
            case ShapeWildcard():
                return naive.PatternWildcard(), []
            case ShapeVar():
                ident = fresh()
                return naive.PatternVar(ident), [ident]
            case ShapePair(left, right):
                lp, ln = pattern_of(left)
                rp, rn = pattern_of(right)
                return naive.PatternPair(lp, rp), ln + rn
        raise TypeError(f"not a shape: {shape!r}")

    def go(t: DBTerm, ctx: list[naive.VarIdent]) -> naive.Term:
        match t:
            case BVar(index):
                return naive.Var(ctx[-1 - index])
            case FVar(ident):
                return naive.Var(ident)
            case DBApp(fun, arg):
                return naive.App(go(fun, ctx), go(arg, ctx))
            case DBLam(shape, body):
                pattern, names = pattern_of(shape)
                return naive.Lam(pattern, naive.ScopedTerm(go(body, ctx + names)))
            case DBPi(shape, domain, codomain):
                domain2 = go(domain, ctx)
                pattern, names = pattern_of(shape)
                return naive.Pi(
                    pattern, domain2, naive.ScopedTerm(go(codomain, ctx + names))
                )
            case DBPair(left, right):
                return naive.Pair(go(left, ctx), go(right, ctx))
            case DBFirst(inner):
                return naive.First(go(inner, ctx))
            case DBSecond(inner):
                return naive.Second(go(inner, ctx))
            case DBUniverse():
                return naive.Universe()
        raise TypeError(f"not a term: {t!r}")

    return go(term, [])


def shift_db(term: DBTerm, by: int, cutoff: int = 0) -> DBTerm:
    """Add ``by`` to every index >= ``cutoff`` (free in the current prefix)."""
    match term:
        case BVar(index):
            return BVar(index + by) if index >= cutoff else term
        case FVar():
            return term
        case DBApp(fun, arg):
            return DBApp(shift_db(fun, by, cutoff), shift_db(arg, by, cutoff))
        case DBLam(shape, body):
            return DBLam(shape, shift_db(body, by, cutoff + shape_arity(shape)))
        case DBPi(shape, domain, codomain):
            return DBPi(
                shape,
                shift_db(domain, by, cutoff),
                shift_db(codomain, by, cutoff + shape_arity(shape)),
            )
        case DBPair(left, right):
            return DBPair(shift_db(left, by, cutoff), shift_db(right, by, cutoff))
        case DBFirst(inner):
            return DBFirst(shift_db(inner, by, cutoff))
        case DBSecond(inner):
            return DBSecond(shift_db(inner, by, cutoff))
        case DBUniverse():
            return term
    raise TypeError(f"not a term: {term!r}")


def _proj(path: tuple[int, ...], term: DBTerm) -> DBTerm:
    for step in path:
        term = DBFirst(term) if step == 0 else DBSecond(term)
    return term


def _db_beta(shape: Shape, body: DBTerm, arg: DBTerm) -> DBTerm:
    """Contract ``(lam <shape>. body) arg``: each pattern variable becomes the
    matching first/second projection chain over ``arg``, and the remaining
    indices drop by the shape's arity."""
    k = shape_arity(shape)
    paths = _shape_paths(shape)

    def go(t: DBTerm, depth: int) -> DBTerm:
        match t:
            case BVar(index):
                if index < depth:
                    return t
                if index < depth + k:
                    pos = k - 1 - (index - depth)
                    return _proj(paths[pos], shift_db(arg, depth))
                return BVar(index - k)
            case FVar():
                return t
            case DBApp(fun, a):
                return DBApp(go(fun, depth), go(a, depth))
            case DBLam(shape2, body2):
                return DBLam(shape2, go(body2, depth + shape_arity(shape2)))
            case DBPi(shape2, domain, codomain):
                return DBPi(
                    shape2,
                    go(domain, depth),
                    go(codomain, depth + shape_arity(shape2)),
                )
            case DBPair(left, right):
                return DBPair(go(left, depth), go(right, depth))
            case DBFirst(inner):
                return DBFirst(go(inner, depth))
            case DBSecond(inner):
                return DBSecond(go(inner, depth))
            case DBUniverse():
                return t
        raise TypeError(f"not a term: {t!r}")

    return go(body, 0)


def _db_size(term: DBTerm) -> int:
    """Node count, used to charge beta steps by the work they cause."""
    match term:
        case BVar() | FVar() | DBUniverse():
            return 1
        case DBApp(fun, arg):
            return 1 + _db_size(fun) + _db_size(arg)
        case DBLam(_, body):
            return 1 + _db_size(body)
        case DBPi(_, domain, codomain):
            return 1 + _db_size(domain) + _db_size(codomain)
        case DBPair(left, right):
            return 1 + _db_size(left) + _db_size(right)
        case DBFirst(inner) | DBSecond(inner):
            return 1 + _db_size(inner)
    raise TypeError(f"not a term: {term!r}")


def _whnf_db(term: DBTerm, fuel: Fuel) -> DBTerm:
    match term:
        case DBFirst(t):
            t2 = _whnf_db(t, fuel)
            if type(t2) is DBPair:
                fuel.spend()
                return _whnf_db(t2.left, fuel)
            return term if t2 is t else DBFirst(t2)
        case DBSecond(t):
            t2 = _whnf_db(t, fuel)
            if type(t2) is DBPair:
                fuel.spend()
                return _whnf_db(t2.right, fuel)
            return term if t2 is t else DBSecond(t2)
        case DBApp(fun, arg):
            fun2 = _whnf_db(fun, fuel)
            if type(fun2) is DBLam:
                # Charge in proportion to the argument being copied into the
                # body: this makes the budget a bound on allocation, so terms
                # whose intermediates explode in size (while taking few
                # steps) are cut off instead of eating the machine.
                fuel.spend(1 + _db_size(arg))
                return _whnf_db(_db_beta(fun2.shape, fun2.body, arg), fuel)
            return term if fun2 is fun else DBApp(fun2, arg)
        case _:
            return term


def whnf_debruijn(term: DBTerm, fuel: int | None = None) -> DBTerm:
    """Weak head normal form.  ``fuel`` bounds *work*: projections cost one
    unit, a beta step costs one plus the size of the argument it copies."""
    return _whnf_db(term, Fuel(fuel))


def _nf_db(term: DBTerm, fuel: Fuel) -> DBTerm:
    term = _whnf_db(term, fuel)
    match term:
        case BVar() | FVar() | DBUniverse():
            return term
        case DBApp(fun, arg):
            return DBApp(_nf_db(fun, fuel), _nf_db(arg, fuel))
        case DBLam(shape, body):
            return DBLam(shape, _nf_db(body, fuel))
        case DBPi(shape, domain, codomain):
            return DBPi(shape, _nf_db(domain, fuel), _nf_db(codomain, fuel))
        case DBPair(left, right):
            return DBPair(_nf_db(left, fuel), _nf_db(right, fuel))
        case DBFirst(t):
            return DBFirst(_nf_db(t, fuel))
        case DBSecond(t):
            return DBSecond(_nf_db(t, fuel))
    raise TypeError(f"not a term: {term!r}")


def nf_debruijn(term: DBTerm, fuel: int | None = None) -> DBTerm:
    """Normal-order normalization on de Bruijn terms.

    ``fuel`` is a work budget (see :func:`whnf_debruijn`), so it also bounds
    how large the intermediate terms can grow before giving up.
    """
    return _nf_db(term, Fuel(fuel))


# --------------------------------------------------------------------------
# alpha-equivalence
# --------------------------------------------------------------------------

_DB_CLASSES = (BVar, FVar, DBApp, DBLam, DBPi, DBPair, DBFirst, DBSecond, DBUniverse)
_NAIVE_CLASSES = (
    naive.Var,
    naive.Pair,
    naive.First,
    naive.Second,
    naive.App,
    naive.Lam,
    naive.Pi,
    naive.Universe,
)
_DIRECT_CLASSES = (
    terms.Pair,
    terms.First,
    terms.Second,
    terms.App,
    terms.Lam,
    terms.Pi,
    terms.Universe,
)


def as_debruijn(term: object) -> DBTerm:
    """Canonicalize any term representation in this package to de Bruijn form.

    Scope-indexed terms go through the default ``x{raw}`` identifier scheme;
    open terms that must compare against surface terms should be converted
    by the caller with the appropriate inverse mapping instead.
    """
    if isinstance(term, _DB_CLASSES):
        return term
    if isinstance(term, _NAIVE_CLASSES):
        return to_debruijn(term)
    if isinstance(term, (FoilVar, *_DIRECT_CLASSES)):
        return to_debruijn(bridge.from_foil_term(bridge.default_ident, term))
    if isinstance(term, generic.Node):
        direct = lambda_pi.free_to_direct(term)
        return to_debruijn(bridge.from_foil_term(bridge.default_ident, direct))
    raise TypeError(f"no known term representation: {term!r}")


def alpha_eq(a: object, b: object) -> bool:
    """Alpha-equivalence across representations (structural equality of the
    canonical de Bruijn forms)."""
    return as_debruijn(a) == as_debruijn(b)
