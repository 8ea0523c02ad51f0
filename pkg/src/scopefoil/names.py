"""Scope-safe names, binders and substitutions.

The discipline implemented here is the stateless "rapier" style of
capture-avoiding substitution: every operation carries an explicit ``Scope``
(the set of raw names that may occur free), binders are *reused* when they do
not collide with the ambient scope and refreshed otherwise, and moving a term
into an extended scope (``sink``) costs nothing because the representation
does not change.

Static scope indices cannot be expressed in Python's type system, so the
scope-safety contract is enforced dynamically when the environment variable
``SCOPEFOIL_DEBUG_SCOPES=1`` is set (or :func:`set_debug_scopes` is called):
scope extensions assert distinctness, ``sink`` asserts that the target scope
is a superset of the source, and the term modules expose whole-term checkers
that re-validate membership node by node.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator

# Raw names are plain machine integers (>= 0).  Everything else is a thin,
# immutable wrapper around them.
RawName = int


class ScopeViolationError(Exception):
    """A scope-safety invariant was broken (only raised in debug mode)."""


_debug = os.environ.get("SCOPEFOIL_DEBUG_SCOPES", "") == "1"


def debug_scopes_enabled() -> bool:
    return _debug


def set_debug_scopes(enabled: bool) -> None:
    """Toggle debug-mode scope assertions at runtime (used by tests)."""
    global _debug
    _debug = enabled


@dataclass(frozen=True, slots=True)
class Name:
    """A use of a name, valid in some scope."""

    raw: RawName


@dataclass(frozen=True, slots=True)
class NameBinder:
    """A binding occurrence introducing ``raw`` into an inner scope."""

    raw: RawName


@dataclass(frozen=True, slots=True)
class Var:
    """Variable node, shared by every term representation in this package.

    Keeping a single variable constructor lets :class:`Subst` fall back to
    the variable injection without being parameterized over the term type.
    """

    name: Name


class Scope:
    """An immutable set of raw names with a cached maximum.

    The cached maximum makes :func:`fresh_raw_name` O(1); extension copies
    the member set, which is fine because scopes only ever grow by one
    binder at a time along a recursion path.
    """

    __slots__ = ("_members", "_max")

    def __init__(self, raws: Iterable[RawName] = ()):
        members = frozenset(raws)
        object.__setattr__(self, "_members", members)
        object.__setattr__(self, "_max", max(members) if members else None)

    @property
    def members(self) -> frozenset[RawName]:
        return self._members

    @property
    def max_raw(self) -> RawName | None:
        return self._max

    def add(self, raw: RawName) -> "Scope":
        """Extension without a distinctness check (shadowing allowed).

        Used by the debug checkers, which must tolerate binders that shadow
        an outer raw name: substitution inserts argument terms verbatim, so
        its *output* may shadow even though every binder it creates is fresh.
        """
        new = Scope.__new__(Scope)
        object.__setattr__(new, "_members", self._members | {raw})
        object.__setattr__(
            new, "_max", raw if self._max is None or raw > self._max else self._max
        )
        return new

    def __contains__(self, raw: RawName) -> bool:
        return raw in self._members

    def __iter__(self) -> Iterator[RawName]:
        return iter(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scope):
            return NotImplemented
        return self._members == other._members

    def __hash__(self) -> int:
        return hash(self._members)

    def __repr__(self) -> str:
        return f"Scope({{{', '.join(map(str, sorted(self._members)))}}})"


def fresh_raw_name(scope: Scope) -> RawName:
    """Smallest-above-maximum freshness: 0 for the empty scope, else max+1."""
    m = scope.max_raw
    return 0 if m is None else m + 1


def fresh_binder(scope: Scope) -> NameBinder:
    return NameBinder(fresh_raw_name(scope))


def name_of(binder: NameBinder) -> Name:
    return Name(binder.raw)


def extend_scope(binder: NameBinder, scope: Scope) -> Scope:
    """Scope extended with ``binder``.

    In debug mode the binder must be distinct from the scope it extends;
    binders produced by :func:`fresh_binder` / :func:`with_refreshed` always
    are.
    """
    if _debug and binder.raw in scope:
        raise ScopeViolationError(
            f"binder #{binder.raw} already occurs in {scope!r}"
        )
    return scope.add(binder.raw)


def with_refreshed(scope: Scope, name: Name) -> NameBinder:
    """A binder for ``name`` that is safe against ``scope``.

    The name is reused exactly when it does not occur in the scope; only a
    genuine collision pays for a fresh name.  This reuse rule is what keeps
    substitution from renaming eagerly.
    """
    if name.raw in scope:
        return NameBinder(fresh_raw_name(scope))
    return NameBinder(name.raw)


def sink(value: Any, source: Scope | None = None, target: Scope | None = None) -> Any:
    """Transport a scope-indexed value into an extended scope.

    This is representation identity: the value is returned unchanged, byte
    for byte.  In debug mode, when both scopes are supplied, the target must
    extend the source.
    """
    if _debug and source is not None and target is not None:
        if not source.members <= target.members:
            raise ScopeViolationError(
                f"sink target {target!r} does not extend source {source!r}"
            )
    return value


@dataclass(frozen=True, slots=True)
class Subst:
    """A substitution: a raw-name-keyed map with variable-injection fallback.

    Names missing from ``env`` are mapped to themselves (as :class:`Var`
    nodes), so the empty map is the identity substitution and renamings are
    just ``Var`` entries.
    """

    env: dict[RawName, Any]


def identity_subst() -> Subst:
    return Subst({})


def lookup_subst(subst: Subst, name: Name) -> Any:
    hit = subst.env.get(name.raw)
    return Var(name) if hit is None else hit


def add_subst(subst: Subst, binder: NameBinder, expr: Any) -> Subst:
    """Substitution extended with ``binder -> expr``; overrides a stale entry."""
    env = dict(subst.env)
    env[binder.raw] = expr
    return Subst(env)


def add_rename(subst: Subst, binder: NameBinder, name: Name) -> Subst:
    return add_subst(subst, binder, Var(name))


def sink_subst(subst: Subst) -> Subst:
    """Sink a substitution along a scope extension (representation identity)."""
    return subst


def is_identity_subst(subst: Subst) -> bool:
    """True when every entry maps a raw name to itself.

    Normalizers use this to skip rebuilding a body when entering a binder
    required no renaming.
    """
    return all(
        type(expr) is Var and expr.name.raw == raw for raw, expr in subst.env.items()
    )


RenamingFn = Callable[[Name], Name]


def identity_renaming(name: Name) -> Name:
    return name
