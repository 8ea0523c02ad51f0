"""Scope-safe abstract syntax with named binders.

The package centers on a small discipline for working with names:
every operation that could capture or escape a binder takes the
current :class:`~scopefoil.names.Scope` as an argument, binders are
refreshed against that scope only when reuse would collide, and
moving a term into a larger scope (*sinking*) is free.

Layers, bottom to top:

- :mod:`scopefoil.names` / :mod:`scopefoil.patterns` -- scopes,
  binders, substitutions, and binding patterns.
- :mod:`scopefoil.terms` -- a lambda-Pi calculus written directly
  against the discipline, with one hand-written substitution.
- :mod:`scopefoil.generic` / :mod:`scopefoil.lambda_pi` -- the same
  calculus as an instantiation of a signature-generic AST whose
  substitution is written once, for every signature.
- :mod:`scopefoil.naive` / :mod:`scopefoil.syntax` /
  :mod:`scopefoil.bridge` -- raw named syntax, a parser and printer
  for it, and conversion into and out of the scope-safe forms.
- :mod:`scopefoil.oracles` -- independent named and de Bruijn
  normalizers plus alpha-equivalence, used to cross-check everything.
- :mod:`scopefoil.nbe` -- normalization by evaluation.
- :mod:`scopefoil.bench` / :mod:`scopefoil.cli` -- the benchmark
  harness and the ``scopefoil`` command-line tool.
"""

from .fuel import Fuel, FuelExceededError
from .names import (
    Name,
    NameBinder,
    Scope,
    ScopeViolationError,
    Subst,
    Var,
    add_rename,
    add_subst,
    debug_scopes_enabled,
    extend_scope,
    fresh_binder,
    fresh_raw_name,
    identity_subst,
    lookup_subst,
    name_of,
    set_debug_scopes,
    sink,
    sink_subst,
    with_refreshed,
)
from .patterns import (
    Pattern,
    PatternPair,
    PatternVar,
    PatternWildcard,
    extend_renaming,
    extend_scope_pattern,
    names_of_pattern,
    with_pattern,
)

__all__ = [
    "Fuel",
    "FuelExceededError",
    "Name",
    "NameBinder",
    "Pattern",
    "PatternPair",
    "PatternVar",
    "PatternWildcard",
    "Scope",
    "ScopeViolationError",
    "Subst",
    "Var",
    "add_rename",
    "add_subst",
    "debug_scopes_enabled",
    "extend_renaming",
    "extend_scope",
    "extend_scope_pattern",
    "fresh_binder",
    "fresh_raw_name",
    "identity_subst",
    "lookup_subst",
    "name_of",
    "names_of_pattern",
    "set_debug_scopes",
    "sink",
    "sink_subst",
    "with_pattern",
    "with_refreshed",
]
