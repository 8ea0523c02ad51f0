"""Shared helpers: seeded random term/pattern generators.

Everything here is deterministic given the caller's ``random.Random``
instance; tests construct their own with fixed seeds so failures
reproduce exactly.
"""

from __future__ import annotations

import random

from scopefoil import naive
from scopefoil.bench import ensure_deep_recursion
from scopefoil.bridge import to_foil_pattern
from scopefoil.names import Scope

ensure_deep_recursion()


def gen_naive_pattern(rng: random.Random, depth: int, used: set[str]) -> naive.Pattern:
    """Random binding pattern with globally distinct variable names."""
    roll = rng.random()
    if depth <= 0 or roll < 0.25:
        if roll < 0.1:
            return naive.PatternWildcard()
        name = f"p{len(used)}"
        used.add(name)
        return naive.PatternVar(naive.VarIdent(name))
    left = gen_naive_pattern(rng, depth - 1, used)
    right = gen_naive_pattern(rng, depth - 1, used)
    return naive.PatternPair(left, right)


def gen_naive_term(
    rng: random.Random, depth: int, env: tuple[str, ...] = ()
) -> naive.Term:
    """Random closed term exercising the whole grammar (patterns included)."""
    if depth <= 0:
        if env and rng.random() < 0.75:
            return naive.Var(naive.VarIdent(rng.choice(env)))
        return naive.Universe()
    match rng.randrange(8):
        case 0 if env:
            return naive.Var(naive.VarIdent(rng.choice(env)))
        case 0 | 1:
            return naive.Universe()
        case 2:
            return naive.Pair(
                gen_naive_term(rng, depth - 1, env),
                gen_naive_term(rng, depth - 1, env),
            )
        case 3:
            return naive.First(gen_naive_term(rng, depth - 1, env))
        case 4:
            return naive.Second(gen_naive_term(rng, depth - 1, env))
        case 5:
            return naive.App(
                gen_naive_term(rng, depth - 1, env),
                gen_naive_term(rng, depth - 1, env),
            )
        case 6:
            used = set(env)
            pattern = gen_naive_pattern(rng, min(depth - 1, 2), used)
            inner = env + tuple(sorted(used - set(env)))
            return naive.Lam(
                pattern, naive.ScopedTerm(gen_naive_term(rng, depth - 1, inner))
            )
        case _:
            used = set(env)
            pattern = gen_naive_pattern(rng, min(depth - 1, 2), used)
            inner = env + tuple(sorted(used - set(env)))
            return naive.Pi(
                pattern,
                gen_naive_term(rng, depth - 1, env),
                naive.ScopedTerm(gen_naive_term(rng, depth - 1, inner)),
            )


def gen_foil_pattern(rng: random.Random, depth: int):
    """Random scope-safe pattern (fresh binders) plus its naive source."""
    source = gen_naive_pattern(rng, depth, set())
    pattern, env = to_foil_pattern(Scope(), source)
    return pattern, source, env
