"""Finite corpora and random generators for property checks."""
from __future__ import annotations

import functools
import itertools
import random

from .intersection import OMEGA, Arrow, Meet, TVar, Type, arrow, meet
from .terms import BOT, App, BVar, Lam, Term, apps, identity, lams, shift


# -- types ----------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def strict_types(depth: int, names: tuple[str, ...] = ("a", "b"), width: int = 2) -> tuple[Type, ...]:
    """Canonical strict types of arrow depth <= depth, omega included."""
    atoms = [TVar(n) for n in names]
    if depth == 0:
        return tuple(atoms) + (OMEGA,)
    doms = intersections(depth - 1, names, width)
    cods = [t for t in strict_types(depth - 1, names, width) if t != OMEGA]
    out = set(strict_types(depth - 1, names, width))
    for d, c in itertools.product(doms, cods):
        out.add(arrow(d, c))
    return tuple(sorted(out, key=repr))


@functools.lru_cache(maxsize=None)
def intersections(depth: int, names: tuple[str, ...] = ("a", "b"), width: int = 2) -> tuple[Type, ...]:
    """Canonical meets of 1..width strict types of depth <= depth."""
    base = strict_types(depth, names, width)
    out = set()
    for k in range(1, width + 1):
        for combo in itertools.combinations(base, k):
            out.add(meet(combo))
    return tuple(sorted(out, key=repr))


def corpus(depth: int = 2, names: tuple[str, ...] = ("a", "b"), width: int = 2) -> list[Type]:
    """The small-type corpus: canonical strict types, sorted for stable indices."""
    return list(strict_types(depth, tuple(names), width))


def std_types(depth: int, names: tuple[str, ...] = ("a", "b"), width: int = 2) -> list[Type]:
    """Raw standard types (meets anywhere), up to ACI of the outer meet."""
    level = [TVar(n) for n in names] + [OMEGA]
    for _ in range(depth):
        nxt = set(level)
        for d, c in itertools.product(level, repeat=2):
            nxt.add(Arrow(d, c))
        level = list(nxt)
    out = set(level)
    for k in range(2, width + 1):
        for combo in itertools.combinations(sorted(level, key=repr), k):
            out.add(Meet(combo))
    return sorted(out, key=repr)


# -- terms ----------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def normal_terms(ctx: int, size: int) -> tuple[Term, ...]:
    """All beta-bottom normal terms of exactly ``size`` nodes over ``ctx`` bound variables."""
    out: list[Term] = []
    if size == 1:
        out.append(BOT)
    out.extend(_abstractions(ctx, size))
    out.extend(_neutral(ctx, size))
    return tuple(out)


def _abstractions(ctx: int, size: int):
    if size < 2:
        return
    for body in normal_terms(ctx + 1, size - 1):
        if body != BOT:
            yield Lam(body, "x")


@functools.lru_cache(maxsize=None)
def _neutral(ctx: int, size: int) -> tuple[Term, ...]:
    if size == 1:
        return tuple(BVar(i) for i in range(ctx))
    out = []
    for s1 in range(1, size - 1):
        for f in _neutral(ctx, s1):
            for a in normal_terms(ctx, size - 1 - s1):
                out.append(App(f, a))
    return tuple(out)


def closed_normal_terms(max_size: int) -> list[Term]:
    return [t for s in range(1, max_size + 1) for t in normal_terms(0, s)]


def random_normal(rng: random.Random, ctx: int, fuel: int = 4) -> Term:
    """A small random normal term over ``ctx`` bound variables."""
    roll = rng.random()
    if ctx == 0 or fuel <= 0 or roll < 0.2:
        return BOT if ctx == 0 or rng.random() < 0.5 else BVar(rng.randrange(ctx))
    if roll < 0.45:
        body = random_normal(rng, ctx + 1, fuel - 1)
        return BOT if body == BOT else lams(1, body, ("y",))
    head = BVar(rng.randrange(ctx))
    args = [random_normal(rng, ctx, fuel - 2) for _ in range(rng.randint(0, 2))]
    return apps(head, *args)


def random_xi(rng: random.Random, p: float = 0.5, max_binders: int = 4, max_components: int = 3) -> Term:
    """A closed left invertible term, sampled top-down along one Xi derivation.

    Each level continues with probability p; binder count n <= max_binders
    and component count m <= max_components.
    """

    def level(n: int) -> Term:
        # body under t, x1..xn; may open extra binders first
        extra = rng.randint(0, max_binders - n)
        k = n + extra
        if k == 0 or rng.random() >= p:
            body = BVar(k)
        else:
            j = rng.randint(1, k)
            m = rng.randint(1, max_components)
            i = rng.randint(1, m)
            comps = [level(k) if c == i else random_normal(rng, k + 1) for c in range(1, m + 1)]
            body = apps(BVar(k - j), *comps)
        return lams(extra, body, tuple(f"x{q}" for q in range(n + 1, k + 1)))

    return lams(1, level(0), ("t",))


def random_expansion(rng: random.Random, t: Term) -> Term:
    """A term that reduces to ``t``: one subterm wrapped in a redex."""
    positions = sum(1 for _ in _positions(t, 0))
    target = rng.randrange(positions)
    counter = iter(range(positions))

    def go(u: Term, ctx: int) -> Term:
        if next(counter) == target:
            return _wrap(rng, u, ctx)
        match u:
            case Lam(b, h):
                return Lam(go(b, ctx + 1), h)
            case App(f, a):
                return App(go(f, ctx), go(a, ctx))
        return u

    return go(t, 0)


def _positions(t: Term, ctx: int):
    yield ctx
    match t:
        case Lam(b):
            yield from _positions(b, ctx + 1)
        case App(f, a):
            yield from _positions(f, ctx)
            yield from _positions(a, ctx)


def _wrap(rng: random.Random, u: Term, ctx: int) -> Term:
    kind = rng.randrange(3)
    if kind == 0:
        return App(identity(), u)
    if kind == 1 or u != BOT:
        # (\v. u) A with v unused
        return App(Lam(shift(u, 1), "v"), random_normal(rng, ctx))
    return App(BOT, random_normal(rng, ctx))
