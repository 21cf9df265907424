"""Strict and standard intersection types and their subtype preorders.

One AST serves both grammars. A type is *strict* when no arrow has an
intersection as codomain. ``normalize`` maps any type to its canonical
intersection of strict types: codomain intersections are distributed,
arrows into omega collapse to omega, omega is dropped from proper
intersections, and members are deduplicated and sorted.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True, slots=True)
class TVar:
    name: str


@dataclass(frozen=True, slots=True)
class Omega:
    pass


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: Type
    cod: Type


@dataclass(frozen=True, slots=True)
class Meet:
    members: tuple[Type, ...]


Type = Union[TVar, Omega, Arrow, Meet]

OMEGA = Omega()


def _key(t: Type) -> tuple:
    match t:
        case TVar(n):
            return (0, n)
        case Omega():
            return (1,)
        case Arrow(d, c):
            return (2, _key(d), _key(c))
        case Meet(ms):
            return (3, tuple(_key(m) for m in ms))
    raise TypeError(t)


def is_strict(t: Type) -> bool:
    match t:
        case Arrow(d, c):
            return not isinstance(c, Meet) and is_strict(d) and is_strict(c)
        case Meet(ms):
            return all(not isinstance(m, Meet) and is_strict(m) for m in ms)
    return True


def flatten(t: Type) -> list[Type]:
    if isinstance(t, Meet):
        return [x for m in t.members for x in flatten(m)]
    return [t]


def members(t: Type) -> tuple[Type, ...]:
    """Strict members of a canonical intersection; omega has none."""
    match t:
        case Omega():
            return ()
        case Meet(ms):
            return ms
    return (t,)


def meet(items: Iterable[Type]) -> Type:
    """Canonical intersection of canonical types."""
    pool = {m for t in items for m in members(t)}
    if not pool:
        return OMEGA
    if len(pool) == 1:
        return pool.pop()
    return Meet(tuple(sorted(pool, key=_key)))


def arrow(dom: Type, cod: Type) -> Type:
    """Canonical arrow between canonical types, distributing the codomain."""
    return meet(Arrow(dom, mu) for mu in members(cod))


def arrows(doms: Iterable[Type], cod: Type) -> Type:
    for d in reversed(list(doms)):
        cod = arrow(d, cod)
    return cod


@functools.lru_cache(maxsize=None)
def normalize(t: Type) -> Type:
    """Equivalent canonical intersection of strict types."""
    match t:
        case Arrow(d, c):
            return arrow(normalize(d), normalize(c))
        case Meet(ms):
            return meet(normalize(m) for m in ms)
    return t


def to_strict(t: Type) -> Type:
    """A standard type as an equivalent intersection of strict types."""
    return normalize(t)


def is_canonical(t: Type) -> bool:
    return normalize(t) == t


# -- the strict preorder --------------------------------------------------------


@functools.lru_cache(maxsize=None)
def leq(a: Type, b: Type) -> bool:
    """a <= b for canonical types, without distributivity."""
    return all(any(_leq_strict(mu, nu) for mu in members(a)) for nu in members(b))


def _leq_strict(mu: Type, nu: Type) -> bool:
    # both strict, canonical and not omega
    match nu:
        case TVar():
            return mu == nu
        case Arrow(d, c):
            return isinstance(mu, Arrow) and leq(d, mu.dom) and _leq_strict(mu.cod, c)
    return False


def _require_strict(*ts: Type) -> None:
    for t in ts:
        if not is_strict(t):
            raise ValueError(f"not a strict intersection type: {show_type(t)}")


def subtype_strict(a: Type, b: Type) -> bool:
    _require_strict(a, b)
    return leq(normalize(a), normalize(b))


def equiv(a: Type, b: Type) -> bool:
    a, b = normalize(a), normalize(b)
    return leq(a, b) and leq(b, a)


# -- the standard preorder ------------------------------------------------------


def subtype_std(a: Type, b: Type) -> bool:
    """a <= b with distributivity, decided on the raw syntax.

    For an arrow target s -> t the arrow members of ``a`` whose domain
    accepts s are intersected; the largest such subset is the only one
    worth trying, since adding members only shrinks the codomain meet.
    """
    return all(_std_single(a, beta) for beta in flatten(b))


def _std_single(a: Type, beta: Type) -> bool:
    match beta:
        case Omega():
            return True
        case TVar():
            return beta in flatten(a)
        case Arrow(s, t):
            if subtype_std(OMEGA, t):
                return True
            cods = [x.cod for x in flatten(a) if isinstance(x, Arrow) and subtype_std(s, x.dom)]
            return bool(cods) and subtype_std(_raw_meet(cods), t)
    raise TypeError(beta)


def _raw_meet(ts: list[Type]) -> Type:
    return ts[0] if len(ts) == 1 else Meet(tuple(ts))


def subtype_std_subsets(a: Type, b: Type, max_width: int = 8) -> bool:
    """Same relation, searching every subset of arrow members explicitly."""

    def single(beta: Type) -> bool:
        match beta:
            case Omega():
                return True
            case TVar():
                return beta in flatten(a)
            case Arrow(s, t):
                if subtype_std_subsets(OMEGA, t, max_width):
                    return True
                arrs = [x for x in flatten(a) if isinstance(x, Arrow)]
                if len(arrs) > max_width:
                    raise ValueError(f"intersection width {len(arrs)} exceeds {max_width}")
                for r in range(1, len(arrs) + 1):
                    for sub in itertools.combinations(arrs, r):
                        if subtype_std_subsets(s, _raw_meet([x.dom for x in sub]), max_width) and (
                            subtype_std_subsets(_raw_meet([x.cod for x in sub]), t, max_width)
                        ):
                            return True
                return False
        raise TypeError(beta)

    return all(single(beta) for beta in flatten(b))


def equiv_std(a: Type, b: Type) -> bool:
    return subtype_std(a, b) and subtype_std(b, a)


# -- measures ------------------------------------------------------------------------


def _has_meet(t: Type) -> bool:
    match t:
        case Meet():
            return True
        case Arrow(d, c):
            return _has_meet(d) or _has_meet(c)
    return False


def rank(t: Type) -> int:
    match t:
        case Arrow(d, c):
            return max(rank(d) + 1, rank(c)) if _has_meet(t) else 0
        case Meet(ms):
            return max([1] + [rank(m) for m in ms])
    return 0


def top_arrows(t: Type) -> int:
    match t:
        case Arrow(_, c):
            return 1 + top_arrows(c)
        case Meet():
            raise ValueError("top arrows are defined for strict types only")
    return 0


def depth(t: Type) -> int:
    match t:
        case Arrow(d, c):
            return 1 + max(depth(d), depth(c))
        case Meet(ms):
            return max(depth(m) for m in ms)
    return 0


def peel(t: Type, m: int) -> tuple[list[Type], Type] | None:
    """Split a strict type as rho1 -> .. -> rhom -> core."""
    doms = []
    for _ in range(m):
        if not isinstance(t, Arrow):
            return None
        doms.append(t.dom)
        t = t.cod
    return doms, t


def type_vars(t: Type) -> set[str]:
    match t:
        case TVar(n):
            return {n}
        case Arrow(d, c):
            return type_vars(d) | type_vars(c)
        case Meet(ms):
            return set().union(*(type_vars(m) for m in ms))
    return set()


# -- printing --------------------------------------------------------------------------


def show_type(t: Type, unicode: bool = False) -> str:
    arr, amp, om = (" → ", " ∧ ", "ω") if unicode else (" -> ", " & ", "w")

    def atom(u: Type) -> str:
        return f"({go(u)})" if isinstance(u, (Arrow, Meet)) else go(u)

    def go(u: Type) -> str:
        match u:
            case TVar(n):
                return "'" + n
            case Omega():
                return om
            case Meet(ms):
                return amp.join(atom(m) for m in ms)
            case Arrow(d, c):
                # '&' binds tighter than '->', so only an arrow domain needs parentheses
                left = go(d) if isinstance(d, Meet) else atom(d)
                return left + arr + go(c)
        raise TypeError(u)

    return go(t)
