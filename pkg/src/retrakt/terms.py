"""Terms of the lambda-bottom calculus.

Bound variables are de Bruijn indices, free variables keep their names.
Binder names survive only as printing hints (excluded from equality), so
structural equality of two terms is alpha-equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

DEFAULT_STEPS = 10_000


class BudgetExceeded(Exception):
    """A budgeted computation ran out of fuel. Never a negative answer."""

    def __init__(self, budget: str, limit: int):
        super().__init__(f"{budget} budget exceeded (limit {limit})")
        self.budget = budget
        self.limit = limit


@dataclass(frozen=True, slots=True)
class FVar:
    name: str


@dataclass(frozen=True, slots=True)
class BVar:
    index: int


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Lam:
    body: Term
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class App:
    fun: Term
    arg: Term


Term = Union[FVar, BVar, Bot, Lam, App]

BOT = Bot()


@dataclass
class Fuel:
    """Mutable step counter shared by one reduction job."""

    limit: int = DEFAULT_STEPS
    used: int = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded("steps", self.limit)


# -- construction helpers ---------------------------------------------------


def lams(n: int, body: Term, hints: tuple[str, ...] | None = None) -> Term:
    for k in reversed(range(n)):
        body = Lam(body, hints[k] if hints else "x")
    return body


def apps(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def strip_lams(t: Term) -> tuple[list[str], Term]:
    names = []
    while isinstance(t, Lam):
        names.append(t.hint)
        t = t.body
    return names, t


def spine(t: Term) -> tuple[Term, list[Term]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def abstract(t: Term, name: str) -> Lam:
    """Bind the free variable ``name`` in ``t``."""

    def go(u: Term, depth: int) -> Term:
        match u:
            case FVar(n) if n == name:
                return BVar(depth)
            case BVar(i) if i >= depth:
                return BVar(i + 1)
            case Lam(b, h):
                return Lam(go(b, depth + 1), h)
            case App(f, a):
                return App(go(f, depth), go(a, depth))
        return u

    return Lam(go(t, 0), name)


def size(t: Term) -> int:
    match t:
        case Lam(b):
            return 1 + size(b)
        case App(f, a):
            return 1 + size(f) + size(a)
    return 1


def free_vars(t: Term) -> set[str]:
    match t:
        case FVar(n):
            return {n}
        case Lam(b):
            return free_vars(b)
        case App(f, a):
            return free_vars(f) | free_vars(a)
    return set()


def is_closed(t: Term, depth: int = 0) -> bool:
    """No free names and no dangling indices."""
    match t:
        case FVar():
            return False
        case BVar(i):
            return i < depth
        case Lam(b):
            return is_closed(b, depth + 1)
        case App(f, a):
            return is_closed(f, depth) and is_closed(a, depth)
    return True


def loose_indices(t: Term, depth: int = 0) -> set[int]:
    """Dangling de Bruijn indices, reported relative to the top of ``t``."""
    match t:
        case BVar(i) if i >= depth:
            return {i - depth}
        case Lam(b):
            return loose_indices(b, depth + 1)
        case App(f, a):
            return loose_indices(f, depth) | loose_indices(a, depth)
    return set()


# -- substitution ------------------------------------------------------------


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    if by == 0:
        return t
    match t:
        case BVar(i) if i >= cutoff:
            return BVar(i + by)
        case Lam(b, h):
            return Lam(shift(b, by, cutoff + 1), h)
        case App(f, a):
            return App(shift(f, by, cutoff), shift(a, by, cutoff))
    return t


def _open(body: Term, arg: Term, depth: int = 0) -> Term:
    # body of a Lam, index ``depth`` replaced by ``arg``; ``arg`` lives outside the Lam
    match body:
        case BVar(i):
            if i == depth:
                return shift(arg, depth)
            if i > depth:
                return BVar(i - 1)
            return body
        case Lam(b, h):
            return Lam(_open(b, arg, depth + 1), h)
        case App(f, a):
            return App(_open(f, arg, depth), _open(a, arg, depth))
    return body


def substitute(body: Term, var: str, replacement: Term) -> Term:
    """Replace every free occurrence of ``var`` by ``replacement``."""

    def go(u: Term, depth: int) -> Term:
        match u:
            case FVar(n) if n == var:
                return shift(replacement, depth)
            case Lam(b, h):
                return Lam(go(b, depth + 1), h)
            case App(f, a):
                return App(go(f, depth), go(a, depth))
        return u

    return go(body, 0)


def instantiate(body: Term, values: dict[int, Term]) -> Term:
    """Replace loose indices of ``body`` (relative to its top) by terms.

    Loose indices not in ``values`` are renumbered downwards past the removed
    ones, as if the corresponding binders had been dropped.
    """
    removed = sorted(values)

    def renumber(i: int) -> int:
        return i - sum(1 for r in removed if r < i)

    def go(u: Term, depth: int) -> Term:
        match u:
            case BVar(i) if i >= depth:
                k = i - depth
                if k in values:
                    return shift(values[k], depth)
                return BVar(renumber(k) + depth)
            case Lam(b, h):
                return Lam(go(b, depth + 1), h)
            case App(f, a):
                return App(go(f, depth), go(a, depth))
        return u

    return go(body, 0)


# -- reduction ---------------------------------------------------------------


def reduce_step(t: Term) -> Term | None:
    """One leftmost-outermost step, or None when ``t`` is normal."""
    match t:
        case App(Lam(b), a):
            return _open(b, a)
        case App(Bot(), _):
            return BOT
        case Lam(Bot()):
            return BOT
        case Lam(b, h):
            r = reduce_step(b)
            return None if r is None else Lam(r, h)
        case App(f, a):
            r = reduce_step(f)
            if r is not None:
                return App(r, a)
            r = reduce_step(a)
            return None if r is None else App(f, r)
    return None


def reduction_trace(t: Term, steps: int = DEFAULT_STEPS) -> list[Term]:
    """All terms along the leftmost-outermost reduction of ``t``."""
    trace = [t]
    fuel = Fuel(steps)
    while (nxt := reduce_step(trace[-1])) is not None:
        fuel.spend()
        trace.append(nxt)
    return trace


@dataclass(frozen=True)
class Hnf:
    """lambda x1..xn. head arg1 .. argm, with args living under the n binders."""

    binders: tuple[str, ...]
    head: Term  # BVar bound by one of the binders, or FVar
    args: tuple[Term, ...]

    @property
    def arity(self) -> int:
        return len(self.binders)

    @property
    def head_pos(self) -> int | None:
        """1-based binder position of the head, None for a free head."""
        if isinstance(self.head, BVar):
            return self.arity - self.head.index
        return None

    def to_term(self) -> Term:
        return lams(self.arity, apps(self.head, *self.args), self.binders)


def _head_reduce(t: Term, fuel: Fuel) -> Hnf | None:
    names, body = strip_lams(t)
    while True:
        head, args = spine(body)
        match head:
            case Lam(b, _):
                fuel.spend()
                body = apps(_open(b, args[0]), *args[1:])
                more, body = strip_lams(body)
                if more:
                    # the redex was the whole body, so new binders join the prefix
                    names.extend(more)
                continue
            case Bot():
                fuel.spend(len(args) + len(names))
                return None
        return Hnf(tuple(names), head, tuple(args))


def head_normal_form(t: Term, steps: int | Fuel = DEFAULT_STEPS) -> Hnf | None:
    """Head-reduce ``t``. None means unsolvable (bottom reached the head).

    Raises BudgetExceeded when the step budget runs out.
    """
    fuel = steps if isinstance(steps, Fuel) else Fuel(steps)
    return _head_reduce(t, fuel)


def _normal_form(t: Term, fuel: Fuel) -> Term:
    h = _head_reduce(t, fuel)
    if h is None:
        return BOT
    args = [_normal_form(a, fuel) for a in h.args]
    return lams(h.arity, apps(h.head, *args), h.binders)


def normal_form(t: Term, steps: int | Fuel = DEFAULT_STEPS) -> Term:
    fuel = steps if isinstance(steps, Fuel) else Fuel(steps)
    return _normal_form(t, fuel)


def is_normal(t: Term) -> bool:
    return reduce_step(t) is None


def beta_bot_equal(a: Term, b: Term, steps: int = DEFAULT_STEPS) -> bool:
    """Equal iff both terms reach the same normal form within the budget."""
    fuel = Fuel(steps)
    return _normal_form(a, fuel) == _normal_form(b, fuel)


def subterms(t: Term) -> Iterator[Term]:
    yield t
    match t:
        case Lam(b):
            yield from subterms(b)
        case App(f, a):
            yield from subterms(f)
            yield from subterms(a)


# -- combinators ---------------------------------------------------------------


def identity() -> Term:
    return Lam(BVar(0), "x")


def k_combinator() -> Term:
    return selector(1, 2)


B = lams(3, App(BVar(2), App(BVar(1), BVar(0))), ("x", "y", "z"))


def compose(m: Term, n: Term) -> Term:
    """m . n as the unreduced application B m n."""
    return apps(B, m, n)


def selector(i: int, m: int) -> Term:
    """lambda y1..ym. yi"""
    if not 1 <= i <= m:
        raise ValueError(f"selector index {i} out of range 1..{m}")
    return lams(m, BVar(m - i), tuple(f"y{k}" for k in range(1, m + 1)))


def permutator(m: int) -> Term:
    """lambda z1..z(m+1). z(m+1) z1 .. zm; the 0-ary permutator is bottom."""
    if m < 0:
        raise ValueError("permutator arity must be nonnegative")
    if m == 0:
        return BOT
    args = [BVar(m + 1 - k) for k in range(1, m + 1)]
    return lams(m + 1, apps(BVar(0), *args), tuple(f"z{k}" for k in range(1, m + 2)))


def simple_right_inverse(m: int) -> Term:
    """lambda t x1..xm. t"""
    return lams(m + 1, BVar(m), ("t",) + tuple(f"x{k}" for k in range(1, m + 1)))
