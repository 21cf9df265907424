"""Type checking and bounded inhabitation for intersection types.

Checking is syntax directed on head normal forms, computed lazily: a
subterm is head-reduced only when it has to carry a type other than
omega. By subject conversion this types the term and all its reducts
alike. Standard-system judgments are first distributed into intersections
of strict types, where the two preorders agree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .intersection import Arrow, Type, leq, members, normalize, peel, show_type
from .terms import (
    BOT,
    BudgetExceeded,
    BVar,
    DEFAULT_STEPS,
    FVar,
    Fuel,
    Term,
    apps,
    head_normal_form,
    lams,
)


class System(enum.Enum):
    ESSENTIAL = "essential"
    STANDARD = "standard"


class Verdict(enum.Enum):
    DERIVABLE = "derivable"
    NOT_DERIVABLE = "not_derivable"
    UNKNOWN = "unknown"


Env = dict[str, Type]


@dataclass(frozen=True)
class Judgment:
    env: tuple[tuple[str, Type], ...]
    term: Term
    type: Type
    system: System = System.ESSENTIAL

    @staticmethod
    def of(term: Term, type: Type, env: Env | None = None, system: System = System.ESSENTIAL) -> Judgment:
        return Judgment(tuple(sorted((env or {}).items())), term, type, system)

    def to_json(self) -> dict:
        from .syntax import show_term

        return {
            "env": {x: show_type(t) for x, t in self.env},
            "term": show_term(self.term),
            "type": show_type(self.type),
            "system": self.system.value,
        }


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 6
    max_candidates: int = 10_000

    def __post_init__(self):
        if self.max_depth < 1 or self.max_candidates < 1:
            raise ValueError("search budgets must be positive")


# -- checking ---------------------------------------------------------------------


def _has(env: Env, ctx: list[Type], term: Term, target: Type, fuel: Fuel) -> bool:
    return all(_has_strict(env, ctx, term, nu, fuel) for nu in members(target))


def _has_strict(env: Env, ctx: list[Type], term: Term, nu: Type, fuel: Fuel) -> bool:
    h = head_normal_form(term, fuel)
    if h is None:
        return False
    inner = list(ctx)
    for _ in h.binders:
        if not isinstance(nu, Arrow):
            return False
        inner.append(nu.dom)
        nu = nu.cod
    match h.head:
        case BVar(i):
            sigma = inner[len(inner) - 1 - i]
        case FVar(x):
            if x not in env:
                return False
            sigma = env[x]
    k = len(h.args)
    for pi in members(sigma):
        split = peel(pi, k)
        if split is None or not leq(split[1], nu):
            continue
        doms = split[0]
        if all(_has(env, inner, a, d, fuel) for a, d in zip(h.args, doms)):
            return True
    return False


def derivable(env: Env, term: Term, type: Type, steps: int | Fuel = DEFAULT_STEPS) -> bool:
    """Decide env |- term : type. Raises BudgetExceeded when reduction runs out."""
    fuel = steps if isinstance(steps, Fuel) else Fuel(steps)
    env = {x: normalize(t) for x, t in env.items()}
    return _has(env, [], term, normalize(type), fuel)


def check(j: Judgment, steps: int = DEFAULT_STEPS) -> Verdict:
    try:
        ok = derivable(dict(j.env), j.term, j.type, steps)
    except BudgetExceeded:
        return Verdict.UNKNOWN
    return Verdict.DERIVABLE if ok else Verdict.NOT_DERIVABLE


def check_std(j: Judgment, steps: int = DEFAULT_STEPS) -> Verdict:
    """Standard-system check, via the strict translation of every type."""
    return check(Judgment(j.env, j.term, j.type, System.STANDARD), steps)


# -- inhabitation -------------------------------------------------------------------

# A goal is (context, strict target); a joint goal asks one term for all of them.
Goal = tuple[tuple[Type, ...], Type]


class _OutOfCandidates(Exception):
    pass


@dataclass
class Inhabiter:
    """Iterative-deepening search for closed normal inhabitants."""

    budget: SearchBudget = field(default_factory=SearchBudget)
    candidates: int = 0
    failed: set = field(default_factory=set)
    found: dict = field(default_factory=dict)

    def joint(self, goals: list[Goal]) -> Term | None:
        goals = _tidy(goals)
        if goals in self.found:
            return self.found[goals]
        result = None
        self.candidates = 0
        try:
            for depth in range(1, self.budget.max_depth + 1):
                result = self._search(goals, depth)
                if result is not None:
                    break
        except _OutOfCandidates:
            result = None
        if result is not None:
            self.found[goals] = result
        return result

    def _spend(self) -> None:
        self.candidates += 1
        if self.candidates > self.budget.max_candidates:
            raise _OutOfCandidates

    def _search(self, goals: tuple[Goal, ...], depth: int) -> Term | None:
        if not goals:
            return BOT
        key = (goals, depth)
        if key in self.failed:
            return None
        result = self._expand(goals, depth)
        if result is None:
            self.failed.add(key)
        return result

    def _expand(self, goals: tuple[Goal, ...], depth: int) -> Term | None:
        if all(isinstance(nu, Arrow) for _, nu in goals):
            inner = _tidy([(ctx + (nu.dom,), nu.cod) for ctx, nu in goals])
            body = self._search(inner, depth)
            return None if body is None else lams(1, body, (f"u{len(goals[0][0]) + 1}",))
        if depth == 0:
            return None
        n = len(goals[0][0])
        for pos in reversed(range(n)):
            options = [_head_options(ctx[pos], nu) for ctx, nu in goals]
            if not all(options):
                continue
            arities = sorted(set.intersection(*(set(o) for o in options)))
            for k in arities:
                for args_goals in _combine(goals, [o[k] for o in options], k):
                    self._spend()
                    args = []
                    for sub in args_goals:
                        a = self._search(sub, depth - 1)
                        if a is None:
                            break
                        args.append(a)
                    else:
                        return apps(BVar(n - 1 - pos), *args)
        return None


def _tidy(goals) -> tuple[Goal, ...]:
    out = set()
    for ctx, t in goals:
        for nu in members(t):
            out.add((ctx, nu))
    return tuple(sorted(out, key=repr))


def _head_options(sigma: Type, nu: Type) -> dict[int, list[list[Type]]]:
    """For each arity k, the domain lists of members of sigma usable at nu."""
    out: dict[int, list[list[Type]]] = {}
    for pi in members(sigma):
        k, t, doms = 0, pi, []
        while True:
            if leq(t, nu):
                out.setdefault(k, []).append(list(doms))
            if not isinstance(t, Arrow):
                break
            doms.append(t.dom)
            t = t.cod
            k += 1
    return out


def _combine(goals, choices, k):
    # one member choice per goal; argument l gathers every goal's l-th domain
    seen = set()

    def rec(g: int, acc: list[list[Type]]):
        if g == len(goals):
            subs = tuple(_tidy((goals[i][0], acc[i][l]) for i in range(len(goals))) for l in range(k))
            if subs not in seen:
                seen.add(subs)
                yield subs
            return
        for doms in choices[g]:
            yield from rec(g + 1, acc + [doms])

    yield from rec(0, [])


def inhabit(target: Type, budget: SearchBudget | None = None, searcher: Inhabiter | None = None) -> Term | None:
    """A closed inhabitant of ``target``, or None when none was found in budget."""
    s = searcher or Inhabiter(budget or SearchBudget())
    return s.joint([((), normalize(target))])


def inhabit_joint(
    domain: Type | list[Type], targets: list[Type], budget: SearchBudget | None = None, searcher: Inhabiter | None = None
) -> list[Term] | None:
    """One inhabitant of domain -> t for every t in targets, or None.

    ``domain`` may be a list of types, read as the prefix d1 -> .. -> dn.
    """
    s = searcher or Inhabiter(budget or SearchBudget())
    doms = tuple(normalize(d) for d in (domain if isinstance(domain, list) else [domain]))
    out = []
    for t in targets:
        m = s.joint([(doms, normalize(t))])
        if m is None:
            return None
        out.append(m if m == BOT else lams(len(doms), m, tuple(f"u{k}" for k in range(1, len(doms) + 1))))
    return out


def is_inhabited(t: Type, searcher: Inhabiter) -> bool:
    return searcher.joint([((), normalize(t))]) is not None
