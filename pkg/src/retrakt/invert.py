"""Left and right invertible terms.

A closed head normal form ``\\t x1..xn. ...`` is left invertible when some
chain of components leads, through bound heads, to a bare occurrence of
``t``. ``xi_membership`` finds such a chain (components tried in ascending
order) and ``left_inverse`` turns it into a term ``\\z. z L1 .. Lq`` with
selectors and permutators.
"""
from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    BOT,
    BVar,
    DEFAULT_STEPS,
    Fuel,
    Hnf,
    Term,
    apps,
    head_normal_form,
    instantiate,
    lams,
    normal_form,
    permutator,
    selector,
    shift,
    strip_lams,
)

Triple = tuple[int, int, int]
Path = list[Triple]


@dataclass(frozen=True)
class XiDerivation:
    hnf: Hnf
    chosen: int = 0  # 1-based component index, 0 in the base case
    sub: XiDerivation | None = None

    @property
    def triple(self) -> Triple:
        if self.sub is None:
            return (1, 0, 0)
        return (self.hnf.head_pos, len(self.hnf.args), self.chosen)

    @property
    def path(self) -> Path:
        return path_of(self)

    @property
    def choices(self) -> list[int]:
        out, d = [], self
        while d.sub is not None:
            out.append(d.chosen)
            d = d.sub
        return out


def path_of(d: XiDerivation) -> Path:
    out = []
    node: XiDerivation | None = d
    while node is not None:
        out.append(node.triple)
        node = node.sub
    return out


def sharp(k: int, path: Path) -> int:
    """Largest component count among triples whose head position is k."""
    return max((m for h, m, _ in path if h == k), default=0)


def check_path(path: Path) -> None:
    if not path or path[-1] != (1, 0, 0):
        raise ValueError("a path ends with (1, 0, 0)")
    for h, m, i in path[:-1]:
        if m == 0 or not 1 <= i <= m or h < 2:
            raise ValueError(f"malformed triple {(h, m, i)}")


def _component_hnf(h: Hnf, i: int, fuel: Fuel) -> Hnf | None:
    return head_normal_form(lams(h.arity, h.args[i - 1], h.binders), fuel)


def _derive(h: Hnf, fuel: Fuel) -> XiDerivation | None:
    pos = h.head_pos
    if pos is None:
        return None
    if pos == 1:
        return XiDerivation(h) if not h.args else None
    for i in range(1, len(h.args) + 1):
        sub = _component_hnf(h, i, fuel)
        if sub is None:
            continue
        d = _derive(sub, fuel)
        if d is not None:
            return XiDerivation(h, i, d)
    return None


def xi_membership(t: Hnf | Term, steps: int | Fuel = DEFAULT_STEPS) -> XiDerivation | None:
    """A derivation that (the head normal form of) ``t`` is left invertible.

    Components are head-normalized on demand, so ``t`` need not be normal.
    Raises BudgetExceeded when head reduction runs out of steps.
    """
    fuel = steps if isinstance(steps, Fuel) else Fuel(steps)
    h = t if isinstance(t, Hnf) else head_normal_form(t, fuel)
    if h is None or h.arity == 0:
        return None
    return _derive(h, fuel)


def derive_along(t: Term, choices: list[int], steps: int | Fuel = DEFAULT_STEPS) -> XiDerivation:
    """The derivation of ``t`` that follows the given component choices."""
    fuel = steps if isinstance(steps, Fuel) else Fuel(steps)
    h = head_normal_form(t, fuel)
    if h is None:
        raise ValueError("unsolvable term has no derivation")
    if not choices:
        if h.head_pos != 1 or h.args:
            raise ValueError("path does not end at the first binder")
        return XiDerivation(h)
    i = choices[0]
    pos = h.head_pos
    if pos is None or pos == 1 or not 1 <= i <= len(h.args):
        raise ValueError("path step does not match the term")
    return XiDerivation(h, i, derive_along(lams(h.arity, h.args[i - 1], h.binders), choices[1:], fuel))


# -- substitution of permutators ---------------------------------------------------


def _aux(d: XiDerivation, k: int, arities: list[int], perms: list[Term]) -> Term:
    h = d.hnf
    n = h.arity
    keep = n - k  # t followed by x(k+1) .. x(n-1)
    names = (h.binders[0],) + h.binders[k + 1 :]
    if d.sub is None:
        return lams(keep, BVar(keep - 1), names)
    sub = _aux(d.sub, k, arities, perms)
    for _ in range(keep):
        sub = sub.body
    # binder at position p (2..k+1) is loose index n - p under the n binders
    values = {n - p: perms[p - 2] for p in range(2, k + 2)}
    args = [instantiate(a, values) for a in h.args]
    i = d.chosen
    r = h.head_pos - 1
    if r > k:
        args[i - 1] = sub
        return lams(keep, apps(BVar(n - r - 1), *args), names)
    m, mr = len(args), arities[r - 1]
    extra = mr - m + 1
    args = [shift(a, extra) for a in args]
    args[i - 1] = shift(sub, extra)
    padding = [BVar(extra - 1 - q) for q in range(extra - 1)]
    znames = tuple(f"z{q}" for q in range(m + 1, mr + 2))
    return lams(keep + extra, apps(BVar(0), *args, *padding), names + znames)


def permute_substitute(d: XiDerivation, arities: list[int], steps: int = DEFAULT_STEPS) -> XiDerivation:
    """Replace x1..xk (k = len(arities)) by permutators of the given arities.

    Builds the head normal form ``\\t x(k+1)..xn z... . ...`` step by step
    along the derivation, keeping the chosen components, and returns its
    derivation. Path length is preserved.
    """
    k = len(arities)
    path = d.path
    if k > d.hnf.arity - 1:
        raise ValueError(f"{k} arities for {d.hnf.arity - 1} binders")
    for j, mj in enumerate(arities, 1):
        if mj < sharp(j + 1, path):
            raise ValueError(f"arity {mj} for x{j} is below {sharp(j + 1, path)}")
    perms = [permutator(a) for a in arities]
    q = _aux(d, k, arities, perms)
    return derive_along(q, d.choices, steps)


# -- inverses ------------------------------------------------------------------------


def _left_components(d: XiDerivation, steps: int) -> list[Term]:
    h = d.hnf
    n = h.arity - 1
    if d.sub is None:
        return [BOT] * n
    j = h.head_pos - 1
    if sharp(j + 1, d.sub.path) == 0:
        comps = _left_components(d.sub, steps)
        assert comps[j - 1] == BOT
        comps[j - 1] = selector(d.chosen, len(h.args))
        return comps
    path = d.path
    arities = [sharp(l + 1, path) for l in range(1, j + 1)]
    q = permute_substitute(d, arities, steps)
    assert sharp(q.hnf.head_pos, q.sub.path) == 0
    return [permutator(a) for a in arities] + _left_components(q, steps)


def left_inverse_of(d: XiDerivation, steps: int = DEFAULT_STEPS) -> Term:
    return lams(1, apps(BVar(0), *_left_components(d, steps)), ("z",))


def left_inverse(t: Term, steps: int = DEFAULT_STEPS) -> Term | None:
    """A term L with L . t = I, or None when t has no left inverse."""
    d = xi_membership(t, steps)
    if d is None:
        return None
    return left_inverse_of(d, steps)


def right_inverse_arity(t: Term, steps: int = DEFAULT_STEPS) -> int | None:
    """m when the head normal form of t is \\z. z M1 .. Mm."""
    h = head_normal_form(t, steps)
    if h is None or h.arity != 1 or h.head_pos != 1:
        return None
    return len(h.args)


def is_simple_right_inverse(t: Term, steps: int = DEFAULT_STEPS) -> bool:
    names, body = strip_lams(normal_form(t, steps))
    return bool(names) and body == BVar(len(names) - 1)
