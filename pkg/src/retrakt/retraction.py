"""Retractions between intersection types.

``retract_strict`` decides mu <| nu for strict types up to inhabitation:
nu must peel into rho1 -> .. -> rhom -> core with core ~ mu, and every
nu -> rhoi must be inhabited. ``simple_retract_std`` does the same for
standard types with a simple right inverse. Answers are three valued,
since inhabitation is only searched within a budget.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .checking import Inhabiter, Judgment, SearchBudget, System, Verdict, check, derivable, inhabit_joint
from .intersection import (
    OMEGA,
    Arrow,
    Type,
    arrows,
    equiv,
    is_strict,
    leq,
    meet,
    members,
    normalize,
    peel,
    show_type,
    top_arrows,
)
from .invert import is_simple_right_inverse, left_inverse
from .terms import (
    BudgetExceeded,
    BVar,
    DEFAULT_STEPS,
    FVar,
    Term,
    App,
    abstract,
    apps,
    compose,
    identity,
    lams,
    normal_form,
    reduction_trace,
    simple_right_inverse,
    strip_lams,
)


class Status(enum.Enum):
    WITNESS = "witness"
    PROVABLY_NO = "provably_no"
    UNKNOWN = "unknown"


class Answer(enum.Enum):
    YES = "yes"
    NO_WITHIN_BUDGET = "no_within_budget"


@dataclass(frozen=True)
class Decomposition:
    params: tuple[Type, ...]
    core: Type

    @property
    def arity(self) -> int:
        return len(self.params)

    def reassemble(self) -> Type:
        return arrows(self.params, self.core)

    def to_json(self) -> dict:
        return {"params": [show_type(p) for p in self.params], "core": show_type(self.core)}


@dataclass(frozen=True)
class VerifyReport:
    left_typed: Verdict
    right_typed: Verdict
    composes: Verdict
    right_simple: bool

    @property
    def holds(self) -> bool:
        return all(v is Verdict.DERIVABLE for v in (self.left_typed, self.right_typed, self.composes))

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "left_typed": self.left_typed.value,
            "right_typed": self.right_typed.value,
            "composes": self.composes.value,
            "right_simple": self.right_simple,
        }


def verify(left: Term, right: Term, mu: Type, nu: Type, system: System = System.ESSENTIAL,
           steps: int = DEFAULT_STEPS) -> VerifyReport:
    """Check |- L : nu -> mu, |- R : mu -> nu and L . R = I independently."""
    lj = Judgment.of(left, Arrow(nu, mu), system=system)
    rj = Judgment.of(right, Arrow(mu, nu), system=system)
    try:
        ok = normal_form(compose(left, right), steps) == identity()
        composes = Verdict.DERIVABLE if ok else Verdict.NOT_DERIVABLE
    except BudgetExceeded:
        composes = Verdict.UNKNOWN
    try:
        simple = is_simple_right_inverse(right, steps)
    except BudgetExceeded:
        simple = False
    return VerifyReport(check(lj, steps), check(rj, steps), composes, simple)


@dataclass(frozen=True)
class RetractionWitness:
    mu: Type
    nu: Type
    left: Term
    right: Term
    left_typing: Judgment
    right_typing: Judgment
    composition_trace: tuple[Term, ...]
    system: System = System.ESSENTIAL

    def __post_init__(self):
        if check(self.left_typing) is not Verdict.DERIVABLE:
            raise ValueError("left term does not have type nu -> mu")
        if check(self.right_typing) is not Verdict.DERIVABLE:
            raise ValueError("right term does not have type mu -> nu")
        if normal_form(self.composition_trace[-1]) != identity():
            raise ValueError("L . R does not reduce to I")

    @property
    def trace_steps(self) -> int:
        return len(self.composition_trace) - 1


def make_witness(mu: Type, nu: Type, left: Term, right: Term, system: System = System.ESSENTIAL,
                 steps: int = DEFAULT_STEPS) -> RetractionWitness:
    return RetractionWitness(
        mu,
        nu,
        left,
        right,
        Judgment.of(left, Arrow(nu, mu), system=system),
        Judgment.of(right, Arrow(mu, nu), system=system),
        tuple(reduction_trace(compose(left, right), steps)),
        system,
    )


@dataclass(frozen=True)
class RetractResult:
    status: Status
    witness: RetractionWitness | None = None
    decomposition: tuple[Decomposition, ...] = ()

    def to_json(self) -> dict:
        from .syntax import show_term

        w = self.witness
        return {
            "status": self.status.value,
            "left": show_term(w.left) if w else None,
            "right": show_term(w.right) if w else None,
            "decomposition": [d.to_json() for d in self.decomposition],
            "trace_steps": w.trace_steps if w else None,
        }


def _left_term(inhabitants: list[Term], steps: int) -> Term:
    # \z. z (M1 z) .. (Mm z), reduced when the budget allows
    z = BVar(0)
    raw = lams(1, apps(z, *(App(m, z) for m in inhabitants)), ("z",))
    try:
        return normal_form(raw, steps)
    except BudgetExceeded:
        return raw


def _strict_one(t: Type, what: str) -> Type:
    c = normalize(t)
    if len(members(c)) > 1:
        raise ValueError(f"{what} is not a strict type: {show_type(t)}")
    return c


# -- strict retraction --------------------------------------------------------------


def decompositions(mu: Type, nu: Type) -> list[Decomposition]:
    """Every m with nu ~ rho1 -> .. -> rhom -> mu, read off the canonical spine."""
    mu, nu = normalize(mu), normalize(nu)
    out = []
    bound = 0 if nu == OMEGA else top_arrows(nu)
    for m in range(bound + 1):
        doms, core = peel(nu, m)
        if equiv(core, mu):
            out.append(Decomposition(tuple(doms), core))
    return out


def retract_strict(mu: Type, nu: Type, budget: SearchBudget | None = None, steps: int = DEFAULT_STEPS,
                   searcher: Inhabiter | None = None) -> RetractResult:
    mu_c, nu_c = _strict_one(mu, "mu"), _strict_one(nu, "nu")
    searcher = searcher or Inhabiter(budget or SearchBudget())
    if mu_c == OMEGA and nu_c != OMEGA:
        return _retract_omega(mu, nu, nu_c, searcher, steps)
    found = decompositions(mu_c, nu_c)
    for d in found:
        ms = inhabit_joint(nu_c, list(d.params), searcher=searcher)
        if ms is None:
            continue
        w = make_witness(mu, nu, _left_term(ms, steps), simple_right_inverse(d.arity), steps=steps)
        return RetractResult(Status.WITNESS, w, (d,))
    return RetractResult(Status.UNKNOWN if found else Status.PROVABLY_NO, None, tuple(found))


def _retract_omega(mu: Type, nu: Type, nu_c: Type, searcher: Inhabiter, steps: int) -> RetractResult:
    # every L has type nu -> omega, so omega <| nu iff omega -> nu has a left invertible inhabitant
    theta = _Theta(OMEGA, searcher)
    goal = ((), nu_c)
    proved = theta.derive(goal)
    if goal not in proved:
        # the fixpoint is exact except where an inhabitant was not found
        return RetractResult(Status.UNKNOWN if theta.refuted else Status.PROVABLY_NO)
    right = _Builder(theta, proved, steps).term(goal)
    left = left_inverse(right, steps) if right is not None else None
    if left is None:
        return RetractResult(Status.UNKNOWN)
    try:
        w = make_witness(mu, nu, left, right, steps=steps)
    except (ValueError, BudgetExceeded):
        return RetractResult(Status.UNKNOWN)
    return RetractResult(Status.WITNESS, w)


def retract_transitive(w1: RetractionWitness, w2: RetractionWitness, steps: int = DEFAULT_STEPS) -> RetractionWitness:
    """From mu <| mu' and mu' <| nu, the witness (L . L', R' . R) of mu <| nu."""
    if not equiv(w1.nu, w2.mu):
        raise ValueError(f"witnesses do not chain: {show_type(w1.nu)} vs {show_type(w2.mu)}")
    left = normal_form(compose(w1.left, w2.left), steps)
    right = normal_form(compose(w2.right, w1.right), steps)
    return make_witness(w1.mu, w2.nu, left, right, w1.system, steps)


# -- simple retraction for standard types -------------------------------------------------


def _minimal(ms: tuple[Type, ...]) -> list[Type]:
    out = []
    for a in ms:
        dominated = any(leq(a, b) is False and leq(b, a) for b in ms if b != a)
        if not dominated and not any(equiv(a, b) for b in out):
            out.append(a)
    return out


def _uniform(family: list[Type], sigma: Type, m: int) -> Decomposition | None:
    # the family read as rho(i) -> core(i) with shared arity m
    params: list[list[Type]] = [[] for _ in range(m)]
    cores = []
    for nu in family:
        split = peel(nu, m)
        if split is None:
            return None
        for k, r in enumerate(split[0]):
            params[k].append(r)
        cores.append(split[1])
    if not equiv(meet(cores), sigma):
        return None
    return Decomposition(tuple(meet(p) for p in params), meet(cores))


def simple_retract_std(sigma: Type, tau: Type, budget: SearchBudget | None = None, steps: int = DEFAULT_STEPS,
                       searcher: Inhabiter | None = None) -> RetractResult:
    sig, tau_c = normalize(sigma), normalize(tau)
    searcher = searcher or Inhabiter(budget or SearchBudget())
    family = list(members(tau_c))
    if not family:
        if sig != OMEGA:
            return RetractResult(Status.PROVABLY_NO)
        w = make_witness(sigma, tau, identity(), simple_right_inverse(0), System.STANDARD, steps)
        return RetractResult(Status.WITNESS, w, (Decomposition((), OMEGA),))
    minimal = _minimal(tuple(family))
    found = []
    for m in range(min(top_arrows(t) for t in minimal) + 1):
        for fam in (family, minimal) if len(minimal) < len(family) else (family,):
            d = _uniform(fam, sig, m)
            if d is None:
                continue
            found.append(d)
            ms = inhabit_joint(tau_c, list(d.params), searcher=searcher)
            if ms is None:
                continue
            w = make_witness(sigma, tau, _left_term(ms, steps), simple_right_inverse(m), System.STANDARD, steps)
            return RetractResult(Status.WITNESS, w, (d,))
    return RetractResult(Status.UNKNOWN if found else Status.PROVABLY_NO, None, tuple(found))


def decompose_simple_retraction(w: RetractionWitness, budget: SearchBudget | None = None,
                                steps: int = DEFAULT_STEPS) -> list[RetractionWitness]:
    """Strict retractions mu_i <| nu_i, one per strict member nu_i of tau."""
    m = _simple_arity(w.right, steps)
    out = []
    for nu in members(normalize(w.nu)):
        _, core = peel(nu, m)
        try:
            out.append(make_witness(core, nu, w.left, w.right, steps=steps))
        except ValueError:
            r = retract_strict(core, nu, budget, steps)
            if r.witness is None:
                raise ValueError(f"no strict retraction found for member {show_type(nu)}")
            out.append(r.witness)
    return out


def _simple_arity(right: Term, steps: int) -> int:
    if not is_simple_right_inverse(right, steps):
        raise ValueError("right inverse is not simple")
    names, _ = strip_lams(normal_form(right, steps))
    return len(names) - 1


# -- left and right types ------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaDerivation:
    """Why sigma -> (context) -> target is a left type.

    ``rule`` is "base" (sigma <= target), "abstract" (target = a -> b, with a
    moved into the context) or "step" (head variable of type ``head`` whose
    member params -> core has core <= target, recursing on params[chosen-1]).
    """

    context: tuple[Type, ...]
    target: Type
    rule: str = "base"
    head: Type | None = None
    member: Type | None = None
    chosen: int = 0
    params: tuple[Type, ...] = ()
    subs: tuple[ThetaDerivation, ...] = ()


# A goal is (context as a sorted tuple of distinct types, strict target).
_Goal = tuple[tuple[Type, ...], Type]


@dataclass
class _Theta:
    sigma: Type
    searcher: Inhabiter
    inhabited: dict = field(default_factory=dict)
    refuted: bool = False  # some inhabitation query came back empty

    def _inhabited(self, ctx: tuple[Type, ...], rho: Type) -> bool:
        key = (ctx, rho)
        if key not in self.inhabited:
            got = inhabit_joint([self.sigma, *ctx], [rho], searcher=self.searcher)
            self.inhabited[key] = got is not None
            self.refuted |= got is None
        return self.inhabited[key]

    @staticmethod
    def _extend(ctx: tuple[Type, ...], t: Type) -> tuple[Type, ...]:
        return ctx if t in ctx else tuple(sorted(ctx + (t,), key=repr))

    def _steps(self, ctx: tuple[Type, ...], nu: Type):
        # (head, member, params) with member = params -> core and core <= nu
        for sj in ctx:
            for pi in members(sj):
                doms, t = [], pi
                while isinstance(t, Arrow):
                    doms.append(t.dom)
                    t = t.cod
                    if leq(t, nu):
                        yield sj, pi, tuple(doms)

    def derive(self, goal: _Goal) -> dict[_Goal, ThetaDerivation]:
        """Least fixpoint over the finitely many goals reachable from ``goal``."""
        universe, todo = set(), [goal]
        while todo:
            g = todo.pop()
            if g in universe:
                continue
            universe.add(g)
            ctx, nu = g
            if isinstance(nu, Arrow):
                todo.append((self._extend(ctx, nu.dom), nu.cod))
            for _, _, params in self._steps(ctx, nu):
                for rho in params:
                    todo.extend((ctx, r) for r in members(rho))
        proved: dict[_Goal, ThetaDerivation] = {}
        for ctx, nu in universe:
            if leq(self.sigma, nu):
                proved[(ctx, nu)] = ThetaDerivation(ctx, nu)
        changed = True
        while changed:
            changed = False
            for g in sorted(universe - proved.keys(), key=repr):
                d = self._try(g, proved)
                if d is not None:
                    proved[g] = d
                    changed = True
        return proved

    def _try(self, g: _Goal, proved: dict) -> ThetaDerivation | None:
        ctx, nu = g
        if isinstance(nu, Arrow):
            inner = (self._extend(ctx, nu.dom), nu.cod)
            if inner in proved:
                return ThetaDerivation(ctx, nu, "abstract", subs=(proved[inner],))
        for sj, pi, params in self._steps(ctx, nu):
            for i, rho in enumerate(params, 1):
                if all((ctx, r) in proved for r in members(rho)) and all(self._inhabited(ctx, p) for p in params):
                    subs = tuple(proved[(ctx, r)] for r in members(rho))
                    return ThetaDerivation(ctx, nu, "step", sj, pi, i, params, subs)
        return None


class _Builder:
    """Turn provable Theta goals into left invertible inhabitants.

    Bodies are built over named variables: ``t`` for sigma and one name per
    distinct context type. Every proved way of reaching a goal is tried,
    since member-wise derivations of an intersection need not share a term.
    """

    def __init__(self, theta: _Theta, proved: dict, steps: int):
        self.theta, self.proved, self.steps = theta, proved, steps
        self.names: dict[Type, str] = {}
        self.memo: dict[_Goal, Term | None] = {}
        self.active: set = set()

    def name(self, t: Type) -> str:
        return self.names.setdefault(t, f"x{len(self.names) + 1}")

    def env(self, ctx: tuple[Type, ...]) -> dict:
        return {"t": self.theta.sigma, **{self.name(s): s for s in ctx}}

    def body(self, goal: _Goal) -> Term | None:
        if goal in self.memo:
            return self.memo[goal]
        if goal not in self.proved or goal in self.active:
            return None
        self.active.add(goal)
        try:
            got = self._build(goal)
        finally:
            self.active.discard(goal)
        self.memo[goal] = got
        return got

    def _build(self, goal: _Goal) -> Term | None:
        ctx, nu = goal
        if leq(self.theta.sigma, nu):
            return FVar("t")
        if isinstance(nu, Arrow):
            inner = self.body((self.theta._extend(ctx, nu.dom), nu.cod))
            if inner is not None:
                return abstract(inner, self.name(nu.dom))
        for sj, _, params in self.theta._steps(ctx, nu):
            if not all(self.theta._inhabited(ctx, p) for p in params):
                continue
            for i in range(len(params)):
                got = self._step(ctx, sj, params, i)
                if got is not None:
                    return got
        return None

    def _step(self, ctx, head: Type, params, chosen: int) -> Term | None:
        args = []
        for l, rho in enumerate(params):
            a = self._chosen(ctx, rho) if l == chosen else self._inhabitant(ctx, rho)
            if a is None:
                return None
            args.append(a)
        return apps(FVar(self.name(head)), *args)

    def _chosen(self, ctx, rho: Type) -> Term | None:
        ms = members(rho)
        if not ms:
            return FVar("t")
        env = self.env(ctx)
        for b in dict.fromkeys(x for x in (self.body((ctx, r)) for r in ms) if x is not None):
            try:
                if derivable(env, b, rho, self.steps):
                    return b
            except BudgetExceeded:
                continue
        return None

    def _inhabitant(self, ctx, rho: Type) -> Term | None:
        got = inhabit_joint([self.theta.sigma, *ctx], [rho], searcher=self.theta.searcher)
        if got is None:
            return None
        vars_ = [FVar("t"), *(FVar(self.name(s)) for s in ctx)]
        return normal_form(apps(got[0], *vars_), self.steps)

    def term(self, goal: _Goal) -> Term | None:
        b = self.body(goal)
        return None if b is None else abstract(b, "t")


def _left_term_of(theta: _Theta, goal: _Goal, steps: int) -> Term | None:
    proved = theta.derive(goal)
    if goal not in proved:
        return None
    return _Builder(theta, proved, steps).term(goal)


def left_inhabitant(t: Type, budget: SearchBudget | None = None, steps: int = DEFAULT_STEPS,
                    searcher: Inhabiter | None = None) -> Term | None:
    """A left invertible closed term of the strict arrow type t, when one is found."""
    searcher = searcher or Inhabiter(budget or SearchBudget())
    t = normalize(t)
    if not isinstance(t, Arrow):
        return None
    m = _left_term_of(_Theta(t.dom, searcher), ((), t.cod), steps)
    if m is None or not derivable({}, m, t, steps):
        return None
    return m


def is_left_type(t: Type, budget: SearchBudget | None = None, searcher: Inhabiter | None = None
                 ) -> tuple[Answer, list[ThetaDerivation]]:
    """Search a derivation that every member of t is a left type.

    Returns the derivation per member on success. Failure is never a
    refutation, since inhabitation is only searched.
    """
    searcher = searcher or Inhabiter(budget or SearchBudget())
    out = []
    for mu in members(normalize(t)):
        d = _left_member(mu, searcher)
        if d is None:
            return Answer.NO_WITHIN_BUDGET, []
        out.append(d)
    return Answer.YES, out


def _left_member(mu: Type, searcher: Inhabiter) -> ThetaDerivation | None:
    if not isinstance(mu, Arrow):
        return None
    return _Theta(mu.dom, searcher).derive(((), mu.cod)).get(((), mu.cod))


def is_right_type(t: Type, budget: SearchBudget | None = None, searcher: Inhabiter | None = None) -> Answer:
    """tau -> mu is a right type when tau <= rho1 -> .. -> rhom -> mu with tau -> rhoi inhabited."""
    searcher = searcher or Inhabiter(budget or SearchBudget())
    for nu in members(normalize(t)):
        if not isinstance(nu, Arrow) or not _right_member(nu.dom, nu.cod, searcher):
            return Answer.NO_WITHIN_BUDGET
    return Answer.YES


def _right_member(tau: Type, mu: Type, searcher: Inhabiter) -> bool:
    if leq(tau, mu):
        return True
    for pi in members(tau):
        doms, t = [], pi
        while isinstance(t, Arrow):
            doms.append(t.dom)
            t = t.cod
            if leq(t, mu) and inhabit_joint(tau, list(doms), searcher=searcher) is not None:
                return True
    return False


def strict_types_only(*ts: Type) -> bool:
    return all(is_strict(t) and len(members(normalize(t))) <= 1 for t in ts)
