import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import OutOfSteps, innermost_normal_form
from retrakt.syntax import ParseError, parse_term, show_term
from retrakt.terms import (
    BOT,
    App,
    BudgetExceeded,
    Bot,
    BVar,
    FVar,
    Lam,
    beta_bot_equal,
    compose,
    free_vars,
    head_normal_form,
    identity,
    is_normal,
    normal_form,
    permutator,
    reduce_step,
    reduction_trace,
    selector,
    simple_right_inverse,
    size,
    substitute,
    subterms,
)
from strategies import terms

T = parse_term


def test_substitute_direct_hit():
    assert substitute(FVar("x"), "x", BOT) == BOT


def test_substitute_avoids_capture():
    got = substitute(T(r"\y. x y"), "x", FVar("y"))
    assert got == Lam(App(FVar("y"), BVar(0)))
    assert show_term(got) == r"\y'. y y'"


def test_substitute_permutator_into_path_example():
    body = T(r"\x. x x (x t)").body  # x x (x t) with x loose
    m = Lam(body)
    got = normal_form(App(m, permutator(2)))
    expected = T(r"\z1. z1 (\z2 z3 z4. z4 z2 z3) (\z5 z6. z6 t z5)")
    assert got == expected


@pytest.mark.parametrize(
    "src, expected",
    [
        (r"_|_ y", "_|_"),
        (r"\x. _|_", "_|_"),
        (r"(\x. x) y", "y"),
    ],
)
def test_reduce_step_examples(src, expected):
    assert reduce_step(T(src)) == T(expected)


def test_hnf_one_step():
    h = head_normal_form(T(r"\z. (\x. x) z"))
    assert h.binders == ("z",) and h.head == BVar(0) and h.args == ()


def test_hnf_unsolvable():
    assert head_normal_form(T("_|_ x")) is None


def test_hnf_budget():
    with pytest.raises(BudgetExceeded) as e:
        head_normal_form(T(r"(\x. x x) (\x. x x)"), 100)
    assert e.value.limit == 100


def test_beta_bot_equal_examples():
    assert beta_bot_equal(compose(identity(), identity()), identity())
    L = T(r"\z. z (\z1 z2 z3. z3 z1 z2) (\y1 y2. y2) _|_ (\y1 y2. y1)")
    M = T(r"\t x. x x (x t)")
    assert beta_bot_equal(compose(L, M), identity())
    assert not beta_bot_equal(T(r"\x. x"), T(r"\x y. x y"))


def test_combinators():
    assert permutator(0) == BOT
    assert selector(1, 2) == T(r"\y1 y2. y1")
    assert normal_form(compose(identity(), identity())) == identity()
    assert simple_right_inverse(3) == T(r"\t x1 x2 x3. t")
    with pytest.raises(ValueError):
        selector(3, 2)


def test_binder_hints_do_not_matter():
    assert T(r"\a. a") == T(r"\b. b")


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_term("\\x.\n  x )")
    assert (e.value.line, e.value.column) == (2, 5)


# -- properties ------------------------------------------------------------------


@given(terms(free=("u", "v")))
def test_print_parse_round_trip(t):
    assert parse_term(show_term(t)) == t
    assert parse_term(show_term(t, unicode=True)) == t


@given(terms(free=("u",)))
def test_no_step_means_no_redex(t):
    if reduce_step(t) is None:
        assert is_normal(t)
        for s in subterms(t):
            redex = (isinstance(s, App) and isinstance(s.fun, (Lam, Bot))) or s == Lam(BOT)
            assert not redex, show_term(t)


@settings(max_examples=300)
@given(terms(free=("u", "v"), max_leaves=14))
def test_confluence_against_applicative_order(t):
    # both strategies, when they terminate, must meet in the same normal form
    try:
        inner = innermost_normal_form(t, 500)
    except (OutOfSteps, RecursionError):
        assume(False)
    outer = normal_form(t, 5000)
    assert outer == inner


@given(terms(free=("u",)), terms(free=("v",)), st.sampled_from(["u", "w"]))
def test_substitute_free_vars(body, repl, var):
    got = substitute(body, var, repl)
    expected = free_vars(body) - {var}
    if var in free_vars(body):
        expected |= free_vars(repl)
    assert free_vars(got) == expected


@given(terms(free=("u",)))
def test_trace_ends_in_normal_form(t):
    try:
        trace = reduction_trace(t, 300)
    except BudgetExceeded:
        assume(False)
    assert is_normal(trace[-1])
    assert trace[-1] == normal_form(t)
    assert all(b == reduce_step(a) for a, b in zip(trace, trace[1:]))


def test_size_counts_nodes():
    assert size(T(r"\x. x _|_")) == 4
