"""Seeded property checks runnable from the command line.

A lighter sibling of the test suite: each check samples from the random
generators and small corpora and reports the first counterexample.
"""
from __future__ import annotations

import random
from typing import Callable

from .checking import Inhabiter, Judgment, SearchBudget, Verdict, check, derivable
from .corpus import corpus, random_expansion, random_xi, std_types
from .intersection import equiv, equiv_std, leq, normalize, show_type, subtype_std
from .invert import left_inverse, permute_substitute, sharp, xi_membership
from .retraction import Status, retract_strict
from .syntax import show_term
from .terms import compose, identity, normal_form, reduce_step


def _xi_left_inverses(rng, steps, budget):
    for _ in range(300):
        m = random_xi(rng)
        L = left_inverse(m, steps)
        if L is None or normal_form(compose(L, m), steps) != identity():
            return show_term(m)
    return None


def _permute_path_length(rng, steps, budget):
    for _ in range(300):
        d = xi_membership(random_xi(rng, p=0.8), steps)
        n = d.hnf.arity - 1
        if n == 0:
            continue
        k = rng.randint(1, n)
        arities = [sharp(j + 1, d.path) + rng.randint(0, 1) for j in range(1, k + 1)]
        if len(permute_substitute(d, arities, steps).path) != len(d.path):
            return f"{show_term(d.hnf.to_term())} with {arities}"
    return None


def _preorder(rng, steps, budget):
    types = corpus()
    for _ in range(3000):
        a, b, c = (rng.choice(types) for _ in range(3))
        if not leq(a, a):
            return show_type(a)
        if leq(a, b) and leq(b, c) and not leq(a, c):
            return f"{show_type(a)} <= {show_type(b)} <= {show_type(c)}"
    return None


def _to_strict(rng, steps, budget):
    types = std_types(1)
    for _ in range(500):
        s = rng.choice(types)
        if not equiv_std(s, normalize(s)):
            return show_type(s)
    return None


def _std_agrees(rng, steps, budget):
    types = std_types(1)
    for _ in range(2000):
        a, b = rng.choice(types), rng.choice(types)
        if subtype_std(a, b) != leq(normalize(a), normalize(b)):
            return f"{show_type(a)} vs {show_type(b)}"
    return None


def _inhabitants_sound(rng, steps, budget):
    searcher = Inhabiter(budget)
    types = corpus()
    for _ in range(200):
        t = rng.choice(types)
        m = searcher.joint([((), t)])
        if m is not None and check(Judgment.of(m, t), steps) is not Verdict.DERIVABLE:
            return f"{show_term(m)} : {show_type(t)}"
    return None


def _reciprocal(rng, steps, budget):
    searcher = Inhabiter(budget)
    types = corpus()
    for _ in range(2000):
        a, b = rng.choice(types), rng.choice(types)
        if (
            retract_strict(a, b, searcher=searcher, steps=steps).status is Status.WITNESS
            and retract_strict(b, a, searcher=searcher, steps=steps).status is Status.WITNESS
            and not equiv(a, b)
        ):
            return f"{show_type(a)} and {show_type(b)}"
    return None


def _subject_conversion(rng, steps, budget):
    searcher = Inhabiter(budget)
    types = corpus()
    done = 0
    while done < 100:
        t = rng.choice(types)
        m = searcher.joint([((), t)])
        if m is None:
            continue
        big = random_expansion(rng, m)
        nxt = reduce_step(big)
        if not derivable({}, big, t, steps) or nxt is None or not derivable({}, nxt, t, steps):
            return f"{show_term(big)} : {show_type(t)}"
        done += 1
    return None


CHECKS: list[tuple[str, Callable]] = [
    ("left inverses of random left invertible terms", _xi_left_inverses),
    ("permuted substitution keeps path length", _permute_path_length),
    ("subtyping is a preorder", _preorder),
    ("strict translation is equivalent", _to_strict),
    ("standard and strict preorders agree on translations", _std_agrees),
    ("inhabitants type check", _inhabitants_sound),
    ("reciprocal retraction implies equivalence", _reciprocal),
    ("types survive one reduction step", _subject_conversion),
]


def run(seed: int, steps: int, budget: SearchBudget, log=print) -> list[dict]:
    if log:
        log(f"seed {seed}")
    results = []
    for i, (name, fn) in enumerate(CHECKS):
        bad = fn(random.Random(seed * 1000 + i), steps, budget)
        results.append({"check": name, "ok": bad is None, "counterexample": bad})
        if log:
            log(f"{'PASS' if bad is None else 'FAIL'}  {name}" + (f": {bad}" if bad else ""))
    return results
