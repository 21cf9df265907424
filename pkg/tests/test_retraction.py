import random

import pytest

from oracles import corpus_retractions, identity_pairs
from retrakt.checking import Inhabiter, SearchBudget, derivable, inhabit
from retrakt.corpus import corpus, random_xi
from retrakt.intersection import OMEGA, Arrow, TVar, arrows, equiv, normalize
from retrakt.invert import is_simple_right_inverse, xi_membership
from retrakt.retraction import (
    Answer,
    Status,
    decompose_simple_retraction,
    decompositions,
    is_left_type,
    is_right_type,
    left_inhabitant,
    make_witness,
    retract_strict,
    retract_transitive,
    simple_retract_std,
    verify,
)
from retrakt.syntax import parse_term, parse_type
from retrakt.terms import identity, simple_right_inverse

T, Ty = parse_term, parse_type
PHI, PSI = TVar("a"), TVar("b")
SIGMA = "('a -> 'a) & (('a -> 'a) -> 'a -> 'a) -> 'a -> 'a"
NU6 = Ty(f"('a -> 'a) & (('a -> 'a) -> 'a -> 'a) -> ({SIGMA}) -> w -> 'a")
L6 = T(r"\z. z (\x. x) (\y. y y) z")
EXCOR_I = Ty("w -> (('a -> 'a -> 'a) -> 'a) & (('b -> w -> 'b) -> 'b)")
EXCOR_II = Ty("(('b -> 'b) -> 'a) & (w -> 'a)")


@pytest.fixture(scope="module")
def searcher():
    return Inhabiter(SearchBudget())


# -- strict retractions -----------------------------------------------------------


def test_ex6_witness_is_simple():
    r = retract_strict(PHI, NU6)
    assert r.status is Status.WITNESS
    assert r.witness.right == T(r"\t x1 x2 x3. t")
    assert is_simple_right_inverse(r.witness.right)
    assert r.decomposition[0].arity == 3


def test_ex6_witnesses_from_the_literature_verify():
    for R in (T(r"\t x1 x2 x3. x2 x1 t"), T(r"\t x1 x2 x3. t")):
        assert verify(L6, R, PHI, NU6).holds


def test_identity_retraction():
    mu = Ty("('a -> 'b) -> 'a")
    r = retract_strict(mu, mu)
    assert r.status is Status.WITNESS
    assert (r.witness.left, r.witness.right) == (identity(), identity())


def test_nothing_retracts_into_omega():
    assert retract_strict(PHI, OMEGA).status is Status.PROVABLY_NO


def test_omega_retracts_into_an_arrow():
    # L = \z. z I, R = \t x. x t; no simple right inverse fits here
    nu = Ty("(w -> 'b) -> 'b")
    r = retract_strict(OMEGA, nu)
    assert r.status is Status.WITNESS
    assert verify(T(r"\z. z (\y. y)"), T(r"\t x. x t"), OMEGA, nu).holds
    assert not verify(T(r"\z. z _|_"), simple_right_inverse(1), OMEGA, nu).holds
    assert retract_strict(OMEGA, PHI).status is Status.PROVABLY_NO


def test_undecided_when_inhabitation_fails():
    # 'b -> 'a decomposes around 'a, but ('b -> 'a) -> 'b has no inhabitant
    r = retract_strict(PHI, Ty("'b -> 'a"))
    assert r.status is Status.UNKNOWN
    assert [d.arity for d in r.decomposition] == [1]


def test_decomposition_reassembles():
    for d in decompositions(PHI, NU6):
        assert equiv(d.reassemble(), normalize(NU6))


def test_retract_strict_rejects_intersections():
    with pytest.raises(ValueError):
        retract_strict(PHI, EXCOR_II)


def test_transitivity_examples():
    ident = retract_strict(PHI, PHI).witness
    chained = retract_transitive(ident, ident)
    assert (chained.left, chained.right) == (identity(), identity())

    w6 = retract_strict(PHI, NU6).witness
    unit = retract_transitive(ident, w6)
    assert (unit.left, unit.right) == (w6.left, w6.right)

    w1 = retract_strict(PHI, Ty("w -> 'a")).witness
    w2 = retract_strict(Ty("w -> 'a"), Ty("w -> w -> 'a")).witness
    w = retract_transitive(w1, w2)
    assert equiv(normalize(w.nu), normalize(Ty("w -> w -> 'a")))
    with pytest.raises(ValueError):
        retract_transitive(w2, w1)


def test_witness_refuses_bad_terms():
    with pytest.raises(ValueError):
        make_witness(PHI, PSI, identity(), identity())


def test_verify_reports_each_clause():
    rep = verify(identity(), identity(), PHI, PSI)
    assert not rep.holds and rep.composes.value == "derivable"
    assert rep.left_typed.value == "not_derivable" and rep.right_typed.value == "not_derivable"


# -- simple retractions for standard types ---------------------------------------------


def test_excor_i():
    r = simple_retract_std(Ty("'a & 'b"), EXCOR_I)
    assert r.status is Status.WITNESS
    assert r.witness.left == T(r"\z. z _|_ (\y1 y2. y1)")
    assert r.witness.right == T(r"\t x1 x2. t")
    parts = decompose_simple_retraction(r.witness)
    got = {(p.mu, normalize(p.nu)) for p in parts}
    assert got == {
        (PHI, normalize(Ty("w -> ('a -> 'a -> 'a) -> 'a"))),
        (PSI, normalize(Ty("w -> ('b -> w -> 'b) -> 'b"))),
    }
    for p in parts:
        assert verify(p.left, p.right, p.mu, p.nu).holds


def test_excor_ii():
    r = simple_retract_std(PHI, EXCOR_II)
    assert r.status is Status.WITNESS
    assert (r.witness.left, r.witness.right) == (T(r"\z. z (\y. y)"), T(r"\t x. t"))
    parts = decompose_simple_retraction(r.witness)
    assert {normalize(p.nu) for p in parts} == {normalize(Ty("('b -> 'b) -> 'a")), normalize(Ty("w -> 'a"))}
    assert all(p.mu == PHI for p in parts)


def test_single_member_decomposes_to_itself():
    w = simple_retract_std(PHI, NU6).witness
    (only,) = decompose_simple_retraction(w)
    assert (only.left, only.right) == (w.left, w.right)


def test_standard_omega_target():
    assert simple_retract_std(OMEGA, OMEGA).status is Status.WITNESS
    assert simple_retract_std(PHI, OMEGA).status is Status.PROVABLY_NO


# -- left and right types ----------------------------------------------------------


def test_left_type_examples():
    tau = "'b & ('a -> 'c) & ('b -> 'c -> 'd)"
    ans, (d,) = is_left_type(Ty(f"'a -> {tau} -> 'd"))
    assert ans is Answer.YES and d.rule == "abstract"
    mu, nu = "(('a -> 'b) -> 'b -> 'e)", "('a -> 'b)"
    assert is_left_type(Ty(f"'a -> {mu} -> {nu} -> 'e"))[0] is Answer.YES
    assert is_left_type(Ty("'a & 'b -> 'c -> 'a"))[0] is Answer.YES
    assert is_left_type(Ty("'a -> 'b"))[0] is Answer.NO_WITHIN_BUDGET


def test_left_type_inhabitant_is_left_invertible():
    t = Ty("'a -> 'b & ('a -> 'c) & ('b -> 'c -> 'd) -> 'd")
    m = left_inhabitant(t)
    assert m is not None and derivable({}, m, t)
    assert xi_membership(m) is not None


def test_right_type_examples():
    assert is_right_type(Ty("(('c -> 'c) & ('d -> 'd) -> w -> 'a) & 'b -> 'a")) is Answer.YES
    assert is_right_type(OMEGA) is Answer.YES
    assert is_right_type(Ty("'a -> 'b")) is Answer.NO_WITHIN_BUDGET


# -- properties over the corpus ---------------------------------------------------------


def test_extension_property(searcher):
    # mu <| nu extends to mu <| rho -> nu once (rho -> nu) -> rho is inhabited
    rng = random.Random(3)
    types = corpus()
    done = 0
    for (u, v) in sorted(corpus_retractions()):
        mu, nu = types[u], types[v]
        for rho in rng.sample(types, 4):
            ext = normalize(Arrow(rho, nu))
            if inhabit(Arrow(ext, rho), searcher=searcher) is None:
                continue
            assert retract_strict(mu, ext, searcher=searcher).status is Status.WITNESS, (mu, nu, rho)
            done += 1
    assert done > 100


def test_extension_needs_more_than_nu_to_rho():
    # 'a <| 'a and 'a -> 'a is inhabited, yet 'a <| 'a -> 'a would need ('a -> 'a) -> 'a
    assert retract_strict(PHI, PHI).status is Status.WITNESS
    assert inhabit(Arrow(PHI, PHI)) is not None
    r = retract_strict(PHI, Arrow(PHI, PHI))
    assert r.status is not Status.WITNESS
    assert inhabit(Ty("('a -> 'a) -> 'a")) is None


def test_witnesses_can_be_simple():
    # every brute-force witness with mu not omega is matched by a simple one
    types = corpus()
    for (u, v) in corpus_retractions():
        if types[u] == OMEGA:
            continue
        r = retract_strict(types[u], types[v])
        assert r.status is Status.WITNESS and is_simple_right_inverse(r.witness.right)


def test_left_invertible_terms_have_left_types(searcher):
    rng = random.Random(11)
    types = [t for t in corpus() if isinstance(t, Arrow)]
    checked = 0
    for _ in range(40):
        m = random_xi(rng, p=0.7, max_binders=2, max_components=2)
        for t in types:
            if derivable({}, m, t):
                assert is_left_type(t, searcher=searcher)[0] is Answer.YES, (m, t)
                checked += 1
    assert checked > 50


def test_right_invertible_terms_have_right_types(searcher):
    types = [t for t in corpus() if isinstance(t, Arrow)]
    lefts = sorted({L for L, _ in identity_pairs(6)}, key=repr)
    checked = 0
    for L in lefts:
        for t in types:
            if derivable({}, L, t):
                assert is_right_type(t, searcher=searcher) is Answer.YES, (L, t)
                checked += 1
    assert checked > 50


def test_simple_right_inverse_fits_any_mu():
    # with rho_i = omega, every mu is a retract of w -> .. -> w -> mu
    types = corpus()[::7]
    pairs = [(L, R) for L, R in identity_pairs(6) if is_simple_right_inverse(R)]
    assert len(pairs) > 10
    for L, R in pairs:
        m = _binders(R) - 1
        for mu in types:
            nu = arrows([OMEGA] * m, mu)
            assert verify(L, R, mu, nu).holds, (L, R, mu)


def _binders(t) -> int:
    n = 0
    while hasattr(t, "body"):
        n, t = n + 1, t.body
    return n
