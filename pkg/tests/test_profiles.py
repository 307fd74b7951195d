import random

import pytest

from treealg import corpus
from treealg.automata import membership
from treealg.oracles import (
    random_automaton, random_factorization, random_profileset, random_regular_tree, random_term,
)
from treealg.profiles import (
    BOTTOM, Branch, Fin, Inf, ProfileSet, Var, accepts_via_phi, compose, hat_closure,
    hat_generators, is_rectangular, meet, phi, phi_regular, phi_singletons, pi_eval,
    profiles_of_regular, s_mul, s_omega, t_meet,
)
from treealg.terms import Node, RankedAlphabet, RegularTree, Term, from_term, parse_term

ABC = corpus.ABC
MIX = RankedAlphabet({"a": 2, "b": 1, "c": 0})


def _label(t: Term, values) -> Term:
    return Term(t.arity, t.root.map_labels(lambda a: values[a]))


def test_semigroup_products():
    assert s_mul(Fin("p", 2, "q"), Fin("q", 1, "p")) == Fin("p", 1, "p")
    assert s_mul(Fin("p", 2, "q"), Fin("p", 1, "p")) is None
    assert s_mul(Fin("p", 3, "q"), Inf("q")) == Inf("p")
    assert s_omega([], [Fin("p", 2, "p")]) == Inf("p")
    assert s_omega([], [Fin("p", 2, "q"), Fin("q", 1, "p")]) is None
    assert s_omega([Fin("r", 1, "p")], [Fin("p", 0, "p")]) == Inf("r")


def test_profileset_antichain():
    x = frozenset({Branch("p")})
    y = frozenset({Branch("p"), Var("p", 0, "q", 0)})
    assert ProfileSet([x, y]) == ProfileSet([x])
    assert not BOTTOM
    with pytest.raises(ValueError):
        ProfileSet([{Var("p", 0, "q", 0), Var("p", 1, "q", 0)}])


def test_phi_of_singleton():
    A = corpus.contains_a_automaton()
    e = phi_singletons(A)["b"]
    assert frozenset({Branch("s"), Var("s", 1, "s", 0), Var("s", 0, "f", 1)}) in e.disjuncts


def test_unit_law():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(0, 3)
        e = random_profileset(rng, n)
        sing = Node(e, tuple(Node(i) for i in range(n)))
        assert pi_eval(sing) == e


def test_phi_is_a_morphism():
    rng = random.Random(2)
    for _ in range(150):
        A = random_automaton(rng, MIX, 2)
        t = random_term(rng, MIX, rng.randint(0, 2), 8)
        T = random_factorization(rng, t)
        outer = T.root.map_labels(lambda f: phi(A, f))
        assert pi_eval(outer) == phi(A, t)
        assert pi_eval(_label(t, phi_singletons(A))) == phi(A, t)


def test_associativity_with_arbitrary_labels():
    rng = random.Random(3)
    for _ in range(150):
        t = random_term(rng, MIX, rng.randint(0, 2), 8)
        values = {a: random_profileset(rng, MIX.arity(a)) for a in MIX}
        T = random_factorization(rng, t)
        inner = T.root.map_labels(lambda f: pi_eval(_label(f, values)))
        assert pi_eval(inner) == pi_eval(_label(t, values))


def test_phi_accepts_like_membership():
    rng = random.Random(4)
    for _ in range(40):
        A = random_automaton(rng, ABC, 2)
        for _ in range(4):
            t = random_term(rng, ABC, 0, 7)
            assert accepts_via_phi(A, phi(A, t)) == membership(A, from_term(t))
            g = random_regular_tree(rng, ABC, 3)
            assert accepts_via_phi(A, phi_regular(A, g)) == membership(A, g)


def test_phi_regular_on_finite_trees_matches_phi():
    rng = random.Random(5)
    for _ in range(60):
        A = random_automaton(rng, ABC, 2)
        t = random_term(rng, ABC, rng.randint(0, 2), 8)
        assert phi_regular(A, from_term(t)) == phi(A, t)


def test_pi_eval_on_regular_trees_matches_profiles():
    rng = random.Random(6)
    for _ in range(60):
        A = random_automaton(rng, ABC, 2)
        g = random_regular_tree(rng, ABC, 3)
        values = phi_singletons(A)
        assert pi_eval(g.relabel(lambda a: values[a])) == phi_regular(A, g)


def test_profiles_of_regular_with_variables():
    A = corpus.contains_a_automaton()
    # b-loop on the left, x0 on the right: no a anywhere except what x0 brings
    g = RegularTree(1, "r", {"r": "b", "s": "b", "v": 0},
                    {"r": ("s", "v"), "s": ("s", "s"), "v": ()})
    profs = profiles_of_regular(A, g)
    assert {(p.state, p.vars) for p in profs} == {("s", ((0, 1, "s"),)), ("f", ((0, 0, "f"),))}


def test_unrooted_conjunctions_break_associativity():
    # outside the carrier: a conjunction without Branch forgets its start state
    p = "p"
    a = ProfileSet([{Branch(p), Var(p, 2, p, 0), Var(p, 2, p, 1)}])
    b = ProfileSet([{Var("q", 0, p, 0)}])
    c = ProfileSet([frozenset()])
    flat = Node(a, (Node(b, (Node(c),)), Node(0)))
    inner = Node(a, (Node(pi_eval(Node(b, (Node(c),)))), Node(0)))
    assert pi_eval(flat) == BOTTOM
    assert pi_eval(inner) != BOTTOM


def test_compose_matches_flat_phi():
    A = corpus.contains_a_automaton()
    vals = phi_singletons(A)
    value, r = compose(vals["a"], [None, (vals["c"], 0)])
    assert r == 1
    assert value == phi(A, parse_term("a(x0, c)"))


def test_meet_and_rectangularity():
    x = frozenset({Branch("p")})
    y = frozenset({Var("p", 0, "q", 0)})
    assert t_meet(x, y) == x | y
    assert t_meet(y, frozenset({Var("p", 1, "q", 0)})) is None
    assert meet(ProfileSet([x]), ProfileSet([y])) == ProfileSet([x | y])
    assert is_rectangular(ProfileSet([x | y]), 1)
    two = ProfileSet([frozenset({Var("p", 0, "p", 0), Var("p", 0, "p", 1)}),
                      frozenset({Var("p", 0, "q", 0), Var("p", 0, "q", 1)})])
    assert not is_rectangular(two, 2)


def test_hat_closure_fibres():
    A = corpus.contains_a_automaton()
    hat = hat_closure(A, hat_generators(A), 1)
    for h in hat:
        assert h.profile in h.value.disjuncts or any(c <= h.profile for c in h.value.disjuncts)
