import itertools
import random

import pytest

from treealg import corpus
from treealg.automata import load_language_pair, membership, universal, empty_automaton
from treealg.oracles import random_regular_tree
from treealg.syntactic import (
    element_of, is_commutative, reachable_elements, recognizes, saturation_rounds,
    separating_context, synt_equiv, syntactic_algebra,
)
from treealg.terms import RegularTree, parse_term, substitute_hole


@pytest.fixture(scope="module")
def contains_a():
    L = corpus.contains_a()
    return L, syntactic_algebra(L, 1)


def _separates(L, ctx, u, v):
    return membership(L.positive, substitute_hole(ctx, u.witness)) != \
        membership(L.positive, substitute_hole(ctx, v.witness))


def test_class_counts(contains_a):
    L, S = contains_a
    assert S.class_count(0) == 2
    assert S.class_count(1) == 3
    assert len(S.accepting_ids()) == 1


def test_equiv_examples(contains_a):
    L, _ = contains_a
    c = element_of(L, parse_term("c"))
    bb = element_of(L, corpus.all_b())
    a = element_of(L, parse_term("a(c, c)"))
    assert synt_equiv(L, c, c)
    assert synt_equiv(L, c, bb)
    ctx = separating_context(L, c, a)
    assert ctx is not None and _separates(L, ctx, c, a)


def test_separating_contexts_really_separate(contains_a):
    L, S = contains_a
    for n, classes in S.classes.items():
        for x, y in itertools.combinations(classes, 2):
            ctx = separating_context(L, x.representative, y.representative)
            assert ctx is not None
            assert _separates(L, ctx, x.representative, y.representative)


def test_saturation_is_monotone():
    L = corpus.contains_a()
    rounds = list(saturation_rounds(L, 1))
    for a, b in zip(rounds, rounds[1:]):
        assert set(a) <= set(b)


def test_loops_add_infinite_witnesses():
    L = corpus.finite_chain()
    with_loops = {e.key for e in reachable_elements(L, 1)}
    without = {e.key for e in reachable_elements(L, 1, loops=False)}
    assert without < with_loops


def test_trivial_language_has_one_class():
    A = universal(corpus.ABC)
    L = load_language_pair(A, empty_automaton(corpus.ABC), [corpus.all_b()])
    S = syntactic_algebra(L, 1)
    assert S.class_count(0) == 1 and S.class_count(1) == 1


def test_recognizes_matches_membership(contains_a):
    L, S = contains_a
    rng = random.Random(8)
    for _ in range(40):
        g = random_regular_tree(rng, L.alphabet, 4)
        assert recognizes(L, S, g) == membership(L.positive, g)


def test_commutativity():
    assert is_commutative(corpus.contains_a())
    v = is_commutative(corpus.first_child_a())
    assert not v and v.symbol == "a" and v.permutation == (1, 0)
    assert is_commutative(corpus.finite_chain())


def test_commutative_verdict_is_sound_on_permuted_trees(contains_a):
    L, S = contains_a
    rng = random.Random(9)
    for _ in range(20):
        g = random_regular_tree(rng, L.alphabet, 4)
        flipped = RegularTree(0, g.root, g.labels,
                              {n: tuple(reversed(s)) for n, s in g.successors.items()})
        assert recognizes(L, S, g) == recognizes(L, S, flipped)


def test_table_is_total_and_well_defined(contains_a):
    L, S = contains_a
    ids = {c.id for cs in S.classes.values() for c in cs}
    for root, args, result in S.table:
        assert set(args) <= ids and result in ids
    assert len({(r, a) for r, a, _ in S.table}) == len(S.table)


def test_equiv_arity_mismatch(contains_a):
    L, _ = contains_a
    with pytest.raises(ValueError):
        synt_equiv(L, element_of(L, parse_term("c")), element_of(L, parse_term("a(x0, c)")))
