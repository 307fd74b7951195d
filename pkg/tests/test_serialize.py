import json
import random

import pytest

from treealg import corpus, serialize as S
from treealg.factorization import reduce
from treealg.games import solve
from treealg.oracles import random_game, random_profileset
from treealg.syntactic import syntactic_algebra
from treealg.terms import Context, RegularTree, HOLE, parse_term


def _rt(doc):
    return json.loads(json.dumps(doc))


def test_alphabet_and_term():
    assert S.alphabet_from_json(_rt(S.alphabet_to_json(corpus.ABC))) == corpus.ABC
    t = parse_term("a(b(x1, c), x0)")
    assert S.term_from_json(_rt(S.term_to_json(t))) == t


def test_regular_tree_and_context():
    g = corpus.a_then_b()
    h = S.regular_from_json(_rt(S.regular_to_json(g)), corpus.ABC)
    assert h.labels == g.labels and h.successors == g.successors
    c = Context(RegularTree(0, "h", {"h": HOLE, "c": "c"}, {"h": ("c",), "c": ()}), 1)
    d = S.context_from_json(_rt(S.context_to_json(c)), corpus.ABC)
    assert d.hole_arity == 1 and d.tree.labels == c.tree.labels


def test_automaton_and_language():
    L = corpus.first_child_a()
    M = S.language_from_json(_rt(S.language_to_json(L)))
    assert S.language_to_json(M) == S.language_to_json(L)


def test_game_and_solution():
    g = random_game(random.Random(1), 5)
    h = S.game_from_json(_rt(S.game_to_json(g)))
    assert S.game_to_json(h) == S.game_to_json(g)
    sol = solve(h)
    back = S.solution_from_json(_rt(S.solution_to_json(sol)))
    assert S.solution_to_json(back) == S.solution_to_json(sol)


def test_profileset():
    rng = random.Random(2)
    for _ in range(50):
        e = random_profileset(rng, rng.randint(0, 3))
        assert S.profileset_from_json(_rt(S.profileset_to_json(e))) == e
    assert S.profileset_to_json(S.profileset_from_json([])) == []


def test_algebra_factorization_tables():
    A = syntactic_algebra(corpus.contains_a(), 1)
    doc = _rt(S.algebra_to_json(A))
    back = S.algebra_summary_from_json(doc)
    assert len(back["arities"][1]) == 3 and back["table"] == A.table
    F = reduce(parse_term("a(b(c, x0), c)"))
    G = S.factorization_from_json(_rt(S.factorization_to_json(F)))
    assert G.outer == F.outer
    tab = {parse_term("c"): "v"}
    assert S.tables_from_json(_rt(S.tables_to_json(tab))) == tab
    label, trees = S.hset_from_json(_rt(S.hset_to_json("v", [parse_term("c")])))
    assert label == "v" and trees == [parse_term("c")]


@pytest.mark.parametrize("doc", [
    {"arity": 0},
    {"arity": 0, "root": {"var": 0}},
    {"arity": 1, "root": {"symbol": "a", "children": [{"var": 0}, {"var": 0}]}},
])
def test_bad_terms(doc):
    with pytest.raises(S.FormatError):
        S.term_from_json(doc)


def test_bad_regular_tree():
    with pytest.raises(S.FormatError):
        S.regular_from_json({"arity": 0, "root": "x", "nodes": []})
