import random

import pytest

from treealg.factorization import (
    MissingEntry, decide_low_arity, factorizations, is_reduced, nontrivial_piece,
    precompute_H, reduce, table_evaluator,
)
from treealg.oracles import random_term
from treealg.terms import RankedAlphabet, Term, flatten, parse_term

ABU = RankedAlphabet({"a": 2, "b": 1, "c": 0})


def test_reducedness_examples():
    assert is_reduced(parse_term("c"))
    assert not is_reduced(parse_term("a(c, c)"))
    assert is_reduced(parse_term("a(x0, x1)"))
    # b(x0) is already a singleton factor, so nothing can be merged
    assert is_reduced(parse_term("a(b(x0), x1)"))
    p = nontrivial_piece(parse_term("a(b(b(x0)), x1)"))
    assert p is not None and p.root == (0,) and p.arity == 1


def test_single_node_height_zero():
    F = reduce(parse_term("c"))
    assert F.height == 0 and F.flatten() == parse_term("c")


def test_arity_zero_collapses_to_one_factor():
    F = reduce(parse_term("a(b(c), a(c, c))"))
    assert F.height == 0 and len(F.factors()) == 1


def test_reduce_properties_on_random_terms():
    rng = random.Random(12)
    for _ in range(300):
        m = rng.randint(0, 3)
        t = random_term(rng, ABU, m, 20)
        F = reduce(t)
        assert F.height <= 2 * m
        assert F.flatten() == t
        assert F.in_F()
        assert is_reduced(F.outer)


def test_factorizations_all_flatten_back():
    t = parse_term("a(b(x0), a(c, x1))")
    fs = list(factorizations(t))
    assert len({str(f) for f in fs}) == len(fs)
    for f in fs:
        assert flatten(f) == t
    assert all(f.height() <= 2 for f in factorizations(t, 2))


def test_evaluation_tables():
    t = parse_term("c")
    ev = table_evaluator({"c": "one"})
    assert decide_low_arity(t, "one", ev, {"one": [Term(0, parse_term("one").root)]})
    assert not decide_low_arity(t, "two", ev, {"one": [parse_term("one")]})
    with pytest.raises(MissingEntry):
        reduce(parse_term("a(c, c)"), table_evaluator({}))


def test_decide_with_precomputed_H():
    # counting algebra: value = number of a-labels mod 2, arities ignored
    t = parse_term("a(b(x0), c)")
    labels = RankedAlphabet({"e0": 0, "e1": 0, "u0": 1, "u1": 1, "a": 2})

    def parity(s):
        return sum(1 for _, n in s.root.iter_nodes() if n.label in ("a", "e1", "u1")) % 2

    def evaluate(f):
        k = sum(1 for _, n in f.root.iter_nodes() if n.label == "a") % 2
        if f.arity == 2:
            return "a"
        return f"{'e' if f.arity == 0 else 'u'}{k}"

    H = precompute_H(labels, 1, lambda s: f"p{parity(s)}")
    assert decide_low_arity(t, "p1", evaluate, H)
    assert not decide_low_arity(t, "p0", evaluate, H)
