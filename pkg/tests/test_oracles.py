import random

from treealg.corpus import ABC
from treealg.oracles import count_closed_terms, oracle_enumerate_terms, random_term
from treealg.terms import RankedAlphabet, validate_term


def test_enumeration_counts():
    one = RankedAlphabet({"c": 0})
    assert len(list(oracle_enumerate_terms(one, 0, 0))) == 1
    chain = RankedAlphabet({"b": 1, "c": 0})
    assert sorted(str(t) for t in oracle_enumerate_terms(chain, 0, 2)) == ["b(b(c))", "b(c)", "c"]
    for alphabet in (chain, ABC, RankedAlphabet({"f": 3, "g": 1, "c": 0, "d": 0})):
        for h in range(3):
            terms = list(oracle_enumerate_terms(alphabet, 0, h))
            assert len(terms) == count_closed_terms(alphabet, h)
            assert len({str(t) for t in terms}) == len(terms)


def test_enumeration_with_variables():
    chain = RankedAlphabet({"b": 1, "c": 0})
    got = sorted(str(t) for t in oracle_enumerate_terms(chain, 1, 2))
    assert got == ["b(b(c))", "b(b(x0))", "b(c)", "b(x0)", "c"]


def test_random_terms_are_well_formed():
    rng = random.Random(0)
    for _ in range(200):
        m = rng.randint(0, 3)
        t = random_term(rng, ABC, m, 25)
        assert validate_term(t, ABC) is None
        assert sorted(t.variables()) == list(range(m))
        assert t.size() <= 25
