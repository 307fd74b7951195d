"""Small example languages with hand-built complement automata.

The "contains a" language uses binary ``a`` and ``b`` plus a nullary leaf
``c`` so that finite trees exist.
"""
from __future__ import annotations

from .automata import LanguagePair, ParityTreeAutomaton, load_language_pair
from .terms import RankedAlphabet, RegularTree, from_term, parse_term

ABC = RankedAlphabet({"a": 2, "b": 2, "c": 0})


def _free(state, alphabet):
    return [(state, x, (state,) * n) for x, n in alphabet.symbols.items()]


def contains_a_automaton() -> ParityTreeAutomaton:
    # s: still looking for an a (odd, so it cannot stay forever); f: done
    trans = _free("f", ABC) + [
        ("s", "a", ("f", "f")),
        ("s", "b", ("s", "f")),
        ("s", "b", ("f", "s")),
    ]
    return ParityTreeAutomaton(("s", "f"), ABC, trans, "s", {"s": 1, "f": 0})


def no_a_automaton() -> ParityTreeAutomaton:
    trans = [("n", "b", ("n", "n")), ("n", "c", ())]
    return ParityTreeAutomaton(("n",), ABC, trans, "n", {"n": 0})


def first_child_a_automaton() -> ParityTreeAutomaton:
    trans = _free("f", ABC) + [
        ("q0", "a", ("qa", "f")),
        ("q0", "b", ("qa", "f")),
        ("qa", "a", ("f", "f")),
    ]
    return ParityTreeAutomaton(("q0", "qa", "f"), ABC, trans, "q0",
                               {"q0": 0, "qa": 0, "f": 0})


def first_child_not_a_automaton() -> ParityTreeAutomaton:
    trans = _free("f", ABC) + [
        ("r0", "c", ()),
        ("r0", "a", ("nb", "f")),
        ("r0", "b", ("nb", "f")),
        ("nb", "b", ("f", "f")),
        ("nb", "c", ()),
    ]
    return ParityTreeAutomaton(("r0", "nb", "f"), ABC, trans, "r0",
                               {"r0": 0, "nb": 0, "f": 0})


UNARY = RankedAlphabet({"b": 1, "c": 0})


def finite_chain_automaton() -> ParityTreeAutomaton:
    """Over unary ``b`` and leaf ``c``: the tree is finite."""
    return ParityTreeAutomaton(("s",), UNARY, [("s", "b", ("s",)), ("s", "c", ())],
                               "s", {"s": 1})


def infinite_chain_automaton() -> ParityTreeAutomaton:
    return ParityTreeAutomaton(("i",), UNARY, [("i", "b", ("i",))], "i", {"i": 0})


def all_b() -> RegularTree:
    """The full binary tree labelled ``b`` everywhere."""
    return RegularTree(0, "r", {"r": "b"}, {"r": ("r", "r")})


def a_then_b() -> RegularTree:
    return RegularTree(0, "r", {"r": "a", "s": "b"}, {"r": ("s", "s"), "s": ("s", "s")})


def sample_trees() -> list[RegularTree]:
    finite = ["c", "a(c, c)", "b(c, c)", "b(b(c, c), a(c, c))", "b(c, b(c, c))"]
    return [all_b(), a_then_b()] + [from_term(parse_term(s)) for s in finite]


def contains_a() -> LanguagePair:
    return load_language_pair(contains_a_automaton(), no_a_automaton(), sample_trees())


def first_child_a() -> LanguagePair:
    return load_language_pair(first_child_a_automaton(), first_child_not_a_automaton(),
                              sample_trees())


def finite_chain() -> LanguagePair:
    b_loop = RegularTree(0, "r", {"r": "b"}, {"r": ("r",)})
    samples = [b_loop, from_term(parse_term("c")), from_term(parse_term("b(b(c))"))]
    return load_language_pair(finite_chain_automaton(), infinite_chain_automaton(), samples)
