import pytest

from treealg.terms import (
    CUT, HOLE, Context, Node, RankedAlphabet, RegularTree, Term, as_regular, bisimilar,
    flatten, from_term, is_permutation, parse_term, permute_root, prune, sing_factorization,
    singleton, substitute_hole, to_term, truncate, unravel, validate_regular, validate_term,
)

ABC = RankedAlphabet({"a": 2, "b": 2, "c": 0})


def test_parse_and_print_round_trip():
    t = parse_term("a(b(x1, c), x0)")
    assert t.arity == 2
    assert str(t) == "a(b(x1, c), x0)"
    assert t.variables() == [1, 0]


def test_validate_term_catches_bad_trees():
    assert validate_term(parse_term("a(x0, c)"), ABC) is None
    assert "variable occurs twice" in validate_term(parse_term("a(x0, x0)"), ABC).message
    assert "root is a variable" in validate_term(Term(1, Node(0)), ABC).message
    assert validate_term(parse_term("a(c)"), ABC) is not None
    assert validate_term(parse_term("d"), ABC) is not None


def test_absent_variables_are_allowed():
    assert validate_term(parse_term("a(c, c)", arity=2), ABC) is None


def test_singleton_and_unit_factorization():
    s = singleton(ABC, "a")
    assert str(s) == "a(x0, x1)"
    t = parse_term("a(b(x0, c), x1)")
    assert flatten(sing_factorization(t)) == t


def test_flatten_splices_variables():
    inner = Term(2, parse_term("b(x1, x0)").root)
    T = Term(2, Node(inner, (Node(0), Node(Term(0, Node("c"))))))
    assert str(flatten(T)) == "b(c, x0)"


def test_flatten_rejects_arity_mismatch():
    inner = Term(2, parse_term("b(x1, x0)").root)
    with pytest.raises(ValueError):
        flatten(Term(1, Node(inner, (Node(0),))))


def test_regular_round_trip_and_unravel():
    t = parse_term("a(b(c, c), c)")
    g = from_term(t)
    assert to_term(g) == t
    loop = RegularTree(0, "r", {"r": "b", "c": "c"}, {"r": ("r", "c"), "c": ()})
    assert not loop.is_acyclic()
    u = unravel(loop, 2)
    assert str(u) == f"b(b({CUT}, c), c)"
    with pytest.raises(ValueError):
        loop.height()


def test_unravel_keeps_leaves_at_the_cut_depth():
    g = from_term(parse_term("a(c, c)"))
    assert str(unravel(g, 1)) == "a(c, c)"
    assert str(truncate(parse_term("a(a(c, c), c)").root, 1)) == f"a({CUT}, c)"


def test_validate_regular_rejects_shared_variables():
    g = RegularTree(1, "r", {"r": "a", "v": 0}, {"r": ("v", "v"), "v": ()})
    assert validate_regular(g, ABC) is not None
    g = RegularTree(1, "r", {"r": "a", "v": 0}, {"r": ("r", "v"), "v": ()})
    assert validate_regular(g, ABC) is not None  # infinitely many copies of x0


def test_prune_renumbers_and_drops_garbage():
    g = RegularTree(0, "z", {"z": "c", "junk": "c"}, {"z": (), "junk": ()})
    p = prune(g)
    assert len(p) == 1
    assert p.root == "n0"


def test_substitute_hole_everywhere():
    c = Context(RegularTree(0, "h", {"h": HOLE, "c": "c", "x": "a"},
                            {"h": ("x", "c"), "x": ("h", "c"), "c": ()}), 2)
    g = substitute_hole(c, parse_term("b(x1, x0)"))
    # every hole becomes b with swapped successors, repeated forever
    assert not g.is_acyclic()
    assert str(unravel(g, 2)) == f"b(c, a({CUT}, c))"


def test_bisimilar_and_permutation():
    one = RegularTree(0, "r", {"r": "b"}, {"r": ("r", "r")})
    two = RegularTree(0, "s", {"s": "b", "t": "b"}, {"s": ("t", "s"), "t": ("s", "t")})
    assert bisimilar(one, two)
    s = as_regular(parse_term("a(b(c, c), c)"))
    t = as_regular(parse_term("a(c, b(c, c))"))
    assert not bisimilar(s, t)
    assert is_permutation(s, t)
    assert not is_permutation(s, as_regular(parse_term("a(c, a(c, c))")))


def test_permute_root():
    assert str(permute_root(ABC, "a", (1, 0))) == "a(x1, x0)"
