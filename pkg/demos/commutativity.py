"""Which corpus languages ignore the order of children?"""
from treealg import corpus
from treealg.syntactic import is_commutative
from treealg.terms import unravel

for name, L in (("contains_a", corpus.contains_a()), ("first_child_a", corpus.first_child_a())):
    v = is_commutative(L)
    if v:
        print(f"{name}: commutative")
    else:
        print(f"{name}: not commutative; swapping {v.symbol} by {v.permutation} "
              f"is caught by {unravel(v.context.tree, 3)}")
