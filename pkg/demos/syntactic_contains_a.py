"""Syntactic algebra of "some vertex is labelled a" over {a:2, b:2, c:0}.

Run with ``python3 demos/syntactic_contains_a.py``.
"""
from treealg import corpus
from treealg.syntactic import element_of, separating_context, syntactic_algebra
from treealg.terms import unravel

L = corpus.contains_a()
S = syntactic_algebra(L, max_arity=1)

for n in sorted(S.classes):
    print(f"arity {n}: {len(S.classes[n])} classes")
    for c in S.classes[n]:
        print(f"  {c.id:5} accepting={c.accepting!s:5}  e.g. {unravel(c.representative.witness, 3)}")

# the all-b tree and a tree with an a land in different classes; find a context showing it
u, v = element_of(L, corpus.all_b()), element_of(L, corpus.a_then_b())
ctx = separating_context(L, u, v)
print("separating context:", None if ctx is None else unravel(ctx.tree, 3))
