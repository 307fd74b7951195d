"""Reduced factorizations stay shallow: height at most twice the arity."""
import random

from treealg.factorization import reduce
from treealg.oracles import random_term
from treealg.terms import RankedAlphabet, parse_term

t = parse_term("a(b(b(x0)), a(c, x1))", arity=2)
F = reduce(t)
print(t)
for f in F.factors():
    print("  factor", f)
print("height", F.height, "bound", 2 * t.arity, "flattens back:", F.flatten() == t)

rng = random.Random(0)
sigma = RankedAlphabet({"a": 2, "b": 1, "c": 0})
worst = max((reduce(random_term(rng, sigma, m, 30)).height - 2 * m) for m in range(4) for _ in range(200))
print("worst height minus bound over 800 random terms:", worst)
