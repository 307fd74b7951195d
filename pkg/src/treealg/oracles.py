"""Brute-force reference implementations and random instance generators.

These are deliberately naive and share no code with the solvers they check.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterator

from .games import EVEN, ODD, ParityGame
from .terms import Node, RankedAlphabet, RegularTree, Term, prune


# ---------------------------------------------------------------------------
# term enumeration


def oracle_enumerate_terms(alphabet: RankedAlphabet, arity: int, max_height: int) -> Iterator[Term]:
    """Every term of height <= ``max_height`` whose variables are distinct
    members of ``x0 .. x(arity-1)`` (not all need occur), each exactly once."""
    memo: dict = {}

    def trees(h):
        # all (node, used-variable frozenset) of height <= h, root may be a variable
        if h in memo:
            return memo[h]
        out = [(Node(i), frozenset({i})) for i in range(arity)]
        for a in sorted(alphabet, key=repr):
            n = alphabet.arity(a)
            if n == 0:
                out.append((Node(a), frozenset()))
            elif h > 0:
                for kids in itertools.product(trees(h - 1), repeat=n):
                    used = frozenset()
                    ok = True
                    for _, u in kids:
                        if used & u:
                            ok = False
                            break
                        used |= u
                    if ok:
                        out.append((Node(a, tuple(k for k, _ in kids)), used))
        memo[h] = out
        return out

    for node, _ in trees(max_height):
        if not node.is_var:
            yield Term(arity, node)


def count_closed_terms(alphabet: RankedAlphabet, max_height: int) -> int:
    """Number of variable-free terms of height <= h: T(h) = sum_a T(h-1)^ar(a)."""
    t = 0
    for _ in range(max_height + 1):
        t = sum(t ** alphabet.arity(a) for a in alphabet)
    return t


# ---------------------------------------------------------------------------
# parity games


def _even_wins_under(game: ParityGame, choice: dict, v) -> bool:
    """With Even's positional choice fixed, can Odd still win from ``v``?"""
    succ = {}
    for u in game.owner:
        if game.owner[u] == EVEN:
            succ[u] = (choice[u],) if u in choice else ()
        else:
            succ[u] = game.edges[u]
    reach, stack = {v}, [v]
    while stack:
        u = stack.pop()
        for w in succ[u]:
            if w not in reach:
                reach.add(w)
                stack.append(w)
    for u in reach:
        if game.owner[u] == EVEN and not succ[u]:
            return False
    for u in reach:
        p = game.priority[u]
        if p % 2 == 0:
            continue
        # odd cycle through u staying at priorities >= p
        seen, stack = set(), [u]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if game.priority[y] < p:
                    continue
                if y == u:
                    return False
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return True


def oracle_even_region(game: ParityGame) -> set:
    """Even's winning region by trying every positional Even strategy."""
    evens = [u for u in game.owner if game.owner[u] == EVEN and game.edges[u]]
    won = set()
    for picks in itertools.product(*(game.edges[u] for u in evens)):
        choice = dict(zip(evens, picks))
        for v in game.owner:
            if v not in won and _even_wins_under(game, choice, v):
                won.add(v)
    return won


def all_games(n: int, max_out: int = 2, max_priority: int = 3) -> Iterator[ParityGame]:
    positions = list(range(n))
    edge_sets = [c for k in range(max_out + 1) for c in itertools.combinations(positions, k)]
    per_position = list(itertools.product((EVEN, ODD), range(max_priority + 1), edge_sets))
    for spec in itertools.product(per_position, repeat=n):
        yield ParityGame({v: s[0] for v, s in enumerate(spec)},
                         {v: s[1] for v, s in enumerate(spec)},
                         {v: s[2] for v, s in enumerate(spec)})


def random_game(rng: random.Random, n: int, max_out: int = 2, max_priority: int = 3) -> ParityGame:
    owner, prio, edges = {}, {}, {}
    for v in range(n):
        owner[v] = rng.choice((EVEN, ODD))
        prio[v] = rng.randint(0, max_priority)
        edges[v] = tuple(rng.sample(range(n), rng.randint(0, min(max_out, n))))
    return ParityGame(owner, prio, edges)


# ---------------------------------------------------------------------------
# random trees


def random_term(rng: random.Random, alphabet: RankedAlphabet, arity: int, max_size: int,
                shuffle_vars: bool = True) -> Term:
    """A random term in which each of ``x0 .. x(arity-1)`` occurs exactly once."""
    syms = sorted(alphabet, key=repr)
    leaves = [a for a in syms if alphabet.arity(a) == 0]
    inner = [a for a in syms if alphabet.arity(a) > 0]
    widest = max(inner, key=alphabet.arity, default=None)
    if arity and widest is None:
        raise ValueError("alphabet cannot carry variables")

    def gen(budget, k, may_be_var):
        if k == 1 and may_be_var and (budget <= 1 or rng.random() < 0.3):
            return Node("?")
        if k == 0 and (budget <= 1 or not inner or rng.random() < 0.3) and leaves:
            return Node(rng.choice(leaves))
        if k >= 2 and budget <= 2:
            a = widest
        else:
            a = rng.choice(inner)
        n = alphabet.arity(a)
        cuts = sorted(rng.randint(0, k) for _ in range(n - 1))
        ks = [b - a_ for a_, b in zip([0] + cuts, cuts + [k])]
        share = max(1, (budget - 1) // n)
        return Node(a, tuple(gen(share, kj, True) for kj in ks))

    for _ in range(1000):
        root = gen(max_size, arity, False)
        if root.size() <= max_size:
            break
    names = list(range(arity))
    if shuffle_vars:
        rng.shuffle(names)
    it = iter(names)

    def number(node):
        if node.label == "?" and not node.children:
            return Node(next(it))
        return Node(node.label, tuple(number(c) for c in node.children))

    return Term(arity, number(root))


def random_regular_tree(rng: random.Random, alphabet: RankedAlphabet, n_nodes: int) -> RegularTree:
    """A random variable-free regular tree on at most ``n_nodes`` graph nodes."""
    syms = sorted(alphabet, key=repr)
    ids = [f"n{i}" for i in range(n_nodes)]
    labels, succ = {}, {}
    for n in ids:
        a = rng.choice(syms)
        labels[n] = a
        succ[n] = tuple(rng.choice(ids) for _ in range(alphabet.arity(a)))
    return prune(RegularTree(0, "n0", labels, succ))


def random_automaton(rng: random.Random, alphabet: RankedAlphabet, n_states: int = 2,
                     max_priority: int = 3, density: float = 0.5):
    """A random parity tree automaton with states ``q0 ..``."""
    from .automata import ParityTreeAutomaton

    states = tuple(f"q{i}" for i in range(n_states))
    trans = []
    for q in states:
        for a in sorted(alphabet, key=repr):
            for ps in itertools.product(states, repeat=alphabet.arity(a)):
                if rng.random() < density:
                    trans.append((q, a, ps))
    prio = {q: rng.randint(0, max_priority) for q in states}
    return ParityTreeAutomaton(states, alphabet, trans, states[0], prio)


def random_profileset(rng: random.Random, arity: int, states=("p", "q"), max_priority: int = 2,
                      max_conj: int = 3):
    """A random algebra element: conjunctions rooted at one state each.

    Every conjunction holds ``Branch(p)`` and only atoms starting at ``p``,
    which is the shape of a run profile.
    """
    from .profiles import Branch, ProfileSet, Var

    conjs = []
    for _ in range(rng.randint(0, max_conj)):
        start = rng.choice(states)
        atoms = {Branch(start)}
        for j in range(arity):
            if rng.random() < 0.7:
                atoms.add(Var(start, rng.randint(0, max_priority), rng.choice(states), j))
        conjs.append(frozenset(atoms))
    return ProfileSet(conjs)


def random_factorization(rng: random.Random, t: Term, cut_probability: float = 0.4) -> Term:
    """An arbitrary tree of trees flattening to ``t`` (not restricted to F(t))."""

    def factor(node: Node):
        succ = []

        def walk(n, top):
            if n.is_var or (not top and rng.random() < cut_probability):
                succ.append(n)
                return Node(len(succ) - 1)
            return Node(n.label, tuple(walk(c, False) for c in n.children))

        inner = walk(node, True)
        kids = tuple(c if c.is_var else factor(c) for c in succ)
        return Node(Term(len(succ), inner), kids)

    return Term(t.arity, factor(t.root))


def brute_force_accepts(A, t: Term) -> bool:
    """Try every state labelling of a finite variable-free tree."""
    from .automata import Rejection, check_run

    paths = [p for p, _ in t.root.iter_nodes()]
    for states in itertools.product(A.states, repeat=len(paths)):
        rho = dict(zip(paths, states))
        if rho[()] != A.initial:
            continue
        if not isinstance(check_run(A, t, rho), Rejection):
            return True
    return False
