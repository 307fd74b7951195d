"""Nondeterministic parity tree automata over ranked alphabets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .games import EVEN, ODD, ParityGame, solve
from .terms import (
    Node, RankedAlphabet, RegularTree, Term, as_regular, is_var, prune,
    validate_regular,
)


@dataclass(frozen=True, eq=False)
class ParityTreeAutomaton:
    states: tuple
    alphabet: RankedAlphabet
    transitions: frozenset
    initial: Hashable
    priority: Mapping[Hashable, int]
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "transitions",
                           frozenset((q, a, tuple(ps)) for q, a, ps in self.transitions))
        object.__setattr__(self, "priority", dict(self.priority))
        states = set(self.states)
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial!r} not among the states")
        if set(self.priority) != states:
            raise ValueError("priority map must be total on the states")
        for q, a, ps in self.transitions:
            if q not in states or any(p not in states for p in ps):
                raise ValueError(f"transition {(q, a, ps)!r} uses an unknown state")
            if self.alphabet.arity(a) != len(ps):
                raise ValueError(f"transition {(q, a, ps)!r} has the wrong arity")
        index: dict = {}
        for q, a, ps in sorted(self.transitions, key=repr):
            index.setdefault((q, a), []).append(ps)
        self._index.update(index)

    def moves(self, q, a) -> list[tuple]:
        """Successor tuples of the transitions from ``q`` reading ``a``."""
        return self._index.get((q, a), [])

    @property
    def max_priority(self) -> int:
        return max(self.priority.values(), default=0)

    @property
    def priorities(self) -> list[int]:
        return sorted(set(self.priority.values()))

    def __repr__(self):
        return (f"ParityTreeAutomaton({len(self.states)} states, "
                f"{len(self.transitions)} transitions, initial={self.initial!r})")


def universal(alphabet: RankedAlphabet, state="u") -> ParityTreeAutomaton:
    trans = [(state, a, (state,) * n) for a, n in alphabet.symbols.items()]
    return ParityTreeAutomaton((state,), alphabet, trans, state, {state: 0})


def empty_automaton(alphabet: RankedAlphabet, state="e") -> ParityTreeAutomaton:
    return ParityTreeAutomaton((state,), alphabet, (), state, {state: 1})


def with_initial(A: ParityTreeAutomaton, q) -> ParityTreeAutomaton:
    return ParityTreeAutomaton(A.states, A.alphabet, A.transitions, q, A.priority)


@dataclass(frozen=True)
class RunProfile:
    """Root state plus ``(j, k_j, p_j)`` for every variable ``x_j``."""

    state: Hashable
    vars: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(sorted(self.vars, key=lambda e: e[0])))

    def __str__(self):
        inner = "".join(f", {k}, {p!r}(x{j})" for j, k, p in self.vars)
        return f"<{self.state!r}{inner}>"


@dataclass(frozen=True)
class Rejection:
    reason: str
    node: tuple = ()


def check_run(A: ParityTreeAutomaton, t: Term, rho: Mapping[tuple, Hashable]):
    """Profile of the partial run ``rho`` (paths to states), or a Rejection."""
    nodes = list(t.root.iter_nodes())
    for path, _ in nodes:
        if path not in rho:
            raise ValueError(f"run is not total: no state at {list(path)}")
    for path, node in nodes:
        if node.is_var:
            continue
        if A.alphabet.arity(node.label) != len(node.children):
            raise ValueError(f"arity mismatch at {list(path)}")
        succ = tuple(rho[path + (i,)] for i in range(len(node.children)))
        if succ not in A.moves(rho[path], node.label):
            return Rejection(f"no transition {(rho[path], node.label, succ)!r}", path)
    out = []
    for path, node in nodes:
        if node.is_var:
            k = min(A.priority[rho[path[:i]]] for i in range(len(path) + 1))
            out.append((node.label, k, rho[path]))
    return RunProfile(rho[()], tuple(out))


def _lower(entries, k):
    return frozenset((j, min(k, kj), p) for j, kj, p in entries)


def enumerate_runs(A: ParityTreeAutomaton, t: Term | Node, q) -> set[RunProfile]:
    """All profiles of partial runs on the finite tree ``t`` from ``q``."""
    root = t.root if isinstance(t, Term) else t
    memo = {}

    def runs(node, state):
        key = (id(node), state)
        if key in memo:
            return memo[key]
        om = A.priority[state]
        if node.is_var:
            res = {frozenset({(node.label, om, state)})}
        else:
            res = set()
            for ps in A.moves(state, node.label):
                options = [runs(c, p) for c, p in zip(node.children, ps)]
                for combo in itertools.product(*options):
                    res.add(_lower(frozenset().union(*combo), om))
        memo[key] = res
        return res

    if root.is_var:
        raise ValueError("root is a variable")
    return {RunProfile(q, tuple(r)) for r in runs(root, q)}


# ---------------------------------------------------------------------------
# acceptance games


def _check_alphabet(A: ParityTreeAutomaton, g: RegularTree):
    bad = validate_regular(g, A.alphabet)
    if bad is not None:
        raise ValueError(f"tree does not fit the automaton: {bad}")


def acceptance_region(A: ParityTreeAutomaton, g: RegularTree,
                      starts: Iterable, accept_from: Mapping[int, Iterable] | None = None):
    """Solve the acceptance game on ``g`` x states.

    Returns the set of ``(node, state)`` pairs (among the positions reachable
    from ``starts``) from which the unravelling below ``node`` is accepted.
    Variable nodes are accepted from the states listed in ``accept_from``.
    """
    accept_from = {j: set(s) for j, s in (accept_from or {}).items()}
    neutral = A.max_priority
    owner, prio, edges = {}, {}, {}
    stack = []
    for n, q in starts:
        v = ("E", n, q)
        if v not in owner:
            owner[v] = EVEN
            stack.append(v)
    while stack:
        v = stack.pop()
        _, n, q = v
        prio[v] = A.priority[q]
        label = g.labels[n]
        if is_var(label):
            # an Odd dead end means Even has already won
            edges[v] = [("W",)] if q in accept_from.get(label, ()) else []
            continue
        out = []
        for ps in A.moves(q, label):
            w = ("O", n, q, ps)
            out.append(w)
            if w not in owner:
                owner[w] = ODD
                prio[w] = neutral
                dirs = []
                for s, p in zip(g.successors[n], ps):
                    x = ("E", s, p)
                    dirs.append(x)
                    if x not in owner:
                        owner[x] = EVEN
                        stack.append(x)
                edges[w] = dirs
        edges[v] = out
    if any(e == [("W",)] for e in edges.values()):
        owner[("W",)] = ODD
        prio[("W",)] = neutral
        edges[("W",)] = []
    sol = solve(ParityGame(owner, prio, edges))
    return {(v[1], v[2]) for v in sol.even_region if v[0] == "E"}


def membership(A: ParityTreeAutomaton, g, accept_from=None) -> bool:
    """Is the unravelling of ``g`` accepted from the initial state?"""
    g = as_regular(g)
    _check_alphabet(A, g)
    if g.arity and accept_from is None:
        has_vars = any(is_var(l) for l in g.labels.values())
        if has_vars:
            raise ValueError("trees with variables need an accept_from map")
    return (g.root, A.initial) in acceptance_region(A, g, [(g.root, A.initial)], accept_from)


def accepted_states(A: ParityTreeAutomaton, g) -> set:
    """States from which the variable-free tree ``g`` is accepted."""
    g = as_regular(g)
    _check_alphabet(A, g)
    win = acceptance_region(A, g, [(g.root, q) for q in A.states])
    return {q for n, q in win if n == g.root}


# ---------------------------------------------------------------------------
# constructions


class _LevelMinRecord:
    """Deterministic memory turning a pair of min-parity streams into one.

    ``x[l]`` holds the least first-stream priority seen since the last step
    whose second-stream priority was at most level ``l``.  Each step emits
    the pair (second priority b, x[b]) ranked lexicographically; the ranking
    is monotone and its parity is even iff both components are even.
    """

    def __init__(self, first_priorities, second_priorities):
        self.levels = list(second_priorities)
        self.level_of = {b: i for i, b in enumerate(self.levels)}
        rank, value = {}, 0
        for b in self.levels:
            for a in first_priorities:
                want = 0 if a % 2 == 0 and b % 2 == 0 else 1
                if value % 2 != want:
                    value += 1
                rank[(b, a)] = value
        self.rank = rank
        self.initial = (None,) * len(self.levels)

    def step(self, mem, a, b):
        x = [a if m is None else min(m, a) for m in mem]
        lb = self.level_of[b]
        emitted = self.rank[(b, x[lb])]
        for l in range(lb, len(x)):
            x[l] = None
        return emitted, tuple(x)


def product(A: ParityTreeAutomaton, B: ParityTreeAutomaton) -> ParityTreeAutomaton:
    """Automaton for the intersection of the two languages."""
    if A.alphabet.symbols != B.alphabet.symbols:
        raise ValueError("alphabet mismatch")
    rec = _LevelMinRecord(A.priorities, B.priorities)
    init = (A.initial, B.initial, rec.initial)
    states, prio, trans = [init], {}, []
    seen, stack = {init}, [init]
    while stack:
        s = stack.pop()
        qa, qb, mem = s
        prio[s], mem2 = rec.step(mem, A.priority[qa], B.priority[qb])
        for a in A.alphabet:
            for pa in A.moves(qa, a):
                for pb in B.moves(qb, a):
                    succ = tuple((x, y, mem2) for x, y in zip(pa, pb))
                    trans.append((s, a, succ))
                    for t in succ:
                        if t not in seen:
                            seen.add(t)
                            states.append(t)
                            stack.append(t)
    return ParityTreeAutomaton(states, A.alphabet, trans, init, prio)


def union(A: ParityTreeAutomaton, B: ParityTreeAutomaton) -> ParityTreeAutomaton:
    if A.alphabet.symbols != B.alphabet.symbols:
        raise ValueError("alphabet mismatch")
    init = ("init",)
    states = [init] + [(0, q) for q in A.states] + [(1, q) for q in B.states]
    prio = {init: 0}
    prio.update({(0, q): p for q, p in A.priority.items()})
    prio.update({(1, q): p for q, p in B.priority.items()})
    trans = []
    for tag, X in ((0, A), (1, B)):
        for q, a, ps in X.transitions:
            succ = tuple((tag, p) for p in ps)
            trans.append(((tag, q), a, succ))
            if q == X.initial:
                trans.append((init, a, succ))
    return ParityTreeAutomaton(states, A.alphabet, trans, init, prio)


def relabel_preimage(A: ParityTreeAutomaton, h: Mapping, sigma: RankedAlphabet) -> ParityTreeAutomaton:
    """Automaton over ``sigma`` accepting t iff A accepts the relabelling of t."""
    for s in sigma:
        if s not in h:
            raise ValueError(f"relabelling undefined on {s!r}")
        if sigma.arity(s) != A.alphabet.arity(h[s]):
            raise ValueError(f"relabelling {s!r} -> {h[s]!r} is not arity preserving")
    trans = [(q, s, ps) for s in sigma for q in A.states for ps in A.moves(q, h[s])]
    return ParityTreeAutomaton(A.states, sigma, trans, A.initial, A.priority)


def relabel_tree(g, h: Mapping) -> RegularTree:
    return as_regular(g).relabel(lambda l: h[l])


def emptiness(A: ParityTreeAutomaton) -> RegularTree | None:
    """``None`` if the language is empty, else an accepted regular tree."""
    neutral = A.max_priority
    owner, prio, edges = {}, {}, {}
    for q in A.states:
        v = ("E", q)
        owner[v], prio[v] = EVEN, A.priority[q]
        edges[v] = []
        for a in A.alphabet:
            for ps in A.moves(q, a):
                w = ("O", q, a, ps)
                owner[w], prio[w] = ODD, neutral
                edges[w] = [("E", p) for p in ps]
                edges[v].append(w)
    sol = solve(ParityGame(owner, prio, edges))
    if ("E", A.initial) not in sol.even_region:
        return None
    strat = sol.strategies[EVEN]
    labels, succ = {}, {}
    stack = [A.initial]
    while stack:
        q = stack.pop()
        nid = f"q{A.states.index(q)}"
        if nid in labels:
            continue
        _, _, a, ps = strat[("E", q)]
        labels[nid] = a
        succ[nid] = tuple(f"q{A.states.index(p)}" for p in ps)
        stack.extend(ps)
    return prune(RegularTree(0, f"q{A.states.index(A.initial)}", labels, succ))


# ---------------------------------------------------------------------------
# language pairs


class InconsistentPair(ValueError):
    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check
        self.detail = detail


@dataclass(frozen=True, eq=False)
class LanguagePair:
    """An automaton for L together with one for its complement."""

    positive: ParityTreeAutomaton
    complement: ParityTreeAutomaton
    arity: int = 0

    @property
    def alphabet(self) -> RankedAlphabet:
        return self.positive.alphabet


def load_language_pair(pos, comp, samples=(), arity: int = 0) -> LanguagePair:
    """Check disjointness and sample completeness, then build the pair."""
    if pos.alphabet.symbols != comp.alphabet.symbols:
        raise InconsistentPair("alphabet", "the automata use different alphabets")
    if arity != 0:
        raise InconsistentPair("arity", "only languages of arity 0 are supported")
    overlap = emptiness(product(pos, comp))
    if overlap is not None:
        raise InconsistentPair("disjointness", f"both automata accept {overlap!r}")
    for i, g in enumerate(samples):
        a, b = membership(pos, g), membership(comp, g)
        if a == b:
            raise InconsistentPair(
                "sample-completeness",
                f"sample {i} is accepted by {'both' if a else 'neither'}")
    return LanguagePair(pos, comp, arity)
