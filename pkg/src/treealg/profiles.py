"""The profile tree algebra of a parity tree automaton.

Elements of arity ``n`` are finite sets of conjunctions (``ProfileSet``).
A conjunction is a frozenset of atoms: ``Branch(p)`` says that some
branch leaving the root in state ``p`` is accepting, ``Var(p, k, q, j)``
says that the path from the root to variable ``x_j`` starts in ``p``,
ends in ``q`` and has minimal priority ``k`` (both endpoints included).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .automata import (
    ParityTreeAutomaton, RunProfile, acceptance_region, enumerate_runs,
)
from .games import EVEN, ODD, ParityGame, solve
from .terms import Node, RegularTree, Term, as_regular, is_var, singleton


# ---------------------------------------------------------------------------
# the omega-semigroup of path segments


@dataclass(frozen=True)
class Fin:
    p: Hashable
    k: int
    q: Hashable


@dataclass(frozen=True)
class Inf:
    p: Hashable


def s_mul(x, y):
    """Product of two semigroup elements; ``None`` when undefined."""
    if isinstance(x, Fin) and isinstance(y, Fin):
        return Fin(x.p, min(x.k, y.k), y.q) if x.q == y.p else None
    if isinstance(x, Fin) and isinstance(y, Inf):
        return Inf(x.p) if x.q == y.p else None
    return None


def s_omega(prefix, loop):
    """Infinite product ``prefix . loop . loop ...``; ``None`` when undefined."""
    loop = list(loop)
    if not loop:
        raise ValueError("loop must be nonempty")
    seq = list(prefix) + loop + loop[:1]
    if any(a.q != b.p for a, b in zip(seq, seq[1:])):
        return None
    # the liminf of the segment minima is the loop minimum
    if min(s.k for s in loop) % 2:
        return None
    return Inf(seq[0].p)


# ---------------------------------------------------------------------------
# atoms, conjunctions, disjunctions


@dataclass(frozen=True)
class Branch:
    p: Hashable

    @property
    def start(self):
        return self.p

    def __repr__(self):
        return f"Branch({self.p!r})"


@dataclass(frozen=True)
class Var:
    p: Hashable
    k: int
    q: Hashable
    j: int

    @property
    def start(self):
        return self.p

    def __repr__(self):
        return f"Var({self.p!r},{self.k},{self.q!r},x{self.j})"


def _sort_key(obj):
    return repr(obj)


def check_partial_profile(conj: frozenset) -> None:
    seen = set()
    for atom in conj:
        if isinstance(atom, Var):
            if atom.j in seen:
                raise ValueError(f"two Var atoms on x{atom.j}")
            seen.add(atom.j)


def normalize(conjunctions: Iterable[frozenset]) -> frozenset:
    """Keep only the minimal atom sets (a superset is subsumed)."""
    cs = sorted(set(frozenset(c) for c in conjunctions), key=len)
    kept: list[frozenset] = []
    for c in cs:
        if not any(k < c for k in kept):
            kept.append(c)
    return frozenset(kept)


class ProfileSet:
    """An antichain of conjunctions; the empty set is bottom."""

    __slots__ = ("disjuncts", "_hash")

    def __init__(self, conjunctions: Iterable = ()):
        cs = [frozenset(c) for c in conjunctions]
        for c in cs:
            check_partial_profile(c)
        self.disjuncts = normalize(cs)
        self._hash = hash(self.disjuncts)

    def __iter__(self):
        return iter(sorted(self.disjuncts, key=lambda c: sorted(map(_sort_key, c))))

    def __len__(self):
        return len(self.disjuncts)

    def __bool__(self):
        return bool(self.disjuncts)

    def __eq__(self, other):
        return isinstance(other, ProfileSet) and self.disjuncts == other.disjuncts

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = " | ".join(
            "{" + ", ".join(sorted(map(repr, c))) + "}" for c in self)
        return f"ProfileSet[{body}]"

    def atoms(self):
        return frozenset().union(*self.disjuncts) if self.disjuncts else frozenset()

    def variables(self) -> set[int]:
        return {a.j for a in self.atoms() if isinstance(a, Var)}

    def rename(self, mapping: Mapping[int, int]) -> "ProfileSet":
        return ProfileSet(
            frozenset(Var(a.p, a.k, a.q, mapping[a.j]) if isinstance(a, Var) else a
                      for a in c)
            for c in self.disjuncts)


BOTTOM = ProfileSet()


# ---------------------------------------------------------------------------
# evaluation of ProfileSet-labelled trees


def _lower(entries, k):
    return frozenset((j, min(k, kj), q) for j, kj, q in entries)


def _check_label(label, n):
    if not isinstance(label, ProfileSet):
        raise TypeError(f"label {label!r} is not a ProfileSet")
    for a in label.atoms():
        if isinstance(a, Var) and not 0 <= a.j < n:
            raise ValueError(f"atom {a!r} does not fit a vertex with {n} successors")


def _combine_root(label, child_options):
    """Assemble the result conjunctions at the root.

    ``child_options(j, q)`` lists ``(has_branch, var_entries)`` pairs for the
    trace entering successor ``j`` in state ``q``, or ``[("var", m)]``-style
    entries when that successor is the outer variable ``x_m``.
    """
    out = []
    for conj in label:
        parts = []
        for atom in sorted(conj, key=_sort_key):
            if isinstance(atom, Branch):
                parts.append([frozenset({atom})])
                continue
            opts = []
            for hb, entries in child_options(atom.j, atom.q):
                res = {Var(atom.p, k, q, m) for m, k, q in _lower(entries, atom.k)}
                if hb:
                    res.add(Branch(atom.p))
                opts.append(frozenset(res))
            parts.append(opts)
        for combo in itertools.product(*parts):
            out.append(frozenset().union(*combo))
    return ProfileSet(out)


def pi_eval(t) -> ProfileSet:
    """Product of a tree labelled by ProfileSets.

    Finite trees are :class:`Term`/:class:`Node` values; infinite ones are
    :class:`RegularTree` graphs.
    """
    if isinstance(t, RegularTree):
        if t.is_acyclic():
            from .terms import to_term
            return pi_eval(to_term(t))
        return _pi_eval_regular(t)
    root = t.root if isinstance(t, Term) else t
    if root.is_var:
        raise ValueError("root is a variable")
    for _, node in root.iter_nodes():
        if not node.is_var:
            _check_label(node.label, len(node.children))
    # only vertices reached by a trace matter; unreached ones may even be bottom
    memo: dict = {}

    def res(node, q):
        key = (id(node), q)
        if key in memo:
            return memo[key]
        out = set()
        for conj in node.label:
            if any(a.start != q for a in conj):
                continue
            hb = any(isinstance(a, Branch) for a in conj)
            parts = [[(hb, frozenset())]]
            for a in conj:
                if isinstance(a, Var):
                    parts.append([(b, _lower(e, a.k)) for b, e in enter(node.children[a.j], a.q)])
            for combo in itertools.product(*parts):
                out.add((any(b for b, _ in combo), frozenset().union(*(e for _, e in combo))))
        memo[key] = out
        return out

    def enter(child, q):
        if child.is_var:
            return [(False, frozenset({(child.label, 10 ** 9, q)}))]
        return res(child, q)

    return _combine_root(root.label, lambda j, q: enter(root.children[j], q))


def _pi_eval_regular(g: RegularTree) -> ProfileSet:
    for n in g.reachable():
        label = g.labels[n]
        if is_var(label):
            continue
        _check_label(label, len(g.successors[n]))
        if frozenset() in label.disjuncts:
            raise ValueError("empty conjunctions are only supported in finite trees")
    spine = g.spine()
    defined = _defined_region(g, [n for n in g.reachable() if n not in spine])
    memo: dict = {}

    def res(n, q):
        key = (n, q)
        if key in memo:
            return memo[key]
        out = set()
        for conj in g.labels[n]:
            if any(a.start != q for a in conj):
                continue
            hb = any(isinstance(a, Branch) for a in conj)
            parts = [[(hb, frozenset())]]
            for a in conj:
                if isinstance(a, Var):
                    parts.append([(b, _lower(e, a.k)) for b, e in enter(g.successors[n][a.j], a.q)])
            for combo in itertools.product(*parts):
                out.add((any(b for b, _ in combo), frozenset().union(*(e for _, e in combo))))
        memo[key] = out
        return out

    def enter(s, q):
        label = g.labels[s]
        if is_var(label):
            return [(False, frozenset({(label, 10 ** 9, q)}))]
        if s not in spine:
            return [(True, frozenset())] if (s, q) in defined else []
        return res(s, q)

    return _combine_root(g.labels[g.root], lambda j, q: enter(g.successors[g.root][j], q))


def _defined_region(g: RegularTree, nodes) -> set:
    """Pairs (node, incoming state) admitting a defined, accepting choice.

    Even picks a conjunction whose atoms all start in the incoming state,
    Odd follows one of its Var atoms; the atom's priority is emitted.
    """
    if not nodes:
        return set()
    ks = [a.k for n in nodes for a in g.labels[n].atoms() if isinstance(a, Var)]
    neutral = max(ks, default=0)
    states = {a.start for n in nodes for a in g.labels[n].atoms()}
    states |= {a.q for n in nodes for a in g.labels[n].atoms() if isinstance(a, Var)}
    owner, prio, edges = {}, {}, {}
    for n in nodes:
        for q in states:
            v = ("E", n, q)
            owner[v], prio[v] = EVEN, neutral
            edges[v] = []
            for conj in g.labels[n]:
                if any(a.start != q for a in conj):
                    continue
                w = ("O", n, conj)
                edges[v].append(w)
                if w in owner:
                    continue
                owner[w], prio[w] = ODD, neutral
                edges[w] = []
                for a in conj:
                    if isinstance(a, Var):
                        x = ("P", n, conj, a)
                        owner[x], prio[x] = EVEN, a.k
                        edges[x] = [("E", g.successors[n][a.j], a.q)]
                        edges[w].append(x)
    sol = solve(ParityGame(owner, prio, edges))
    return {(v[1], v[2]) for v in sol.even_region if v[0] == "E"}


# ---------------------------------------------------------------------------
# the morphism from trees to the profile algebra


def run_conjunction(profile: RunProfile) -> frozenset:
    q = profile.state
    return frozenset({Branch(q)} | {Var(q, k, p, j) for j, k, p in profile.vars})


def phi(A: ParityTreeAutomaton, t) -> ProfileSet:
    """Disjunction over all partial runs on the finite tree ``t``."""
    root = t.root if isinstance(t, Term) else t
    for _, node in root.iter_nodes():
        if not node.is_var:
            if node.label not in A.alphabet:
                raise ValueError(f"symbol {node.label!r} not in the alphabet")
            if A.alphabet.arity(node.label) != len(node.children):
                raise ValueError(f"arity mismatch at {node.label!r}")
    return ProfileSet(run_conjunction(r) for q in A.states for r in enumerate_runs(A, root, q))


def phi_singletons(A: ParityTreeAutomaton) -> dict:
    return {a: phi(A, singleton(A.alphabet, a)) for a in A.alphabet}


def accepts_via_phi(A: ParityTreeAutomaton, e: ProfileSet,
                    accept_from: Mapping[int, Iterable] | None = None) -> bool:
    """Does the element ``e`` lie above an accepting profile from q0?"""
    accept_from = accept_from or {}
    for conj in e:
        if Branch(A.initial) not in conj:
            continue
        if all(a.p == A.initial and a.q in accept_from.get(a.j, ())
               for a in conj if isinstance(a, Var)):
            return True
    return False


def profiles_of_regular(A: ParityTreeAutomaton, g) -> set[RunProfile]:
    """All profiles of partial runs on the unravelling of ``g``.

    Variable paths are unique and finite, so the nodes leading to variables
    form a finite tree; everything hanging off it is variable free and is
    settled by one acceptance game.
    """
    g = as_regular(g)
    spine = g.spine()
    off = [n for n in g.reachable() if n not in spine]
    win = acceptance_region(A, g, [(n, q) for n in off for q in A.states]) if off else set()
    if g.root not in spine:
        return {RunProfile(q) for q in A.states if (g.root, q) in win}
    memo: dict = {}

    def runs(n, q):
        key = (n, q)
        if key in memo:
            return memo[key]
        om = A.priority[q]
        label = g.labels[n]
        if is_var(label):
            res = {frozenset({(label, om, q)})}
        else:
            res = set()
            for ps in A.moves(q, label):
                options = []
                for s, p in zip(g.successors[n], ps):
                    if s in spine:
                        options.append(runs(s, p))
                    else:
                        options.append([frozenset()] if (s, p) in win else [])
                for combo in itertools.product(*options):
                    res.add(_lower(frozenset().union(*combo), om))
        memo[key] = res
        return res

    return {RunProfile(q, tuple(r)) for q in A.states for r in runs(g.root, q)}


def phi_regular(A: ParityTreeAutomaton, g) -> ProfileSet:
    """The algebra value of a regular tree, assembled from its run profiles."""
    return ProfileSet(run_conjunction(r) for r in profiles_of_regular(A, g))


# ---------------------------------------------------------------------------
# transition algebra and rectangularity


def t_meet(x, y):
    """Meet in the transition algebra; ``None`` is bottom."""
    if x is None or y is None:
        return None
    out = frozenset(x) | frozenset(y)
    seen = {}
    for a in out:
        if isinstance(a, Var):
            if a.j in seen:
                return None
            seen[a.j] = a
    return out


def meet(e: ProfileSet, f: ProfileSet) -> ProfileSet:
    """Meet of two disjunctions, distributing over the conjunctions."""
    out = []
    for c in e:
        for d in f:
            m = t_meet(c, d)
            if m is not None:
                out.append(m)
    return ProfileSet(out)


def projections(e: ProfileSet, arity: int) -> list[ProfileSet]:
    parts = [ProfileSet(frozenset(a for a in c if isinstance(a, Branch)) for c in e)]
    for j in range(arity):
        parts.append(ProfileSet(
            frozenset(a for a in c if isinstance(a, Var) and a.j == j) for c in e))
    return parts


def is_rectangular(e: ProfileSet, arity: int) -> bool:
    """Is ``e`` the meet of its branch part and its per-variable parts?"""
    if any(isinstance(a, Var) and a.j >= arity for a in e.atoms()):
        raise ValueError("atom index exceeds the arity")
    acc = ProfileSet([frozenset()])
    for part in projections(e, arity):
        acc = meet(acc, part)
    return acc == e


# ---------------------------------------------------------------------------
# one-level composition and saturation


def compose(root: ProfileSet, children) -> tuple[ProfileSet, int]:
    """Evaluate a depth-one tree.

    ``children`` lists, per successor, either ``None`` (a fresh variable) or
    a pair ``(value, arity)``.  Variables are numbered left to right.
    """
    nodes, off = [], 0
    for ch in children:
        if ch is None:
            nodes.append(Node(off))
            off += 1
        else:
            value, n = ch
            nodes.append(Node(value, tuple(Node(off + i) for i in range(n))))
            off += n
    return pi_eval(Node(root, tuple(nodes))), off


def injections(r: int, n: int):
    """All injective renamings of ``r`` variables into ``n`` slots."""
    for image in itertools.permutations(range(n), r):
        yield dict(enumerate(image))


@dataclass(frozen=True)
class HatElement:
    arity: int
    value: ProfileSet
    profile: frozenset


def hat_generators(A: ParityTreeAutomaton) -> list[HatElement]:
    out = []
    for a, value in phi_singletons(A).items():
        for conj in value:
            out.append(HatElement(A.alphabet.arity(a), value, conj))
    return out


def hat_closure(A: ParityTreeAutomaton, generators: Iterable[HatElement],
                max_arity: int) -> set[HatElement]:
    """Close generator pairs under one-level products up to ``max_arity``."""
    gens = list(generators)
    elems = {g for g in gens if g.arity <= max_arity}
    changed = True
    while changed:
        changed = False
        current = sorted(elems, key=repr)
        for g in gens:
            choices = [None] + current
            for kids in itertools.product(choices, repeat=g.arity):
                r = sum(1 if k is None else k.arity for k in kids)
                if r > max_arity:
                    continue
                first, _ = compose(g.value, [None if k is None else (k.value, k.arity) for k in kids])
                second, _ = compose(ProfileSet([g.profile]),
                                    [None if k is None else (ProfileSet([k.profile]), k.arity)
                                     for k in kids])
                if not second:
                    continue
                (prof,) = second.disjuncts
                for n in range(r, max_arity + 1):
                    for inj in injections(r, n):
                        h = HatElement(n, first.rename(inj),
                                       next(iter(ProfileSet([prof]).rename(inj).disjuncts)))
                        if h not in elems:
                            elems.add(h)
                            changed = True
    return elems
