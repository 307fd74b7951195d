"""Syntactic congruence, syntactic algebras and commutativity.

Algebra elements are handled through witnesses: a regular tree over the
input alphabet together with its value in the profile algebra of the
positive automaton.  Two elements are separated iff some context (a tree
with a hole, possibly repeated or absent) puts one of them into the
language and the other into its complement; that search is an emptiness
question for an automaton reading contexts.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .automata import (
    LanguagePair, ParityTreeAutomaton, emptiness, membership, product, union,
)
from .profiles import (
    ProfileSet, compose, injections, phi, phi_regular, profiles_of_regular,
)
from .terms import (
    HOLE, Context, RegularTree, Term, as_regular, is_var, permute_root, prune,
    singleton,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    arity: int
    value: ProfileSet
    witness: RegularTree

    @property
    def key(self):
        return (self.arity, self.value)

    def __repr__(self):
        return f"AlgebraElement(arity={self.arity}, witness={self.witness!r})"


def element_of(L: LanguagePair, t) -> AlgebraElement:
    """Wrap a term or regular tree as an algebra element."""
    g = as_regular(t)
    if g.is_acyclic() and isinstance(t, Term):
        value = phi(L.positive, t)
    else:
        value = phi_regular(L.positive, g)
    return AlgebraElement(g.arity, value, g)


# ---------------------------------------------------------------------------
# witnesses


def _glue(symbol, children) -> RegularTree:
    """Witness for ``symbol(children...)``; ``None`` children are variables."""
    labels, succ = {"r": symbol}, {}
    root_succ, off = [], 0
    for i, ch in enumerate(children):
        if ch is None:
            labels[f"v{i}"] = off
            succ[f"v{i}"] = ()
            root_succ.append(f"v{i}")
            off += 1
            continue
        w = ch.witness
        for n, l in w.labels.items():
            labels[f"{i}.{n}"] = l + off if is_var(l) else l
            succ[f"{i}.{n}"] = tuple(f"{i}.{s}" for s in w.successors[n])
        root_succ.append(f"{i}.{w.root}")
        off += ch.arity
    succ["r"] = tuple(root_succ)
    return prune(RegularTree(off, "r", labels, succ))


def _rename_witness(w: RegularTree, arity: int, mapping) -> RegularTree:
    return RegularTree(arity, w.root,
                       {n: mapping[l] if is_var(l) else l for n, l in w.labels.items()},
                       w.successors)


def _loop(w: RegularTree) -> RegularTree | None:
    """Redirect every variable of ``w`` back to its root."""
    var_nodes = {n for n, l in w.labels.items() if is_var(l)}
    if not var_nodes:
        return None
    labels = {n: l for n, l in w.labels.items() if n not in var_nodes}
    succ = {n: tuple(w.root if s in var_nodes else s for s in w.successors[n])
            for n in labels}
    return prune(RegularTree(0, w.root, labels, succ))


# ---------------------------------------------------------------------------
# saturation


def _order(e: AlgebraElement):
    return (e.arity, len(e.witness), repr(e.witness))


def saturation_rounds(L: LanguagePair, max_arity: int, loops: bool = True):
    """Yield the element dictionary (keyed by ``(arity, value)``) per round.

    Round 0 holds the generators; each further round closes under one-level
    compositions, variable renamings and (with ``loops``) the operation that
    ties all variables of an element back to its root.
    """
    A = L.positive
    alphabet = A.alphabet
    gens = []
    for a in sorted(alphabet, key=repr):
        t = singleton(alphabet, a)
        gens.append((a, AlgebraElement(t.arity, phi(A, t), as_regular(t))))
    elems: dict = {}

    def add(e):
        if e.arity > max_arity:
            return False
        old = elems.get(e.key)
        if old is None or _order(e) < _order(old):
            elems[e.key] = e
            return old is None
        return False

    def add_renamed(value, arity, witness):
        new = False
        for n in range(arity, max_arity + 1):
            for inj in injections(arity, n):
                new |= add(AlgebraElement(n, value.rename(inj), _rename_witness(witness, n, inj)))
        return new

    for _, g in gens:
        if g.arity <= max_arity:
            add_renamed(g.value, g.arity, g.witness)
    yield dict(elems)
    looped: set = set()
    changed = True
    while changed:
        changed = False
        current = sorted(elems.values(), key=_order)
        for a, g in gens:
            for kids in itertools.product([None] + current, repeat=g.arity):
                r = sum(1 if k is None else k.arity for k in kids)
                if r > max_arity:
                    continue
                value, _ = compose(g.value, [None if k is None else (k.value, k.arity)
                                             for k in kids])
                changed |= add_renamed(value, r, _glue(a, kids))
        if loops:
            for e in current:
                if e.key in looped:
                    continue
                looped.add(e.key)
                w = _loop(e.witness)
                if w is not None:
                    changed |= add_renamed(phi_regular(A, w), 0, w)
        yield dict(elems)


def reachable_elements(L: LanguagePair, max_arity: int, loops: bool = True) -> list[AlgebraElement]:
    *_, last = saturation_rounds(L, max_arity, loops)
    return sorted(last.values(), key=_order)


# ---------------------------------------------------------------------------
# the context automaton


def _hole_automaton(A: ParityTreeAutomaton, profiles, hole_arity: int) -> ParityTreeAutomaton:
    """Run ``A`` on ``s[u]`` while reading the context ``s``.

    At a hole in state p the automaton guesses a run profile of ``u`` rooted
    at p.  The successor reached through ``x_j`` gets a pending state that
    carries the minimal priority along the path inside ``u``; successors
    whose variable does not occur in ``u`` are cut off and accept anything.
    """
    alphabet = A.alphabet.with_hole(hole_arity)
    top = ("top",)
    pending = {(p, k) for r in profiles for _, k, p in r.vars}
    states = [("q", q) for q in A.states] + [("k", p, k) for p, k in sorted(pending, key=repr)] + [top]
    prio = {("q", q): A.priority[q] for q in A.states}
    prio.update({("k", p, k): k for p, k in pending})
    prio[top] = 0
    trans = [(top, a, (top,) * n) for a, n in alphabet.symbols.items()]
    by_root: dict = {}
    for r in profiles:
        by_root.setdefault(r.state, []).append(r)
    for s in states:
        if s == top:
            continue
        q = s[1]
        for a in A.alphabet:
            for ps in A.moves(q, a):
                trans.append((s, a, tuple(("q", p) for p in ps)))
        for r in by_root.get(q, ()):
            data = {j: (k, p) for j, k, p in r.vars}
            succ = tuple(("k", data[j][1], data[j][0]) if j in data else top
                         for j in range(hole_arity))
            trans.append((s, HOLE, succ))
    return ParityTreeAutomaton(states, alphabet, trans, ("q", A.initial), prio)


class _ProfileCache:
    def __init__(self):
        self.cache: dict = {}

    def __call__(self, A, w):
        key = (id(A), id(w))
        if key not in self.cache:
            self.cache[key] = (A, w, profiles_of_regular(A, w))
        return self.cache[key][2]


def context_automaton(L: LanguagePair, u: AlgebraElement, v: AlgebraElement,
                      profiles=None) -> ParityTreeAutomaton:
    """Automaton accepting exactly the contexts separating ``u`` and ``v``."""
    if u.arity != v.arity:
        raise ValueError(f"arity mismatch: {u.arity} vs {v.arity}")
    profiles = profiles or _ProfileCache()
    m = u.arity
    P, C = L.positive, L.complement

    def half(x, y):
        return product(_hole_automaton(P, profiles(P, x.witness), m),
                       _hole_automaton(C, profiles(C, y.witness), m))

    return union(half(u, v), half(v, u))


def separating_context(L: LanguagePair, u: AlgebraElement, v: AlgebraElement,
                       profiles=None) -> Context | None:
    w = emptiness(context_automaton(L, u, v, profiles))
    return None if w is None else Context(w, u.arity)


def synt_equiv(L: LanguagePair, u: AlgebraElement, v: AlgebraElement, profiles=None) -> bool:
    """Are ``u`` and ``v`` syntactically equivalent for ``L``?"""
    return separating_context(L, u, v, profiles) is None


# ---------------------------------------------------------------------------
# syntactic algebra


@dataclass
class SyntacticClass:
    id: str
    arity: int
    representative: AlgebraElement
    members: list = field(default_factory=list)
    accepting: bool | None = None


@dataclass
class SyntacticAlgebra:
    language: LanguagePair
    max_arity: int
    classes: dict            # arity -> list[SyntacticClass]
    index: dict              # (arity, value) -> class id
    table: list              # (root symbol, arg class ids, result class id)
    profiles: _ProfileCache = field(default_factory=_ProfileCache, repr=False)

    def by_id(self, cid) -> SyntacticClass:
        for cs in self.classes.values():
            for c in cs:
                if c.id == cid:
                    return c
        raise KeyError(cid)

    def class_count(self, arity: int) -> int:
        return len(self.classes.get(arity, []))

    def accepting_ids(self) -> set:
        return {c.id for c in self.classes.get(self.language.arity, []) if c.accepting}

    def classify(self, e: AlgebraElement) -> SyntacticClass:
        cid = self.index.get(e.key)
        if cid is not None:
            return self.by_id(cid)
        log.debug("value of %r not saturated; falling back to pairwise tests", e)
        for c in self.classes.get(e.arity, []):
            if synt_equiv(self.language, e, c.representative, self.profiles):
                self.index[e.key] = c.id
                return c
        raise RuntimeError(f"element {e!r} matches no class of arity {e.arity}")


def syntactic_algebra(L: LanguagePair, max_arity: int, loops: bool = True,
                      with_table: bool = True) -> SyntacticAlgebra:
    profiles = _ProfileCache()
    elems = reachable_elements(L, max_arity, loops)
    classes: dict = {}
    index: dict = {}
    for e in elems:
        bucket = classes.setdefault(e.arity, [])
        for c in bucket:
            if synt_equiv(L, e, c.representative, profiles):
                c.members.append(e)
                index[e.key] = c.id
                break
        else:
            c = SyntacticClass(f"{e.arity}.{len(bucket)}", e.arity, e, [e])
            bucket.append(c)
            index[e.key] = c.id
    for c in classes.get(L.arity, []):
        c.accepting = membership(L.positive, c.representative.witness)
    S = SyntacticAlgebra(L, max_arity, classes, index, [], profiles)
    if with_table:
        S.table = composition_table(S)
    return S


def compose_elements(L: LanguagePair, symbol, args) -> AlgebraElement:
    """The element ``symbol(args...)`` with variables numbered left to right."""
    A = L.positive
    root = phi(A, singleton(A.alphabet, symbol))
    value, r = compose(root, [None if a is None else (a.value, a.arity) for a in args])
    return AlgebraElement(r, value, _glue(symbol, args))


def composition_table(S: SyntacticAlgebra) -> list:
    L = S.language
    reps = [c for n in sorted(S.classes) for c in S.classes[n]]
    table = []
    for a in sorted(L.alphabet, key=repr):
        m = L.alphabet.arity(a)
        for args in itertools.product(reps, repeat=m):
            if sum(c.arity for c in args) > S.max_arity:
                continue
            e = compose_elements(L, a, [c.representative for c in args])
            table.append((a, tuple(c.id for c in args), S.classify(e).id))
    return table


# ---------------------------------------------------------------------------
# commutativity and recognition


@dataclass(frozen=True)
class CommutativityVerdict:
    commutative: bool
    symbol: object = None
    permutation: tuple | None = None
    context: Context | None = None

    def __bool__(self):
        return self.commutative


def is_commutative(L: LanguagePair, S: SyntacticAlgebra | None = None) -> CommutativityVerdict:
    """Check ``a(x_0..x_m-1) = a(x_sigma(0)..)`` for every generator ``a``."""
    profiles = S.profiles if S is not None else _ProfileCache()
    alphabet = L.alphabet
    for a in sorted(alphabet, key=repr):
        m = alphabet.arity(a)
        base = element_of(L, singleton(alphabet, a))
        for sigma in itertools.permutations(range(m)):
            if sigma == tuple(range(m)):
                continue
            other = element_of(L, permute_root(alphabet, a, sigma))
            sep = separating_context(L, base, other, profiles)
            if sep is not None:
                return CommutativityVerdict(False, a, sigma, sep)
    return CommutativityVerdict(True)


def recognizes(L: LanguagePair, S: SyntacticAlgebra, t) -> bool:
    """Decide membership of ``t`` through its syntactic class."""
    e = element_of(L, t)
    if e.arity != L.arity:
        raise ValueError(f"tree has arity {e.arity}, language arity is {L.arity}")
    c = S.classify(e)
    return bool(c.accepting)
