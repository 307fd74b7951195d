"""Factorizations, reduced trees and evaluation through low-arity factors.

A factorization of a finite term ``t`` is an outer term whose labels are
terms (the factors) and which flattens back to ``t``.  Only factorizations
in which every branching outer vertex holds a singleton are considered.

Counting convention: pieces are measured by their symbol vertices.  A
variable leaf of ``t`` is not a vertex of its own; it is an outer attachment
point and contributes one to the arity of the factor containing it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator

from .terms import Node, Term, flatten

__all__ = [
    "Piece", "Factorization", "MissingEntry", "pieces", "nontrivial_piece",
    "is_reduced", "reduce", "factorizations", "table_evaluator",
    "decide_low_arity", "precompute_H",
]


class MissingEntry(KeyError):
    """An evaluation table lacks a factor that the search needs."""


@dataclass(frozen=True)
class Piece:
    root: tuple
    cut: tuple | None
    size: int           # symbol vertices
    arity: int

    @property
    def trivial(self) -> bool:
        return self.size < 2


def _counts(node: Node, path=(), out=None):
    """Symbol-vertex and variable counts of every subtree, keyed by path."""
    out = {} if out is None else out
    if node.is_var:
        out[path] = (0, 1)
        return out
    n, v = 1, 0
    for i, c in enumerate(node.children):
        _counts(c, path + (i,), out)
        cn, cv = out[path + (i,)]
        n, v = n + cn, v + cv
    out[path] = (n, v)
    return out


def _root(t) -> Node:
    return t.root if isinstance(t, Term) else t


def pieces(t, max_arity: int = 1) -> Iterator[Piece]:
    """All pieces of arity at most ``max_arity`` (at most one cut)."""
    root = _root(t)
    counts = _counts(root)
    paths = [p for p, n in root.iter_nodes() if not n.is_var]
    for v in paths:
        nv, xv = counts[v]
        if xv <= max_arity:
            yield Piece(v, None, nv, xv)
        for w in paths:
            if len(w) <= len(v) or w[:len(v)] != v:
                continue
            nw, xw = counts[w]
            ar = 1 + xv - xw
            if ar <= max_arity:
                yield Piece(v, w, nv - nw, ar)


def nontrivial_piece(t) -> Piece | None:
    """A largest non-trivial piece of arity at most one, or None."""
    best = None
    for p in pieces(t):
        if not p.trivial and (best is None or p.size > best.size):
            best = p
    return best


def is_reduced(t) -> bool:
    """No factor with two or more vertices has arity at most one."""
    return nontrivial_piece(t) is None


def _replace(node: Node, path, new: Node) -> Node:
    if not path:
        return new
    i = path[0]
    kids = list(node.children)
    kids[i] = _replace(kids[i], path[1:], new)
    return Node(node.label, tuple(kids))


def _cut_out(node: Node, piece: Piece):
    """Split ``node`` at ``piece``: the piece with its exit renamed to x0,
    and the outer successors (the cut subtree or the contained variable)."""
    sub = node.subtree(piece.root)
    if piece.cut is not None:
        rel = piece.cut[len(piece.root):]
        return _replace(sub, rel, Node(0)), (sub.subtree(rel),)
    vs = sub.variables()
    if vs:
        return sub.rename_vars({vs[0]: 0}), (Node(vs[0]),)
    return sub, ()


@dataclass(frozen=True)
class Factorization:
    outer: Term                     # labels are factor Terms
    evaluated: Term | None = None   # labels replaced by their values

    @property
    def height(self) -> int:
        return self.outer.height()

    def flatten(self) -> Term:
        return flatten(self.outer)

    def factors(self) -> list[Term]:
        return [n.label for _, n in self.outer.root.iter_nodes() if not n.is_var]

    def in_F(self) -> bool:
        """Branching outer vertices hold singletons."""
        for _, n in self.outer.root.iter_nodes():
            if not n.is_var and len(n.children) > 1 and n.label.size() - n.label.arity != 1:
                return False
        return True


def _singletons(t: Term) -> Node:
    def go(node):
        if node.is_var:
            return node
        n = len(node.children)
        f = Term(n, Node(node.label, tuple(Node(i) for i in range(n))))
        return Node(f, tuple(go(c) for c in node.children))
    return go(t.root)


def _evaluate(outer: Term, evaluate) -> Term:
    def f(factor):
        try:
            return evaluate(factor)
        except KeyError as e:
            raise MissingEntry(str(factor)) from e
    return Term(outer.arity, outer.root.map_labels(f))


def reduce(t: Term, evaluate: Callable | None = None) -> Factorization:
    """A reduced factorization of ``t``, built by greedy collapsing.

    Starting from the all-singleton factorization, a largest non-trivial
    piece of arity at most one is merged into a single factor until none
    remains.  Every step removes an outer vertex, so this terminates.
    """
    if t.root.is_var:
        raise ValueError("root is a variable")
    outer = _singletons(t)
    while True:
        piece = nontrivial_piece(outer)
        if piece is None:
            break
        inner, succ = _cut_out(outer, piece)
        factor = flatten(Term(len(succ), inner))
        outer = _replace(outer, piece.root, Node(factor, succ))
    T = Term(t.arity, outer)
    return Factorization(T, _evaluate(T, evaluate) if evaluate else None)


def factorizations(t: Term, max_height: int | None = None) -> Iterator[Term]:
    """Enumerate the factorizations in F(t), optionally bounded in height."""

    def gen(node: Node, budget):
        if node.is_var:
            yield node
            return
        deeper = budget is None or budget >= 1
        sub = None if budget is None else budget - 1
        n = len(node.children)
        if deeper or not n:
            single = Term(n, Node(node.label, tuple(Node(i) for i in range(n))))
            kids = [list(gen(c, sub)) for c in node.children]
            for combo in itertools.product(*kids):
                yield Node(single, combo)
        for p in pieces(node):
            if p.trivial or p.root:
                continue
            inner, succ = _cut_out(node, p)
            factor = Term(len(succ), inner)
            if not succ:
                yield Node(factor)
            elif deeper:
                for c in gen(succ[0], sub):
                    yield Node(factor, (c,))

    for outer in gen(t.root, max_height):
        yield Term(t.arity, outer)


def table_evaluator(entries) -> Callable[[Term], str]:
    """Turn ``{term or term-string: label}`` into an evaluation function."""
    table = {str(k): v for k, v in dict(entries).items()}

    def evaluate(factor: Term):
        key = str(factor)
        if key not in table:
            raise MissingEntry(key)
        return table[key]
    return evaluate


def _in_H(H, label, s: Term) -> bool:
    if callable(H):
        return bool(H(label, s))
    trees = H.get(label)
    if not trees:
        return False
    return str(s) in {str(x) for x in trees}


def decide_low_arity(t: Term, a, tables, H) -> bool:
    """Does ``t`` evaluate to ``a``, judged only through low-arity factors?

    ``tables`` evaluates factors (a mapping or a callable); ``H`` maps each
    label to the evaluated trees of height at most 2m with product ``a``, or
    is a predicate ``H(label, tree)``.  The answer is true iff some bounded
    factorization in F(t) evaluates into ``H(a)``.
    """
    evaluate = tables if callable(tables) else table_evaluator(tables)
    if not callable(H) and not H.get(a):
        return False
    bound = 2 * t.arity
    first = reduce(t, evaluate)
    if first.height <= bound and _in_H(H, a, first.evaluated):
        return True
    for outer in factorizations(t, bound):
        if _in_H(H, a, _evaluate(outer, evaluate)):
            return True
    return False


def precompute_H(labels, m: int, product: Callable[[Term], object]) -> dict:
    """Group all label trees of arity ``m`` and height <= 2m by product.

    ``labels`` is a ranked alphabet of evaluated labels and ``product``
    multiplies out a tree over them.
    """
    from .oracles import oracle_enumerate_terms

    H: dict = {}
    for s in oracle_enumerate_terms(labels, m, 2 * m):
        H.setdefault(product(s), []).append(s)
    return H
