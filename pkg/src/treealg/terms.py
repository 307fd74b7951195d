"""Ranked alphabets, finite terms, contexts and regular trees.

Finite trees are immutable :class:`Node` structures.  A node label is
either a symbol (any hashable object other than ``int``) or an ``int``,
which denotes the variable ``x_i``.  Infinite trees only ever exist as
:class:`RegularTree` graphs.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterator, Mapping

HOLE = "HOLE"
CUT = "#cut"


def is_var(label: Any) -> bool:
    return isinstance(label, int) and not isinstance(label, bool)


@dataclass(frozen=True)
class RankedAlphabet:
    symbols: Mapping[Hashable, int]

    def __post_init__(self):
        for name, arity in self.symbols.items():
            if is_var(name):
                raise ValueError(f"symbol name {name!r} clashes with variables")
            if not isinstance(arity, int) or arity < 0:
                raise ValueError(f"bad arity {arity!r} for {name!r}")
        object.__setattr__(self, "symbols", dict(self.symbols))

    def __hash__(self):
        return hash(tuple(sorted(self.symbols.items(), key=repr)))

    def __contains__(self, name):
        return name in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def arity(self, name) -> int:
        try:
            return self.symbols[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def with_hole(self, hole_arity: int) -> "RankedAlphabet":
        return RankedAlphabet({**self.symbols, HOLE: hole_arity})


@dataclass(frozen=True)
class Node:
    label: Any
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def is_var(self) -> bool:
        return is_var(self.label)

    def __str__(self):
        head = f"x{self.label}" if self.is_var else str(self.label)
        if not self.children:
            return head
        return f"{head}({', '.join(str(c) for c in self.children)})"

    def iter_nodes(self, path=()) -> Iterator[tuple[tuple, "Node"]]:
        """Pre-order walk yielding ``(path, node)`` pairs."""
        yield path, self
        for i, child in enumerate(self.children):
            yield from child.iter_nodes(path + (i,))

    def height(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.height() for c in self.children)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def variables(self) -> list[int]:
        return [n.label for _, n in self.iter_nodes() if n.is_var]

    def subtree(self, path) -> "Node":
        node = self
        for i in path:
            node = node.children[i]
        return node

    def map_labels(self, f) -> "Node":
        if self.is_var:
            return self
        return Node(f(self.label), tuple(c.map_labels(f) for c in self.children))

    def rename_vars(self, mapping) -> "Node":
        if self.is_var:
            return Node(mapping[self.label])
        return Node(self.label, tuple(c.rename_vars(mapping) for c in self.children))


def var(i: int) -> Node:
    return Node(i)


def sym(label, *children: Node) -> Node:
    return Node(label, children)


@dataclass(frozen=True)
class Term:
    arity: int
    root: Node

    def __str__(self):
        return str(self.root)

    def height(self) -> int:
        return self.root.height()

    def size(self) -> int:
        return self.root.size()

    def variables(self) -> list[int]:
        return self.root.variables()


@dataclass(frozen=True)
class Violation:
    message: str
    node: tuple = ()

    def __str__(self):
        return f"{self.message} at {list(self.node)}"


def validate_term(t: Term, alphabet: RankedAlphabet | None = None) -> Violation | None:
    """Return ``None`` if ``t`` is well formed, else the first violation."""
    if t.root.is_var:
        return Violation("root is a variable", ())
    seen: dict[int, tuple] = {}
    for path, node in t.root.iter_nodes():
        if node.is_var:
            if node.children:
                return Violation("variable with children", path)
            if not 0 <= node.label < t.arity:
                return Violation(f"variable x{node.label} out of range", path)
            if node.label in seen:
                return Violation(f"variable occurs twice: x{node.label}", path)
            seen[node.label] = path
        elif alphabet is not None:
            if node.label not in alphabet:
                return Violation(f"unknown symbol {node.label!r}", path)
            if alphabet.arity(node.label) != len(node.children):
                return Violation(f"arity mismatch for {node.label!r}", path)
    return None


def singleton(alphabet: RankedAlphabet, a) -> Term:
    n = alphabet.arity(a)
    return Term(n, Node(a, tuple(Node(i) for i in range(n))))


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|([^\s(),]+))")


def parse_term(text: str, arity: int | None = None) -> Term:
    """Parse term notation such as ``"a(x3, c)"``.

    Identifiers ``x<digits>`` are variables; everything else is a symbol.
    The arity defaults to one more than the largest variable index.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {pos}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    it = iter(tokens + [None])
    look = [next(it)]

    def advance():
        tok = look[0]
        look[0] = next(it)
        return tok

    def node():
        tok = advance()
        if tok in (None, "(", ")", ","):
            raise ValueError(f"unexpected {tok!r} in {text!r}")
        if re.fullmatch(r"x\d+", tok):
            return Node(int(tok[1:]))
        children = []
        if look[0] == "(":
            advance()
            children.append(node())
            while look[0] == ",":
                advance()
                children.append(node())
            if advance() != ")":
                raise ValueError(f"missing ')' in {text!r}")
        return Node(tok, tuple(children))

    root = node()
    if look[0] is not None:
        raise ValueError(f"trailing input in {text!r}")
    vs = root.variables()
    if arity is None:
        arity = max(vs) + 1 if vs else 0
    return Term(arity, root)


def flatten(T: Term) -> Term:
    """Flatten a tree whose labels are terms into a single term."""

    def go(outer: Node) -> Node:
        if outer.is_var:
            return outer
        factor = outer.label
        if not isinstance(factor, Term):
            raise TypeError(f"factor {factor!r} is not a Term")
        if factor.arity != len(outer.children):
            raise ValueError(
                f"factor {factor} has arity {factor.arity} but its vertex has "
                f"{len(outer.children)} successors")
        args = [go(c) for c in outer.children]
        return splice(factor.root, args)

    return Term(T.arity, go(T.root))


def splice(node: Node, args) -> Node:
    """Replace each variable ``x_i`` in ``node`` by ``args[i]``."""
    if node.is_var:
        return args[node.label]
    return Node(node.label, tuple(splice(c, args) for c in node.children))


def sing_factorization(t: Term) -> Term:
    """The one-vertex factorization of ``t``."""
    return Term(t.arity, Node(t, tuple(Node(i) for i in range(t.arity))))


# ---------------------------------------------------------------------------
# regular trees


@dataclass(frozen=True, eq=False)
class RegularTree:
    """A finite pointed graph standing for its (possibly infinite) unravelling.

    ``labels[n]`` is a symbol or a variable index, ``successors[n]`` the
    ordered tuple of successor ids.  Equality of the represented trees is
    :func:`bisimilar`, not object equality.
    """

    arity: int
    root: str
    labels: Mapping[str, Any]
    successors: Mapping[str, tuple]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(self, "successors",
                           {k: tuple(v) for k, v in self.successors.items()})
        if set(self.labels) != set(self.successors):
            raise ValueError("labels and successors must share node ids")
        if self.root not in self.labels:
            raise ValueError(f"root {self.root!r} is not a node")

    @property
    def nodes(self):
        return list(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        body = "; ".join(
            f"{n}:{'x%d' % l if is_var(l) else l}{list(self.successors[n])}"
            for n, l in self.labels.items())
        return f"RegularTree(arity={self.arity}, root={self.root}, {{{body}}})"

    def reachable(self) -> list[str]:
        order, seen, stack = [], {self.root}, [self.root]
        while stack:
            n = stack.pop()
            order.append(n)
            for s in self.successors[n]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        return order

    def spine(self) -> frozenset:
        """Nodes lying on some root path to a variable node."""
        if "spine" not in self._cache:
            preds: dict[str, set] = {n: set() for n in self.labels}
            for n, ss in self.successors.items():
                for s in ss:
                    preds[s].add(n)
            marked = {n for n, l in self.labels.items() if is_var(l)}
            stack = list(marked)
            while stack:
                n = stack.pop()
                for p in preds[n]:
                    if p not in marked:
                        marked.add(p)
                        stack.append(p)
            self._cache["spine"] = frozenset(marked)
        return self._cache["spine"]

    def is_acyclic(self) -> bool:
        state: dict[str, int] = {}

        def visit(n):
            state[n] = 1
            for s in self.successors[n]:
                st = state.get(s)
                if st == 1 or (st is None and not visit(s)):
                    return False
            state[n] = 2
            return True

        return visit(self.root)

    def relabel(self, f) -> "RegularTree":
        return RegularTree(
            self.arity, self.root,
            {n: (l if is_var(l) else f(l)) for n, l in self.labels.items()},
            self.successors)

    def height(self) -> int:
        if not self.is_acyclic():
            raise ValueError("cyclic graph has no finite height")
        memo: dict[str, int] = {}

        def h(n):
            if n not in memo:
                ss = self.successors[n]
                memo[n] = 0 if not ss else 1 + max(h(s) for s in ss)
            return memo[n]

        return h(self.root)


def validate_regular(g: RegularTree, alphabet: RankedAlphabet | None = None) -> Violation | None:
    if is_var(g.labels[g.root]):
        return Violation("root is a variable", (g.root,))
    reach = set(g.reachable())
    for n in g.labels:
        if n not in reach:
            return Violation("node unreachable from the root", (n,))
        label, succ = g.labels[n], g.successors[n]
        if is_var(label):
            if succ:
                return Violation("variable with successors", (n,))
            if not 0 <= label < g.arity:
                return Violation(f"variable x{label} out of range", (n,))
        elif alphabet is not None:
            if label not in alphabet:
                return Violation(f"unknown symbol {label!r}", (n,))
            if alphabet.arity(label) != len(succ):
                return Violation(f"arity mismatch for {label!r}", (n,))
        for s in succ:
            if s not in g.labels:
                return Violation(f"dangling successor {s!r}", (n,))
    # every variable index must have exactly one root path in the unravelling
    spine = g.spine()
    sub = {n: [s for s in g.successors[n] if s in spine] for n in spine}
    paths: dict[str, int] = {}
    state: dict[str, int] = {}

    def count(n):  # number of root paths ending at n, inf on cycles
        if state.get(n) == 1:
            return float("inf")
        if n in paths:
            return paths[n]
        state[n] = 1
        total = 1 if n == g.root else 0
        for p in preds.get(n, ()):
            total += count(p)
        state[n] = 2
        paths[n] = total
        return total

    preds: dict[str, list] = {}
    for n, ss in sub.items():
        for s in ss:
            preds.setdefault(s, []).append(n)
    occurrences: dict[int, float] = {}
    for n in spine:
        if is_var(g.labels[n]):
            occurrences[g.labels[n]] = occurrences.get(g.labels[n], 0) + count(n)
    for j, c in occurrences.items():
        if c != 1:
            return Violation(f"variable occurs {'infinitely often' if c == float('inf') else 'twice'}: x{j}")
    return None


def from_term(t: Term | Node, arity: int | None = None) -> RegularTree:
    """Encode a finite term as a tree-shaped graph (ids in pre-order)."""
    if isinstance(t, Term):
        arity, root = t.arity, t.root
    else:
        root = t
        if arity is None:
            vs = root.variables()
            arity = max(vs) + 1 if vs else 0
    labels, succ = {}, {}
    counter = itertools.count()

    def add(node):
        nid = f"n{next(counter)}"
        labels[nid] = node.label
        succ[nid] = ()
        succ[nid] = tuple(add(c) for c in node.children)
        return nid

    r = add(root)
    return RegularTree(arity, r, labels, succ)


def to_term(g: RegularTree) -> Term:
    if not g.is_acyclic():
        raise ValueError("cyclic graph does not unravel to a finite term")

    def build(n):
        return Node(g.labels[n], tuple(build(s) for s in g.successors[n]))

    return Term(g.arity, build(g.root))


def as_regular(t) -> RegularTree:
    return t if isinstance(t, RegularTree) else from_term(t)


def prune(g: RegularTree) -> RegularTree:
    """Drop unreachable nodes and renumber ids canonically (BFS order)."""
    order, index = [], {}
    queue = [g.root]
    index[g.root] = 0
    while queue:
        n = queue.pop(0)
        order.append(n)
        for s in g.successors[n]:
            if s not in index:
                index[s] = len(index)
                queue.append(s)
    name = {n: f"n{i}" for n, i in index.items()}
    return RegularTree(
        g.arity, name[g.root],
        {name[n]: g.labels[n] for n in order},
        {name[n]: tuple(name[s] for s in g.successors[n]) for n in order})


def unravel(g: RegularTree, depth: int) -> Node:
    """The depth-``depth`` prefix of the unravelling.

    Inner nodes at the cut depth become :data:`CUT` leaves; leaves at the cut
    depth are kept, so an acyclic graph of height ``h`` is reproduced exactly
    for ``depth >= h``.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")

    def go(n, d):
        succ = g.successors[n]
        if d == depth and succ:
            return Node(CUT)
        return Node(g.labels[n], tuple(go(s, d + 1) for s in succ))

    return go(g.root, 0)


def truncate(node: Node, depth: int) -> Node:
    """Same truncation as :func:`unravel`, applied to a finite tree."""
    if depth == 0 and node.children:
        return Node(CUT)
    return Node(node.label, tuple(truncate(c, depth - 1) for c in node.children))


# ---------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class Context:
    """A tree over ``alphabet + HOLE``; the hole has a fixed arity."""

    tree: RegularTree
    hole_arity: int

    @classmethod
    def from_term(cls, t: Term, hole_arity: int) -> "Context":
        return cls(from_term(t), hole_arity)

    def hole_count(self) -> int:
        return sum(1 for n in self.tree.reachable() if self.tree.labels[n] == HOLE)


def substitute_hole(c: Context, u: RegularTree | Term) -> RegularTree:
    """Glue one copy of ``u`` into every hole of ``c``."""
    u = as_regular(u)
    if u.arity != c.hole_arity:
        raise ValueError(f"hole arity {c.hole_arity} but tree arity {u.arity}")
    g = c.tree
    holes = [n for n in g.labels if g.labels[n] == HOLE]
    for h in holes:
        if len(g.successors[h]) != c.hole_arity:
            raise ValueError(f"hole node {h!r} has {len(g.successors[h])} successors")
    u_vars = {n: l for n, l in u.labels.items() if is_var(l)}

    def target(n):
        """Id a context edge into ``n`` should point to."""
        return f"{n}/{u.root}" if g.labels[n] == HOLE else f"c:{n}"

    labels, succ = {}, {}
    for n, l in g.labels.items():
        if l == HOLE:
            continue
        labels[f"c:{n}"] = l
        succ[f"c:{n}"] = tuple(target(s) for s in g.successors[n])
    for h in holes:
        hs = g.successors[h]
        for un, ul in u.labels.items():
            if un in u_vars:
                continue
            nid = f"{h}/{un}"
            labels[nid] = ul
            succ[nid] = tuple(
                target(hs[u_vars[s]]) if s in u_vars else f"{h}/{s}"
                for s in u.successors[un])
    return prune(RegularTree(g.arity, target(g.root), labels, succ))


# ---------------------------------------------------------------------------
# permutations and bisimilarity


def _matching_exists(left, right, related) -> bool:
    if len(left) != len(right):
        return False
    # arities are tiny; brute force over permutations
    return any(all((a, b) in related for a, b in zip(left, perm))
               for perm in itertools.permutations(right))


def _greatest_relation(g: RegularTree, h: RegularTree, up_to_permutation: bool):
    rel = {(a, b) for a in g.labels for b in h.labels
           if g.labels[a] == h.labels[b]
           and len(g.successors[a]) == len(h.successors[b])}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            ga, hb = g.successors[a], h.successors[b]
            if up_to_permutation:
                ok = _matching_exists(ga, hb, rel)
            else:
                ok = all(p in rel for p in zip(ga, hb))
            if not ok:
                rel.discard((a, b))
                changed = True
    return rel


def bisimilar(g, h) -> bool:
    """Do two regular trees have the same unravelling?"""
    g, h = as_regular(g), as_regular(h)
    return g.arity == h.arity and (g.root, h.root) in _greatest_relation(g, h, False)


def is_permutation(s, t) -> bool:
    """Is ``s`` obtained from ``t`` by rearranging successors at every vertex?"""
    g, h = as_regular(s), as_regular(t)
    if g.arity != h.arity:
        return False
    return (g.root, h.root) in _greatest_relation(g, h, True)


def permute_root(alphabet: RankedAlphabet, a, sigma) -> Term:
    """``a(x_sigma(0), ..., x_sigma(m-1))``."""
    m = alphabet.arity(a)
    return Term(m, Node(a, tuple(Node(sigma[i]) for i in range(m))))
