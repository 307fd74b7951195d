"""JSON encodings of every public data type.

Each ``*_to_json`` returns plain Python data ready for :func:`json.dumps`;
each ``*_from_json`` validates its input and raises :class:`FormatError`.
"""
from __future__ import annotations

import json
from pathlib import Path

from .automata import LanguagePair, ParityTreeAutomaton, load_language_pair
from .games import EVEN, ODD, GameSolution, ParityGame
from .profiles import Branch, ProfileSet, Var
from .terms import (
    Context, Node, RankedAlphabet, RegularTree, Term, is_var, validate_regular,
    validate_term,
)


class FormatError(ValueError):
    """Malformed JSON input."""


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError(f"field {key!r} has the wrong type")
    return v


def _nat(v, what):
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise FormatError(f"{what} must be a natural number")
    return v


def load(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise FormatError(f"{path}: {e}") from e


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# trees


def alphabet_to_json(A: RankedAlphabet) -> dict:
    return {"symbols": [{"name": a, "arity": A.arity(a)} for a in sorted(A, key=str)]}


def alphabet_from_json(d) -> RankedAlphabet:
    syms = {}
    for s in _need(d, "symbols", list):
        name = _need(s, "name", str)
        if name in syms:
            raise FormatError(f"symbol {name!r} declared twice")
        syms[name] = _nat(_need(s, "arity"), "arity")
    return RankedAlphabet(syms)


def node_to_json(n: Node) -> dict:
    if n.is_var:
        return {"var": n.label}
    return {"symbol": n.label, "children": [node_to_json(c) for c in n.children]}


def node_from_json(d) -> Node:
    if isinstance(d, dict) and "var" in d:
        return Node(_nat(d["var"], "var"))
    label = _need(d, "symbol", str)
    return Node(label, tuple(node_from_json(c) for c in d.get("children", [])))


def term_to_json(t: Term) -> dict:
    return {"arity": t.arity, "root": node_to_json(t.root)}


def term_from_json(d, alphabet: RankedAlphabet | None = None) -> Term:
    t = Term(_nat(_need(d, "arity"), "arity"), node_from_json(_need(d, "root")))
    bad = validate_term(t, alphabet)
    if bad is not None:
        raise FormatError(str(bad))
    return t


def regular_to_json(g: RegularTree) -> dict:
    nodes = []
    for n in g.reachable():
        label = g.labels[n]
        nodes.append({"id": n,
                      "symbol": None if is_var(label) else label,
                      "var": label if is_var(label) else None,
                      "successors": list(g.successors[n])})
    return {"arity": g.arity, "root": g.root, "nodes": nodes}


def regular_from_json(d, alphabet: RankedAlphabet | None = None) -> RegularTree:
    labels, succ = {}, {}
    for nd in _need(d, "nodes", list):
        i = _need(nd, "id", str)
        if i in labels:
            raise FormatError(f"node id {i!r} used twice")
        sym, v = nd.get("symbol"), nd.get("var")
        if (sym is None) == (v is None):
            raise FormatError(f"node {i!r} needs exactly one of symbol and var")
        labels[i] = _nat(v, "var") if sym is None else sym
        succ[i] = tuple(nd.get("successors", []))
    root = _need(d, "root", str)
    try:
        g = RegularTree(_nat(_need(d, "arity"), "arity"), root, labels, succ)
    except (ValueError, KeyError) as e:
        raise FormatError(str(e)) from e
    bad = validate_regular(g, alphabet)
    if bad is not None:
        raise FormatError(str(bad))
    return g


def tree_from_json(d, alphabet=None) -> RegularTree:
    """Accept either a term or a regular tree document."""
    from .terms import from_term
    if isinstance(d, dict) and "nodes" in d:
        return regular_from_json(d, alphabet)
    return from_term(term_from_json(d, alphabet))


def context_to_json(c: Context) -> dict:
    return dict(regular_to_json(c.tree), hole_arity=c.hole_arity)


def context_from_json(d, alphabet: RankedAlphabet | None = None) -> Context:
    m = _nat(_need(d, "hole_arity"), "hole_arity")
    sigma = alphabet.with_hole(m) if alphabet is not None else None
    return Context(tree_from_json(d, sigma), m)


# ---------------------------------------------------------------------------
# automata


def automaton_to_json(A: ParityTreeAutomaton) -> dict:
    name = {q: str(q) for q in A.states}
    if len(set(name.values())) != len(name):
        name = {q: f"q{i}" for i, q in enumerate(A.states)}
    trans = []
    for q in A.states:
        for a in sorted(A.alphabet, key=str):
            for ps in A.moves(q, a):
                trans.append({"state": name[q], "symbol": a, "successors": [name[p] for p in ps]})
    return {"states": [name[q] for q in A.states], "initial": name[A.initial],
            "priority": {name[q]: A.priority[q] for q in A.states},
            "alphabet": alphabet_to_json(A.alphabet), "transitions": trans}


def automaton_from_json(d) -> ParityTreeAutomaton:
    states = _need(d, "states", list)
    prio = {q: _nat(p, "priority") for q, p in _need(d, "priority", dict).items()}
    alphabet = alphabet_from_json(_need(d, "alphabet"))
    trans = [(_need(t, "state", str), _need(t, "symbol", str), tuple(_need(t, "successors", list)))
             for t in _need(d, "transitions", list)]
    try:
        return ParityTreeAutomaton(tuple(states), alphabet, trans, _need(d, "initial", str), prio)
    except (ValueError, KeyError) as e:
        raise FormatError(str(e)) from e


def language_to_json(L: LanguagePair) -> dict:
    return {"positive": automaton_to_json(L.positive),
            "complement": automaton_to_json(L.complement)}


def language_from_json(d, samples=()) -> LanguagePair:
    return load_language_pair(automaton_from_json(_need(d, "positive")),
                              automaton_from_json(_need(d, "complement")), samples)


# ---------------------------------------------------------------------------
# games


def game_to_json(G: ParityGame) -> dict:
    return {"positions": [{"id": str(v), "owner": "even" if G.owner[v] == EVEN else "odd",
                           "priority": G.priority[v]} for v in G.owner],
            "edges": [[str(v), str(w)] for v in G.owner for w in G.edges[v]]}


def game_from_json(d) -> ParityGame:
    owner, prio, edges = {}, {}, {}
    for p in _need(d, "positions", list):
        v = _need(p, "id", str)
        o = _need(p, "owner", str)
        if o not in ("even", "odd"):
            raise FormatError(f"bad owner {o!r}")
        owner[v] = EVEN if o == "even" else ODD
        prio[v] = _nat(_need(p, "priority"), "priority")
        edges[v] = []
    for e in _need(d, "edges", list):
        if not (isinstance(e, list) and len(e) == 2 and all(x in owner for x in e)):
            raise FormatError(f"bad edge {e!r}")
        edges[e[0]].append(e[1])
    return ParityGame(owner, prio, edges)


def solution_to_json(s: GameSolution) -> dict:
    def ids(region):
        return sorted(str(v) for v in region)
    return {"even_region": ids(s.even_region), "odd_region": ids(s.odd_region),
            "even_strategy": {str(v): str(w) for v, w in sorted(s.strategies[EVEN].items(), key=str)},
            "odd_strategy": {str(v): str(w) for v, w in sorted(s.strategies[ODD].items(), key=str)}}


def solution_from_json(d) -> GameSolution:
    return GameSolution((set(_need(d, "even_region", list)), set(_need(d, "odd_region", list))),
                        (dict(_need(d, "even_strategy", dict)), dict(_need(d, "odd_strategy", dict))))


# ---------------------------------------------------------------------------
# algebra values


def profileset_to_json(e: ProfileSet) -> list:
    out = []
    for conj in e:
        atoms = []
        for a in sorted(conj, key=repr):
            if isinstance(a, Branch):
                atoms.append({"branch": str(a.p)})
            else:
                atoms.append({"var": {"from": str(a.p), "min": a.k, "to": str(a.q), "index": a.j}})
        out.append(atoms)
    return out


def profileset_from_json(d) -> ProfileSet:
    if not isinstance(d, list):
        raise FormatError("a ProfileSet is a list of conjunctions")
    conjs = []
    for c in d:
        atoms = set()
        for a in c:
            if "branch" in a:
                atoms.add(Branch(a["branch"]))
            else:
                v = _need(a, "var", dict)
                atoms.add(Var(_need(v, "from"), _nat(_need(v, "min"), "min"),
                              _need(v, "to"), _nat(_need(v, "index"), "index")))
        conjs.append(frozenset(atoms))
    try:
        return ProfileSet(conjs)
    except ValueError as e:
        raise FormatError(str(e)) from e


def algebra_to_json(S) -> dict:
    return {"arities": {str(n): {"classes": [
                {"id": c.id, "witness": regular_to_json(c.representative.witness),
                 **({"accepting": c.accepting} if c.accepting is not None else {})}
                for c in S.classes[n]]}
            for n in sorted(S.classes)},
            "table": [{"root": a, "args": list(args), "result": r} for a, args, r in S.table]}


def algebra_summary_from_json(d) -> dict:
    """Read back the class structure (witnesses and table) of an algebra."""
    arities = {}
    for n, block in _need(d, "arities", dict).items():
        arities[int(n)] = [{"id": _need(c, "id", str),
                            "witness": regular_from_json(_need(c, "witness")),
                            "accepting": c.get("accepting")}
                           for c in _need(block, "classes", list)]
    table = [(_need(r, "root", str), tuple(_need(r, "args", list)), _need(r, "result", str))
             for r in _need(d, "table", list)]
    return {"arities": arities, "table": table}


# ---------------------------------------------------------------------------
# factorization data


def factorization_to_json(F) -> dict:
    def outer(n: Node):
        if n.is_var:
            return {"var": n.label}
        return {"factor": term_to_json(n.label), "children": [outer(c) for c in n.children]}
    out = {"arity": F.outer.arity, "root": outer(F.outer.root), "height": F.height}
    if F.evaluated is not None:
        out["evaluated"] = term_to_json(F.evaluated)
    return out


def factorization_from_json(d):
    from .factorization import Factorization

    def outer(n):
        if "var" in n:
            return Node(_nat(n["var"], "var"))
        return Node(term_from_json(_need(n, "factor")),
                    tuple(outer(c) for c in n.get("children", [])))
    ev = d.get("evaluated")
    return Factorization(Term(_nat(_need(d, "arity"), "arity"), outer(_need(d, "root"))),
                         None if ev is None else term_from_json(ev))


def tables_to_json(entries: dict) -> dict:
    return {"entries": [{"term": term_to_json(t), "value": v} for t, v in entries.items()]}


def tables_from_json(d) -> dict:
    return {term_from_json(_need(e, "term")): _need(e, "value", str)
            for e in _need(d, "entries", list)}


def hset_to_json(label: str, trees) -> dict:
    return {"label": label, "trees": [term_to_json(t) for t in trees]}


def hset_from_json(d) -> tuple[str, list[Term]]:
    return _need(d, "label", str), [term_from_json(t) for t in _need(d, "trees", list)]
