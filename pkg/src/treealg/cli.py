"""``treealg`` command-line interface.

Every command prints one JSON document ``{"command", "verdict", "payload"}``
on standard output and exits with 0.  Malformed or inconsistent input is
reported on standard error with exit code 2.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from importlib import resources

from . import automata, factorization, profiles, serialize, syntactic
from .terms import Term, to_term

log = logging.getLogger("treealg")

CORPUS = ("contains_a", "first_child_a", "finite_chain", "all_b", "a_then_b")


class InputError(Exception):
    pass


def _result(command, verdict, payload):
    return {"command": command, "verdict": verdict, "payload": payload}


def _language(path):
    return serialize.language_from_json(serialize.load(path))


def _tree_arg(path, alphabet):
    return serialize.tree_from_json(serialize.load(path), alphabet)


def cmd_empty(args):
    A = serialize.automaton_from_json(serialize.load(args.automaton))
    w = automata.emptiness(A)
    return _result("empty", w is None,
                   {"witness": None if w is None else serialize.regular_to_json(w)})


def cmd_member(args):
    A = serialize.automaton_from_json(serialize.load(args.automaton))
    g = _tree_arg(args.tree, A.alphabet)
    if g.arity != 0:
        raise InputError(f"tree has arity {g.arity}; membership needs arity 0")
    return _result("member", automata.membership(A, g), {})


def cmd_equiv(args):
    L = _language(args.language)
    left = syntactic.element_of(L, _tree_arg(args.left, L.alphabet))
    right = syntactic.element_of(L, _tree_arg(args.right, L.alphabet))
    if left.arity != right.arity:
        raise InputError(f"arity mismatch: {left.arity} vs {right.arity}")
    sep = syntactic.separating_context(L, left, right)
    return _result("equiv", sep is None,
                   {"context": None if sep is None else serialize.context_to_json(sep)})


def cmd_syntactic(args):
    if args.max_arity < 0:
        raise InputError("--max-arity must be non-negative")
    L = _language(args.language)
    S = syntactic.syntactic_algebra(L, args.max_arity)
    return _result("syntactic", None, serialize.algebra_to_json(S))


def cmd_commutative(args):
    L = _language(args.language)
    v = syntactic.is_commutative(L)
    payload = {}
    if not v:
        payload = {"symbol": v.symbol, "permutation": list(v.permutation),
                   "context": serialize.context_to_json(v.context)}
    return _result("commutative", v.commutative, payload)


def _evaluator(path):
    if path is None:
        return None
    return factorization.table_evaluator(serialize.tables_from_json(serialize.load(path)))


def cmd_reduce(args):
    t = serialize.term_from_json(serialize.load(args.term))
    F = factorization.reduce(t, _evaluator(args.tables))
    bound = 2 * t.arity
    payload = {"factorization": serialize.factorization_to_json(F),
               "height": F.height, "bound": bound,
               "is_reduced": factorization.is_reduced(F.outer),
               "flatten_ok": F.flatten() == t}
    return _result("reduce", F.height <= bound, payload)


def cmd_eval(args):
    A = serialize.automaton_from_json(serialize.load(args.automaton))
    g = _tree_arg(args.tree, A.alphabet)
    if g.is_acyclic():
        value = profiles.phi(A, to_term(g))
    else:
        value = profiles.phi_regular(A, g)
    payload = {"arity": g.arity, "value": serialize.profileset_to_json(value)}
    verdict = profiles.accepts_via_phi(A, value) if g.arity == 0 else None
    if args.tables is not None:
        if args.label is None or args.hsets is None:
            raise InputError("--tables needs --label and --hsets")
        if not g.is_acyclic():
            raise InputError("low-arity evaluation needs a finite term")
        docs = serialize.load(args.hsets)
        H = dict(serialize.hset_from_json(d) for d in (docs if isinstance(docs, list) else [docs]))
        t: Term = to_term(g)
        payload["label"] = args.label
        verdict = factorization.decide_low_arity(t, args.label, _evaluator(args.tables), H)
    return _result("eval", verdict, payload)


def corpus_document(name: str, seed: int = 0):
    """A bundled corpus document, with random sample trees for languages."""
    doc = json.loads(resources.files("treealg.data").joinpath(f"{name}.json").read_text())
    if "positive" in doc:
        from .oracles import random_regular_tree
        rng = random.Random(seed)
        alphabet = serialize.automaton_from_json(doc["positive"]).alphabet
        doc = dict(doc, samples=[serialize.regular_to_json(random_regular_tree(rng, alphabet, 4))
                                 for _ in range(3)])
    return doc


def cmd_corpus(args):
    return _result("corpus", None, corpus_document(args.name, args.seed))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treealg", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized corpus generation")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("empty", help="is the language of an automaton empty?")
    s.add_argument("--automaton", required=True)
    s.set_defaults(run=cmd_empty)

    s = sub.add_parser("member", help="does an automaton accept a tree?")
    s.add_argument("--automaton", required=True)
    s.add_argument("--tree", required=True)
    s.set_defaults(run=cmd_member)

    s = sub.add_parser("equiv", help="are two trees syntactically equivalent?")
    s.add_argument("--language", required=True)
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(run=cmd_equiv)

    s = sub.add_parser("syntactic", help="compute the syntactic algebra")
    s.add_argument("--language", required=True)
    s.add_argument("--max-arity", type=int, default=1)
    s.set_defaults(run=cmd_syntactic)

    s = sub.add_parser("commutative", help="is the language commutative?")
    s.add_argument("--language", required=True)
    s.set_defaults(run=cmd_commutative)

    s = sub.add_parser("reduce", help="reduced factorization of a term")
    s.add_argument("--term", required=True)
    s.add_argument("--tables", help="evaluation table for the factors")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("eval", help="value of a tree in the profile algebra")
    s.add_argument("--automaton", required=True)
    s.add_argument("--tree", required=True)
    s.add_argument("--tables", help="evaluation table; switches to low-arity evaluation")
    s.add_argument("--hsets", help="H-set document(s) for low-arity evaluation")
    s.add_argument("--label", help="target label for low-arity evaluation")
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("corpus", help="print a bundled example document")
    s.add_argument("name", choices=CORPUS)
    s.set_defaults(run=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        result = args.run(args)
    except (InputError, serialize.FormatError, automata.InconsistentPair,
            factorization.MissingEntry) as e:
        print(f"treealg: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError) as e:
        print(f"treealg: invalid input: {e}", file=sys.stderr)
        return 2
    print(serialize.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
