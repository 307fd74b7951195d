import json
import subprocess
import sys

import pytest

from treealg import corpus, serialize as S
from treealg.automata import empty_automaton, universal
from treealg.cli import main
from treealg.terms import parse_term


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)
    return write


def test_empty(capsys, files):
    code, r = run(capsys, "empty", "--automaton", files("u.json", S.automaton_to_json(universal(corpus.ABC))))
    assert code == 0 and r["verdict"] is False and r["payload"]["witness"]
    code, r = run(capsys, "empty", "--automaton",
                  files("e.json", S.automaton_to_json(empty_automaton(corpus.ABC))))
    assert r["verdict"] is True


def test_empty_witness_is_a_member(capsys, files):
    a = files("a.json", S.automaton_to_json(corpus.contains_a_automaton()))
    _, r = run(capsys, "empty", "--automaton", a)
    w = files("w.json", r["payload"]["witness"])
    _, m = run(capsys, "member", "--automaton", a, "--tree", w)
    assert m["verdict"] is True


def test_member(capsys, files):
    a = files("a.json", S.automaton_to_json(corpus.contains_a_automaton()))
    _, r = run(capsys, "member", "--automaton", a, "--tree", files("b.json", S.regular_to_json(corpus.all_b())))
    assert r["verdict"] is False
    _, r = run(capsys, "member", "--automaton", a, "--tree", files("t.json", S.regular_to_json(corpus.a_then_b())))
    assert r["verdict"] is True


def test_equiv_and_syntactic(capsys, files):
    lang = files("l.json", S.language_to_json(corpus.contains_a()))
    c = files("c.json", S.term_to_json(parse_term("c")))
    a = files("a.json", S.term_to_json(parse_term("a(c, c)")))
    _, r = run(capsys, "equiv", "--language", lang, "--left", c, "--right", a)
    assert r["verdict"] is False and r["payload"]["context"]["hole_arity"] == 0
    _, r = run(capsys, "syntactic", "--language", lang, "--max-arity", "1")
    assert len(r["payload"]["arities"]["0"]["classes"]) == 2
    assert len(r["payload"]["arities"]["1"]["classes"]) == 3


def test_commutative(capsys, files):
    _, r = run(capsys, "commutative", "--language", files("l.json", S.language_to_json(corpus.first_child_a())))
    assert r["verdict"] is False and r["payload"]["permutation"] == [1, 0]


def test_reduce_and_eval(capsys, files):
    t = files("t.json", S.term_to_json(parse_term("a(b(x0, c), c)")))
    _, r = run(capsys, "reduce", "--term", t)
    assert r["verdict"] is True and r["payload"]["is_reduced"] and r["payload"]["flatten_ok"]
    a = files("a.json", S.automaton_to_json(corpus.contains_a_automaton()))
    _, r = run(capsys, "eval", "--automaton", a, "--tree", files("c.json", S.term_to_json(parse_term("a(c, c)"))))
    assert r["verdict"] is True


def test_input_errors_exit_2(capsys, files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["empty", "--automaton", str(bad)]) == 2
    pos, comp = corpus.contains_a_automaton(), universal(corpus.ABC)
    lang = files("l.json", {"positive": S.automaton_to_json(pos), "complement": S.automaton_to_json(comp)})
    assert main(["commutative", "--language", lang]) == 2
    assert capsys.readouterr().out == ""


def test_deterministic_output(files):
    lang = files("l.json", S.language_to_json(corpus.contains_a()))
    cmd = [sys.executable, "-m", "treealg.cli", "syntactic", "--language", lang]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1


def test_corpus_command(capsys):
    _, r = run(capsys, "--seed", "3", "corpus", "contains_a")
    assert "positive" in r["payload"] and len(r["payload"]["samples"]) == 3
