"""Smoke tests for the python extension: one round through each module."""

import json

import pytest

import _prolam as p

PARITY = json.dumps(
    {
        "alphabet": ["a", "b"],
        "q": 2,
        "delta": {"a": [1, 0], "b": [0, 1]},
        "q0": 0,
        "final": [1],
    }
)

EVEN = json.dumps(
    {"alphabet": ["a"], "q": 2, "delta": {"a": [1, 0]}, "q0": 0, "final": [0]}
)


def test_check_and_normalize():
    assert p.check("\\x:o.\\y:o.x") == "o->o->o"
    assert p.normalize("(\\x:o->o.x) (\\y:o.y)") == "\\x0:o. x0"


def test_interp_is_exact():
    assert p.interp("\\x:o.\\y:o.x", 2) == "12"
    assert p.interp_table("\\x:o.\\y:o.x", 2) == ["0", "3"]
    # an index far beyond machine words still comes back exactly
    big = p.interp("\\f:o->o.\\x:o. f (f x)", 3)
    assert int(big) == 443378798944694717957665959568713124113


def test_definability():
    d = json.loads(p.def_set_json("o->o", 2))
    assert d["exact"] is True
    assert d["elements"] == ["2"]


def test_separation():
    one = "\\f:o->o.\\x:o.f x"
    two = "\\f:o->o.\\x:o.f (f x)"
    assert p.separate(one, two, 4) == 2
    assert p.separate(one, one, 3) is None


def test_church_roundtrip():
    term = p.church("ab", "abba")
    assert p.word_of_church(term, "ab") == "abba"


def test_profinite_checks():
    fam = p.iota_json(p.church("ab", "ab"), 2)
    assert json.loads(fam)["k"] == 2
    assert json.loads(p.check_natural_json(fam))["ok"] is True
    par = json.loads(p.check_parametric_json(fam, seed=7))
    assert par["ok"] is True and par["exhaustive"] is True
    omega = p.word_omega_json(fam)
    assert json.loads(p.check_natural_json(omega))["ok"] is True
    # omega is idempotent on its own output
    again = p.word_omega_json(omega)
    assert json.loads(again)["components"] == json.loads(omega)["components"]


def test_automata_bridge():
    state, accepted = p.dfa_run(PARITY, "ab")
    assert (state, accepted) == (1, True)
    state, accepted = p.dfa_accepts_term(
        PARITY, "\\a:o->o.\\b:o->o.\\c:o. b (a c)"
    )
    assert (state, accepted) == (1, True)
    monoid = json.loads(p.monoid_json(PARITY))
    assert monoid["size"] == 2

    lang = p.lang_of_dfa_json(EVEN)
    assert p.lang_member(lang, "\\a:o->o.\\c:o. a (a c)") is True
    assert p.lang_member(lang, "\\a:o->o.\\c:o. a (a (a c))") is False

    fam = p.iota_json(p.church("ab", "ab"), 3)
    # "ab" holds one a, so the parity monoid sends it to the swap (index 1)
    assert p.proword_level(fam, PARITY) == 1


def test_errors_are_python_exceptions():
    with pytest.raises(p.Error):
        p.check("\\x:o. y")
    with pytest.raises(p.Error):
        p.interp("\\x:o. x x", 2)
    with pytest.raises(RuntimeError):
        p.dfa_run("{not json", "a")
