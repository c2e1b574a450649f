import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sfm import Assignment, Sfm, expr, value
from sfm.dsl import (
    ParseError,
    format_expr,
    format_model,
    format_scenario,
    parse_assignment,
    parse_expr,
    parse_model,
    parse_scenario,
    parse_value,
    tokenize,
)
from sfm.functions import Binary, Ref, Unary
from sfm.scenarios import corpus_dir, load_scenario, scenario_files

ASSASSIN = """model {
  node Assassin exo domain {0, 1}
  node Death endo parents (Assassin) domain {0, 1} expr Assassin
}
"""


def test_parse_assassin_model():
    m = parse_model(ASSASSIN)
    assert m.exo == ("Assassin",) and m.endo == ("Death",)
    assert m.functions["Death"] == expr(["Assassin"], "Assassin")
    assert m.functions["Death"].body == Ref("Assassin")


def test_boulder_expression():
    body = parse_expr("!Boulder | Dodge")
    assert body == Binary("|", Unary("!", Ref("Boulder")), Ref("Dodge"))


def test_undeclared_parent_names_token():
    text = ASSASSIN.replace("parents (Assassin)", "parents (Assasin)")
    with pytest.raises(ParseError) as e:
        parse_model(text)
    assert "Assasin" in e.value.message
    assert (e.value.line, e.value.column) == (3, 28)


def test_undeclared_reference_in_expression():
    text = ASSASSIN.replace("expr Assassin", "expr Bullet")
    with pytest.raises(ParseError, match="Bullet") as e:
        parse_model(text)
    assert e.value.line == 3


def test_validation_errors_carry_positions():
    text = """model {
  node A exo domain {0, 1}
  node B endo parents (A) domain {0, 1} table {
    (0) -> 1
  }
}"""
    with pytest.raises(ParseError) as e:
        parse_model(text)
    assert "left-total" in e.value.message and e.value.line == 3


def test_syntax_error_expected_set():
    with pytest.raises(ParseError) as e:
        parse_model("model { node A domain {0, 1} }")
    assert e.value.line == 1 and e.value.column == 16
    assert "'exo'" in e.value.expected


def test_domain_forms():
    m = parse_model("model { node A exo domain {-1 .. 1} node R exo domain real node S exo domain {x, \"y z\", 1/2, true} }")
    assert [v.payload for v in m.domains["A"]] == [-1, 0, 1]
    assert not m.domains["R"].is_finite
    assert [v.payload for v in m.domains["S"]] == ["x", "y z", Fraction(1, 2), True]


def test_parse_value_and_assignment():
    assert parse_value("-3") == value(-3)
    assert parse_value("2/4") == value(Fraction(1, 2))
    assert parse_assignment("A:1, B:0") == Assignment(A=1, B=0)
    assert parse_assignment("{}") == Assignment()
    with pytest.raises(ParseError):
        parse_value("1/0")


def test_gardener_default_doc():
    doc = load_scenario(corpus_dir() / "09_gardener_queen.sfm")
    assert doc.mode == "default"
    assert doc.default == Assignment(Gardener=1, Queen=0, Flower=1)


def test_preemption_tweak_doc():
    doc = load_scenario(corpus_dir() / "14_connected_preemption.sfm")
    assert doc.mode == "tweak" and doc.tweak == Assignment(Assassin1=0)


def test_expectation_parsed():
    doc = load_scenario(corpus_dir() / "07_coin_head.sfm")
    assert doc.expected.cause == Assignment(Head=1)
    assert doc.expected.effect == Assignment(Player1=1)


def test_contradictory_sections_rejected():
    base = ASSASSIN + "default {Assassin: 0, Death: 0}\nactual {Assassin: 1, Death: 1}\ntweak {Assassin: 0}\n"
    with pytest.raises(ParseError, match="contradictory"):
        parse_scenario(base)
    with pytest.raises(ParseError, match="contradictory"):
        parse_scenario(ASSASSIN + "actual {Assassin: 1, Death: 1}\ntweak {Assassin: 0}\ndefault {Assassin: 0, Death: 0}\n")


def test_scenario_needs_a_section():
    with pytest.raises(ParseError):
        parse_scenario(ASSASSIN)


def test_expectation_must_fit_mode():
    with pytest.raises(ParseError, match="cause/effect"):
        parse_scenario(ASSASSIN + "vfi {Assassin: 1}\nexpect cause {Assassin: 1} effect {}\n")
    with pytest.raises(ParseError, match="answer"):
        parse_scenario(ASSASSIN + "actual {Assassin: 1, Death: 1}\ntweak {Assassin: 0}\nexpect answer {Death: 1}\n")


def test_unknown_node_in_block():
    with pytest.raises(ParseError, match="Nobody"):
        parse_scenario(ASSASSIN + "vfi {Nobody: 1}\n")


def test_include_resolves_relative(tmp_path):
    (tmp_path / "m.model").write_text(ASSASSIN)
    (tmp_path / "s.sfm").write_text('model include "m.model"\nvfi {Assassin: 1}\nexpect answer {Assassin: 1, Death: 1}\n')
    doc = load_scenario(tmp_path / "s.sfm")
    assert doc.model == parse_model(ASSASSIN)


def test_include_missing_file(tmp_path):
    (tmp_path / "s.sfm").write_text('model include "nope.model"\nvfi {}\n')
    with pytest.raises(ParseError, match="nope.model"):
        load_scenario(tmp_path / "s.sfm")


def test_comments_and_layout():
    text = "# lead\nmodel{node A exo domain{0,1}# trailing\nnode B endo parents(A)domain{0,1}expr !A}"
    assert parse_model(text).functions["B"] == expr(["A"], "!A")


def test_tokenizer_positions():
    toks = tokenize("model {\n  node")
    assert [(t.text, t.line, t.col) for t in toks[:3]] == [("model", 1, 1), ("{", 1, 7), ("node", 2, 3)]


def test_bad_utf8_is_parse_error():
    with pytest.raises(ParseError) as e:
        parse_model(b"model { \xff }")
    assert e.value.line == 1


def test_deep_nesting_is_parse_error():
    with pytest.raises(ParseError, match="deep"):
        parse_expr("(" * 5000 + "A" + ")" * 5000)


@pytest.mark.parametrize("text", [
    "A | B & C",
    "(A | B) & C",
    "!(A & B)",
    "A - (B - C)",
    "A - B - C",
    "-A ^ 2",
    "(-A) ^ 2",
    "if A == 1 then B else C + 1",
    "(if A then B else C) + 1",
    "A * (B + C)",
    "A == (B < C)",
    '"x y" == S',
    "A + 1/2",
    "A + -1",
])
def test_expression_round_trip(text):
    node = parse_expr(text)
    assert parse_expr(format_expr(node)) == node


def test_corpus_round_trip():
    for p in scenario_files(corpus_dir()):
        doc = load_scenario(p)
        again = parse_scenario(format_scenario(doc))
        assert again == doc, p.name
        assert format_scenario(again) == format_scenario(doc)


def test_model_printer_handles_rationals_and_symbols():
    m = Sfm(
        {"A": [0, 1], "B": [Fraction(0), Fraction(1, 2), Fraction(1)], "S": ["x", "model"]},
        {"B": expr(["A"], "A * 1/2"), "S": expr(["A"], 'if A == 0 then x_sym else "model"'.replace("x_sym", '"x"'))},
    )
    assert m.report.ok, m.report
    assert parse_model(format_model(m)) == m


@given(st.binary(max_size=200))
def test_fuzz_bytes_only_parse_errors(data):
    try:
        parse_scenario(data)
    except ParseError as e:
        assert e.line >= 1 and e.column >= 1


@given(st.text(alphabet="model{}node exo endo parents domain expr table()->,:!&|+-*^<>=01AB real..#\n\"", max_size=120))
def test_fuzz_grammar_soup(text):
    try:
        parse_scenario(text)
    except ParseError as e:
        assert e.line >= 1 and e.column >= 1


def test_fuzz_corpus_mutations():
    rng = random.Random(0)
    files = [p.read_bytes() for p in scenario_files(corpus_dir())]
    for _ in range(300):
        data = bytearray(rng.choice(files))
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(len(data))
            op = rng.random()
            if op < 0.4:
                del data[i]
            elif op < 0.7:
                data[i] = rng.randrange(256)
            else:
                data.insert(i, rng.choice(b"{}(),:-!&|#\n\"x0 "))
        try:
            parse_scenario(bytes(data), base_dir=str(corpus_dir()))
        except ParseError:
            pass


def test_long_operator_chain_is_parse_error():
    text = "model { node A exo domain {0,1} node B endo parents (A) domain {0,1} expr A" + " | A" * 3000 + " }"
    with pytest.raises(ParseError, match="deeper"):
        parse_model(text)
