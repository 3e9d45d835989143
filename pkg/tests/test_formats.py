"""Text formats: round trips and line-numbered errors."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prodcsp import CspInstance, EQ, ParseError, XOR, make_table
from prodcsp.construct import replay
from prodcsp.formats import (
    parse_assignment,
    parse_constraints,
    parse_graph,
    parse_instance,
    parse_script,
    render_constraint,
    render_graph,
    render_instance,
)
from prodcsp.gen import random_graph

weights_st = st.fractions(min_value=0, max_value=20, max_denominator=64)


@given(st.integers(0, 4).flatmap(
    lambda k: st.lists(weights_st, min_size=1 << k, max_size=1 << k)
))
def test_constraint_round_trip_exact(ws):
    table = make_table(ws, "T")
    parsed = parse_constraints(render_constraint(table))["T"]
    assert parsed == table  # exact rational equality


def test_decimal_weights_parse_exactly():
    tables = parse_constraints("constraint A 1\n1.5 0.125\n")
    assert tables["A"].weights == (Fraction(3, 2), Fraction(1, 8))


def test_rational_weights():
    tables = parse_constraints("constraint A 1\n3/2 0\n")
    assert tables["A"].weights == (Fraction(3, 2), 0)


def test_reserved_names_rejected():
    with pytest.raises(ParseError) as info:
        parse_constraints("constraint OR 2\n0 1 1 1\n")
    assert info.value.line == 1


def test_weight_count_enforced():
    with pytest.raises(ParseError):
        parse_constraints("constraint A 2\n1 2 3\n")


def test_bad_weight_line_number():
    with pytest.raises(ParseError) as info:
        parse_constraints("constraint A 1\n\n1 oops\n")
    assert info.value.line == 3


def test_instance_round_trip():
    u = make_table([1, Fraction(1, 3)], "U")
    inst = CspInstance(3, ((EQ, (1, 2)), (XOR, (2, 3)), (u, (3,)), (u, (1,))))
    back = parse_instance(render_instance(inst))
    assert back.num_vars == 3
    assert [(t.weights, v) for t, v in back.applications] == [
        (t.weights, v) for t, v in inst.applications
    ]


def test_instance_errors():
    with pytest.raises(ParseError):
        parse_instance("apply EQ 1 2\n")  # before vars
    with pytest.raises(ParseError):
        parse_instance("vars 2\napply EQ 1 3\n")  # out of range
    with pytest.raises(ParseError):
        parse_instance("vars 2\napply EQ 1\n")  # arity mismatch
    with pytest.raises(ParseError):
        parse_instance("vars 2\napply NOPE 1 2\n")  # unknown name
    with pytest.raises(ParseError):
        parse_instance("vars 2\nvars 3\n")


def test_graph_round_trip_all_kinds():
    for kind, seed in (("IS", 3), ("BIS", 4), ("FLOW", 5)):
        g = random_graph(kind, 7, seed)
        assert parse_graph(render_graph(g)) == g


def test_graph_defaults_and_errors():
    g = parse_graph("graph IS 3 1\nedge 1 2\n")
    assert g.weights == (1, 1, 1)
    g = parse_graph("graph FLOW 2 1\nedge 1 2\n")
    assert g.rates == (1,)
    with pytest.raises(ParseError):
        parse_graph("graph IS 2 2\nedge 1 2\n")  # edge count mismatch
    with pytest.raises(ParseError):
        parse_graph("graph IS 2 1\nedge 1 2 5\n")  # rate on a non-FLOW edge
    with pytest.raises(ParseError):
        parse_graph("graph FLOW 2 1\nedge 1 2 1/2\n")  # rate below 1
    with pytest.raises(ParseError):
        parse_graph("graph BIS 2 1\nblock 1 0\nblock 2 0\nedge 1 2\n")


def test_script_round_trip():
    text = "from OR\nmul NAND\nperm 1 2\npin 1 0\nscale 3/2\n"
    script = parse_script(text)
    assert script.source == "OR"
    assert script.accumulated_scale == Fraction(3, 2)
    assert replay(script).arity == 1
    with pytest.raises(ParseError):
        parse_script("mul NAND\n")  # missing from line
    with pytest.raises(ParseError):
        parse_script("from OR\nscale 0\n")


def test_assignment_parsing():
    assert parse_assignment("0110", 4) == (0, 1, 1, 0)
    with pytest.raises(ParseError):
        parse_assignment("012", 3)
    with pytest.raises(ParseError):
        parse_assignment("01", 3)
