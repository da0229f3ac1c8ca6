from fractions import Fraction as F

import pytest
from hypothesis import given

from measure_completion.errors import MalformedInterval, ParseError
from measure_completion.measure_algebra import IntervalSet, parse_setexpr

from strategies import interval_sets


def test_two_part_set():
    s = parse_setexpr("[0,1/2) U [2/3,1)")
    assert len(s.parts) == 2
    assert s.measure() == F(5, 6)


def test_unicode_operators_and_whitespace():
    assert parse_setexpr(" [ 0 , 1/2 )∪[1/2,1) ") == IntervalSet.full()
    assert parse_setexpr("∅").is_empty()


def test_empty_keyword():
    assert parse_setexpr("empty") == IntervalSet.empty()


def test_reversed_bounds_are_malformed():
    with pytest.raises(MalformedInterval):
        parse_setexpr("[1/2,1/3)")


@pytest.mark.parametrize(
    "text,position",
    [("[0,1/2]", 6), ("[0;1)", 2), ("[0,1/0)", 5), ("[0,1) U", 7), ("[0,1) x", 6), ("", 0), ("empty [0,1)", 6)],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_setexpr(text)
    assert info.value.position == position


@given(interval_sets())
def test_round_trip(s):
    assert parse_setexpr(s.to_literal()) == s
    assert parse_setexpr(s.to_literal(ascii=True)) == s
