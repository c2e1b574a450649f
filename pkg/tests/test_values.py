from fractions import Fraction

import pytest

from sfm import Assignment, Domain, Value, format_assignment, rat, value
from sfm.errors import AssignmentError, DomainError
from sfm.values import BOOL, INT, RAT, SYM


def test_value_tags_from_python():
    assert value(True).tag == BOOL
    assert value(3).tag == INT
    assert value(Fraction(1, 2)).tag == RAT
    assert value("h").tag == SYM


def test_cross_tag_values_never_equal():
    assert value(1) != value(True)
    assert value(1) != rat(1)
    assert value(0) != value(False)
    assert value("1") != value(1)


def test_rationals_are_canonical():
    assert rat(Fraction(2, 4)) == rat(Fraction(1, 2))
    assert hash(rat(Fraction(2, 4))) == hash(rat(Fraction(1, 2)))


def test_literals():
    assert value(-3).literal() == "-3"
    assert rat(Fraction(1, 3)).literal() == "1/3"
    assert rat(2).literal() == "2"
    assert rat(2).literal(force_ratio=True) == "2/1"
    assert value(True).literal() == "true"
    assert value("abc").literal() == "abc"
    assert value("model").literal() == '"model"'
    assert value("two words").literal() == '"two words"'


def test_value_is_immutable():
    v = value(1)
    with pytest.raises(AttributeError):
        v.payload = 2


def test_finite_domain_rules():
    with pytest.raises(DomainError):
        Domain.finite([])
    with pytest.raises(DomainError):
        Domain.finite([0, 1, 0])
    d = Domain.finite([2, 0, 1])
    assert [v.payload for v in d] == [2, 0, 1]
    assert value(0) in d and value(3) not in d


def test_domain_range_and_str():
    assert Domain.range(-1, 1) == Domain.finite([-1, 0, 1])
    assert str(Domain.finite([0, 1])) == "{0, 1}"
    assert str(Domain.finite([rat(0), rat(Fraction(1, 3))])) == "{0/1, 1/3}"
    assert str(Domain.real()) == "real"


def test_real_domain_coerces_ints_to_rationals():
    r = Domain.real()
    assert r.coerce(3) == rat(3)
    assert not r.is_finite
    with pytest.raises(DomainError):
        r.coerce("x")


def test_coerce_rejects_out_of_domain():
    with pytest.raises(DomainError):
        Domain.finite([0, 1]).coerce(2)


def test_assignment_equality_ignores_order():
    a = Assignment([("A", 1), ("B", 0)])
    b = Assignment([("B", 0), ("A", 1)])
    assert a == b and hash(a) == hash(b)
    assert list(a) == ["A", "B"] and list(b) == ["B", "A"]


def test_assignment_ops():
    a = Assignment(A=1, B=0, C=1)
    assert a.restrict(["C", "A"]) == Assignment(A=1, C=1)
    assert a.merge({"B": 1})["B"] == value(1)
    assert a.extends({"A": 1}) and not a.extends({"A": 0})
    assert a.extends({})
    assert list(a.ordered(["C", "B", "A"])) == ["C", "B", "A"]


def test_assignment_rejects_bad_keys():
    with pytest.raises(AssignmentError):
        Assignment([("", 1)])


def test_format_assignment():
    assert format_assignment(Assignment([("A", 1), ("B", 0)])) == "{A:1, B:0}"
    assert format_assignment(Assignment()) == "{}"
