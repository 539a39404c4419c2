import random

import pytest
from hypothesis import given, strategies as st

from g24star import expr as X
from g24star.errors import BadIndex, ParseError
from g24star.exact_scalars import GaussianRational as G
from g24star.expr import eval_expr, to_string
from g24star.geometry import random_point
from g24star.parser import parse_expr

PTS = [random_point(random.Random(s), 4) for s in range(3)]


def same(a, b):
    return all(eval_expr(a, p) == eval_expr(b, p) for p in PTS)


def test_product():
    assert same(parse_expr("z[1,1]*zb[2,2]"), X.z(0) * X.zb(3))


def test_gaussian_constant():
    e = parse_expr("1/2 + 3i")
    assert e.is_const() and eval_expr(e, PTS[0]) == G("1/2", 3)


def test_nested():
    assert same(parse_expr("z[1,1]^2*(1 - zb[1,2])"), X.z(0) ** 2 * (1 - X.zb(1)))


def test_precedence_and_associativity():
    assert same(parse_expr("z[1,1] - z[1,2] - z[2,1]"), (X.z(0) - X.z(1)) - X.z(2))
    assert same(parse_expr("z[1,1] / z[2,2] / 2 + 1"), (X.z(0) / X.z(3)) / 2 + 1)
    assert same(parse_expr("2*z[1,2]^3"), 2 * X.z(1) ** 3)


def test_unary_minus_and_negative_power():
    assert same(parse_expr("-z[1,1] + -2"), X.neg(X.z(0)) - 2)
    assert same(parse_expr("(1 + zb[2,1]*z[2,1])^-1"), 1 / (1 + X.zb(2) * X.z(2)))


@pytest.mark.parametrize("text,col", [("z[1,1", 6), ("z[1,1] +", 9), ("2 $ 3", 3), ("(z[1,1]", 8), ("", 1)])
def test_syntax_errors_carry_position(text, col):
    with pytest.raises(ParseError) as e:
        parse_expr(text)
    assert e.value.line == 1 and e.value.column == col


def test_multiline_position():
    with pytest.raises(ParseError) as e:
        parse_expr("z[1,1] +\n  * 2")
    assert (e.value.line, e.value.column) == (2, 3)


def test_index_out_of_range():
    with pytest.raises(BadIndex):
        parse_expr("z[3,1]")
    parse_expr("z[2,3]", p=3, q=2)


atoms = st.sampled_from(["z[1,1]", "zb[1,2]", "z[2,1]", "zb[2,2]", "3", "1/2", "2i"])


@st.composite
def sources(draw, depth=2):
    if depth == 0:
        return draw(atoms)
    a, b = draw(sources(depth=depth - 1)), draw(sources(depth=depth - 1))
    op = draw(st.sampled_from(["+", "-", "*"]))
    return f"({a} {op} {b})"


@given(sources())
def test_printed_form_reparses(src):
    e = parse_expr(src)
    assert same(parse_expr(to_string(e)), e)
