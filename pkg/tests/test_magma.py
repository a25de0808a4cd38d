import math

import pytest
from hypothesis import given, strategies as st

from symdias.magma import (
    CommMonomial,
    ParseError,
    _straighten,
    cycle_string,
    degree,
    enum_association_types,
    enum_collapsed,
    enum_multilinear,
    fill,
    flips,
    leaves,
    parse,
    relabel,
    shape,
    shape_key,
    shape_string,
    straighten,
    to_string,
    type_index,
    type_symmetries,
)


def double_factorial(n):
    return math.prod(range(n, 0, -2))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11), (8, 23)])
def test_wedderburn_etherington(n, count):
    assert len(enum_association_types(n)) == count


@pytest.mark.parametrize("n", range(1, 8))
def test_multilinear_count(n):
    assert len(enum_multilinear(n)) == double_factorial(2 * n - 3)


def test_type_order_degree_4_to_6():
    assert [shape_string(s) for s in enum_association_types(4)] == ["((--)-)-", "(--)(--)"]
    assert [shape_string(s) for s in enum_association_types(5)] == [
        "(((--)-)-)-", "((--)(--))-", "((--)-)(--)"]
    assert [shape_string(s) for s in enum_association_types(6)] == [
        "((((--)-)-)-)-", "(((--)(--))-)-", "(((--)-)(--))-",
        "(((--)-)-)(--)", "((--)(--))(--)", "((--)-)((--)-)"]


def test_degree7_type_order():
    assert [shape_string(s) for s in enum_association_types(7)] == [
        "(((((--)-)-)-)-)-", "((((--)(--))-)-)-", "((((--)-)(--))-)-",
        "((((--)-)-)(--))-", "(((--)(--))(--))-", "(((--)-)((--)-))-",
        "((((--)-)-)-)(--)", "(((--)(--))-)(--)", "(((--)-)(--))(--)",
        "(((--)-)-)((--)-)", "((--)(--))((--)-)"]


def test_degree3_monomials():
    assert [str(m) for m in enum_multilinear(3)] == ["(ab)c", "(ac)b", "(bc)a"]


def test_x5y_column_order_starts_and_ends():
    cols = [to_string(t, "xy").replace("(xx)", "x^2") for t in enum_collapsed(6, (0, 0, 0, 0, 0, 1))]
    assert len(cols) == 20
    assert cols[:5] == ["(((x^2x)x)x)y", "(((x^2x)x)y)x", "(((x^2x)y)x)x", "(((x^2y)x)x)x", "((((xy)x)x)x)x"]
    assert cols[-1] == "(x^2x)((xy)x)"


def test_x6_has_six_monomials():
    assert len(enum_collapsed(6, (0,) * 6)) == 6


def test_symmetries_count_and_last_type():
    syms = type_symmetries(7)
    assert len(syms) == 30
    last = [cycle_string(s.sigma) for s in syms if s.type_index == 10]
    assert last == ["(12)", "(34)", "(13)(24)", "(56)"]


def test_parse_examples():
    assert parse("((ab)c)d") == (((0, 1), 2), 3)
    assert parse("x^2x", "xy") == ((0, 0), 0)
    assert parse("(ab)(cd)") == ((0, 1), (2, 3))


@pytest.mark.parametrize("text, pos", [("(ab", 3), ("abc", 2), ("(a)b", 2), ("ab)", 2), ("a+b", 1)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.pos == pos


def test_parse_rejects_duplicates_in_multilinear_mode():
    assert parse("(ab)a") == ((0, 1), 0)
    with pytest.raises(ParseError, match="duplicate"):
        parse("(ab)a", multilinear=True)


@st.composite
def trees(draw, n=None):
    n = n or draw(st.integers(1, 7))
    if n == 1:
        return draw(st.integers(0, 5))
    k = draw(st.integers(1, n - 1))
    return (draw(trees(k)), draw(trees(n - k)))


@given(trees())
def test_straighten_is_idempotent_and_flip_invariant(t):
    s = straighten(t)
    assert straighten(s) == s
    for f in flips(t):
        assert straighten(f) == s
    assert _straighten(t)[1] == shape_key(shape(s))


@given(trees())
def test_string_round_trip(t):
    s = straighten(t)
    assert straighten(parse(to_string(s))) == s


@given(st.integers(2, 7).flatmap(lambda n: st.permutations(range(n))))
def test_monomial_of_relabelled_type(perm):
    n = len(perm)
    for k, shape in enumerate(enum_association_types(n)):
        t = straighten(fill(shape, perm))
        assert type_index(t) == k
        assert degree(t) == n
        assert sorted(leaves(t)) == list(range(n))


def test_multilinear_monomials_are_canonical_and_distinct():
    mons = enum_multilinear(6)
    trees6 = [m.tree() for m in mons]
    assert len(set(trees6)) == len(trees6)
    assert all(straighten(t) == t for t in trees6)
    assert all(CommMonomial.from_tree(t) == m for t, m in zip(trees6, mons))


def test_relabel_then_straighten_stays_in_basis():
    mons = set(m.tree() for m in enum_multilinear(5))
    for m in list(mons)[:50]:
        assert straighten(relabel(m, {0: 4, 4: 0, 1: 1, 2: 2, 3: 3})) in mons
