import pytest
from hypothesis import given, strategies as st

from polydir import expr
from polydir.dirichlet import Dir
from polydir.errors import ExprSyntaxError, MixedKindError
from polydir.poly import Poly


def test_parse_examples():
    assert expr.parse_poly("2y^3+y+5").terms == (3, 3, 1, 0, 0, 0, 0, 0)
    assert expr.parse_dir("2*3^y + 2^y + 3*0^y").terms == (3, 3, 2, 0, 0, 0)
    assert expr.parse_poly("y^0").terms == (0,)
    assert expr.parse_dir("4").terms == (1, 1, 1, 1)
    assert expr.parse_poly("2 y ^ 2") == expr.parse_poly("2*y^2") == expr.parse_poly("y^2+y^2")
    assert expr.parse_poly("0y^3 + 1") == Poly((0,))
    assert expr.parse(None, "2^y+1") == Dir((2, 1))
    assert expr.parse(None, "3") == Poly((0, 0, 0))


def test_print_examples():
    assert expr.format_poly(Poly((3, 3, 1, 0, 0, 0, 0, 0))) == "2y^3 + y + 5"
    assert expr.format_dir(Dir((2, 2, 2, 0, 0, 0, 0))) == "3*2^y + 4*0^y"
    assert expr.format_poly(Poly((0,))) == "1"
    assert expr.format(Poly(())) == "0" and expr.format(Dir(())) == "0"
    assert expr.format_dir(Dir((1, 1))) == "2*1^y"


@pytest.mark.parametrize("text,pos", [("y^", 2), ("2y^3 + + y", 7), ("3^", 2), ("y$", 1), ("", 0), ("2 3", 3)])
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as err:
        expr.parse_poly(text)
    assert err.value.position == pos


def test_mixed_kind():
    with pytest.raises(MixedKindError) as err:
        expr.parse(None, "y^2 + 2^y")
    assert err.value.position == 6
    with pytest.raises(MixedKindError):
        expr.parse_dir("y")


@given(st.lists(st.integers(0, 5), max_size=8))
def test_parse_print_identity(terms):
    p, d = Poly(tuple(terms)), Dir(tuple(terms))
    assert expr.parse_poly(expr.format(p)) == p
    assert expr.parse_dir(expr.format(d)) == d


nat = st.integers(0, 12).map(str)
poly_factor = st.one_of(st.just("y"), nat.map(lambda n: f"y^{n}"))
dir_factor = nat.map(lambda n: f"{n}^y")


def terms_of(factor):
    return st.one_of(
        factor,
        st.tuples(nat, st.sampled_from(["", "*", " * "]), factor).map("".join),
        nat)


def exprs_of(factor):
    return st.lists(terms_of(factor), min_size=1, max_size=5).map(" + ".join).filter(lambda s: len(s) <= 40)


@given(st.one_of(exprs_of(poly_factor).map(lambda s: ("poly", s)),
                 exprs_of(dir_factor).map(lambda s: ("dir", s))))
def test_print_parse_canonicalizes(case):
    kind, text = case
    obj = expr.parse(kind, text)
    printed = expr.format(obj)
    assert expr.parse(kind, printed) == obj
    assert expr.format(expr.parse(kind, printed)) == printed
