import random

from hypothesis import given, settings, strategies as st

from polydir import dirichlet, finset
from polydir.dirichlet import Dir, DirMorphism
from polydir.expr import parse_dir as D
from polydir.finset import FinFunction

import oracles

dirs = st.lists(st.integers(0, 3), max_size=3).map(lambda t: Dir(tuple(t)))
tiny = st.lists(st.integers(0, 2), max_size=2).map(lambda t: Dir(tuple(t)))


def test_eval_examples():
    assert D("3^y")(2) == 9
    assert D("0^y")(0) == 1
    assert all(D("0^y")(s) == 0 for s in range(1, 5))
    table = [D("3*2^y+4*0^y")(k) for k in range(6)]
    assert table == [7, 6, 12, 24, 48, 96]
    assert D("3*2^y+4*0^y").zero_content() == 4
    assert D("2^y+4+4*0^y")(0) == 9


def test_example_table_fit():
    # the unique Dirichlet polynomial through the table
    coeffs = oracles.fit_dirichlet([7, 6, 12, 24, 48, 96])
    fitted = Dir.from_coefficients({b: a for b, a in enumerate(coeffs) if a})
    assert fitted == D("3*2^y+4*0^y")


@given(dirs, st.integers(0, 3))
def test_elements_match_oracle(d, x):
    assert dirichlet.elements(d, x) == oracles.dir_elements(d.terms, x)
    for k, e in enumerate(dirichlet.elements(d, x)):
        assert dirichlet.element_index(d, x, e) == k


@given(dirs, st.data())
def test_eval_map_contravariant(d, data):
    a, b, c = (data.draw(st.integers(1, 3)) for _ in range(3))
    f = FinFunction(a, b, tuple(data.draw(st.lists(st.integers(0, b - 1), min_size=a, max_size=a))))
    g = FinFunction(b, c, tuple(data.draw(st.lists(st.integers(0, c - 1), min_size=b, max_size=b))))
    assert dirichlet.eval_map(d, finset.compose(g, f)) == finset.compose(
        dirichlet.eval_map(d, f), dirichlet.eval_map(d, g))


def test_hom_counts_paper():
    assert dirichlet.hom_count(D("2*2^y"), D("1+0^y")) == 1
    assert dirichlet.hom_count(D("1+0^y"), D("2*2^y")) == 8
    assert len(dirichlet.hom_enumerate(D("1+0^y"), D("2*2^y"))) == 8
    assert dirichlet.hom_count(dirichlet.ZERO, D("3^y")) == 1


@settings(max_examples=30, deadline=None)
@given(tiny, tiny)
def test_hom_count_against_natural_transformations(d, e):
    assert dirichlet.hom_count(d, e) == oracles.nat_count_dir(d.terms, e.terms)


def test_components():
    (m,) = dirichlet.hom_enumerate(D("2*2^y"), D("1+0^y"))
    c0, c1 = dirichlet.morphism_component(m, 0), dirichlet.morphism_component(m, 1)
    assert (c0.dom.size, c0.cod.size) == (2, 2)
    assert (c1.dom.size, c1.cod.size) == (4, 1)
    assert dirichlet.morphism_component(dirichlet.identity(D("2^y+1")), 2) == finset.identity(5)


@settings(deadline=None)
@given(tiny, tiny, tiny, st.integers(0, 2), st.data())
def test_composition_is_componentwise(a, b, c, x, data):
    if not dirichlet.hom_count(a, b) or not dirichlet.hom_count(b, c):
        return
    m = data.draw(st.sampled_from(dirichlet.hom_enumerate(a, b)))
    n = data.draw(st.sampled_from(dirichlet.hom_enumerate(b, c)))
    assert dirichlet.morphism_component(dirichlet.compose_morphisms(n, m), x) == finset.compose(
        dirichlet.morphism_component(n, x), dirichlet.morphism_component(m, x))
    assert dirichlet.compose_morphisms(m, dirichlet.identity(a)) == m


def test_algebra_examples():
    assert dirichlet.multiply(D("2^y"), D("3^y")) == D("6^y")
    s = dirichlet.add(D("0^y"), D("1^y"))
    assert (s(0), s(1)) == (2, 1)
    d = D("2*3^y+0^y")
    assert dirichlet.multiply(d, dirichlet.ONE) == d


@given(dirs, dirs, st.integers(0, 4))
def test_pointwise(d, e, x):
    assert dirichlet.add(d, e)(x) == d(x) + e(x)
    assert dirichlet.multiply(d, e)(x) == d(x) * e(x)


def test_pi():
    b = dirichlet.pi(D("2*3^y+2^y+3*0^y"))
    assert (b.total.size, b.base.size) == (8, 6)
    assert b.fiber_sizes() == [3, 3, 2, 0, 0, 0]
    b = dirichlet.pi(D("3"))
    assert b.proj == finset.identity(3)
    b = dirichlet.pi(D("0^y"))
    assert (b.total.size, b.base.size) == (0, 1)


def test_decompose():
    assert [e for _, e in dirichlet.decompose(D("2*2^y"))] == [D("2^y"), D("2^y")]
    assert [e for _, e in dirichlet.decompose(D("1+0^y"))] == [D("1^y"), D("0^y")]
    rng = random.Random(11)
    for _ in range(50):
        d = Dir(tuple(rng.randint(0, 5) for _ in range(rng.randint(0, 5))))
        assert dirichlet.sum_all(e for _, e in dirichlet.decompose(d)) == d


def test_cartesian():
    assert dirichlet.is_cartesian_dir(dirichlet.identity(D("2^y+1")))
    inc = DirMorphism(D("2^y"), D("3^y"), finset.function((0,), 1), (finset.function((0, 1), 3),))
    assert not dirichlet.is_cartesian_dir(inc)
    swap = finset.function((1, 0), 2)
    collapse = DirMorphism(D("2*2^y"), D("2^y"), finset.function((0, 0), 1), (swap, finset.identity(2)))
    assert dirichlet.is_cartesian_dir(collapse)
    assert finset.is_pullback_square(*dirichlet.pi_square(collapse))
    assert not finset.is_pullback_square(*dirichlet.pi_square(inc))


def test_adjoint_counts():
    e = D("2*2^y+0^y")
    for n in range(4):
        assert dirichlet.hom_count(dirichlet.zero_content(n), e) == e(0) ** n
        assert dirichlet.hom_count(e, dirichlet.constant(n)) == n ** e.term_count()
        assert dirichlet.hom_count(dirichlet.constant(n), e) == e(1) ** n
        assert dirichlet.hom_count(e, dirichlet.representable(n)) == n ** e.total()


def test_morphism_json():
    for m in dirichlet.hom_enumerate(D("1+0^y"), D("2*2^y")):
        assert DirMorphism.from_json(m.to_json()) == m
