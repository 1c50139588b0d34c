import itertools
import random

import pytest
from hypothesis import given, strategies as st

from polydir import bundle, dirichlet, finset, poly
from polydir.bundle import Bundle, BunMorphism, ContMorphism
from polydir.dirichlet import Dir
from polydir.errors import DomainMismatch, NonCanonicalBundle, NotCartesian
from polydir.expr import parse_dir, parse_poly
from polydir.poly import Poly

SMALL = [Bundle(f) for t in range(3) for s in range(3) for f in finset.iter_maps(s, t)]
EQ10 = bundle.bundle((0, 0, 0, 1, 1, 1, 2, 2), 6)


def random_canonical(rng):
    return bundle.bundle_of_poly(Poly(tuple(rng.randint(0, 4) for _ in range(rng.randint(0, 5)))))


def test_transform_examples():
    assert bundle.dirichlet_transform(parse_poly("2y^3+y^2+3")) == parse_dir("2*3^y+2^y+3*0^y")
    assert bundle.dirichlet_transform(poly.Y) == parse_dir("1^y")
    rng = random.Random(3)
    for _ in range(100):
        p = Poly(tuple(rng.randint(0, 6) for _ in range(rng.randint(0, 6))))
        assert bundle.inverse_transform(bundle.dirichlet_transform(p)) == p


def test_eq10_bundle():
    assert bundle.bundle_of_poly(parse_poly("2y^3+y^2+3")) == EQ10
    assert bundle.bundle_of_dir(parse_dir("2*3^y+2^y+3*0^y")) == EQ10
    assert bundle.dir_of_bundle(EQ10) == parse_dir("2*3^y+2^y+3*0^y")
    assert bundle.poly_of_bundle(EQ10) == parse_poly("2y^3+y^2+3")
    assert sorted(EQ10.fiber_sizes(), reverse=True) == [3, 3, 2, 0, 0, 0]
    assert bundle.is_canonical(EQ10)


def test_roundtrips_on_random_canonical_bundles():
    rng = random.Random(0)
    for _ in range(200):
        b = random_canonical(rng)
        P, D = bundle.poly_of_bundle(b), bundle.dir_of_bundle(b)
        assert bundle.bundle_of_poly(P) == b
        assert bundle.bundle_of_dir(D) == b
        assert bundle.poly_of_bundle(bundle.bundle_of_poly(P)) == P
        assert bundle.dir_of_bundle(bundle.bundle_of_dir(D)) == D


def test_bang_and_empty():
    for x in range(4):
        assert bundle.dir_of_bundle(bundle.bang_bundle(x)) == dirichlet.representable(x)
        assert bundle.poly_of_bundle(bundle.bang_bundle(x)) == poly.representable(x)
    empty = bundle.bundle((), 0)
    assert bundle.poly_of_bundle(empty) == poly.ZERO and bundle.dir_of_bundle(empty) == dirichlet.ZERO


def test_canonicalize():
    b = bundle.bundle((2, 0, 2, 2), 3)
    assert not bundle.is_canonical(b)
    canon, iso = bundle.canonicalize(b)
    assert bundle.is_canonical(canon) and bundle.is_cartesian_bun(iso)
    assert finset.is_bijective(iso.base_map) and finset.is_bijective(iso.total_map)


def test_bun_morphism_validation():
    with pytest.raises(DomainMismatch):
        BunMorphism(EQ10, EQ10, finset.identity(6), finset.function((7,) * 8, 8))


def test_identity_and_composition():
    for a, b, c in itertools.product(SMALL[:8], repeat=3):
        for m in bundle.iter_bun(a, b):
            assert bundle.compose_bun(m, bundle.identity_bun(a)) == m
            for n in bundle.iter_bun(b, c):
                nm = bundle.compose_bun(n, m)
                assert nm.total_map == finset.compose(n.total_map, m.total_map)
        for m in bundle.iter_cont(a, b):
            assert bundle.compose_cont(bundle.identity_cont(b), m) == m


def test_cont_associativity():
    for a, b, c, d in itertools.product(SMALL[:6], repeat=4):
        for m in bundle.iter_cont(a, b):
            for n in bundle.iter_cont(b, c):
                for k in bundle.iter_cont(c, d):
                    assert bundle.compose_cont(k, bundle.compose_cont(n, m)) == \
                        bundle.compose_cont(bundle.compose_cont(k, n), m)


def test_counts_against_formulas():
    for a, b in itertools.product(SMALL, repeat=2):
        assert bundle.count_bun(a, b) == sum(1 for _ in bundle.iter_bun(a, b))
        assert bundle.count_cont(a, b) == sum(1 for _ in bundle.iter_cont(a, b))
        assert bundle.count_bun(a, b) == dirichlet.hom_count(bundle.dir_of_bundle(a), bundle.dir_of_bundle(b))
        assert bundle.count_cont(a, b) == poly.hom_count(bundle.poly_of_bundle(a), bundle.poly_of_bundle(b))


def test_maps_out_of_bang():
    # Bun(X!, pi) = D_pi(X), Cont(X!, pi) = P_pi(X)
    for x in range(4):
        assert bundle.count_bun(bundle.bang_bundle(x), EQ10) == 2 * 3 ** x + 2 ** x + 3 * 0 ** x
    assert bundle.count_cont(bundle.bang_bundle(2), EQ10) == 23


def test_functors_identity_and_inverse():
    for b in SMALL:
        assert bundle.functor_D(bundle.identity_bun(b)) == dirichlet.identity(bundle.dir_of_bundle(b))
        assert bundle.functor_P(bundle.identity_cont(b)) == poly.identity(bundle.poly_of_bundle(b))
    for a, b in itertools.product(SMALL, repeat=2):
        for m in bundle.iter_bun(a, b):
            assert bundle.functor_D_inverse(bundle.functor_D(m), a, b) == m
        for m in bundle.iter_cont(a, b):
            assert bundle.functor_P_inverse(bundle.functor_P(m), a, b) == m


def test_functor_inverse_rejects_wrong_bundle():
    n = dirichlet.identity(parse_dir("2^y"))
    with pytest.raises(NonCanonicalBundle):
        bundle.functor_D_inverse(n, bundle.bang_bundle(3), bundle.bang_bundle(2))


def test_cartesian_examples():
    b = bundle.bundle((0, 0, 1), 2)
    assert bundle.is_cartesian_bun(bundle.identity_bun(b))
    swap = BunMorphism(b, b, finset.identity(2), finset.function((1, 0, 2), 3))
    assert bundle.is_cartesian_bun(swap)
    collapse = BunMorphism(b, b, finset.identity(2), finset.function((0, 0, 2), 3))
    assert not bundle.is_cartesian_bun(collapse)


def test_cart_equivalence():
    one = bundle.bang_bundle(1)
    two = bundle.bundle((0, 1, 1), 2)
    f = finset.function((1,), 2)
    # over f: 1 -> 2 hitting the fiber of size 2, a bijection needs a 2-point source fiber
    src = bundle.bang_bundle(2)
    m = BunMorphism(src, two, f, finset.function((2, 1), 3))
    assert bundle.is_cartesian_bun(m)
    c = bundle.cart_equivalence(m)
    assert isinstance(c, ContMorphism) and bundle.cart_equivalence(c) == m
    dm, pm = bundle.functor_D(m), bundle.functor_P(c)
    assert dirichlet.is_cartesian_dir(dm) and poly.is_cartesian_poly(pm)
    assert dm.on_terms.map == pm.on_positions.map
    assert bundle.cart_equivalence(dm) == pm and bundle.cart_equivalence(pm) == dm
    with pytest.raises(NotCartesian):
        bundle.cart_equivalence(BunMorphism(one, two, f, finset.function((1,), 3)))


def test_factorize():
    b = bundle.bundle((0, 0, 1), 2)
    assert bundle.factorize(bundle.identity_bun(b))[1].base_map == finset.identity(2)
    for a, c in itertools.product([Bundle(f) for t in range(3) for s in range(4)
                                   for f in finset.iter_maps(s, t)][:20], repeat=2):
        for m in bundle.iter_bun(a, c):
            v, k = bundle.factorize(m)
            assert bundle.compose_bun(k, v) == m
            assert bundle.is_vertical(v) and bundle.is_cartesian_bun(k)
            if bundle.is_vertical(m):
                assert finset.is_bijective(k.total_map)
            if bundle.is_cartesian_bun(m):
                assert finset.is_bijective(v.total_map)


def test_reconstruction_from_elements():
    d = parse_dir("3*2^y+4*0^y")
    pi = dirichlet.pi(d)
    named = {bundle.bun_from_element(pi, 2, e) for e in dirichlet.elements(d, 2)}
    assert named == set(bundle.iter_bun(bundle.bang_bundle(2), pi))
    assert len(named) == 12


@given(st.lists(st.integers(0, 4), max_size=5))
def test_monoidal_transform(exps):
    p = Poly(tuple(exps))
    q = Poly(tuple(sorted(exps)[:2]))
    assert bundle.dirichlet_transform(poly.tensor(p, q)) == dirichlet.multiply(
        bundle.dirichlet_transform(p), bundle.dirichlet_transform(q))


def test_json():
    assert Bundle.from_json(EQ10.to_json()) == EQ10
    m = next(iter(bundle.iter_bun(EQ10, EQ10)))
    assert BunMorphism.from_json(m.to_json()) == m
    c = next(iter(bundle.iter_cont(EQ10, EQ10)))
    assert ContMorphism.from_json(c.to_json()) == c
