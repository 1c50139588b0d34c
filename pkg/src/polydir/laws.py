"""Exhaustive law checking on small grids.

Every suite walks a finite grid of instances in a fixed order and stops at the
first instance where the two sides of a law disagree.  Each instance is a
named check with JSON-able parameters, so a counterexample can be replayed
with :func:`recheck`.

Where a canonical bijection is available it is built explicitly and tested
for injectivity, coverage and (where stated) naturality; elsewhere only the
cardinalities are compared.  ``Report.notes`` records which is which.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from . import bundle, dirichlet, expr, finset, poly, topos
from .dirichlet import Dir
from .finset import FinFunction
from .poly import Poly


# -- grid and report -------------------------------------------------------------

@dataclass(frozen=True)
class Grid:
    max_exponent: int = 3    # exponents / bases of the main Poly and Dir grid
    max_terms: int = 3       # number of terms in the main grid
    max_set: int = 3         # size of test sets X, Y
    max_legs: int = 3        # legs of wide (co)spans
    small_exponent: int = 2  # sub-grid for costly element-level checks
    small_terms: int = 2
    max_level: int = 2       # total/base sizes of test bundles

    _KEYS = {"exp": "max_exponent", "terms": "max_terms", "set": "max_set",
             "legs": "max_legs", "small_exp": "small_exponent",
             "small_terms": "small_terms", "level": "max_level"}

    @classmethod
    def parse(cls, spec: str) -> Grid:
        """``"exp=2,terms=2,set=3"``; unnamed fields keep their defaults."""
        values = {}
        for item in filter(None, (s.strip() for s in spec.split(","))):
            key, _, val = item.partition("=")
            if key not in cls._KEYS:
                raise ValueError(f"unknown grid key {key!r}; expected one of {sorted(cls._KEYS)}")
            values[cls._KEYS[key]] = int(val)
        return cls(**values)




@dataclass
class Report:
    suite: str
    status: str
    instances: int
    counterexample: dict | None = None
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        head = f"{self.suite}: {self.status} ({self.instances} instances, {self.elapsed:.2f}s)"
        if self.counterexample:
            head += "\n  counterexample: " + json.dumps(self.counterexample, sort_keys=True)
        return head


class _Failed(Exception):
    pass


class _Run:
    def __init__(self, suite):
        self.suite = suite
        self.instances = 0
        self.counterexample = None
        self.notes = []
        self.t0 = time.perf_counter()

    def check(self, name, params, sides=None):
        self.instances += 1
        lhs, rhs = CHECKS[name](**_decode(params)) if sides is None else sides
        if lhs != rhs:
            self.counterexample = {"check": name, "params": params,
                                   "lhs": _plain(lhs), "rhs": _plain(rhs)}
            raise _Failed

    def bulk(self, name, lhs: np.ndarray, rhs: np.ndarray, params_of):
        """Vectorized comparison; params_of(k) names instance k for replay."""
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            k = int(bad[0])
            self.instances += k + 1
            self.check(name, params_of(k))
            # the scalar replay agreed, so the vectorized path is at fault
            self.counterexample = {"check": name, "params": params_of(k),
                                   "lhs": int(lhs[k]), "rhs": int(rhs[k])}
            raise _Failed
        self.instances += len(lhs)

    def report(self) -> Report:
        return Report(self.suite, "fail" if self.counterexample else "pass", self.instances,
                      self.counterexample, time.perf_counter() - self.t0, self.notes)


def _suite(fn):
    def run(grid: Grid | None = None, seed: int = 0) -> Report:
        r = _Run(fn.__name__.removeprefix("check_"))
        try:
            fn(r, grid or Grid(), seed)
        except _Failed:
            pass
        return r.report()
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _plain(v):
    if isinstance(v, (Poly, Dir)):
        return list(v.terms)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    return v


# Params are JSON: polys/dirs as {"poly": [...]}/{"dir": [...]}, maps as FinFunction JSON.
def _decode(params):
    out = {}
    for k, v in params.items():
        out[k] = _decode_value(v)
    return out


def _decode_value(v):
    if isinstance(v, dict):
        if "poly" in v:
            return Poly.from_json(v)
        if "dir" in v:
            return Dir.from_json(v)
        if "map" in v:
            return FinFunction.from_json(v)
        if "proj" in v:
            return bundle.Bundle.from_json(v)
    if isinstance(v, list) and v and isinstance(v[0], dict):
        return [_decode_value(x) for x in v]
    return v


def _enc(obj):
    if isinstance(obj, (Poly, Dir, FinFunction, bundle.Bundle)):
        return obj.to_json()
    if isinstance(obj, (list, tuple)):
        return [_enc(x) for x in obj]
    return obj


def recheck(counterexample: dict):
    """Recompute (lhs, rhs) of a reported instance."""
    lhs, rhs = CHECKS[counterexample["check"]](**_decode(counterexample["params"]))
    return _plain(lhs), _plain(rhs)


CHECKS = {}


def _check(fn):
    CHECKS[fn.__name__] = fn
    return fn


# -- grids ----------------------------------------------------------------------

def grid_terms(max_value: int, max_terms: int) -> list[tuple[int, ...]]:
    """All descending multisets with at most max_terms entries <= max_value,
    smallest first."""
    out = []
    for k in range(max_terms + 1):
        for combo in combinations_with_replacement(range(max_value + 1), k):
            out.append(tuple(sorted(combo, reverse=True)))
    return out


def grid_polys(max_exponent, max_terms) -> list[Poly]:
    return [Poly(t) for t in grid_terms(max_exponent, max_terms)]


def grid_dirs(max_base, max_terms) -> list[Dir]:
    return [Dir(t) for t in grid_terms(max_base, max_terms)]


def grid_bundles(max_level: int) -> list[bundle.Bundle]:
    return [bundle.Bundle(f) for t in range(max_level + 1) for s in range(max_level + 1)
            for f in finset.iter_maps(s, t)]


def grid_maps(max_set: int):
    return [f for a in range(max_set + 1) for b in range(max_set + 1)
            for f in finset.iter_maps(a, b)]


def _key(m):
    if isinstance(m, poly.PolyMorphism):
        return m.on_positions.map, tuple(d.map for d in m.on_directions)
    if isinstance(m, dirichlet.DirMorphism):
        return m.on_terms.map, tuple(b.map for b in m.on_bases)
    if isinstance(m, bundle.BunMorphism):
        return m.base_map.map, m.total_map.map
    if isinstance(m, bundle.ContMorphism):
        return m.base_map.map, tuple(g.map for g in m.pull_maps)
    raise TypeError(type(m))


_EXPLICIT_LIMIT = 4096


# -- hom formulas -----------------------------------------------------------------

@_check
def example_counts():
    P, Q = expr.parse_poly("2y^2"), expr.parse_poly("y+1")
    D, E = expr.parse_dir("2*2^y"), expr.parse_dir("1+0^y")
    lhs = [poly.hom_count(P, Q), sum(1 for _ in poly.iter_homs(P, Q)),
           poly.hom_count(Q, P), sum(1 for _ in poly.iter_homs(Q, P)),
           dirichlet.hom_count(D, E), sum(1 for _ in dirichlet.iter_homs(D, E)),
           dirichlet.hom_count(E, D), sum(1 for _ in dirichlet.iter_homs(E, D))]
    return lhs, [9, 9, 0, 0, 1, 1, 8, 8]


@_check
def poly_hom(P, Q):
    return sum(1 for _ in poly.iter_homs(P, Q)), poly.hom_count(P, Q)


@_check
def dir_hom(D, E):
    return sum(1 for _ in dirichlet.iter_homs(D, E)), dirichlet.hom_count(D, E)


@_check
def poly_yoneda(k, Q):
    """Poly(y^k, Q) -> Q(k), m |-> m_k(identity of k)."""
    ident = poly.element_index(poly.representable(k), k, (0, tuple(range(k))))
    images = [poly.morphism_component(m, k).map[ident]
              for m in poly.iter_homs(poly.representable(k), Q)]
    n = poly.eval_count(Q, k)
    return (len(images), len(set(images))), (n, n)


@_check
def dir_yoneda(x, E):
    """Dir(x^y, E) -> E(x), m |-> m_x(identity of x)."""
    ident = dirichlet.element_index(dirichlet.representable(x), x, (0, tuple(range(x))))
    images = [dirichlet.morphism_component(m, x).map[ident]
              for m in dirichlet.iter_homs(dirichlet.representable(x), E)]
    n = dirichlet.eval_count(E, x)
    return (len(images), len(set(images))), (n, n)


@_suite
def check_hom_formulas(run, grid, seed):
    """Enumerated hom-sets against the product formulas, plus Yoneda."""
    run.notes.append("hom counts: enumeration vs product formula over the full grid")
    run.notes.append("Yoneda: explicit bijection m |-> m_k(id)")
    run.check("example_counts", {})
    polys = grid_polys(grid.max_exponent, grid.max_terms)
    for P in polys:
        for Q in polys:
            run.check("poly_hom", {"P": _enc(P), "Q": _enc(Q)})
    dirs = grid_dirs(grid.max_exponent, grid.max_terms)
    for D in dirs:
        for E in dirs:
            run.check("dir_hom", {"D": _enc(D), "E": _enc(E)})
    for k in range(grid.max_set + 1):
        for Q in polys:
            run.check("poly_yoneda", {"k": k, "Q": _enc(Q)})
        for E in dirs:
            run.check("dir_yoneda", {"x": k, "E": _enc(E)})


# -- adjunctions ------------------------------------------------------------------

@_check
def tensor_hom_count(P, A, Q):
    return (poly.hom_count(poly.tensor(P, A), Q),
            poly.hom_count(P, poly.internal_hom(A, Q)))


@_check
def tensor_hom_bijection(P, A, Q):
    """Currying Poly(P (x) A, Q) -> Poly(P, [A, Q]) is a bijection with inverse uncurry."""
    left = list(poly.iter_homs(poly.tensor(P, A), Q))
    hom = poly.internal_hom(A, Q)
    right = sum(1 for _ in poly.iter_homs(P, hom))
    curried = [poly.curry_tensor(m, P, A) for m in left]
    back = sum(poly.uncurry_tensor(c, A, Q) == m for c, m in zip(curried, left))
    return (len(left), len({_key(c) for c in curried}), back), (right, right, len(left))


@_check
def tensor_hom_naturality(P, A, Q, P2):
    """curry(m . (u (x) A)) == curry(m) . u for every u: P2 -> P."""
    idA = poly.identity(A)
    bad = 0
    for u in poly.iter_homs(P2, P):
        ut = poly.tensor_morphisms(u, idA)
        for m in poly.iter_homs(poly.tensor(P, A), Q):
            lhs = poly.curry_tensor(poly.compose_morphisms(m, ut), P2, A)
            rhs = poly.compose_morphisms(poly.curry_tensor(m, P, A), u)
            bad += lhs != rhs
    return bad, 0


@_check
def cartesian_closed(P, A, Q):
    return (poly.hom_count(poly.multiply(P, A), Q), poly.hom_count(P, poly.power(Q, A)))


@_check
def gamma(P, n):
    """Poly(P, y^n) -> Fin(n, Gamma(P)) via sections."""
    target = poly.representable(n)
    images = [tuple(poly.sections_of_morphism(m)) for m in poly.iter_homs(P, target)]
    g = poly.global_sections(P)
    return ((len(images), len(set(images)), poly.hom_count(P, poly.Y)),
            (g ** n, g ** n, g))


def _distinct(images):
    return len(images), len(set(images))


@_check
def poly_adjoints(P, n):
    """n y -| P(1) -| n -| P(0) with the bijections m |-> position map / 0-component."""
    lin, const = poly.linear(n), poly.constant(n)
    a = _distinct([m.on_positions.map for m in poly.iter_homs(lin, P)])
    b = _distinct([m.on_positions.map for m in poly.iter_homs(P, const)])
    c = _distinct([poly.morphism_component(m, 0).map for m in poly.iter_homs(const, P)])
    p1, p0 = P.positions(), P.constants()
    return [a, b, c], [(p1 ** n,) * 2, (n ** p1,) * 2, (p0 ** n,) * 2]


@_check
def dir_adjoints(D, n):
    """n 0^y -| D(0) -| n -| D(1) -| n^y with bijections read off 0- and 1-components."""
    zc, const, rep = dirichlet.zero_content(n), dirichlet.constant(n), dirichlet.representable(n)
    a = _distinct([dirichlet.morphism_component(m, 0).map for m in dirichlet.iter_homs(zc, D)])
    b = _distinct([m.on_terms.map for m in dirichlet.iter_homs(D, const)])
    c = _distinct([dirichlet.morphism_component(m, 1).map for m in dirichlet.iter_homs(const, D)])
    d = _distinct([dirichlet.morphism_component(m, 1).map for m in dirichlet.iter_homs(D, rep)])
    d0, d1 = dirichlet.eval_count(D, 0), dirichlet.eval_count(D, 1)
    return [a, b, c, d], [(d0 ** n,) * 2, (n ** D.term_count(),) * 2,
                          (d1 ** n,) * 2, (n ** D.total(),) * 2]


@_check
def dir_adjoint_naturality(D, E, n, n2):
    """Each Dir adjunction bijection commutes with reindexing along g: n2 -> n and
    post/pre-composition with every k: D -> E."""
    bad = 0
    for g in finset.iter_maps(n2, n):
        for m in dirichlet.iter_homs(dirichlet.zero_content(n), D):
            lhs = dirichlet.morphism_component(
                dirichlet.compose_morphisms(m, dirichlet.zero_content_map(g)), 0)
            bad += lhs != finset.compose(dirichlet.morphism_component(m, 0), g)
        for m in dirichlet.iter_homs(dirichlet.constant(n), D):
            lhs = dirichlet.morphism_component(
                dirichlet.compose_morphisms(m, dirichlet.constant_map(g)), 1)
            bad += lhs != finset.compose(dirichlet.morphism_component(m, 1), g)
        for m in dirichlet.iter_homs(D, dirichlet.constant(n2)):
            lhs = dirichlet.compose_morphisms(dirichlet.constant_map(g), m).on_terms
            bad += lhs != finset.compose(g, m.on_terms)
        for m in dirichlet.iter_homs(D, dirichlet.representable(n2)):
            lhs = dirichlet.morphism_component(
                dirichlet.compose_morphisms(dirichlet.representable_map(g), m), 1)
            bad += lhs != finset.compose(g, dirichlet.morphism_component(m, 1))
    for k in dirichlet.iter_homs(D, E):
        k0, k1 = dirichlet.morphism_component(k, 0), dirichlet.morphism_component(k, 1)
        for m in dirichlet.iter_homs(dirichlet.zero_content(n), D):
            lhs = dirichlet.morphism_component(dirichlet.compose_morphisms(k, m), 0)
            bad += lhs != finset.compose(k0, dirichlet.morphism_component(m, 0))
        for m in dirichlet.iter_homs(dirichlet.constant(n), D):
            lhs = dirichlet.morphism_component(dirichlet.compose_morphisms(k, m), 1)
            bad += lhs != finset.compose(k1, dirichlet.morphism_component(m, 1))
        for m in dirichlet.iter_homs(E, dirichlet.constant(n)):
            lhs = dirichlet.compose_morphisms(m, k).on_terms
            bad += lhs != finset.compose(m.on_terms, k.on_terms)
        for m in dirichlet.iter_homs(E, dirichlet.representable(n)):
            lhs = dirichlet.morphism_component(dirichlet.compose_morphisms(m, k), 1)
            bad += lhs != finset.compose(dirichlet.morphism_component(m, 1), k1)
    return bad, 0


@_check
def fully_faithful(a, b):
    """The five functors out of Fin are bijective on hom-sets."""
    maps = list(finset.iter_maps(a, b))
    out, expect = [], []
    for action, target_count in [
        (dirichlet.zero_content_map,
         dirichlet.hom_count(dirichlet.zero_content(a), dirichlet.zero_content(b))),
        (dirichlet.constant_map,
         dirichlet.hom_count(dirichlet.constant(a), dirichlet.constant(b))),
        (dirichlet.representable_map,
         dirichlet.hom_count(dirichlet.representable(a), dirichlet.representable(b))),
    ]:
        out.append(len({_key(action(f)) for f in maps}))
        expect.append(target_count)
    # Poly: n |-> n (constants) and n |-> n y act on maps by the position map
    for P_of in (poly.constant, poly.linear):
        src, tgt = P_of(a), P_of(b)
        homs = list(poly.iter_homs(src, tgt))
        out.append(len({m.on_positions.map for m in homs}))
        expect.append(len(homs))
    return [out, [len(maps)] * 5], [expect, expect]


def _scaled_labels(D, n):
    """Canonical term order of nD as (copy, term) pairs."""
    return dirichlet._canonical([((k, i), d) for k in range(n)
                                 for i, d in enumerate(D.terms)])[1]


@_check
def two_variable(D, E, n):
    """Dir(nD, E) = Dir(D, E^n) = Fin(n, Dir(D, E)); restriction to copies is explicit."""
    nD = dirichlet.scale(n, D)
    h = dirichlet.hom_count(D, E)
    counts = [dirichlet.hom_count(nD, E), dirichlet.hom_count(D, dirichlet.power_n(E, n))]
    explicit = None
    if dirichlet.hom_count(nD, E) <= _EXPLICIT_LIMIT:
        labels = _scaled_labels(D, n)
        where = {lab: t for t, lab in enumerate(labels)}
        images = set()
        for m in dirichlet.iter_homs(nD, E):
            images.add(tuple((tuple(m.on_terms.map[where[(k, i)]] for i in range(D.term_count())),
                              tuple(m.on_bases[where[(k, i)]].map for i in range(D.term_count())))
                             for k in range(n)))
        explicit = len(images)
    return counts + [explicit if explicit is not None else h ** n], [h ** n] * 3


@_check
def two_variable_poly(P, Q, n):
    h = poly.hom_count(P, Q)
    return ([poly.hom_count(poly.scale(n, P), Q), poly.hom_count(P, poly.power_n(Q, n))],
            [h ** n, h ** n])


@_check
def recover_lemma(P, Q):
    """Poly(y^p, Q) = Poly(y, [y^p, Q]) = [y^p, Q](1) = Q(p)."""
    parts = [poly.internal_hom(poly.representable(p), Q).positions() for p in P.terms]
    return [parts, int(np.prod(parts, dtype=object)) if parts else 1], \
        [[poly.eval_count(Q, p) for p in P.terms], poly.hom_count(P, Q)]


@_suite
def check_adjunctions(run, grid, seed):
    """Closed structures, the adjoint quadruple/5-tuple, two-variable adjunctions, Gamma."""
    run.notes += [
        "tensor-hom: cardinality on the full grid; explicit currying bijection and "
        f"naturality in P on the small grid when the hom-set has <= {_EXPLICIT_LIMIT} elements",
        "cartesian closure: cardinality only",
        "Gamma, adjoint quadruple/5-tuple, two-variable: explicit bijections",
        "5-tuple naturality: explicit, in both variables, on the small grid",
    ]
    polys = grid_polys(grid.max_exponent, grid.max_terms)
    small = grid_polys(grid.small_exponent, grid.small_terms)
    for P in polys:
        for Q in polys:
            run.check("recover_lemma", {"P": _enc(P), "Q": _enc(Q)})
    for P, A, Q in itertools.product(small, repeat=3):
        params = {"P": _enc(P), "A": _enc(A), "Q": _enc(Q)}
        run.check("tensor_hom_count", params)
        run.check("cartesian_closed", params)
        left = poly.hom_count(poly.tensor(P, A), Q)
        if left <= _EXPLICIT_LIMIT and poly.internal_hom(A, Q).positions() <= _EXPLICIT_LIMIT:
            run.check("tensor_hom_bijection", params)
            if left <= 64:
                for P2 in (poly.ONE, poly.Y, poly.representable(2)):
                    if poly.hom_count(P2, P) <= 16:
                        run.check("tensor_hom_naturality", dict(params, P2=_enc(P2)))
    for P in polys:
        for n in range(grid.max_set + 1):
            run.check("gamma", {"P": _enc(P), "n": n})
            run.check("poly_adjoints", {"P": _enc(P), "n": n})
    dirs_small = grid_dirs(grid.small_exponent, grid.max_terms)
    for D in dirs_small:
        for n in range(grid.max_set + 1):
            run.check("dir_adjoints", {"D": _enc(D), "n": n})
    tiny = grid_dirs(grid.small_exponent, grid.small_terms)
    for D, E in itertools.product(tiny, repeat=2):
        for n, n2 in itertools.product(range(grid.small_exponent + 1), repeat=2):
            if dirichlet.hom_count(D, E) <= 64:
                run.check("dir_adjoint_naturality",
                          {"D": _enc(D), "E": _enc(E), "n": n, "n2": n2})
    for a in range(grid.max_set + 1):
        for b in range(grid.max_set + 1):
            run.check("fully_faithful", {"a": a, "b": b})
    for D, E in itertools.product(tiny, repeat=2):
        for n in range(grid.max_set + 1):
            run.check("two_variable", {"D": _enc(D), "E": _enc(E), "n": n})
    for P, Q in itertools.product(small, repeat=2):
        for n in range(grid.max_set + 1):
            run.check("two_variable_poly", {"P": _enc(P), "Q": _enc(Q), "n": n})


# -- preservation ------------------------------------------------------------------

@_check
def poly_wide_pullback(P, legs):
    """P(lim X_i) -> lim P(X_i) is a bijection."""
    W, projs = finset.wide_pullback(legs)
    limit, _ = finset.wide_pullback([poly.eval_map(P, leg) for leg in legs])
    comps = [poly.eval_map(P, p).map for p in projs]
    images = set(zip(*comps)) if comps else set()
    n = poly.eval_count(P, W)
    return (n, len(images)), (limit.size, limit.size)


@_check
def dir_wide_pushout(D, legs):
    """D(colim X_i) -> lim D(X_i) is a bijection."""
    W, injs = finset.wide_pushout(legs)
    limit, _ = finset.wide_pullback([dirichlet.eval_map(D, leg) for leg in legs])
    comps = [dirichlet.eval_map(D, j).map for j in injs]
    images = set(zip(*comps))
    n = dirichlet.eval_count(D, W)
    return (n, len(images)), (limit.size, limit.size)


@_check
def reconstruction(D, x):
    """D(X) = Bun(X!, pi_D), with the explicit map (t, h) |-> bundle map."""
    pi = dirichlet.pi(D)
    enumerated = {_key(m) for m in bundle.iter_bun(bundle.bang_bundle(x), pi)}
    named = {_key(bundle.bun_from_element(pi, x, e)) for e in dirichlet.elements(D, x)}
    n = dirichlet.eval_count(D, x)
    return (len(enumerated), len(named), named == enumerated), (n, n, True)


@_check
def points_pushout(D, x):
    """X is the wide pushout of x copies of 0 -> 1, and D(X) is the matching
    wide pullback of copies of pi_D."""
    apex, injs = finset.wide_pushout([finset.empty_map(1)] * x)
    pi = dirichlet.eval_map(D, finset.empty_map(1))
    limit, _ = finset.wide_pullback([pi] * x)
    comps = [dirichlet.eval_map(D, j).map for j in injs]
    images = set(zip(*comps))
    n = dirichlet.eval_count(D, apex)
    return (apex.size, n, len(images)), (x, limit.size, limit.size)


def _legs_into(c, max_set):
    return [f for a in range(max_set + 1) for f in finset.iter_maps(a, c)]


def _legs_out_of(c, max_set):
    return [f for b in range(max_set + 1) for f in finset.iter_maps(c, b)]


def _fiber_counts(f: FinFunction) -> np.ndarray:
    return np.bincount(np.asarray(f.map, dtype=np.int64), minlength=f.cod.size)


def _combos(n_legs: int, max_legs: int) -> list[np.ndarray]:
    """Multisets of leg indices, grouped by number of legs."""
    return [np.array(list(combinations_with_replacement(range(n_legs), k)),
                     dtype=np.int64).reshape(-1, k) for k in range(1, max_legs + 1)]


def _wide_cardinalities(legs, evaluate, count, combos, apex_sizes):
    """Vectorized |F(apex)| against |lim F(legs)| for every multiset of legs.
    The limit of a wide cospan of maps into c has size sum_z prod_i |fiber_i(z)|."""
    C = np.stack([_fiber_counts(evaluate(leg)) for leg in legs])
    table = np.array([count(w) for w in range(int(apex_sizes.max()) + 1)], dtype=np.int64)
    lim = np.concatenate([C[cmb].prod(axis=1).sum(axis=1) for cmb in combos])
    return table[apex_sizes], lim


def _run_wide(run, objects, legs, apex_of, evaluate, count, grid, name, key):
    combos = _combos(len(legs), grid.max_legs)
    flat = [tuple(row) for cmb in combos for row in cmb]
    apex = np.array([apex_of([legs[i] for i in row])[0].size for row in flat], dtype=np.int64)
    for X in objects:
        lhs, rhs = _wide_cardinalities(legs, lambda g: evaluate(X, g),
                                       lambda w: count(X, w), combos, apex)
        run.bulk(name, lhs, rhs,
                 lambda k: {key: _enc(X), "legs": _enc([legs[i] for i in flat[k]])})


@_suite
def check_preservation(run, grid, seed):
    """Polys preserve wide pullbacks; Dirs send wide pushouts to wide pullbacks."""
    run.notes += [
        "cardinality on every wide diagram with <= legs legs over sets <= set, all grid objects",
        "element-level mediating bijection on the small grid with sets <= small_exp",
        "reconstruction D(X) = Bun(X!, pi_D): explicit, X <= set + 1",
    ]
    polys = grid_polys(grid.max_exponent, grid.max_terms)
    dirs = grid_dirs(grid.max_exponent, grid.max_terms)
    # unary and the degenerate empty-domain cases are part of the combos below
    for c in range(grid.max_set + 1):
        _run_wide(run, polys, _legs_into(c, grid.max_set), finset.wide_pullback,
                  lambda P, g: poly.eval_map(P, g), lambda P, w: poly.eval_count(P, w),
                  grid, "poly_wide_pullback", "P")
    for c in range(grid.max_set + 1):
        _run_wide(run, dirs, _legs_out_of(c, grid.max_set), finset.wide_pushout,
                  lambda D, g: dirichlet.eval_map(D, g), lambda D, w: dirichlet.eval_count(D, w),
                  grid, "dir_wide_pushout", "D")
    s = grid.small_exponent
    for P in grid_polys(s, grid.small_terms):
        for c in range(s + 1):
            legs = _legs_into(c, s)
            for k in range(1, grid.max_legs + 1):
                for cmb in combinations_with_replacement(legs, k):
                    run.check("poly_wide_pullback", {"P": _enc(P), "legs": _enc(cmb)})
    for D in grid_dirs(s, grid.small_terms):
        for c in range(s + 1):
            legs = _legs_out_of(c, s)
            for k in range(1, grid.max_legs + 1):
                for cmb in combinations_with_replacement(legs, k):
                    run.check("dir_wide_pushout", {"D": _enc(D), "legs": _enc(cmb)})
    for D in dirs:
        for x in range(grid.max_set + 2):
            run.check("reconstruction", {"D": _enc(D), "x": x})
        for x in range(1, grid.max_set + 1):
            run.check("points_pushout", {"D": _enc(D), "x": x})


# -- equivalences -------------------------------------------------------------------

@_check
def bun_dir_hom(src, tgt):
    """D_- is bijective on Bun(src, tgt) -> Dir(D_src, D_tgt) with inverse functor_D_inverse."""
    ms = list(bundle.iter_bun(src, tgt))
    images = [bundle.functor_D(m) for m in ms]
    back = sum(bundle.functor_D_inverse(n, src, tgt) == m for m, n in zip(ms, images))
    D, E = bundle.dir_of_bundle(src), bundle.dir_of_bundle(tgt)
    ns = list(dirichlet.iter_homs(D, E))
    forth = sum(bundle.functor_D(bundle.functor_D_inverse(n, src, tgt)) == n for n in ns)
    return ((len(ms), len({_key(n) for n in images}), back, forth),
            (len(ns), len(ns), len(ms), len(ns)))


@_check
def cont_poly_hom(src, tgt):
    ms = list(bundle.iter_cont(src, tgt))
    images = [bundle.functor_P(m) for m in ms]
    back = sum(bundle.functor_P_inverse(n, src, tgt) == m for m, n in zip(ms, images))
    P, Q = bundle.poly_of_bundle(src), bundle.poly_of_bundle(tgt)
    ns = list(poly.iter_homs(P, Q))
    forth = sum(bundle.functor_P(bundle.functor_P_inverse(n, src, tgt)) == n for n in ns)
    return ((len(ms), len({_key(n) for n in images}), back, forth),
            (len(ns), len(ns), len(ms), len(ns)))


@_check
def functoriality(a, b, c):
    bad = 0
    bad += bundle.functor_D(bundle.identity_bun(a)) != dirichlet.identity(bundle.dir_of_bundle(a))
    bad += bundle.functor_P(bundle.identity_cont(a)) != poly.identity(bundle.poly_of_bundle(a))
    for m in bundle.iter_bun(a, b):
        Dm = bundle.functor_D(m)
        for n in bundle.iter_bun(b, c):
            bad += (bundle.functor_D(bundle.compose_bun(n, m))
                    != dirichlet.compose_morphisms(bundle.functor_D(n), Dm))
    for m in bundle.iter_cont(a, b):
        Pm = bundle.functor_P(m)
        for n in bundle.iter_cont(b, c):
            bad += (bundle.functor_P(bundle.compose_cont(n, m))
                    != poly.compose_morphisms(bundle.functor_P(n), Pm))
    return bad, 0


@_check
def cartesian_counts(src, tgt):
    """Cartesian morphisms agree in number across Bun, Cont, Dir, Poly, and the
    cartesian equivalence round-trips."""
    buns = [m for m in bundle.iter_bun(src, tgt) if bundle.is_cartesian_bun(m)]
    conts = [m for m in bundle.iter_cont(src, tgt) if bundle.is_cartesian_cont(m)]
    D, E = bundle.dir_of_bundle(src), bundle.dir_of_bundle(tgt)
    P, Q = bundle.poly_of_bundle(src), bundle.poly_of_bundle(tgt)
    dirs = [m for m in dirichlet.iter_homs(D, E) if dirichlet.is_cartesian_dir(m)]
    polys = [m for m in poly.iter_homs(P, Q) if poly.is_cartesian_poly(m)]
    agree = sum(bundle.is_cartesian_bun(m) == dirichlet.is_cartesian_dir(bundle.functor_D(m))
                for m in bundle.iter_bun(src, tgt))
    agree += sum(bundle.is_cartesian_cont(m) == poly.is_cartesian_poly(bundle.functor_P(m))
                 for m in bundle.iter_cont(src, tgt))
    trips = sum(bundle.cart_equivalence(bundle.cart_equivalence(m)) == m
                for m in buns + conts + dirs + polys)
    total = count_all = len(buns)
    return ([len(buns), len(conts), len(dirs), len(polys), agree, trips],
            [count_all, total, total, total,
             bundle.count_bun(src, tgt) + bundle.count_cont(src, tgt),
             len(buns) + len(conts) + len(dirs) + len(polys)])


def _test_maps(max_set):
    return grid_maps(max_set)


@_check
def dir_cartesian_iff(D, E, max_set):
    """cartesian <=> pi-square pullback <=> every naturality square pullback."""
    gs = _test_maps(max_set)
    evD = {g: dirichlet.eval_map(D, g) for g in gs}
    evE = {g: dirichlet.eval_map(E, g) for g in gs}
    bad = 0
    for m in dirichlet.iter_homs(D, E):
        comp = [dirichlet.morphism_component(m, x) for x in range(max_set + 1)]
        a = dirichlet.is_cartesian_dir(m)
        b = finset.is_pullback_square(*dirichlet.pi_square(m))
        c = all(finset.is_pullback_square(comp[g.cod.size], evD[g], evE[g], comp[g.dom.size])
                for g in gs)
        bad += not (a == b == c)
    return bad, 0


@_check
def dir_cartesian_local(D, E):
    """A Dir morphism is the coproduct of its restrictions to single source terms;
    cartesian-ness and the pi-square test are both decided term by term."""
    bad = 0
    for m in dirichlet.iter_homs(D, E):
        parts = [dirichlet.DirMorphism._trusted(
            Dir._trusted((d,)), E, FinFunction.trusted(1, E.term_count(), (m.on_terms.map[i],)),
            (m.on_bases[i],)) for i, d in enumerate(D.terms)]
        local = all(dirichlet.is_cartesian_dir(p) for p in parts)
        bad += local != dirichlet.is_cartesian_dir(m)
        bad += local != finset.is_pullback_square(*dirichlet.pi_square(m))
    return bad, 0


@_check
def poly_cartesian_iff(P, Q, max_set):
    gs = _test_maps(max_set)
    evP = {g: poly.eval_map(P, g) for g in gs}
    evQ = {g: poly.eval_map(Q, g) for g in gs}
    bad = 0
    for m in poly.iter_homs(P, Q):
        comp = [poly.morphism_component(m, x) for x in range(max_set + 1)]
        a = poly.is_cartesian_poly(m)
        c = all(finset.is_pullback_square(comp[g.dom.size], evP[g], evQ[g], comp[g.cod.size])
                for g in gs)
        bad += a != c
    return bad, 0


@_check
def bundle_cartesian_iff(src, tgt):
    """Bun: cartesian (comparison to f^* bijective) <=> square is a pullback per
    an independent wide_pullback computation."""
    bad = 0
    for m in bundle.iter_bun(src, tgt):
        apex, (p, q) = finset.wide_pullback([m.base_map, tgt.proj])
        index = {(p.map[k], q.map[k]): k for k in range(apex.size)}
        comparison = [index[(src.proj.map[x], m.total_map.map[x])]
                      for x in range(src.total.size)]
        bij = sorted(comparison) == list(range(apex.size))
        bad += bij != bundle.is_cartesian_bun(m)
    return bad, 0


@_suite
def check_equivalences(run, grid, seed):
    """Bun = Dir and Cont = Poly on hom-sets, functoriality, cartesian morphisms."""
    run.notes += [
        "hom-set bijections: explicit functor_D / functor_P with inverses, all bundle pairs",
        "cartesian characterization: every Dir morphism with bases <= exp and terms <= "
        "small_terms, every Poly morphism on the small grid; naturality squares over "
        "every g between sets <= set; single-term sources against every grid target; "
        "term-by-term decomposition of the verdict on bases <= small_exp, terms <= terms",
    ]
    bundles = grid_bundles(grid.max_level)
    for a, b in itertools.product(bundles, repeat=2):
        run.check("bun_dir_hom", {"src": _enc(a), "tgt": _enc(b)})
        run.check("cont_poly_hom", {"src": _enc(a), "tgt": _enc(b)})
        run.check("cartesian_counts", {"src": _enc(a), "tgt": _enc(b)})
        run.check("bundle_cartesian_iff", {"src": _enc(a), "tgt": _enc(b)})
    for a, b, c in itertools.product(bundles, repeat=3):
        run.check("functoriality", {"a": _enc(a), "b": _enc(b), "c": _enc(c)})
    for D, E in itertools.product(grid_dirs(grid.max_exponent, grid.small_terms), repeat=2):
        run.check("dir_cartesian_iff", {"D": _enc(D), "E": _enc(E), "max_set": grid.max_set})
    # single-term sources against every grid target: the generators of all grid morphisms
    for d in range(grid.max_exponent + 1):
        for E in grid_dirs(grid.max_exponent, grid.max_terms):
            run.check("dir_cartesian_iff", {"D": _enc(Dir((d,))), "E": _enc(E), "max_set": grid.max_set})
    for D, E in itertools.product(grid_dirs(grid.small_exponent, grid.max_terms), repeat=2):
        if dirichlet.hom_count(D, E) <= _EXPLICIT_LIMIT:
            run.check("dir_cartesian_local", {"D": _enc(D), "E": _enc(E)})
    for P, Q in itertools.product(grid_polys(grid.small_exponent, grid.small_terms), repeat=2):
        run.check("poly_cartesian_iff", {"P": _enc(P), "Q": _enc(Q), "max_set": grid.max_set})


# -- algebra -------------------------------------------------------------------------

@_check
def pointwise(P, Q, max_set):
    D, E = bundle.dirichlet_transform(P), bundle.dirichlet_transform(Q)
    xs = range(max_set + 2)
    lhs = ([poly.eval_count(poly.add(P, Q), x) for x in xs],
           [poly.eval_count(poly.multiply(P, Q), x) for x in xs],
           [dirichlet.eval_count(dirichlet.add(D, E), x) for x in xs],
           [dirichlet.eval_count(dirichlet.multiply(D, E), x) for x in xs])
    rhs = ([P(x) + Q(x) for x in xs], [P(x) * Q(x) for x in xs],
           [D(x) + E(x) for x in xs], [D(x) * E(x) for x in xs])
    return lhs, rhs


@_check
def transform_monoidal(P, Q):
    return (bundle.dirichlet_transform(poly.tensor(P, Q)),
            dirichlet.multiply(bundle.dirichlet_transform(P), bundle.dirichlet_transform(Q)))


@_check
def units(P):
    D = bundle.dirichlet_transform(P)
    return ([poly.tensor(P, poly.Y), poly.tensor(poly.Y, P), poly.multiply(P, poly.ONE),
             poly.substitute(P, poly.Y), poly.substitute(poly.Y, P), poly.add(P, poly.ZERO),
             dirichlet.multiply(D, dirichlet.ONE), dirichlet.add(D, dirichlet.ZERO)],
            [P] * 6 + [D] * 2)


@_check
def ring_laws(P, Q, R):
    lhs = [poly.add(P, Q), poly.multiply(P, Q), poly.tensor(P, Q),
           poly.add(poly.add(P, Q), R), poly.multiply(poly.multiply(P, Q), R),
           poly.tensor(poly.tensor(P, Q), R),
           poly.multiply(P, poly.add(Q, R)), poly.tensor(P, poly.add(Q, R)),
           poly.substitute(poly.substitute(P, Q), R)]
    rhs = [poly.add(Q, P), poly.multiply(Q, P), poly.tensor(Q, P),
           poly.add(P, poly.add(Q, R)), poly.multiply(P, poly.multiply(Q, R)),
           poly.tensor(P, poly.tensor(Q, R)),
           poly.add(poly.multiply(P, Q), poly.multiply(P, R)),
           poly.add(poly.tensor(P, Q), poly.tensor(P, R)),
           poly.substitute(P, poly.substitute(Q, R))]
    return lhs, rhs


@_check
def substitute_eval(P, Q, max_set):
    S = poly.substitute(P, Q)
    xs = range(max_set + 1)
    return [S(x) for x in xs], [P(Q(x)) for x in xs]


@_check
def decomposition(P):
    parts = poly.decompose(P)
    D = bundle.dirichlet_transform(P)
    dparts = dirichlet.decompose(D)
    return ([poly.sum_all(q for _, q in parts), [q for _, q in parts],
             dirichlet.sum_all(e for _, e in dparts), [e for _, e in dparts]],
            [P, [poly.representable(p) for p in P.terms],
             D, [dirichlet.representable(d) for d in D.terms]])


@_check
def roundtrips(P):
    D = bundle.dirichlet_transform(P)
    b = bundle.bundle_of_poly(P)
    return ([expr.parse_poly(expr.format_poly(P)), expr.parse_dir(expr.format_dir(D)),
             bundle.inverse_transform(D), bundle.poly_of_bundle(b), bundle.dir_of_bundle(b),
             bundle.bundle_of_dir(bundle.dir_of_bundle(b))],
            [P, D, P, P, D, b])


@_suite
def check_algebra(run, grid, seed):
    """Sums, products, tensor, composition, transform and decomposition."""
    run.notes += ["pointwise evaluation for X <= set + 1; ring laws on the small grid triples",
                  f"random round-trips: 50 objects from seed {seed}"]
    polys = grid_polys(grid.max_exponent, grid.max_terms)
    for P in polys:
        run.check("units", {"P": _enc(P)})
        run.check("decomposition", {"P": _enc(P)})
        run.check("roundtrips", {"P": _enc(P)})
    for P, Q in itertools.product(polys, repeat=2):
        run.check("pointwise", {"P": _enc(P), "Q": _enc(Q), "max_set": grid.max_set})
        run.check("transform_monoidal", {"P": _enc(P), "Q": _enc(Q)})
    small = grid_polys(grid.small_exponent, grid.small_terms)
    for P, Q in itertools.product(small, repeat=2):
        run.check("substitute_eval", {"P": _enc(P), "Q": _enc(Q), "max_set": grid.max_set})
    for P, Q, R in itertools.product(small, repeat=3):
        run.check("ring_laws", {"P": _enc(P), "Q": _enc(Q), "R": _enc(R)})
    rng = random.Random(seed)
    for _ in range(50):
        P = Poly(tuple(rng.randint(0, 6) for _ in range(rng.randint(0, 6))))
        run.check("roundtrips", {"P": _enc(P)})


# -- topos ----------------------------------------------------------------------------

@_check
def classifier(F):
    """|Sub(F)| = |Bun(F, Omega)|; classify and pulling back truth are inverse."""
    om, truth = topos.omega()
    subs = topos.enumerate_subobjects(F)
    chis = list(bundle.iter_bun(F, om))
    back = sum(topos.subobject_of(topos.classify(w)) == w for w in subs)
    forth = sum(topos.classify(topos.subobject_of(chi)) == chi for chi in chis)
    pulled = sum(topos.pullback_of_point(topos.classify(w), truth)
                 == (w.total_subset, w.base_subset) for w in subs)
    return (len(subs), back, forth, pulled), (len(chis), len(subs), len(chis), len(subs))


@_check
def exponential_adjunction(G, F, E):
    """Bun(G x F, E) = Bun(G, E^F) by curry/uncurry, exactly."""
    exp = topos.exponential(E, F)
    GF = topos.limits_bun("product", [G, F])[0]
    left = list(bundle.iter_bun(GF, E))
    curried = [topos.curry(m, G, F, exp) for m in left]
    back = sum(topos.uncurry(c, F, exp) == m for c, m in zip(curried, left))
    right = bundle.count_bun(G, exp.bundle)
    return (len(left), len({_key(c) for c in curried}), back), (right, right, len(left))


@_suite
def check_topos(run, grid, seed):
    """Subobject classifier and exponentials on bundles."""
    run.notes += ["classifier: explicit classify/subobject_of on bundles with levels <= set",
                  "exponentials: explicit curry/uncurry, levels <= level"]
    for F in grid_bundles(grid.max_set):
        run.check("classifier", {"F": _enc(F)})
    small = grid_bundles(grid.max_level)
    for G, F, E in itertools.product(small, repeat=3):
        if bundle.count_bun(F, E) <= _EXPLICIT_LIMIT:
            run.check("exponential_adjunction", {"G": _enc(G), "F": _enc(F), "E": _enc(E)})


# -- running and mutation ----------------------------------------------------------------

SUITES = {
    "hom_formulas": check_hom_formulas,
    "adjunctions": check_adjunctions,
    "preservation": check_preservation,
    "equivalences": check_equivalences,
    "algebra": check_algebra,
    "topos": check_topos,
}


def _bad_hom_count(P, Q):
    return sum(poly.eval_count(Q, p) for p in P.terms) if P.terms else 1


def _bad_internal_hom(A, Q):
    return poly.product_all(Q for _ in A.terms)


def _bad_dir_eval(D, X):
    x = finset.as_finset(X).size
    return sum(d ** x for d in D.terms if d)


def _bad_functor_D(m):
    n = _ORIGINALS["functor_D"](m)
    bases = tuple(FinFunction.trusted(b.dom.size, b.cod.size, (0,) * b.dom.size)
                  for b in n.on_bases)
    return dirichlet.DirMorphism._trusted(n.source, n.target, n.on_terms, bases)


def _bad_tensor(P, Q):
    return Poly(tuple(p + q for p in P.terms for q in Q.terms))


def _bad_classify(w):
    chi = _ORIGINALS["classify"](w)
    total = tuple(topos.NOW if v == topos.LATER else v for v in chi.total_map.map)
    return bundle.BunMorphism._trusted(chi.source, chi.target, chi.base_map,
                                       FinFunction.trusted(len(total), 3, total))


MUTATIONS = {
    "hom_count": (poly, "hom_count", _bad_hom_count),
    "internal_hom": (poly, "internal_hom", _bad_internal_hom),
    "dir_eval_zero": (dirichlet, "eval_count", _bad_dir_eval),
    "functor_D": (bundle, "functor_D", _bad_functor_D),
    "tensor": (poly, "tensor", _bad_tensor),
    "classify": (topos, "classify", _bad_classify),
}

# which seeded corruption each suite is guaranteed to catch
SUITE_MUTATIONS = {
    "hom_formulas": "hom_count",
    "adjunctions": "internal_hom",
    "preservation": "dir_eval_zero",
    "equivalences": "functor_D",
    "algebra": "tensor",
    "topos": "classify",
}

_ORIGINALS = {}


@contextmanager
def mutation(name: str | None):
    """Swap one library formula for a deliberately wrong one (not thread-safe)."""
    if name is None:
        yield
        return
    module, attr, bad = MUTATIONS[name]
    original = getattr(module, attr)
    _ORIGINALS[name] = original
    setattr(module, attr, bad)
    try:
        yield
    finally:
        setattr(module, attr, original)
        _ORIGINALS.pop(name, None)


def run_suite(name: str, grid: Grid | None = None, seed: int = 0,
              mutate: str | None = None) -> Report:
    with mutation(mutate):
        return SUITES[name](grid, seed)


def run_all(grid: Grid | None = None, seed: int = 0, mutate: str | None = None) -> list[Report]:
    return [run_suite(name, grid, seed, mutate) for name in SUITES]
