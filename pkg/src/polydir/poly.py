"""Polynomial functors Fin -> Fin and the morphisms between them.

A polynomial is stored as its descending multiset of exponents, so
``2y^3 + y + 5`` is ``Poly((3, 3, 1, 0, 0, 0, 0, 0))``.  Position ``i``
carries the direction set ``{0, ..., p_i - 1}``.

A morphism ``P -> Q`` sends each position ``i`` of P forward to a position
``f(i)`` of Q and pulls the directions of ``f(i)`` back to those of ``i``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterator, Sequence

from . import finset
from .errors import DomainMismatch
from .finset import FinFunction, FinSet, as_finset, check_budget

_new = object.__new__
_set = object.__setattr__


@dataclass(frozen=True, slots=True)
class Poly:
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if not isinstance(t, int) or t < 0:
                raise ValueError(f"exponents must be natural numbers, got {t!r}")
        object.__setattr__(self, "terms", tuple(sorted(terms, reverse=True)))

    @classmethod
    def _trusted(cls, terms: tuple) -> Poly:
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def from_coefficients(cls, coefficients: dict[int, int]) -> Poly:
        """``{3: 2, 1: 1, 0: 5}`` is 2y^3 + y + 5."""
        return cls(tuple(e for e, a in coefficients.items() for _ in range(a)))

    def positions(self) -> int:
        """P(1), the number of terms."""
        return len(self.terms)

    def constants(self) -> int:
        """P(0), the constant term."""
        return self.terms.count(0)

    def coefficients(self) -> dict[int, int]:
        return dict(sorted(Counter(self.terms).items(), reverse=True))

    def __call__(self, x) -> int:
        return eval_count(self, x)

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        from .expr import format_poly
        return format_poly(self)

    def to_json(self) -> dict:
        return {"poly": list(self.terms)}

    @classmethod
    def from_json(cls, data: dict) -> Poly:
        return cls(tuple(data["poly"]))


ZERO = Poly(())
ONE = Poly((0,))
Y = Poly((1,))


def representable(k: int) -> Poly:
    """y^k"""
    return Poly._trusted((k,))


def constant(n: int) -> Poly:
    return Poly._trusted((0,) * n)


def linear(n: int) -> Poly:
    """n*y"""
    return Poly._trusted((1,) * n)


def _canonical(labelled: Sequence[tuple[object, int]]) -> tuple[Poly, list]:
    """Sort (label, exponent) pairs into canonical position order (stable)."""
    order = sorted(range(len(labelled)), key=lambda k: -labelled[k][1])
    return (Poly._trusted(tuple(labelled[k][1] for k in order)),
            [labelled[k][0] for k in order])


# -- evaluation ---------------------------------------------------------------

def eval_count(P: Poly, X) -> int:
    x = as_finset(X).size
    return sum(x ** p for p in P.terms)


def eval_obj(P: Poly, X) -> FinSet:
    return FinSet(eval_count(P, X))


def _offsets(P: Poly, x: int) -> list[int]:
    return list(itertools.accumulate((x ** p for p in P.terms), initial=0))


def _code(h, base: int) -> int:
    c = 0
    for v in h:
        c = c * base + v
    return c


def elements(P: Poly, X, limit: int | None = None) -> list[tuple[int, tuple]]:
    """The element table of P(X): pairs (term index, function p_i -> X as a tuple),
    ordered by term and then lexicographically."""
    x = as_finset(X).size
    check_budget(eval_count(P, x), limit)
    return [(i, h) for i, p in enumerate(P.terms)
            for h in itertools.product(range(x), repeat=p)]


def element_index(P: Poly, X, element: tuple[int, tuple]) -> int:
    x = as_finset(X).size
    i, h = element
    return _offsets(P, x)[i] + _code(h, x)


def eval_map(P: Poly, g: FinFunction) -> FinFunction:
    """P(g): P(X) -> P(Y), post-composing every element with g."""
    x, y = g.dom.size, g.cod.size
    check_budget(eval_count(P, x))
    out_off = _offsets(P, y)
    gm = g.map
    images = []
    for i, p in enumerate(P.terms):
        for h in itertools.product(gm, repeat=p):
            images.append(out_off[i] + _code(h, y))
    return FinFunction.trusted(eval_count(P, x), eval_count(P, y), tuple(images))


# -- morphisms ----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class PolyMorphism:
    source: Poly
    target: Poly
    on_positions: FinFunction
    on_directions: tuple

    def __post_init__(self):
        object.__setattr__(self, "on_directions", tuple(self.on_directions))
        f = self.on_positions
        if f.dom.size != self.source.positions() or f.cod.size != self.target.positions():
            raise DomainMismatch("position map does not match source/target positions")
        if len(self.on_directions) != f.dom.size:
            raise DomainMismatch("need one direction map per source position")
        for i, d in enumerate(self.on_directions):
            if d.dom.size != self.target.terms[f.map[i]] or d.cod.size != self.source.terms[i]:
                raise DomainMismatch(
                    f"direction map at position {i} must go "
                    f"{self.target.terms[f.map[i]]} -> {self.source.terms[i]}")

    @classmethod
    def _trusted(cls, source, target, on_positions, on_directions) -> PolyMorphism:
        m = _new(cls)
        _set(m, "source", source)
        _set(m, "target", target)
        _set(m, "on_positions", on_positions)
        _set(m, "on_directions", on_directions)
        return m

    def __str__(self):
        parts = [f"{i + 1}->{j + 1} {d}" for i, (j, d) in
                 enumerate(zip(self.on_positions.map, self.on_directions))]
        return f"({self.source}) -> ({self.target}): " + "; ".join(parts)

    def to_json(self) -> dict:
        return {
            "source": list(self.source.terms),
            "target": list(self.target.terms),
            "on_positions": list(self.on_positions.map),
            "on_directions": [list(d.map) for d in self.on_directions],
        }

    @classmethod
    def from_json(cls, data: dict) -> PolyMorphism:
        P, Q = Poly(tuple(data["source"])), Poly(tuple(data["target"]))
        f = FinFunction(P.positions(), Q.positions(), tuple(data["on_positions"]))
        dirs = tuple(FinFunction(Q.terms[j], P.terms[i], tuple(d))
                     for i, (j, d) in enumerate(zip(f.map, data["on_directions"])))
        return cls(P, Q, f, dirs)


def identity(P: Poly) -> PolyMorphism:
    return PolyMorphism._trusted(P, P, finset.identity(P.positions()),
                                 tuple(finset.identity(p) for p in P.terms))


def from_zero(Q: Poly) -> PolyMorphism:
    return PolyMorphism._trusted(ZERO, Q, finset.empty_map(Q.positions()), ())


def hom_count(P: Poly, Q: Poly) -> int:
    """|Poly(P, Q)| = prod_i Q(p_i)."""
    return prod(eval_count(Q, p) for p in P.terms)


def _choices(P: Poly, Q: Poly) -> list[list[tuple[int, FinFunction]]]:
    cache = {}
    out = []
    for p in P.terms:
        if p not in cache:
            cache[p] = [(j, h) for j, q in enumerate(Q.terms) for h in finset.iter_maps(q, p)]
        out.append(cache[p])
    return out


def iter_homs(P: Poly, Q: Poly) -> Iterator[PolyMorphism]:
    """Lazily enumerate Poly(P, Q); position-major, each position choosing an
    element of Q(p_i) in element-table order."""
    n, m = P.positions(), Q.positions()
    if not P.terms:
        yield PolyMorphism._trusted(P, Q, FinFunction.trusted(0, m, ()), ())
        return
    make, fun = PolyMorphism._trusted, FinFunction.trusted
    for choice in itertools.product(*_choices(P, Q)):
        js, hs = zip(*choice)
        yield make(P, Q, fun(n, m, js), hs)


def hom_enumerate(P: Poly, Q: Poly, limit: int | None = None) -> list[PolyMorphism]:
    check_budget(hom_count(P, Q), limit)
    return list(iter_homs(P, Q))


def morphism_component(m: PolyMorphism, X) -> FinFunction:
    """The X-component P(X) -> Q(X): (i, h) |-> (f(i), h . f#_i)."""
    x = as_finset(X).size
    P, Q = m.source, m.target
    check_budget(eval_count(P, x))
    out_off = _offsets(Q, x)
    images = []
    for i, p in enumerate(P.terms):
        j = m.on_positions.map[i]
        back = m.on_directions[i].map
        base = out_off[j]
        for h in itertools.product(range(x), repeat=p):
            images.append(base + _code([h[b] for b in back], x))
    return FinFunction.trusted(eval_count(P, x), eval_count(Q, x), tuple(images))


def compose_morphisms(n: PolyMorphism, m: PolyMorphism) -> PolyMorphism:
    """n after m: positions go forward, directions come back."""
    if m.target != n.source:
        raise DomainMismatch("morphisms are not composable")
    f = finset.compose(n.on_positions, m.on_positions)
    dirs = tuple(finset.compose(m.on_directions[i], n.on_directions[j])
                 for i, j in enumerate(m.on_positions.map))
    return PolyMorphism._trusted(m.source, n.target, f, dirs)


def is_cartesian_poly(m: PolyMorphism) -> bool:
    return all(finset.is_bijective(d) for d in m.on_directions)


def is_mono(m: PolyMorphism) -> bool:
    return (finset.is_injective(m.on_positions)
            and all(finset.is_surjective(d) for d in m.on_directions))


# -- algebra ------------------------------------------------------------------

def add(P: Poly, Q: Poly) -> Poly:
    return Poly(P.terms + Q.terms)


def sum_all(polys) -> Poly:
    return Poly(tuple(t for P in polys for t in P.terms))


def multiply(P: Poly, Q: Poly) -> Poly:
    return Poly(tuple(p + q for p in P.terms for q in Q.terms))


def product_all(polys) -> Poly:
    out = ONE
    for P in polys:
        out = multiply(out, P)
    return out


def scale(n: int, P: Poly) -> Poly:
    """n-fold coproduct nP."""
    return Poly(P.terms * n)


def power_n(P: Poly, n: int) -> Poly:
    """n-fold product P^n."""
    return product_all([P] * n)


def substitute(P: Poly, Q: Poly) -> Poly:
    """The composite P . Q, i.e. X |-> P(Q(X))."""
    check_budget(eval_count(P, Q.positions()))
    powers = {}
    out = []
    for p in P.terms:
        if p not in powers:
            powers[p] = power_n(Q, p)
        out.extend(powers[p].terms)
    return Poly(tuple(out))


def tensor(P: Poly, Q: Poly) -> Poly:
    """Dirichlet product: exponents multiply."""
    return Poly(tuple(p * q for p in P.terms for q in Q.terms))


def tensor_positions(P: Poly, Q: Poly) -> list[tuple[int, int]]:
    """Canonical position order of P (x) Q as (i, j) pairs.  The directions at
    (i, j) are p_i x q_j with (a, b) stored at a * q_j + b."""
    return _canonical([((i, j), p * q) for i, p in enumerate(P.terms)
                       for j, q in enumerate(Q.terms)])[1]


def tensor_morphisms(u: PolyMorphism, v: PolyMorphism) -> PolyMorphism:
    src = tensor(u.source, v.source)
    tgt = tensor(u.target, v.target)
    tgt_index = {lab: t for t, lab in enumerate(tensor_positions(u.target, v.target))}
    positions = []
    dirs = []
    for i, k in tensor_positions(u.source, v.source):
        j, l = u.on_positions.map[i], v.on_positions.map[k]
        positions.append(tgt_index[(j, l)])
        du, dv = u.on_directions[i], v.on_directions[k]
        width_src = v.source.terms[k]
        width_tgt = v.target.terms[l]
        images = tuple(du.map[x // width_tgt] * width_src + dv.map[x % width_tgt]
                       for x in range(u.target.terms[j] * width_tgt))
        dirs.append(FinFunction.trusted(len(images), u.source.terms[i] * width_src, images))
    return PolyMorphism._trusted(src, tgt, FinFunction.trusted(src.positions(), tgt.positions(),
                                                               tuple(positions)), tuple(dirs))


def _substitute_linear(Q: Poly, a: int) -> Counter:
    """Q . (a y): exponent q_j with multiplicity a^q_j."""
    c = Counter()
    for q in Q.terms:
        c[q] += a ** q
    return c


def internal_hom(A: Poly, Q: Poly) -> Poly:
    """[A, Q] = prod_i Q . (a_i y), the right adjoint of (- (x) A)."""
    check_budget(prod(eval_count(Q, a) for a in A.terms))
    return _internal_hom(A, Q)


@lru_cache(maxsize=1024)
def _internal_hom(A: Poly, Q: Poly) -> Poly:
    acc = Counter({0: 1})
    for a in A.terms:
        factor = _substitute_linear(Q, a)
        nxt = Counter()
        for e1, m1 in acc.items():
            for e2, m2 in factor.items():
                nxt[e1 + e2] += m1 * m2
        acc = nxt
    return Poly(tuple(e for e, mult in acc.items() for _ in range(mult)))


def internal_hom_positions(A: Poly, Q: Poly) -> list[tuple]:
    """Canonical position order of [A, Q]; a position is a tuple over the terms
    k of A of pairs (j_k, c_k) with c_k: q_{j_k} -> a_k (as an image tuple).
    Its directions are the coproduct of the q_{j_k}, in k order."""
    check_budget(prod(eval_count(Q, a) for a in A.terms))
    per_term = [[(j, c) for j, q in enumerate(Q.terms)
                 for c in itertools.product(range(a), repeat=q)] for a in A.terms]
    labelled = [(lab, sum(Q.terms[j] for j, _ in lab)) for lab in itertools.product(*per_term)]
    return _canonical(labelled)[1]


@lru_cache(maxsize=512)
def _index_of(labels_fn, X: Poly, Y: Poly) -> dict:
    return {lab: t for t, lab in enumerate(labels_fn(X, Y))}


def curry_tensor(m: PolyMorphism, P: Poly, A: Poly) -> PolyMorphism:
    """Transpose of m: P (x) A -> Q to P -> [A, Q]."""
    Q = m.target
    if m.source != tensor(P, A):
        raise DomainMismatch("source of m must be P (x) A")
    hom = internal_hom(A, Q)
    hom_index = _index_of(internal_hom_positions, A, Q)
    src_index = _index_of(tensor_positions, P, A)
    positions, dirs = [], []
    for i, p in enumerate(P.terms):
        label, back = [], []
        for k, a in enumerate(A.terms):
            t = src_index[(i, k)]
            j = m.on_positions.map[t]
            d = m.on_directions[t].map
            if a:
                label.append((j, tuple(v % a for v in d)))
                back.extend(v // a for v in d)
            else:
                label.append((j, ()))
        positions.append(hom_index[tuple(label)])
        dirs.append(FinFunction.trusted(len(back), p, tuple(back)))
    return PolyMorphism._trusted(P, hom, FinFunction.trusted(P.positions(), hom.positions(),
                                                             tuple(positions)), tuple(dirs))


@lru_cache(maxsize=512)
def _labels_of(A: Poly, Q: Poly) -> list:
    return internal_hom_positions(A, Q)


def uncurry_tensor(n: PolyMorphism, A: Poly, Q: Poly) -> PolyMorphism:
    """Inverse of :func:`curry_tensor`; Q is needed since [A, Q] does not determine it."""
    if n.target != internal_hom(A, Q):
        raise DomainMismatch("target of n must be [A, Q]")
    P = n.source
    labels = _labels_of(A, Q)
    src = tensor(P, A)
    positions, dirs = [], []
    for i, k in tensor_positions(P, A):
        label = labels[n.on_positions.map[i]]
        e = n.on_directions[i].map
        offset = sum(Q.terms[j] for j, _ in label[:k])
        j, c = label[k]
        a = A.terms[k]
        images = tuple(e[offset + v] * a + c[v] for v in range(Q.terms[j]))
        positions.append(j)
        dirs.append(FinFunction.trusted(len(images), P.terms[i] * a, images))
    return PolyMorphism._trusted(src, Q, FinFunction.trusted(src.positions(), Q.positions(),
                                                             tuple(positions)), tuple(dirs))


def power(Q: Poly, A: Poly) -> Poly:
    """Cartesian exponential Q^A = prod_i Q . (a_i + y)."""
    check_budget(prod(eval_count(Q, a + 1) for a in A.terms))
    return product_all(substitute(Q, add(constant(a), Y)) for a in A.terms)


def global_sections(P: Poly) -> int:
    """Gamma(P) = Poly(P, y) = prod_i p_i."""
    return prod(P.terms)


def sections_of_morphism(m: PolyMorphism) -> list[tuple[int, ...]]:
    """Poly(P, y^n) -> Fin(n, Gamma(P)): direction d of y^n gives the section
    i |-> f#_i(d), an element of prod_i p_i."""
    n = m.target.terms[0] if m.target.positions() == 1 else None
    if n is None:
        raise DomainMismatch("target must be a representable y^n")
    return [tuple(d.map[k] for d in m.on_directions) for k in range(n)]


# -- limits -------------------------------------------------------------------

def pullback_poly(f: PolyMorphism, g: PolyMorphism) -> tuple[Poly, PolyMorphism, PolyMorphism]:
    """P x_H Q: positions are pairs over a common position of H, directions are
    the pushout of the two direction maps out of that position's directions."""
    if f.target != g.target:
        raise DomainMismatch("pullback needs a common target")
    P, Q = f.source, g.source
    labelled = []
    for i in range(P.positions()):
        for j in range(Q.positions()):
            if f.on_positions.map[i] == g.on_positions.map[j]:
                apex, (ip, iq) = finset.wide_pushout([f.on_directions[i], g.on_directions[j]])
                labelled.append(((i, j, ip, iq), apex.size))
    R, labels = _canonical(labelled)
    n = R.positions()
    to_p = PolyMorphism._trusted(R, P, FinFunction.trusted(n, P.positions(),
                                                           tuple(lab[0] for lab in labels)),
                                 tuple(lab[2] for lab in labels))
    to_q = PolyMorphism._trusted(R, Q, FinFunction.trusted(n, Q.positions(),
                                                           tuple(lab[1] for lab in labels)),
                                 tuple(lab[3] for lab in labels))
    return R, to_p, to_q


def unit(P: Poly) -> PolyMorphism:
    """eta_P: P -> P(1), collapsing every term to a constant."""
    n = P.positions()
    return PolyMorphism._trusted(P, constant(n), finset.identity(n),
                                 tuple(finset.empty_map(p) for p in P.terms))


def point(n: int, i: int) -> PolyMorphism:
    """The element 'i' of the constant polynomial n, as a map 1 -> n."""
    return PolyMorphism._trusted(ONE, constant(n), FinFunction(1, n, (i,)),
                                 (finset.empty_map(0),))


def decompose(P: Poly) -> list[tuple[int, Poly]]:
    """P as the sum over i of P x_{P(1)} 'i'; each part is y^{p_i}."""
    eta = unit(P)
    return [(i, pullback_poly(eta, point(P.positions(), i))[0]) for i in range(P.positions())]
