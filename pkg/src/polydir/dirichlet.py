"""Dirichlet polynomials Fin^op -> Fin and their morphisms.

``3*2^y + 4*0^y`` is stored as ``Dir((2, 2, 2, 0, 0, 0, 0))``: one base per
term, descending.  A morphism D -> E sends term i of D to a term f(i) of E
and maps the base d_i forward into e_{f(i)}.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

from . import finset
from .errors import DomainMismatch
from .finset import FinFunction, FinSet, as_finset, check_budget

_new = object.__new__
_set = object.__setattr__


@dataclass(frozen=True, slots=True)
class Dir:
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if not isinstance(t, int) or t < 0:
                raise ValueError(f"bases must be natural numbers, got {t!r}")
        object.__setattr__(self, "terms", tuple(sorted(terms, reverse=True)))

    @classmethod
    def _trusted(cls, terms: tuple) -> Dir:
        d = _new(cls)
        _set(d, "terms", terms)
        return d

    @classmethod
    def from_coefficients(cls, coefficients: dict[int, int]) -> Dir:
        """``{2: 3, 0: 4}`` is 3*2^y + 4*0^y."""
        return cls(tuple(b for b, a in coefficients.items() for _ in range(a)))

    def term_count(self) -> int:
        """D(0)"""
        return len(self.terms)

    def total(self) -> int:
        """D(1)"""
        return sum(self.terms)

    def zero_content(self) -> int:
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
        from .expr import format_dir
        return format_dir(self)

    def to_json(self) -> dict:
        return {"dir": list(self.terms)}

    @classmethod
    def from_json(cls, data: dict) -> Dir:
        return cls(tuple(data["dir"]))


ZERO = Dir(())
ONE = Dir((1,))


def representable(n: int) -> Dir:
    """n^y"""
    return Dir._trusted((n,))


def constant(n: int) -> Dir:
    """n, i.e. n * 1^y"""
    return Dir._trusted((1,) * n)


def zero_content(n: int) -> Dir:
    """n * 0^y"""
    return Dir._trusted((0,) * n)


def _canonical(labelled: Sequence[tuple[object, int]]) -> tuple[Dir, list]:
    order = sorted(range(len(labelled)), key=lambda k: -labelled[k][1])
    return (Dir._trusted(tuple(labelled[k][1] for k in order)),
            [labelled[k][0] for k in order])


# -- evaluation ---------------------------------------------------------------

def eval_count(D: Dir, X) -> int:
    x = as_finset(X).size
    return sum(d ** x for d in D.terms)


def eval_obj(D: Dir, X) -> FinSet:
    return FinSet(eval_count(D, X))


def _offsets(D: Dir, x: int) -> list[int]:
    return list(itertools.accumulate((d ** x for d in D.terms), initial=0))


def _code(h, base: int) -> int:
    c = 0
    for v in h:
        c = c * base + v
    return c


def elements(D: Dir, X, limit: int | None = None) -> list[tuple[int, tuple]]:
    """Element table of D(X): (term index, function X -> d_i as a tuple)."""
    x = as_finset(X).size
    check_budget(eval_count(D, x), limit)
    return [(i, h) for i, d in enumerate(D.terms)
            for h in itertools.product(range(d), repeat=x)]


def element_index(D: Dir, X, element: tuple[int, tuple]) -> int:
    i, h = element
    x = as_finset(X).size
    return _offsets(D, x)[i] + _code(h, D.terms[i])


def eval_map(D: Dir, g: FinFunction) -> FinFunction:
    """D(g): D(X') -> D(X) for g: X -> X', precomposing with g."""
    x, x2 = g.dom.size, g.cod.size
    check_budget(eval_count(D, x2))
    src_off = _offsets(D, x2)
    out_off = _offsets(D, x)
    images = [0] * src_off[-1]
    k = 0
    for i, d in enumerate(D.terms):
        base = out_off[i]
        for h in itertools.product(range(d), repeat=x2):
            images[k] = base + _code([h[v] for v in g.map], d)
            k += 1
    return FinFunction.trusted(src_off[-1], out_off[-1], tuple(images))


# -- morphisms ----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class DirMorphism:
    source: Dir
    target: Dir
    on_terms: FinFunction
    on_bases: tuple

    def __post_init__(self):
        object.__setattr__(self, "on_bases", tuple(self.on_bases))
        f = self.on_terms
        if f.dom.size != self.source.term_count() or f.cod.size != self.target.term_count():
            raise DomainMismatch("term map does not match source/target term counts")
        if len(self.on_bases) != f.dom.size:
            raise DomainMismatch("need one base map per source term")
        for i, b in enumerate(self.on_bases):
            if b.dom.size != self.source.terms[i] or b.cod.size != self.target.terms[f.map[i]]:
                raise DomainMismatch(
                    f"base map at term {i} must go "
                    f"{self.source.terms[i]} -> {self.target.terms[f.map[i]]}")

    @classmethod
    def _trusted(cls, source, target, on_terms, on_bases) -> DirMorphism:
        m = _new(cls)
        _set(m, "source", source)
        _set(m, "target", target)
        _set(m, "on_terms", on_terms)
        _set(m, "on_bases", on_bases)
        return m

    def __str__(self):
        parts = [f"{i + 1}->{j + 1} {b}" for i, (j, b) in
                 enumerate(zip(self.on_terms.map, self.on_bases))]
        return f"({self.source}) -> ({self.target}): " + "; ".join(parts)

    def to_json(self) -> dict:
        return {
            "source": list(self.source.terms),
            "target": list(self.target.terms),
            "on_terms": list(self.on_terms.map),
            "on_bases": [list(b.map) for b in self.on_bases],
        }

    @classmethod
    def from_json(cls, data: dict) -> DirMorphism:
        D, E = Dir(tuple(data["source"])), Dir(tuple(data["target"]))
        f = FinFunction(D.term_count(), E.term_count(), tuple(data["on_terms"]))
        bases = tuple(FinFunction(D.terms[i], E.terms[j], tuple(b))
                      for i, (j, b) in enumerate(zip(f.map, data["on_bases"])))
        return cls(D, E, f, bases)


def identity(D: Dir) -> DirMorphism:
    return DirMorphism._trusted(D, D, finset.identity(D.term_count()),
                                tuple(finset.identity(d) for d in D.terms))


def hom_count(D: Dir, E: Dir) -> int:
    """|Dir(D, E)| = prod_i E(d_i)."""
    return prod(eval_count(E, d) for d in D.terms)


def _choices(D: Dir, E: Dir) -> list[list[tuple[int, FinFunction]]]:
    cache = {}
    out = []
    for d in D.terms:
        if d not in cache:
            cache[d] = [(j, h) for j, e in enumerate(E.terms) for h in finset.iter_maps(d, e)]
        out.append(cache[d])
    return out


def iter_homs(D: Dir, E: Dir) -> Iterator[DirMorphism]:
    n, m = D.term_count(), E.term_count()
    if not D.terms:
        yield DirMorphism._trusted(D, E, FinFunction.trusted(0, m, ()), ())
        return
    make, fun = DirMorphism._trusted, FinFunction.trusted
    for choice in itertools.product(*_choices(D, E)):
        js, hs = zip(*choice)
        yield make(D, E, fun(n, m, js), hs)


def hom_enumerate(D: Dir, E: Dir, limit: int | None = None) -> list[DirMorphism]:
    check_budget(hom_count(D, E), limit)
    return list(iter_homs(D, E))


def morphism_component(m: DirMorphism, X) -> FinFunction:
    """D(X) -> E(X): (i, h) |-> (f(i), f_#i . h)."""
    x = as_finset(X).size
    D, E = m.source, m.target
    check_budget(eval_count(D, x))
    out_off = _offsets(E, x)
    images = []
    for i, d in enumerate(D.terms):
        j = m.on_terms.map[i]
        fwd = m.on_bases[i].map
        e = E.terms[j]
        base = out_off[j]
        for h in itertools.product(fwd, repeat=x):
            images.append(base + _code(h, e))
    return FinFunction.trusted(eval_count(D, x), eval_count(E, x), tuple(images))


def compose_morphisms(n: DirMorphism, m: DirMorphism) -> DirMorphism:
    """n after m."""
    if m.target != n.source:
        raise DomainMismatch("morphisms are not composable")
    f = finset.compose(n.on_terms, m.on_terms)
    bases = tuple(finset.compose(n.on_bases[j], m.on_bases[i])
                  for i, j in enumerate(m.on_terms.map))
    return DirMorphism._trusted(m.source, n.target, f, bases)


def is_cartesian_dir(m: DirMorphism) -> bool:
    return all(finset.is_bijective(b) for b in m.on_bases)


def pi_square(m: DirMorphism) -> tuple[FinFunction, FinFunction, FinFunction, FinFunction]:
    """The square D(1) -> E(1) over D(0) -> E(0) as (top, left, right, bottom)."""
    return (morphism_component(m, 1), eval_map(m.source, finset.empty_map(1)),
            eval_map(m.target, finset.empty_map(1)), morphism_component(m, 0))


def naturality_square(m: DirMorphism, g: FinFunction):
    """For g: X -> X', the square D(X') -> E(X') over D(X) -> E(X)."""
    return (morphism_component(m, g.cod), eval_map(m.source, g),
            eval_map(m.target, g), morphism_component(m, g.dom))


# -- algebra ------------------------------------------------------------------

def add(D: Dir, E: Dir) -> Dir:
    return Dir(D.terms + E.terms)


def sum_all(dirs) -> Dir:
    return Dir(tuple(t for D in dirs for t in D.terms))


def multiply(D: Dir, E: Dir) -> Dir:
    return Dir(tuple(d * e for d in D.terms for e in E.terms))


def product_all(dirs) -> Dir:
    out = ONE
    for D in dirs:
        out = multiply(out, D)
    return out


def scale(n: int, D: Dir) -> Dir:
    """n-fold coproduct nD."""
    return Dir(D.terms * n)


def power_n(D: Dir, n: int) -> Dir:
    """n-fold categorical product D^n."""
    return product_all([D] * n)


def pi(D: Dir):
    """The bundle pi_D = D(0!): D(1) -> D(0); term i has fiber d_i."""
    from .bundle import Bundle
    images = tuple(i for i, d in enumerate(D.terms) for _ in range(d))
    return Bundle(FinFunction.trusted(len(images), D.term_count(), images))


# -- limits -------------------------------------------------------------------

def pullback_dir(f: DirMorphism, g: DirMorphism) -> tuple[Dir, DirMorphism, DirMorphism]:
    """D x_H E: terms are pairs over a common term of H; bases are the pullback
    of the two base maps."""
    if f.target != g.target:
        raise DomainMismatch("pullback needs a common target")
    D, E = f.source, g.source
    labelled = []
    for i in range(D.term_count()):
        for j in range(E.term_count()):
            if f.on_terms.map[i] == g.on_terms.map[j]:
                apex, (pd, pe) = finset.wide_pullback([f.on_bases[i], g.on_bases[j]])
                labelled.append(((i, j, pd, pe), apex.size))
    R, labels = _canonical(labelled)
    n = R.term_count()
    to_d = DirMorphism._trusted(R, D, FinFunction.trusted(n, D.term_count(),
                                                          tuple(lab[0] for lab in labels)),
                                tuple(lab[2] for lab in labels))
    to_e = DirMorphism._trusted(R, E, FinFunction.trusted(n, E.term_count(),
                                                          tuple(lab[1] for lab in labels)),
                                tuple(lab[3] for lab in labels))
    return R, to_d, to_e


def unit(D: Dir) -> DirMorphism:
    """eta_D: D -> D(0), sending every base to the single point of 1."""
    n = D.term_count()
    return DirMorphism._trusted(D, constant(n), finset.identity(n),
                                tuple(finset.bang(d) for d in D.terms))


def point(n: int, i: int) -> DirMorphism:
    return DirMorphism._trusted(ONE, constant(n), FinFunction(1, n, (i,)),
                                (finset.identity(1),))


def decompose(D: Dir) -> list[tuple[int, Dir]]:
    """D as the sum over i of D x_{D(0)} 'i'; each part is (d_i)^y."""
    eta = unit(D)
    return [(i, pullback_dir(eta, point(D.term_count(), i))[0])
            for i in range(D.term_count())]


# -- the five functors out of Fin -----------------------------------------------
# n*0^y -| D(0) -| n -| D(1) -| n^y, each inclusion acting on maps as below.

def zero_content_map(f: FinFunction) -> DirMorphism:
    return DirMorphism._trusted(zero_content(f.dom.size), zero_content(f.cod.size), f,
                                tuple(finset.empty_map(0) for _ in range(f.dom.size)))


def constant_map(f: FinFunction) -> DirMorphism:
    return DirMorphism._trusted(constant(f.dom.size), constant(f.cod.size), f,
                                tuple(finset.identity(1) for _ in range(f.dom.size)))


def representable_map(f: FinFunction) -> DirMorphism:
    return DirMorphism._trusted(representable(f.dom.size), representable(f.cod.size),
                                finset.identity(1), (f,))
