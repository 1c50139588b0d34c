"""Bundles (functions s -> t) and the two kinds of morphism between them.

A bundle morphism moves each fiber forward into the fiber over the image of
its base point; a container morphism pulls the target fiber back.  Bundles
with bundle morphisms model Dirichlet polynomials, bundles with container
morphisms model polynomials.

Fibers are addressed locally: element ``k`` of the fiber over ``b`` is the
``k``-th smallest element of ``proj^{-1}(b)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterator

from . import dirichlet, finset, poly
from .dirichlet import Dir, DirMorphism
from .errors import DomainMismatch, NonCanonicalBundle, NotCartesian
from .finset import FinFunction, FinSet
from .poly import Poly, PolyMorphism

_new = object.__new__
_set = object.__setattr__


@dataclass(frozen=True, slots=True)
class Bundle:
    proj: FinFunction

    @property
    def total(self) -> FinSet:
        return self.proj.dom

    @property
    def base(self) -> FinSet:
        return self.proj.cod

    def fibers(self) -> list[tuple[int, ...]]:
        return finset.fibers(self.proj)

    def fiber_sizes(self) -> list[int]:
        return finset.fiber_sizes(self.proj)

    def __str__(self):
        return f"{self.total.size} -> {self.base.size} {list(v + 1 for v in self.proj.map)}"

    def to_json(self) -> dict:
        return {"total": self.total.size, "base": self.base.size, "proj": list(self.proj.map)}

    @classmethod
    def from_json(cls, data: dict) -> Bundle:
        return cls(FinFunction(data["total"], data["base"], tuple(data["proj"])))


def bundle(images, base: int) -> Bundle:
    return Bundle(finset.function(tuple(images), base))


def bang_bundle(x: int) -> Bundle:
    """X!: X -> 1"""
    return Bundle(finset.bang(x))


def _local_index(b: Bundle) -> list[int]:
    seen = [0] * b.base.size
    out = []
    for v in b.proj.map:
        out.append(seen[v])
        seen[v] += 1
    return out


@dataclass(frozen=True, slots=True)
class BunMorphism:
    """A commuting square proj' . total_map == base_map . proj."""
    source: Bundle
    target: Bundle
    base_map: FinFunction
    total_map: FinFunction

    def __post_init__(self):
        s, t = self.source, self.target
        if (self.base_map.dom != s.base or self.base_map.cod != t.base
                or self.total_map.dom != s.total or self.total_map.cod != t.total):
            raise DomainMismatch("component maps do not match the bundles")
        if finset.compose(t.proj, self.total_map).map != finset.compose(self.base_map, s.proj).map:
            raise DomainMismatch("square does not commute")

    @classmethod
    def _trusted(cls, source, target, base_map, total_map) -> BunMorphism:
        m = _new(cls)
        _set(m, "source", source)
        _set(m, "target", target)
        _set(m, "base_map", base_map)
        _set(m, "total_map", total_map)
        return m

    def __str__(self):
        return f"({self.source}) -> ({self.target}): base {self.base_map}; total {self.total_map}"

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "base_map": list(self.base_map.map), "total_map": list(self.total_map.map)}

    @classmethod
    def from_json(cls, data: dict) -> BunMorphism:
        s, t = Bundle.from_json(data["source"]), Bundle.from_json(data["target"])
        return cls(s, t, FinFunction(s.base, t.base, tuple(data["base_map"])),
                   FinFunction(s.total, t.total, tuple(data["total_map"])))


@dataclass(frozen=True, slots=True)
class ContMorphism:
    """A base map f with, for each base point j, a map from the target fiber
    over f(j) back to the source fiber over j (local indices)."""
    source: Bundle
    target: Bundle
    base_map: FinFunction
    pull_maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "pull_maps", tuple(self.pull_maps))
        s, t = self.source, self.target
        if self.base_map.dom != s.base or self.base_map.cod != t.base:
            raise DomainMismatch("base map does not match the bundles")
        if len(self.pull_maps) != s.base.size:
            raise DomainMismatch("need one pull map per source base point")
        ks, kt = s.fiber_sizes(), t.fiber_sizes()
        for j, g in enumerate(self.pull_maps):
            if g.dom.size != kt[self.base_map.map[j]] or g.cod.size != ks[j]:
                raise DomainMismatch(f"pull map over {j} has the wrong shape")

    @classmethod
    def _trusted(cls, source, target, base_map, pull_maps) -> ContMorphism:
        m = _new(cls)
        _set(m, "source", source)
        _set(m, "target", target)
        _set(m, "base_map", base_map)
        _set(m, "pull_maps", pull_maps)
        return m

    def __str__(self):
        pulls = "; ".join(f"{j + 1}: {g}" for j, g in enumerate(self.pull_maps))
        return f"({self.source}) -> ({self.target}): base {self.base_map}; pull {pulls}"

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "base_map": list(self.base_map.map),
                "pull_maps": [list(g.map) for g in self.pull_maps]}

    @classmethod
    def from_json(cls, data: dict) -> ContMorphism:
        s, t = Bundle.from_json(data["source"]), Bundle.from_json(data["target"])
        f = FinFunction(s.base, t.base, tuple(data["base_map"]))
        ks, kt = s.fiber_sizes(), t.fiber_sizes()
        pulls = tuple(FinFunction(kt[f.map[j]], ks[j], tuple(g))
                      for j, g in enumerate(data["pull_maps"]))
        return cls(s, t, f, pulls)


# -- hom-sets -----------------------------------------------------------------

def identity_bun(b: Bundle) -> BunMorphism:
    return BunMorphism._trusted(b, b, finset.identity(b.base), finset.identity(b.total))


def identity_cont(b: Bundle) -> ContMorphism:
    return ContMorphism._trusted(b, b, finset.identity(b.base),
                                 tuple(finset.identity(k) for k in b.fiber_sizes()))


def count_bun(src: Bundle, tgt: Bundle) -> int:
    kt = tgt.fiber_sizes()
    ks = src.fiber_sizes()
    return sum(prod(kt[f.map[j]] ** ks[j] for j in range(src.base.size))
               for f in finset.iter_maps(src.base, tgt.base))


def count_cont(src: Bundle, tgt: Bundle) -> int:
    kt = tgt.fiber_sizes()
    ks = src.fiber_sizes()
    return sum(prod(ks[j] ** kt[f.map[j]] for j in range(src.base.size))
               for f in finset.iter_maps(src.base, tgt.base))


def iter_bun(src: Bundle, tgt: Bundle) -> Iterator[BunMorphism]:
    """Base maps in lexicographic order; for each, total maps sending every x
    into the target fiber over f(proj(x)), lexicographically."""
    tfib = tgt.fibers()
    s, ns = src.proj.map, src.total.size
    for f in finset.iter_maps(src.base, tgt.base):
        options = [tfib[f.map[s[x]]] for x in range(ns)]
        for images in itertools.product(*options):
            yield BunMorphism._trusted(src, tgt, f,
                                       FinFunction.trusted(ns, tgt.total.size, images))


def iter_cont(src: Bundle, tgt: Bundle) -> Iterator[ContMorphism]:
    ks, kt = src.fiber_sizes(), tgt.fiber_sizes()
    for f in finset.iter_maps(src.base, tgt.base):
        options = [list(finset.iter_maps(kt[f.map[j]], ks[j])) for j in range(src.base.size)]
        for pulls in itertools.product(*options):
            yield ContMorphism._trusted(src, tgt, f, pulls)


def compose_bun(n: BunMorphism, m: BunMorphism) -> BunMorphism:
    """n after m: squares paste."""
    if m.target != n.source:
        raise DomainMismatch("bundle morphisms are not composable")
    return BunMorphism._trusted(m.source, n.target, finset.compose(n.base_map, m.base_map),
                                finset.compose(n.total_map, m.total_map))


def compose_cont(n: ContMorphism, m: ContMorphism) -> ContMorphism:
    """n after m: pull maps compose in the opposite order."""
    if m.target != n.source:
        raise DomainMismatch("container morphisms are not composable")
    f = finset.compose(n.base_map, m.base_map)
    pulls = tuple(finset.compose(m.pull_maps[j], n.pull_maps[m.base_map.map[j]])
                  for j in range(m.source.base.size))
    return ContMorphism._trusted(m.source, n.target, f, pulls)


def fiber_maps(m: BunMorphism) -> list[FinFunction]:
    """The bundle morphism read fiberwise: fiber over j -> fiber over f(j)."""
    sfib = m.source.fibers()
    tloc = _local_index(m.target)
    kt = m.target.fiber_sizes()
    return [FinFunction.trusted(len(xs), kt[m.base_map.map[j]],
                                tuple(tloc[m.total_map.map[x]] for x in xs))
            for j, xs in enumerate(sfib)]


def is_cartesian_bun(m: BunMorphism) -> bool:
    """Whether the commuting square is a pullback."""
    return finset.is_pullback_square(m.total_map, m.source.proj, m.target.proj, m.base_map)


def is_cartesian_cont(m: ContMorphism) -> bool:
    return all(finset.is_bijective(g) for g in m.pull_maps)


def is_vertical(m) -> bool:
    return m.base_map == finset.identity(m.source.base)


# -- objects ------------------------------------------------------------------

def dirichlet_transform(P: Poly) -> Dir:
    return Dir._trusted(P.terms)


def inverse_transform(D: Dir) -> Poly:
    return Poly._trusted(D.terms)


def dir_of_bundle(b: Bundle) -> Dir:
    return Dir(tuple(b.fiber_sizes()))


def poly_of_bundle(b: Bundle) -> Poly:
    return Poly(tuple(b.fiber_sizes()))


def bundle_of_dir(D: Dir) -> Bundle:
    return dirichlet.pi(D)


def bundle_of_poly(P: Poly) -> Bundle:
    return dirichlet.pi(dirichlet_transform(P))


def is_canonical(b: Bundle) -> bool:
    """Fibers descend in size and occupy consecutive blocks of the total set."""
    m = b.proj.map
    if any(m[k] > m[k + 1] for k in range(len(m) - 1)):
        return False
    sizes = b.fiber_sizes()
    return all(sizes[k] >= sizes[k + 1] for k in range(len(sizes) - 1))


def canonicalize(b: Bundle) -> tuple[Bundle, BunMorphism]:
    """The canonical bundle with the same fibers, and a cartesian isomorphism to it."""
    canon = bundle_of_dir(dir_of_bundle(b))
    order = term_order(b)
    pos = {v: t for t, v in enumerate(order)}
    cfib = canon.fibers()
    sfib = b.fibers()
    total = [0] * b.total.size
    for j, xs in enumerate(sfib):
        for k, x in enumerate(xs):
            total[x] = cfib[pos[j]][k]
    return canon, BunMorphism._trusted(
        b, canon, FinFunction.trusted(b.base.size, b.base.size, tuple(pos[j] for j in range(b.base.size))),
        FinFunction.trusted(b.total.size, b.total.size, tuple(total)))


def coproduct_bundle(a: Bundle, b: Bundle) -> Bundle:
    """(s + s') -> (t + t'), computed pointwise."""
    return Bundle(finset.coproduct_map(a.proj, b.proj))


def term_order(b: Bundle) -> list[int]:
    """Base points in the order of the corresponding canonical terms: by fiber
    size descending, ties broken by base index."""
    sizes = b.fiber_sizes()
    return sorted(range(b.base.size), key=lambda j: -sizes[j])


# -- the equivalences ---------------------------------------------------------

def functor_D(m: BunMorphism) -> DirMorphism:
    """D_-: Bun -> Dir on a morphism."""
    src, tgt = m.source, m.target
    D, E = dir_of_bundle(src), dir_of_bundle(tgt)
    order = term_order(src)
    tpos = {v: t for t, v in enumerate(term_order(tgt))}
    fmaps = fiber_maps(m)
    return DirMorphism._trusted(
        D, E,
        FinFunction.trusted(len(order), E.term_count(),
                            tuple(tpos[m.base_map.map[j]] for j in order)),
        tuple(fmaps[j] for j in order))


def _check_bundle(b, expected, build):
    if b is None:
        return build(expected)
    if dir_of_bundle(b).terms != expected.terms:
        raise NonCanonicalBundle(f"bundle {b} does not present {expected.terms}")
    return b


def functor_D_inverse(n: DirMorphism, source: Bundle | None = None,
                      target: Bundle | None = None) -> BunMorphism:
    """Bun morphism with D_- image n.  Defaults to the canonical bundles pi_D, pi_E."""
    src = _check_bundle(source, n.source, bundle_of_dir)
    tgt = _check_bundle(target, n.target, bundle_of_dir)
    order, torder = term_order(src), term_order(tgt)
    pos = {v: t for t, v in enumerate(order)}
    tfib = tgt.fibers()
    base = tuple(torder[n.on_terms.map[pos[j]]] for j in range(src.base.size))
    total = [0] * src.total.size
    for j, xs in enumerate(src.fibers()):
        g = n.on_bases[pos[j]].map
        for k, x in enumerate(xs):
            total[x] = tfib[base[j]][g[k]]
    return BunMorphism._trusted(src, tgt, FinFunction.trusted(src.base.size, tgt.base.size, base),
                                FinFunction.trusted(src.total.size, tgt.total.size, tuple(total)))


def functor_P(m: ContMorphism) -> PolyMorphism:
    """P_-: Cont -> Poly on a morphism."""
    src, tgt = m.source, m.target
    P, Q = poly_of_bundle(src), poly_of_bundle(tgt)
    order = term_order(src)
    tpos = {v: t for t, v in enumerate(term_order(tgt))}
    return PolyMorphism._trusted(
        P, Q,
        FinFunction.trusted(len(order), Q.positions(),
                            tuple(tpos[m.base_map.map[j]] for j in order)),
        tuple(m.pull_maps[j] for j in order))


def functor_P_inverse(n: PolyMorphism, source: Bundle | None = None,
                      target: Bundle | None = None) -> ContMorphism:
    src = _check_bundle(source, dirichlet_transform(n.source), bundle_of_dir)
    tgt = _check_bundle(target, dirichlet_transform(n.target), bundle_of_dir)
    order, torder = term_order(src), term_order(tgt)
    pos = {v: t for t, v in enumerate(order)}
    base = tuple(torder[n.on_positions.map[pos[j]]] for j in range(src.base.size))
    pulls = tuple(n.on_directions[pos[j]] for j in range(src.base.size))
    return ContMorphism._trusted(src, tgt, FinFunction.trusted(src.base.size, tgt.base.size, base),
                                 pulls)


def cart_equivalence(m):
    """Carry a cartesian morphism across: Bun <-> Cont and Poly <-> Dir, keeping
    the base (position, term) map and inverting the fiber bijections."""
    if isinstance(m, BunMorphism):
        if not is_cartesian_bun(m):
            raise NotCartesian("bundle morphism is not cartesian")
        pulls = tuple(finset.inverse(g) for g in fiber_maps(m))
        return ContMorphism._trusted(m.source, m.target, m.base_map, pulls)
    if isinstance(m, ContMorphism):
        if not is_cartesian_cont(m):
            raise NotCartesian("container morphism is not cartesian")
        tfib = m.target.fibers()
        total = [0] * m.source.total.size
        for j, xs in enumerate(m.source.fibers()):
            fwd = finset.inverse(m.pull_maps[j]).map
            for k, x in enumerate(xs):
                total[x] = tfib[m.base_map.map[j]][fwd[k]]
        return BunMorphism._trusted(m.source, m.target, m.base_map,
                                    FinFunction.trusted(len(total), m.target.total.size,
                                                        tuple(total)))
    if isinstance(m, PolyMorphism):
        if not poly.is_cartesian_poly(m):
            raise NotCartesian("polynomial morphism is not cartesian")
        return DirMorphism._trusted(dirichlet_transform(m.source), dirichlet_transform(m.target),
                                    m.on_positions,
                                    tuple(finset.inverse(d) for d in m.on_directions))
    if isinstance(m, DirMorphism):
        if not dirichlet.is_cartesian_dir(m):
            raise NotCartesian("Dirichlet morphism is not cartesian")
        return PolyMorphism._trusted(inverse_transform(m.source), inverse_transform(m.target),
                                     m.on_terms, tuple(finset.inverse(b) for b in m.on_bases))
    raise TypeError(f"not a morphism: {m!r}")


# -- factorization ------------------------------------------------------------

def pullback_bundle(b: Bundle, f: FinFunction) -> tuple[Bundle, FinFunction]:
    """f^*(b) for f: t -> base(b), with its map into the total set of b.

    Elements of the new total set are pairs (j, x) with f(j) = proj(x), in
    lexicographic order."""
    _, (p1, p2) = finset.wide_pullback([f, b.proj])
    return Bundle(p1), p2


def factorize(m: BunMorphism) -> tuple[BunMorphism, BunMorphism]:
    """m = cartesian . vertical, through f^*(target)."""
    middle, to_total = pullback_bundle(m.target, m.base_map)
    index = {(middle.proj.map[k], to_total.map[k]): k for k in range(middle.total.size)}
    src = m.source
    vertical = BunMorphism._trusted(
        src, middle, finset.identity(src.base),
        FinFunction.trusted(src.total.size, middle.total.size,
                            tuple(index[(src.proj.map[x], m.total_map.map[x])]
                                  for x in range(src.total.size))))
    cartesian = BunMorphism._trusted(middle, m.target, m.base_map, to_total)
    return vertical, cartesian


def bun_from_element(b: Bundle, x: int, element: tuple[int, tuple]) -> BunMorphism:
    """The bundle map X! -> b named by an element (t, h) of D_b(X)."""
    t, h = element
    j = term_order(b)[t]
    fib = b.fibers()[j]
    return BunMorphism._trusted(bang_bundle(x), b, FinFunction.trusted(1, b.base.size, (j,)),
                                FinFunction.trusted(x, b.total.size, tuple(fib[v] for v in h)))


def cont_from_element(b: Bundle, x: int, element: tuple[int, tuple]) -> ContMorphism:
    """The container map X! -> b named by an element (t, h) of P_b(X)."""
    t, h = element
    j = term_order(b)[t]
    return ContMorphism._trusted(bang_bundle(x), b, FinFunction.trusted(1, b.base.size, (j,)),
                                 (FinFunction.trusted(len(h), x, tuple(h)),))
