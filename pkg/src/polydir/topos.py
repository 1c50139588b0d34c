"""Topos structure on bundles, i.e. on the arrow category of finite sets.

Limits and colimits are computed levelwise (total set and base set
separately).  The subobject classifier is the bundle ``3 -> 2``::

    total  0 = now,  1 = later,  2 = never
    base   0 = true, 1 = false
    proj   now, later |-> true;  never |-> false

A subobject of ``F`` is a pair ``(S, T)`` with ``S`` a subset of the total
set, ``T`` a subset of the base set and ``proj(S)`` inside ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import finset
from .bundle import Bundle, BunMorphism, count_bun, iter_bun, bundle
from .errors import DomainMismatch, IllFormedDiagram, NotMono
from .finset import FinFunction, check_budget

NOW, LATER, NEVER = 0, 1, 2
TRUE, FALSE = 0, 1

TERMINAL = bundle((0,), 1)
INITIAL = bundle((), 0)


@dataclass(frozen=True)
class SubobjectWitness:
    inclusion: BunMorphism

    def __post_init__(self):
        if not is_mono(self.inclusion):
            raise NotMono("subobject inclusions must be injective on both levels")

    @property
    def ambient(self) -> Bundle:
        return self.inclusion.target

    @property
    def total_subset(self) -> tuple[int, ...]:
        return self.inclusion.total_map.map

    @property
    def base_subset(self) -> tuple[int, ...]:
        return self.inclusion.base_map.map

    def is_canonical(self) -> bool:
        s, t = self.total_subset, self.base_subset
        return list(s) == sorted(s) and list(t) == sorted(t)

    def to_json(self) -> dict:
        return {"ambient": self.ambient.to_json(),
                "total_subset": list(self.total_subset),
                "base_subset": list(self.base_subset)}


def subobject(F: Bundle, total_subset, base_subset) -> SubobjectWitness:
    """Canonical witness for the subobject (S, T) of F."""
    S, T = tuple(sorted(set(total_subset))), tuple(sorted(set(base_subset)))
    pos = {b: k for k, b in enumerate(T)}
    try:
        sub_proj = tuple(pos[F.proj.map[x]] for x in S)
    except KeyError:
        raise IllFormedDiagram("proj(S) must lie inside T") from None
    sub = Bundle(FinFunction(len(S), len(T), sub_proj))
    return SubobjectWitness(BunMorphism(sub, F, FinFunction(len(T), F.base, T),
                                        FinFunction(len(S), F.total, S)))


def is_mono(m: BunMorphism) -> bool:
    return finset.is_injective(m.total_map) and finset.is_injective(m.base_map)


def enumerate_subobjects(F: Bundle, limit: int | None = None) -> list[SubobjectWitness]:
    """One canonical witness per subobject, ordered by base subset then total subset."""
    check_budget(2 ** (F.total.size + F.base.size), limit)
    fibers = F.fibers()
    out = []
    for T in finset.subsets(F.base):
        allowed = sorted(x for b in T for x in fibers[b])
        for mask in range(1 << len(allowed)):
            S = [allowed[k] for k in range(len(allowed)) if mask >> k & 1]
            out.append(subobject(F, S, T))
    return out


# -- limits and colimits --------------------------------------------------------

def product_morphism(u: BunMorphism, v: BunMorphism) -> BunMorphism:
    src = Bundle(finset.product_map(u.source.proj, v.source.proj))
    tgt = Bundle(finset.product_map(u.target.proj, v.target.proj))
    return BunMorphism._trusted(src, tgt, finset.product_map(u.base_map, v.base_map),
                                finset.product_map(u.total_map, v.total_map))


def limits_bun(kind: str, diagram=()) -> tuple[Bundle, list[BunMorphism]]:
    """Levelwise (co)limits in the arrow category.

    kind is one of terminal, initial, product, coproduct, pullback, equalizer.
    product/coproduct take two bundles; pullback takes a cospan of two bundle
    morphisms; equalizer takes two parallel bundle morphisms.  Returns the
    object and its projections (or injections)."""
    diagram = list(diagram)
    if kind == "terminal":
        return TERMINAL, []
    if kind == "initial":
        return INITIAL, []
    if kind in ("product", "coproduct"):
        if len(diagram) != 2 or not all(isinstance(b, Bundle) for b in diagram):
            raise IllFormedDiagram(f"{kind} needs two bundles")
        A, B = diagram
        if kind == "product":
            _, pa, pb = finset.product(A.total, B.total)
            _, qa, qb = finset.product(A.base, B.base)
            L = Bundle(finset.product_map(A.proj, B.proj))
            return L, [BunMorphism._trusted(L, A, qa, pa), BunMorphism._trusted(L, B, qb, pb)]
        _, ia, ib = finset.coproduct(A.total, B.total)
        _, ja, jb = finset.coproduct(A.base, B.base)
        L = Bundle(finset.coproduct_map(A.proj, B.proj))
        return L, [BunMorphism._trusted(A, L, ja, ia), BunMorphism._trusted(B, L, jb, ib)]
    if kind == "pullback":
        if len(diagram) != 2 or diagram[0].target != diagram[1].target:
            raise IllFormedDiagram("pullback needs two bundle morphisms with a common target")
        f, g = diagram
        _, (p, q) = finset.wide_pullback([f.total_map, g.total_map])
        _, (pb, qb) = finset.wide_pullback([f.base_map, g.base_map])
        index = {(pb.map[k], qb.map[k]): k for k in range(pb.dom.size)}
        A, B = f.source, g.source
        proj = tuple(index[(A.proj.map[p.map[k]], B.proj.map[q.map[k]])]
                     for k in range(p.dom.size))
        L = Bundle(FinFunction.trusted(p.dom.size, pb.dom.size, proj))
        return L, [BunMorphism._trusted(L, A, pb, p), BunMorphism._trusted(L, B, qb, q)]
    if kind == "equalizer":
        if (len(diagram) != 2 or diagram[0].source != diagram[1].source
                or diagram[0].target != diagram[1].target):
            raise IllFormedDiagram("equalizer needs two parallel bundle morphisms")
        f, g = diagram
        _, e = finset.equalizer(f.total_map, g.total_map)
        _, eb = finset.equalizer(f.base_map, g.base_map)
        pos = {b: k for k, b in enumerate(eb.map)}
        A = f.source
        L = Bundle(FinFunction.trusted(e.dom.size, eb.dom.size,
                                       tuple(pos[A.proj.map[x]] for x in e.map)))
        return L, [BunMorphism._trusted(L, A, eb, e)]
    raise IllFormedDiagram(f"unknown limit kind {kind!r}")


# -- exponentials ---------------------------------------------------------------

@dataclass(frozen=True)
class Exponential:
    """E^F together with the data needed to curry into it."""
    bundle: Bundle
    eval: BunMorphism
    homs: tuple
    base_maps: tuple

    def index(self, m: BunMorphism) -> int:
        return self._index[(m.base_map.map, m.total_map.map)]

    def __post_init__(self):
        object.__setattr__(self, "_index", {(h.base_map.map, h.total_map.map): k
                                           for k, h in enumerate(self.homs)})


def _code(images, base: int) -> int:
    c = 0
    for v in images:
        c = c * base + v
    return c


def exponential(E: Bundle, F: Bundle, limit: int | None = None) -> Exponential:
    """E^F: total set Bun(F, E), base set Fin(base F, base E), projection takes
    a bundle map to its base map."""
    check_budget(count_bun(F, E), limit)
    check_budget(finset.count_maps(F.base, E.base), limit)
    homs = tuple(iter_bun(F, E))
    base_maps = tuple(finset.iter_maps(F.base, E.base))
    tb = E.base.size
    proj = FinFunction.trusted(len(homs), len(base_maps),
                               tuple(_code(h.base_map.map, tb) for h in homs))
    X = Bundle(proj)
    prod_bundle, _ = limits_bun("product", [X, F])
    sF, tF = F.total.size, F.base.size
    total = tuple(homs[k].total_map.map[x] for k in range(len(homs)) for x in range(sF))
    base = tuple(base_maps[g].map[b] for g in range(len(base_maps)) for b in range(tF))
    ev = BunMorphism._trusted(prod_bundle, E,
                              FinFunction.trusted(len(base), tb, base),
                              FinFunction.trusted(len(total), E.total.size, total))
    return Exponential(X, ev, homs, base_maps)


def curry(m: BunMorphism, G: Bundle, F: Bundle, exp: Exponential | None = None) -> BunMorphism:
    """Transpose m: G x F -> E to G -> E^F."""
    E = m.target
    if m.source != limits_bun("product", [G, F])[0]:
        raise DomainMismatch("source of m must be G x F")
    exp = exp or exponential(E, F)
    sF, tF, tb = F.total.size, F.base.size, E.base.size
    total = []
    for g in range(G.total.size):
        bG = G.proj.map[g]
        base_map = tuple(m.base_map.map[bG * tF + b] for b in range(tF))
        total_map = tuple(m.total_map.map[g * sF + x] for x in range(sF))
        total.append(exp._index[(base_map, total_map)])
    base = tuple(_code([m.base_map.map[bG * tF + b] for b in range(tF)], tb)
                 for bG in range(G.base.size))
    return BunMorphism._trusted(G, exp.bundle,
                                FinFunction.trusted(G.base.size, exp.bundle.base.size, base),
                                FinFunction.trusted(G.total.size, exp.bundle.total.size,
                                                    tuple(total)))


def uncurry(n: BunMorphism, F: Bundle, exp: Exponential) -> BunMorphism:
    """Inverse of :func:`curry`: compose n x F with evaluation."""
    if n.target != exp.bundle:
        raise DomainMismatch("target of n must be the exponential")
    G = n.source
    sF, tF = F.total.size, F.base.size
    total = tuple(exp.homs[n.total_map.map[g]].total_map.map[x]
                  for g in range(G.total.size) for x in range(sF))
    base = tuple(exp.base_maps[n.base_map.map[bG]].map[b]
                 for bG in range(G.base.size) for b in range(tF))
    E = exp.eval.target
    src = limits_bun("product", [G, F])[0]
    return BunMorphism._trusted(src, E, FinFunction.trusted(len(base), E.base.size, base),
                                FinFunction.trusted(len(total), E.total.size, total))


# -- subobject classifier -------------------------------------------------------

def omega() -> tuple[Bundle, BunMorphism]:
    """The classifier 3 -> 2 and the point true: 1 -> Omega (now over true)."""
    om = bundle((TRUE, TRUE, FALSE), 2)
    truth = BunMorphism._trusted(TERMINAL, om, FinFunction.trusted(1, 2, (TRUE,)),
                                 FinFunction.trusted(1, 3, (NOW,)))
    return om, truth


def classify(w) -> BunMorphism:
    """Characteristic map F -> Omega of a subobject (a witness or any mono)."""
    if isinstance(w, BunMorphism):
        if not is_mono(w):
            raise NotMono("only monomorphisms are classified")
        w = subobject(w.target, w.total_map.map, w.base_map.map)
    F = w.ambient
    S, T = set(w.total_subset), set(w.base_subset)
    base = tuple(TRUE if b in T else FALSE for b in range(F.base.size))
    total = tuple(NOW if x in S else LATER if F.proj.map[x] in T else NEVER
                  for x in range(F.total.size))
    om, _ = omega()
    return BunMorphism._trusted(F, om, FinFunction.trusted(len(base), 2, base),
                                FinFunction.trusted(len(total), 3, total))


def subobject_of(chi: BunMorphism) -> SubobjectWitness:
    """Inverse of :func:`classify`: S = chi^{-1}(now), T = chi^{-1}(true)."""
    F = chi.source
    S = [x for x, v in enumerate(chi.total_map.map) if v == NOW]
    T = [b for b, v in enumerate(chi.base_map.map) if v == TRUE]
    return subobject(F, S, T)


def pullback_of_point(chi: BunMorphism, point: BunMorphism) -> tuple[tuple, tuple]:
    """Image (S, T) in F of the pullback of ``point: 1 -> C`` along ``chi: F -> C``."""
    _, (to_f, _) = limits_bun("pullback", [chi, point])
    return finset.image(to_f.total_map), finset.image(to_f.base_map)


def search_classifiers(max_total: int, max_base: int, tests) -> list[tuple[Bundle, BunMorphism]]:
    """Every (C, p: 1 -> C) with C up to max_total -> max_base for which pulling
    p back gives a bijection Bun(F, C) -> Sub(F) for each test object F."""
    found = []
    subs = {F: {(w.total_subset, w.base_subset) for w in enumerate_subobjects(F)} for F in tests}
    for t in range(max_base + 1):
        for s in range(max_total + 1):
            for C in map(Bundle, finset.iter_maps(s, t)):
                if any(count_bun(F, C) != len(subs[F]) for F in tests):
                    continue
                for p in iter_bun(TERMINAL, C):
                    if all({pullback_of_point(chi, p) for chi in iter_bun(F, C)} == subs[F]
                           for F in tests):
                        found.append((C, p))
    return found
