"""Skeletal finite sets and total functions between them.

A finite set of size ``n`` is ``{0, ..., n-1}``; two sets are equal exactly
when their sizes agree.  Functions are stored as tuples of images.  Printed
forms are 1-indexed (``'1'``, ``'2'``, ...) while storage is 0-indexed.
"""

from __future__ import annotations

import contextvars
import itertools
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    DomainMismatch,
    EmptyDiagram,
    IndexOutOfRange,
)

DEFAULT_BUDGET = 10**6

_new = object.__new__
_set = object.__setattr__

_budget = contextvars.ContextVar("polydir_budget", default=DEFAULT_BUDGET)


def get_budget() -> int:
    return _budget.get()


@contextmanager
def budget(limit: int):
    """Temporarily change the enumeration budget (context-local)."""
    token = _budget.set(limit)
    try:
        yield limit
    finally:
        _budget.reset(token)


def check_budget(needed: int, limit: int | None = None) -> None:
    limit = _budget.get() if limit is None else limit
    if needed > limit:
        raise BudgetExceeded(needed, limit)


@dataclass(frozen=True, slots=True)
class FinSet:
    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 0:
            raise ValueError(f"finite set size must be a natural number, got {self.size!r}")

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def __contains__(self, x):
        return isinstance(x, int) and 0 <= x < self.size

    def __str__(self):
        return str(self.size)


_SMALL = [FinSet(n) for n in range(256)]


def as_finset(x) -> FinSet:
    if isinstance(x, FinSet):
        return x
    if type(x) is int and 0 <= x < 256:
        return _SMALL[x]
    return FinSet(x)


@dataclass(frozen=True, slots=True)
class FinFunction:
    dom: FinSet
    cod: FinSet
    map: tuple

    def __post_init__(self):
        if not isinstance(self.dom, FinSet):
            object.__setattr__(self, "dom", FinSet(self.dom))
        if not isinstance(self.cod, FinSet):
            object.__setattr__(self, "cod", FinSet(self.cod))
        if not isinstance(self.map, tuple):
            object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.dom.size:
            raise DomainMismatch(
                f"map has {len(self.map)} entries but domain has size {self.dom.size}")
        for v in self.map:
            if not (isinstance(v, int) and 0 <= v < self.cod.size):
                raise IndexOutOfRange(f"image {v!r} not in codomain of size {self.cod.size}")

    @classmethod
    def trusted(cls, dom: int, cod: int, images: tuple) -> FinFunction:
        """Build without validation; callers guarantee the invariants."""
        f = _new(cls)
        _set(f, "dom", _SMALL[dom] if dom < 256 else FinSet(dom))
        _set(f, "cod", _SMALL[cod] if cod < 256 else FinSet(cod))
        _set(f, "map", images)
        return f

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __len__(self):
        return self.dom.size

    def __str__(self):
        body = ", ".join(str(v + 1) for v in self.map)
        return f"[{body}]: {self.dom.size} -> {self.cod.size}"

    def then(self, g: FinFunction) -> FinFunction:
        return compose(g, self)

    def to_json(self) -> dict:
        return {"dom": self.dom.size, "cod": self.cod.size, "map": list(self.map)}

    @classmethod
    def from_json(cls, data: dict) -> FinFunction:
        return cls(FinSet(data["dom"]), FinSet(data["cod"]), tuple(data["map"]))


def function(images: Sequence[int], cod: int) -> FinFunction:
    return FinFunction(FinSet(len(images)), FinSet(cod), tuple(images))


def identity(n) -> FinFunction:
    n = as_finset(n).size
    return FinFunction.trusted(n, n, tuple(range(n)))


def bang(n) -> FinFunction:
    """The unique map n -> 1."""
    n = as_finset(n).size
    return FinFunction.trusted(n, 1, (0,) * n)


def empty_map(n) -> FinFunction:
    """The unique map 0 -> n."""
    return FinFunction.trusted(0, as_finset(n).size, ())


def constant(n, value: int, cod) -> FinFunction:
    return FinFunction(FinSet(as_finset(n).size), as_finset(cod), (value,) * as_finset(n).size)


def compose(g: FinFunction, f: FinFunction) -> FinFunction:
    """g after f."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose: codomain {f.cod.size} != domain {g.dom.size}")
    gm = g.map
    return FinFunction.trusted(f.dom.size, g.cod.size, tuple(gm[x] for x in f.map))


def compose_all(*fs: FinFunction) -> FinFunction:
    """compose_all(h, g, f) == h . g . f"""
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = compose(g, out)
    return out


def iter_maps(a, b) -> Iterator[FinFunction]:
    a, b = as_finset(a).size, as_finset(b).size
    for images in itertools.product(range(b), repeat=a):
        yield FinFunction.trusted(a, b, images)


def count_maps(a, b) -> int:
    return as_finset(b).size ** as_finset(a).size


def enumerate_maps(a, b, limit: int | None = None) -> list[FinFunction]:
    """All functions a -> b in lexicographic order of their image tuples."""
    check_budget(count_maps(a, b), limit)
    return list(iter_maps(a, b))


def fiber(f: FinFunction, y: int) -> tuple[FinSet, FinFunction]:
    """Preimage of ``y`` as a set together with its increasing embedding into f.dom."""
    if not (0 <= y < f.cod.size):
        raise IndexOutOfRange(f"{y} is not an element of a set of size {f.cod.size}")
    members = tuple(x for x, v in enumerate(f.map) if v == y)
    return FinSet(len(members)), FinFunction.trusted(len(members), f.dom.size, members)


def fibers(f: FinFunction) -> list[tuple[int, ...]]:
    """Every fiber of f as an increasing tuple of domain elements."""
    out = [[] for _ in range(f.cod.size)]
    for x, v in enumerate(f.map):
        out[v].append(x)
    return [tuple(xs) for xs in out]


def fiber_sizes(f: FinFunction) -> list[int]:
    sizes = [0] * f.cod.size
    for v in f.map:
        sizes[v] += 1
    return sizes


def product(a, b) -> tuple[FinSet, FinFunction, FinFunction]:
    """Cartesian product; the pair (x, y) is stored at x * |b| + y."""
    a, b = as_finset(a).size, as_finset(b).size
    n = a * b
    pa = FinFunction.trusted(n, a, tuple(k // b for k in range(n)))
    pb = FinFunction.trusted(n, b, tuple(k % b for k in range(n)))
    return FinSet(n), pa, pb


def pair(f: FinFunction, g: FinFunction) -> FinFunction:
    """Mediating map into the product of the codomains."""
    if f.dom != g.dom:
        raise DomainMismatch("pairing needs a common domain")
    m = g.cod.size
    return FinFunction.trusted(f.dom.size, f.cod.size * m,
                               tuple(x * m + y for x, y in zip(f.map, g.map)))


def product_map(f: FinFunction, g: FinFunction) -> FinFunction:
    """f x g between products."""
    m, mg = g.dom.size, g.cod.size
    return FinFunction.trusted(
        f.dom.size * m, f.cod.size * mg,
        tuple(f.map[k // m] * mg + g.map[k % m] for k in range(f.dom.size * m)) if m else ())


def coproduct(a, b) -> tuple[FinSet, FinFunction, FinFunction]:
    """Disjoint union with the a-block first."""
    a, b = as_finset(a).size, as_finset(b).size
    n = a + b
    ia = FinFunction.trusted(a, n, tuple(range(a)))
    ib = FinFunction.trusted(b, n, tuple(range(a, n)))
    return FinSet(n), ia, ib


def copair(f: FinFunction, g: FinFunction) -> FinFunction:
    if f.cod != g.cod:
        raise DomainMismatch("copairing needs a common codomain")
    return FinFunction.trusted(f.dom.size + g.dom.size, f.cod.size, f.map + g.map)


def coproduct_map(f: FinFunction, g: FinFunction) -> FinFunction:
    off = f.cod.size
    return FinFunction.trusted(f.dom.size + g.dom.size, off + g.cod.size,
                               f.map + tuple(off + v for v in g.map))


def wide_pullback(legs: Sequence[FinFunction]) -> tuple[FinSet, list[FinFunction]]:
    """Limit of maps into a common codomain.

    Elements are the tuples (x_1, ..., x_k) on which all legs agree, listed
    lexicographically; the i-th projection reads off x_i.
    """
    if not legs:
        raise EmptyDiagram("wide pullback needs at least one leg")
    c = legs[0].cod
    for leg in legs:
        if leg.cod != c:
            raise DomainMismatch("wide pullback legs must share a codomain")
    by_value = [fibers(leg) for leg in legs]
    tuples = []
    for y in range(c.size):
        tuples.extend(itertools.product(*(fs[y] for fs in by_value)))
    tuples.sort()
    n = len(tuples)
    projections = [FinFunction.trusted(n, leg.dom.size, tuple(t[i] for t in tuples))
                   for i, leg in enumerate(legs)]
    return FinSet(n), projections


def pullback(f: FinFunction, g: FinFunction) -> tuple[FinSet, FinFunction, FinFunction]:
    apex, (p, q) = wide_pullback([f, g])
    return apex, p, q


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the smaller element as root so roots are least members
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def wide_pushout(legs: Sequence[FinFunction]) -> tuple[FinSet, list[FinFunction]]:
    """Colimit of maps out of a common domain.

    The coproduct of the codomains is quotiented by leg_i(x) ~ leg_j(x);
    classes are numbered in order of their least member.
    """
    if not legs:
        raise EmptyDiagram("wide pushout needs at least one leg")
    c = legs[0].dom
    for leg in legs:
        if leg.dom != c:
            raise DomainMismatch("wide pushout legs must share a domain")
    offsets = list(itertools.accumulate((leg.cod.size for leg in legs), initial=0))
    uf = _UnionFind(offsets[-1])
    first = legs[0]
    for leg, off in zip(legs[1:], offsets[1:]):
        for x in range(c.size):
            uf.union(first.map[x], off + leg.map[x])
    label = {}
    classes = []
    for z in range(offsets[-1]):
        r = uf.find(z)
        if r not in label:
            label[r] = len(label)
        classes.append(label[r])
    n = len(label)
    injections = [FinFunction.trusted(leg.cod.size, n,
                                      tuple(classes[off:off + leg.cod.size]))
                  for leg, off in zip(legs, offsets)]
    return FinSet(n), injections


def pushout(f: FinFunction, g: FinFunction) -> tuple[FinSet, FinFunction, FinFunction]:
    apex, (i, j) = wide_pushout([f, g])
    return apex, i, j


def equalizer(f: FinFunction, g: FinFunction) -> tuple[FinSet, FinFunction]:
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("equalizer needs parallel maps")
    members = tuple(x for x in range(f.dom.size) if f.map[x] == g.map[x])
    return FinSet(len(members)), FinFunction.trusted(len(members), f.dom.size, members)


def is_injective(f: FinFunction) -> bool:
    return len(set(f.map)) == len(f.map)


def is_surjective(f: FinFunction) -> bool:
    return len(set(f.map)) == f.cod.size


def is_bijective(f: FinFunction) -> bool:
    return f.dom.size == f.cod.size and is_injective(f)


def inverse(f: FinFunction) -> FinFunction:
    if not is_bijective(f):
        raise ValueError("only bijections have inverses")
    inv = [0] * f.dom.size
    for x, y in enumerate(f.map):
        inv[y] = x
    return FinFunction.trusted(f.cod.size, f.dom.size, tuple(inv))


def image(f: FinFunction) -> tuple[int, ...]:
    return tuple(sorted(set(f.map)))


def is_pullback_square(top: FinFunction, left: FinFunction,
                       right: FinFunction, bottom: FinFunction) -> bool:
    """Whether the square  A -top-> B, A -left-> C, B -right-> D, C -bottom-> D
    commutes and A maps bijectively onto C x_D B."""
    if compose(right, top).map != compose(bottom, left).map:
        return False
    seen = set()
    for x in range(top.dom.size):
        key = (left.map[x], top.map[x])
        if key in seen:
            return False
        seen.add(key)
    cb = fiber_sizes(right)
    expected = sum(cb[bottom.map[c]] for c in range(left.cod.size))
    return len(seen) == expected


def subsets(n) -> Iterator[tuple[int, ...]]:
    """All subsets of n as increasing tuples, ordered by bitmask."""
    n = as_finset(n).size
    for mask in range(1 << n):
        yield tuple(i for i in range(n) if mask >> i & 1)


def inclusion(members: Iterable[int], n) -> FinFunction:
    members = tuple(sorted(members))
    return FinFunction(FinSet(len(members)), as_finset(n), members)
