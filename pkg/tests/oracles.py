"""Brute-force references that share no code with the library."""

import itertools

import numpy as np


def maps(a, b):
    return list(itertools.product(range(b), repeat=a))


def poly_elements(exponents, x):
    return [(i, h) for i, p in enumerate(exponents) for h in itertools.product(range(x), repeat=p)]


def dir_elements(bases, x):
    return [(i, h) for i, d in enumerate(bases) for h in itertools.product(range(d), repeat=x)]


def _count_natural(src, tgt, act_src, act_tgt, n, arrows):
    """Families alpha_X : src(X) -> tgt(X), X = 0..n, natural for every arrow.

    Backtracking over (X, element) with naturality checked as soon as both
    ends of a square are assigned."""
    slots = [(x, e) for x in range(n + 1) for e in src[x]]
    index = {s: k for k, s in enumerate(slots)}
    # constraints: for arrow g and element e, act_tgt(g, alpha(e)) == alpha(act_src(g, e))
    cons = [[] for _ in slots]
    for (a, b, g) in arrows:
        for e in src[a if act_src.covariant else b]:
            x0 = a if act_src.covariant else b
            x1 = b if act_src.covariant else a
            k0, k1 = index[(x0, e)], index[(x1, act_src(g, e))]
            later = max(k0, k1)
            cons[later].append((k0, k1, g))
    choice = [None] * len(slots)

    def ok(k):
        for k0, k1, g in cons[k]:
            if act_tgt(g, choice[k0]) != choice[k1]:
                return False
        return True

    def go(k):
        if k == len(slots):
            return 1
        total = 0
        x = slots[k][0]
        for v in tgt[x]:
            choice[k] = v
            if ok(k):
                total += go(k + 1)
        return total

    return go(0)


class _Act:
    def __init__(self, fn, covariant):
        self.fn, self.covariant = fn, covariant

    def __call__(self, g, e):
        return self.fn(g, e)


def nat_count_poly(P, Q, n=None):
    """|Nat(P, Q)| over the full subcategory of Fin on 0..n."""
    n = max([*P, *Q, 0]) if n is None else n
    src = {x: poly_elements(P, x) for x in range(n + 1)}
    tgt = {x: poly_elements(Q, x) for x in range(n + 1)}
    arrows = [(a, b, g) for a in range(n + 1) for b in range(n + 1) for g in maps(a, b)]
    act = _Act(lambda g, e: (e[0], tuple(g[v] for v in e[1])), True)
    return _count_natural(src, tgt, act, act, n, arrows)


def nat_count_dir(D, E, n=None):
    n = max([*D, *E, 0]) if n is None else n
    src = {x: dir_elements(D, x) for x in range(n + 1)}
    tgt = {x: dir_elements(E, x) for x in range(n + 1)}
    arrows = [(a, b, g) for a in range(n + 1) for b in range(n + 1) for g in maps(a, b)]
    act = _Act(lambda g, e: (e[0], tuple(e[1][v] for v in g)), False)
    return _count_natural(src, tgt, act, act, n, arrows)


def fit_dirichlet(values):
    """Coefficients a_b (b = 0..len-1) with sum_b a_b b^y = values[y]."""
    k = len(values)
    V = np.array([[b ** y for b in range(k)] for y in range(k)], dtype=float)
    a = np.linalg.solve(V, np.array(values, dtype=float))
    return [int(round(v)) for v in a]


def wide_pullback_size(legs):
    """legs: list of (images, cod)."""
    doms = [range(len(images)) for images, _ in legs]
    return sum(1 for t in itertools.product(*doms)
               if len({legs[k][0][t[k]] for k in range(len(legs))}) <= 1)


def wide_pushout_size(legs, c):
    """legs: list of (images, cod) out of a set of size c; count classes."""
    parent = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            v = parent[v]
        return v

    for k, (images, cod) in enumerate(legs):
        for y in range(cod):
            find((k, y))
    for x in range(c):
        roots = [find((k, images[x])) for k, (images, _) in enumerate(legs)]
        for r in roots[1:]:
            parent[find(r)] = find(roots[0])
    return len({find(v) for v in list(parent)})
