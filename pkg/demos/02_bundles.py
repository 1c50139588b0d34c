"""
Bundles
=======

A function pi: s -> t is a family of finite sets indexed by t.  Read the
fibers as exponents and you get a polynomial; read them as bases and you
get a Dirichlet polynomial.  Both readings are faithful on morphisms.
"""

from polydir import bundle, dirichlet, finset, poly
from polydir.expr import parse_poly

pi = bundle.bundle((0, 0, 0, 1, 1, 1, 2, 2), 6)
print("pi:", pi)
print("fiber sizes:", pi.fiber_sizes())
print("as a polynomial:", bundle.poly_of_bundle(pi))
print("as a Dirichlet polynomial:", bundle.dir_of_bundle(pi))

# %%
# Going back from an expression gives the same canonical bundle.

P = parse_poly("2y^3+y^2+3")
print("\nbundle of", P, "->", bundle.bundle_of_poly(P))
print("transform:", bundle.dirichlet_transform(P))

# %%
# Bundle maps (commuting squares) are Dirichlet maps; container maps (a base
# map plus maps back along fibers) are polynomial maps.

src, tgt = bundle.bundle((0, 1), 2), pi
print("\n|Bun| =", bundle.count_bun(src, tgt),
      " |Dir| =", dirichlet.hom_count(bundle.dir_of_bundle(src), bundle.dir_of_bundle(tgt)))
print("|Cont| =", bundle.count_cont(src, tgt),
      " |Poly| =", poly.hom_count(bundle.poly_of_bundle(src), bundle.poly_of_bundle(tgt)))

m = next(bundle.iter_bun(src, tgt))
print("a bundle map:", m)
print("its Dirichlet map:", bundle.functor_D(m))

# %%
# Every bundle map factors as a vertical map followed by a cartesian one.

v, c = bundle.factorize(m)
print("\nvertical: ", v)
print("cartesian:", c)
assert bundle.compose_bun(c, v) == m

# %%
# Maps out of X -> 1 are elements of the Dirichlet polynomial at X.

for x in range(4):
    print(f"|Bun({x}!, pi)| = {bundle.count_bun(bundle.bang_bundle(x), pi)}"
          f"  D({x}) = {bundle.dir_of_bundle(pi)(x)}")

print("pullback of pi along", finset.function((2, 0), 6), ":",
      bundle.pullback_bundle(pi, finset.function((2, 0), 6))[0])
