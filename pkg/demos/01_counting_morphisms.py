"""
Counting morphisms
==================

A polynomial sends a finite set X to a sum of powers of X; a Dirichlet
polynomial sends it to a sum of powers *with X in the exponent*.  Maps
between them are counted by simple product formulas, and the library can
also list every map explicitly.
"""

from polydir import dirichlet, poly
from polydir.expr import parse_dir, parse_poly

P, Q = parse_poly("2y^2"), parse_poly("y+1")
print(f"P = {P},  Q = {Q}")
print("P(2) =", P(2), " Q(2) =", Q(2))

# each of the two positions of P picks an element of Q(2)
print("|Poly(P, Q)| =", poly.hom_count(P, Q))
for m in poly.hom_enumerate(P, Q):
    print("  ", m)

# the other way round there is nothing: y+1 has a constant term but 2y^2 does not
print("|Poly(Q, P)| =", poly.hom_count(Q, P))

# %%
# Dirichlet polynomials run the other way: each term of D picks an element
# of E evaluated at its base.

D, E = parse_dir("2*2^y"), parse_dir("1+0^y")
print(f"\nD = {D},  E = {E}")
print("|Dir(D, E)| =", dirichlet.hom_count(D, E))
print("|Dir(E, D)| =", dirichlet.hom_count(E, D))

# %%
# A table of values pins down a Dirichlet polynomial.

D = parse_dir("3*2^y+4*0^y")
print("\nD =", D)
print("D(0..5) =", [D(k) for k in range(6)])
print("zero-content term:", D.zero_content())
