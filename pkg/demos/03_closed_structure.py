"""
Tensor, internal hom and global sections
========================================

Multiplying exponents gives a second monoidal product on polynomials.  It is
closed, and the counting formulas make the adjunction visible.
"""

from polydir import poly
from polydir.expr import parse_poly

P, A, Q = parse_poly("y^2+1"), parse_poly("y+1"), parse_poly("y^2+1")
PA = poly.tensor(P, A)
H = poly.internal_hom(A, Q)
print(f"P (x) A = {PA}")
print(f"[A, Q]  = {H}")
print("|Poly(P (x) A, Q)| =", poly.hom_count(PA, Q))
print("|Poly(P, [A, Q])|  =", poly.hom_count(P, H))

# %%
# The bijection is explicit: curry, then uncurry again.

for m in poly.hom_enumerate(PA, Q)[:3]:
    c = poly.curry_tensor(m, P, A)
    print(" ", m, "\n   ->", c)
    assert poly.uncurry_tensor(c, A, Q) == m

# %%
# [P, y](1) = Poly(P, y) is the product of the exponents.

for text in ("y^3", "2y^2", "y+1", "0"):
    p = parse_poly(text)
    print(f"Gamma({p}) = {poly.global_sections(p)}")

print("[2y, y] =", poly.internal_hom(parse_poly("2y"), poly.Y))
print("[y^2, y] =", poly.internal_hom(parse_poly("y^2"), poly.Y))
print("y^y =", poly.power(poly.Y, poly.Y))
