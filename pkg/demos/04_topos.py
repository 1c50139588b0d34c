"""
Subobjects of bundles
=====================

Bundles form a topos.  Its subobject classifier is the bundle 3 -> 2 whose
points over "true" are "now" and "later", and whose one point over "false"
is "never".
"""

from polydir import bundle, finset, topos

om, truth = topos.omega()
print("Omega:", om)
print("true: ", truth)

F = bundle.bundle((0, 0, 1), 2)
subs = topos.enumerate_subobjects(F)
print(f"\nF = {F} has {len(subs)} subobjects and {bundle.count_bun(F, om)} maps to Omega")
for w in subs[:6]:
    chi = topos.classify(w)
    names = {topos.NOW: "now", topos.LATER: "later", topos.NEVER: "never"}
    print(f"  S={w.total_subset} T={w.base_subset}:",
          [names[v] for v in chi.total_map.map])
    assert topos.pullback_of_point(chi, truth) == (w.total_subset, w.base_subset)

# %%
# Nothing smaller does the job.

tests = [bundle.Bundle(f) for t in range(3) for s in range(3) for f in finset.iter_maps(s, t)]
found = topos.search_classifiers(4, 3, tests)
print("\nclassifier candidates up to 4 -> 3:", sorted({(C.total.size, C.base.size) for C, _ in found}))

# %%
# Exponentials: E^F has the bundle maps F -> E as total set.

E = bundle.bundle((0, 1, 1), 2)
ex = topos.exponential(E, F)
print("\nE^F:", ex.bundle)
