"""
Checking the theorems
=====================

Every suite walks a finite grid and stops at the first failure.  Corrupting
a formula on purpose shows that the checks have teeth.
"""

from polydir import laws

grid = laws.Grid.parse("exp=2,terms=2,set=2,legs=2")
for name in laws.SUITES:
    print(laws.run_suite(name, grid).line())

print()
for name, mutation in laws.SUITE_MUTATIONS.items():
    r = laws.run_suite(name, grid, mutate=mutation)
    print(f"[{mutation}]", r.line())
