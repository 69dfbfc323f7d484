"""
Two bounds on invariant dimensions
==================================

For a compact open subgroup ``K`` of index ``i`` the new bound is
``i^n n^(n/2)`` and the older one is ``i^(2^(n-1))``.  Both are compared
exactly through squares.  For n = 3 the new bound wins from index 6 on; for
n = 2 it never does.
"""

from admissibility import compare_hecke_bounds, crossover_index, hecke_bound_bernstein, hecke_bound_new

for n in range(2, 7):
    print(f"n={n}: crossover index {crossover_index(n)}")

for n, i in [(3, 2), (3, 6), (4, 2), (5, 10)]:
    new = hecke_bound_new(n, i)
    old = hecke_bound_bernstein(n, i)
    print(f"n={n} index={i}: new ~ {new.display}, old = {old}, new smaller: {compare_hecke_bounds(n, i).new_smaller}")
