"""
Searching for tight families
============================

Hill climbing over family specs, maximizing the generated algebra dimension
for fixed ``n`` and ``l``.  The run is fully determined by its seed and
the best spec can be rebuilt with ``build_family``.
"""

from admissibility import build_family, generated_algebra_basis, tightness_search

rec = tightness_search(4, 4, budget=50, rng_seed=0)
print("best dim", rec.dim, "ratio", rec.ratio_display, "after", rec.evaluations, "evaluations")
print(rec.spec.canonical())
assert generated_algebra_basis(build_family(rec.spec)).dim == rec.dim
