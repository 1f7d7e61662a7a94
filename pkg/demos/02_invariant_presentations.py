"""Enumerating cyclically invariant triangle presentations.

A presentation invariant under j -> j+1 is determined by a permutation of
the admissible differences Dt = D + b with order 3 and zero cycle sums.
This demo enumerates those difference cycles, materializes the triple
sets, checks the axioms, and reduces everything modulo affine relabelings.
"""

from tripres.plane import build_plane
from tripres.presentations import (
    admissible_differences,
    check_axioms,
    enumerate_all_invariant,
    enumerate_invariant,
    enumerate_sigma_cycles,
    is_singer_invariant,
)

plane = build_plane(2)
print("q=2, b=0: admissible differences", admissible_differences(plane, 0))
for s in enumerate_sigma_cycles(7, (1, 2, 4)):
    print("  difference cycle", s.describe())

for b in range(7):
    ps = enumerate_invariant(plane, b)
    print(f"b={b}: {len(ps)} presentations")

p = enumerate_invariant(plane, 0)[0]
print("\nfirst presentation, rotation-class representatives:")
for t in p.rotation_classes():
    print(" ", t)
print("axiom violations:", check_axioms(p) or "none")
print("invariant under j -> j+1:", is_singer_invariant(p))

print("\n== classes up to affine relabeling, per q ==")
for q in (2, 3, 4, 5, 7, 8, 9, 11):
    classes = enumerate_all_invariant(build_plane(q))
    pairs = sum(1 for c in classes if c.inverse_index != c.index) // 2
    print(f"q={q:>2}: {len(classes):>2} classes ({pairs} generator-inverse pairs)")
