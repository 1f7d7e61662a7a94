"""Multiplier and translation twists.

Every invariant presentation is fixed by j -> q*j, so its triples can be
twisted to (j, qk, q^2 l): the twisted presentation is no longer
cyclically invariant and presents a different group.  When q = 1 mod 3
there is also a translation twist by N/3, which stays invariant and
cycles the three central triple forms
  (a) x_j x_j x_j,   (b) x_j x_{j+N/3} x_{j+2N/3},   (c) x_j x_{j+2N/3} x_{j+N/3}.
"""

from tripres.abelian import abelianization
from tripres.plane import build_plane
from tripres.presentations import (
    classify_central_forms,
    enumerate_all_invariant,
    group_presentation,
    is_singer_invariant,
    twist_multiplier,
    twist_translation,
)

plane = build_plane(2)
p = enumerate_all_invariant(plane)[0].representative
t1 = twist_multiplier(p, 1)
t2 = twist_multiplier(p, 2)
print("q=2 base:", abelianization(group_presentation(p)))
print("  twist by q:   ", abelianization(group_presentation(t1)), " invariant:", is_singer_invariant(t1))
print("  twist by q^2: ", abelianization(group_presentation(t2)))
t3 = twist_multiplier(twist_multiplier(t1, 1), 1)
print("  three twists return the original:", t3 == p)

print("\nq=4: translation twists and central forms")
for cls in enumerate_all_invariant(build_plane(4)):
    rep = cls.representative
    forms = "".join(sorted(classify_central_forms(rep)))
    b, c = twist_translation(rep)
    print(
        f"  class {cls.index}: gamma_ab={abelianization(group_presentation(rep))} forms={{{forms}}}"
        f" -> B has {{{''.join(sorted(classify_central_forms(b)))}}},"
        f" C has {{{''.join(sorted(classify_central_forms(c)))}}}"
    )

print("\nq=13 works the same way (no published data, generated on demand):")
from tripres.presentations import enumerate_invariant

p13 = enumerate_invariant(build_plane(13), 0)[0]
print("  forms:", "".join(sorted(classify_central_forms(p13))))
b13, _ = twist_translation(p13)
print("  after the B twist:", "".join(sorted(classify_central_forms(b13))))
