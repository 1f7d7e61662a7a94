"""Fields and Singer planes.

Walks through the deterministic field construction for a few q, the trace
map down to the subfield, and the trace-zero perfect difference set that
models the projective plane PG(2,q) on the cyclic group Z_N.
"""

from tripres.gf import SUPPORTED_Q, build_field, poly_str
from tripres.plane import build_plane, check_difference_set

print("== The cubic extension fields ==")
for q in (2, 3, 4):
    f = build_field(q)
    print(f"q={q}: GF({f.p}^{f.degree}) with modulus {poly_str(f.modulus)}, generator x")

f = build_field(2)
g = f.generator
print("\nIn GF(8): g^3 =", (g * g * g), "and  g + g^2 + g^4 =", g.trace(), "(the trace of g)")
print("discrete_log(g + 1) =", (g + f.one).log())

print("\n== Trace-zero difference sets ==")
for q in SUPPORTED_Q:
    plane = build_plane(q)
    report = check_difference_set(plane)
    d = " ".join(map(str, plane.difference_set[:8]))
    more = " ..." if len(plane.difference_set) > 8 else ""
    print(f"q={q:>2}: N={plane.n_points:>3}  D = {d}{more}  perfect={report.perfect_ok}  qD=D: {report.multiplier_ok}")

plane = build_plane(2)
print("\nThe Fano plane: lines are D + k")
for k in range(plane.n_points):
    print(f"  line {k}: {plane.line_points(k)}")
print("point 1 on line 0:", plane.incident(1, 0), " point 0 on line 0:", plane.incident(0, 0))
