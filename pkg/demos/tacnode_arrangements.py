"""
Conic arrangements with many tacnodes
=====================================

Walk through the three tacnode-rich arrangements shipped as fixtures: count
their singular points, then decide freeness from the Jacobian syzygies.
Run with ``python demos/tacnode_arrangements.py``.
"""

from conic_lab.arrangement import profile, singular_points
from conic_lab.files import load_arrangement
from conic_lab.jacobian import freeness_report
from conic_lab.pencil import megyesi_family

###############################################################################
# Two conics tangent at two points
# --------------------------------
# ``megyesi_family`` builds the conics directly. With a rational value of s we
# work over Q; leaving s out keeps it as a parameter in Q(s).

c2 = megyesi_family("C2", 2)
for c in c2:
    print(c.label, ":", c.poly)

prof = profile(c2)
print("n, t =", prof.n, prof.t, " patterns:", prof.pair_patterns)

###############################################################################
# Where are the tacnodes? ``singular_points`` reports each rational point with
# its Milnor and Tjurina numbers.

for li in singular_points(c2).rational:
    print("(" + ":".join(map(str, li.point)) + ")", "mu =", li.mu, "tau =", li.tau_local, li.type_tag)

###############################################################################
# Freeness
# --------
# The verdict comes from the graded pieces of N(f) and is cross-checked
# against the du Plessis-Wall numbers (d, mdr, tau).

f = c2[0].poly * c2[1].poly
rep = freeness_report(f, k=2, t=2)
print(rep.verdict, "exponents", rep.exponents, "mdr", rep.r, "tau", rep.tau)
print("a minimal relation:", [str(p) for p in rep.relation])

###############################################################################
# The same computation over Q(s)
# ------------------------------
# Three conics, with s kept symbolic. Coefficients are rational functions of s.

c3 = megyesi_family("C3")
f3 = c3[0].poly * c3[1].poly * c3[2].poly
rep3 = freeness_report(f3, k=3, t=6)
print("C3 over Q(s):", rep3.verdict, rep3.exponents, "tau", rep3.tau, "N(f)", rep3.nf_dims)

###############################################################################
# Four conics, twelve tacnodes
# ----------------------------
# Half of the tacnodes of C4 are not defined over Q. They show up as
# conjugate orbits whose invariants are summed over the orbit.

arr = load_arrangement("fixture:c4")
c4 = arr.conic_objects()
summary = singular_points(c4)
print(len(summary.rational), "rational tacnodes;",
      "orbit sizes", [o.npoints for o in summary.orbits], "; total tau", summary.tau_total)
f4 = c4[0].poly
for c in c4[1:]:
    f4 = f4 * c.poly
print("C4:", freeness_report(f4, k=4, t=12).nf_dims)
