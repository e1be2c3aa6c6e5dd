"""
Pencils of conics and ordinary m-fold points
============================================

Unions of members of a pencil have controlled singularities at the base
points. This demo measures them and then runs the randomized experiment on
ordinary points made of unrelated conics.
"""

from conic_lab.algebra.parse import parse_polynomial
from conic_lab.pencil import Pencil, base_locus, ordinary_experiment, verify_prop4

###############################################################################
# Base locus
# ----------
# Two rational base points, and a pair of conjugate ones.

g1 = parse_polynomial("x^2 + y^2 - y*z")
g2 = parse_polynomial("(x + y)*z")
locus = base_locus(g1, g2)
print(locus.to_dict())

###############################################################################
# At a transversal base point, m members give an ordinary m-fold point with
# mu = tau = (m - 1)^2.

for m in (2, 3, 4):
    for row in verify_prop4(Pencil(g1, g2, list(range(m)))):
        print(m, "(" + ":".join(map(str, row.point)) + ")", row.type_tag, row.mu, row.tau, "expected", row.predicted)

###############################################################################
# Higher contact
# --------------
# Two conics meeting in a single point with contact 4. For two members the
# singularity is quasi-homogeneous. For three members the Tjurina number
# drops one below the Milnor number in this example.

h1 = parse_polynomial("y*z - x^2")
h2 = parse_polynomial("y*z - x^2 + y^2")
for params in ([0, 1], [0, 1, 2]):
    (row,) = verify_prop4(Pencil(h1, h2, params))
    print(f"m={row.m} c={row.contact}: mu={row.mu} tau={row.tau} (m-1)(cm-1)={row.predicted}")

###############################################################################
# Random ordinary points
# ----------------------
# Five random conics through (0:0:1) with distinct tangents. The Milnor
# number is always 16; the Tjurina number is where the interest lies.

res = ordinary_experiment(5, 20, seed=7)
print("delta = mu - tau histogram:", res.histogram)
print("findings:", len(res.findings))

###############################################################################
# Taking the five conics from a single pencil instead restores mu = tau.

print("pencil:", ordinary_experiment(5, 5, seed=7, pencil=True).histogram)
