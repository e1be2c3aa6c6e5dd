"""
How many tacnodes can k conics have?
====================================

Compare the upper bounds on the number t of tacnodes, all evaluated in exact
rational arithmetic.
"""

from fractions import Fraction

from conic_lab.bounds import alpha_window, corollary_rhs, crossover, evaluate_bounds, miyaoka_rhs, tang_check

###############################################################################
# A five-conic profile
# --------------------
# With n nodes and t tacnodes the pairwise Bezout count forces
# n + 2t = 4 * C(k, 2). Here k = 5 gives n = 6 for t = 17.

for entry in evaluate_bounds(5, 6, 17).entries:
    print(entry.describe())

###############################################################################
# Six conics with thirty tacnodes sit exactly on two of the bounds.

rep = evaluate_bounds(6, 0, 30)
for name in ("main_theorem", "corollary", "langer"):
    print(name, "slack", rep[name].slack)

###############################################################################
# Quadratic bounds side by side
# -----------------------------
# The corollary's k^2/3 eventually beats Miyaoka's 4k^2/9.

print(" k   k(k-1)   Miyaoka   corollary")
for k in (6, 10, 15, 16, 20, 50):
    print(f"{k:>2} {k * (k - 1):>8} {float(miyaoka_rhs(k)):>9.2f} {float(corollary_rhs(k)):>11.2f}")
print("corollary strictly better from k =", crossover()[0])

###############################################################################
# The Langer parameter alpha must lie in [3/(2k), 1/4].

for k in (6, 8, 12):
    lo, hi = alpha_window(k)
    print(f"k={k}: alpha in [{lo}, {hi}]")
try:
    alpha_window(5)
except Exception as exc:
    print("k=5:", exc)

###############################################################################
# Ordinary intersection points
# ----------------------------
# When the conics only meet transversally, t_r counts points on exactly r of
# them.

print(tang_check(5, {5: 8}).describe())
print(tang_check(10, {2: 1, 8: 20}).describe())
print(Fraction(160, 9) - 17)
