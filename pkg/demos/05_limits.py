"""
Sequences of markings and their limits
======================================

(x0, x1, x_n) converges as n grows.  The harness checks the limit relators
past their thresholds and watches relation balls settle down.
"""

from thompsonf import family_power, family_small_support, family_xn, marked_distance_bound, verify_limit_convergence
from thompsonf.limits import threshold_table

fam = family_xn()
report = verify_limit_convergence(fam, {"i": (-3, 3)}, 6, (1, 8))
print(report.to_text())
print()
print(threshold_table(fam, {"i": (0, 3)}, (1, 8)))

for n in range(3, 7):
    d = marked_distance_bound(fam.marking(n), fam.marking(n + 1), 6)
    print(f"d(G_{n}, G_{n + 1}) <= {d.bound_text}")

print()
print(verify_limit_convergence(family_small_support(), {"i": (-2, 2)}, 4, (1, 8)).to_text())
print()
print(verify_limit_convergence(family_power(), {"i": (1, 1)}, 5, (6, 12)).to_text())
