"""
Random tree baselines
=====================

Exact Strahler statistics of two random ensembles: binary trees with n
leaves and plane trees with n nodes.  All counts are exact integers.
"""

import math

from strahler.ensembles import MAX, MIN, catalan_binary_count, r2_limits, r2_table, r_limit_table

# %%
# Distribution of the Strahler number over all binary trees with n leaves.
table = r2_table(1024)
for n in (4, 10, 50):
    print(n, catalan_binary_count(n), table.distribution(n))

# %%
# The mean grows like log base 4 of n: quadrupling n adds about one.
for n in (16, 64, 256, 1024):
    print(f"n={n:<5} mean={float(table.mean(n)):.3f}  log4(n)+1={math.log(n, 4) + 1:.3f}  limits={tuple(r2_limits(n))}")

# %%
# Mean upper/lower limits over all plane trees, by dynamic programming over
# reduced child-limit states.
upper = r_limit_table(100, MAX)
lower = r_limit_table(100, MIN)
for n in (5, 10, 30, 100):
    print(f"n={n:<4} upper={float(upper.average(n)):.3f} lower={float(lower.average(n)):.3f}"
          f" states={len(upper.states[n])}")

# %%
# Plot-ready growth curves (matplotlib is optional).
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    ns = range(1, 101)
    plt.semilogx(ns, [float(table.mean(n)) for n in ns], "k", label="R2 mean")
    plt.semilogx(ns, upper.averages(), color="purple", label="R upper")
    plt.semilogx(ns, lower.averages(), color="orange", label="R lower")
    plt.xlabel("n")
    plt.ylabel("Strahler number")
    plt.legend()
    plt.savefig("growth.png", dpi=120)
    print("wrote growth.png")
