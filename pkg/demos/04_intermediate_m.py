"""
Partial correlations at intermediate m
======================================

Away from m = +-j the pair terms are neither zero nor maximal. Three spins
coupled to j = 3/2 and j = 1/2 show both signs.
"""

from spinvec import SpinSystem, coupled_state, vector_sum_report
from spinvec.spin_ops import format_half

system = SpinSystem(3)
for twice_j in (3, 1):
    for twice_m in range(twice_j, -twice_j - 1, -2):
        state = coupled_state(system, twice_j, twice_m)
        r = vector_sum_report(state)
        c = r.correlations["x"]
        pairs = ", ".join(f"{c[i, k]:+.4f}" for i, k in [(0, 1), (0, 2), (1, 2)])
        print(f"{state.label:<28} pairs x: {pairs}   dJx^2 = {r.budgets['x'].total:.4f}"
              f"  ({r.budgets['x'].correlation_class})")

# %%
# The same j can be reached along different coupling paths; the pair
# pattern depends on the path, the totals do not.
a = coupled_state(SpinSystem(4), 0, 0, path=[1, 2, 1, 0])
b = coupled_state(SpinSystem(4), 0, 0, path=[1, 0, 1, 0])
for s in (a, b):
    r = vector_sum_report(s)
    print(s.label, "pair (1,2) =", round(r.correlations["x"][0, 1], 4),
          "dJx^2 =", round(r.budgets["x"].total, 12), "j =", format_half(s.twice_j))
