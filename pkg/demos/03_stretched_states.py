"""
Stretched states of N spins
===========================

With every spin up, j = m = N/2 and the spins are independent, so the x and
y noise adds in quadrature: dJx^2 = N/4 = j/2 and J^2 = j/2 + j/2 + j^2.
"""

import numpy as np

from spinvec import SpinSystem, stretched_state, vector_sum_report

print(f"{'N':>3}{'j':>6}{'dJx^2':>10}{'max |pair|':>12}{'J^2':>10}{'j(j+1)':>10}")
for n in range(1, 11):
    r = vector_sum_report(stretched_state(SpinSystem(n)))
    j = n / 2
    c = r.correlations["x"]
    off_diagonal = np.abs(c - np.diag(np.diag(c))).max()
    print(f"{n:>3}{j:>6}{r.budgets['x'].total:>10.4f}{off_diagonal:>12.1e}"
          f"{r.composed_sq:>10.4f}{j * (j + 1):>10.4f}")
