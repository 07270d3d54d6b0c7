"""
The effective unit of angular momentum
======================================

|J| = sqrt(j(j+1)) = j * sqrt(1 + 1/j). Per unit of j the length is
sqrt(1 + 1/j), which only approaches 1 (one hbar) for large j.
"""

import numpy as np

from spinvec import effective_unit

for twice_j in (1, 2, 3, 4, 10, 20, 100, 1000):
    j = twice_j / 2
    print(f"j = {j:>6}   sqrt(1 + 1/j) = {effective_unit(j):.6f}")

js = np.arange(1, 51) / 2
units = np.array([effective_unit(j) for j in js])
print("\nmonotone decreasing on j = 1/2..25:", bool(np.all(np.diff(units) < 0)))
