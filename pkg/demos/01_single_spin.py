"""
One spin-1/2: projections versus fluctuations
=============================================

Only the z component of |up> is sharp. The x and y components average to
zero but fluctuate, and a vector built from root-mean-square components
recovers the full length sqrt(3)/2.
"""

import numpy as np

from spinvec import build_sx, build_sy, build_sz, single_spin_state, variance
from spinvec.analysis import classify_component, vector_choice_a, vector_choice_b
from spinvec.linalg import expectation

# %%
# The state and the three component operators (units of hbar)
up = single_spin_state(1, 1)
ops = {"x": build_sx("1/2"), "y": build_sy("1/2"), "z": build_sz("1/2")}

for axis, op in ops.items():
    mean = expectation(op, up.vector).real
    print(f"<S{axis}> = {mean:+.3f}   dS{axis}^2 = {variance(op, up.vector):.3f}"
          f"   {classify_component(up.vector, axis)}")

# %%
# Expectation vector versus rms vector
a = vector_choice_a(up.vector)
b = vector_choice_b(up.vector)
print("choice A", a, "magnitude^2", a @ a)
print("choice B", b, "magnitude^2", b @ b, "= s(s+1) =", 0.5 * 1.5)
print("|S| =", np.sqrt(b @ b))
