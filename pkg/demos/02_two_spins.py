"""
Two spins: quadrature, direct addition and cancellation
=======================================================

The three j=1 and j=0 states of two spin-1/2 particles show the three ways
the transverse noise can combine: uncorrelated (quadrature), correlated
(direct sum) and anti-correlated (cancellation).
"""

from spinvec import two_spin_state, vector_sum_report

# %%
cases = {
    "|1, 1> aligned": two_spin_state(1, 1),
    "|1, 0> triplet": two_spin_state(1, 0),
    "|0, 0> singlet": two_spin_state(0, 0),
}

for name, state in cases.items():
    r = vector_sum_report(state)
    bx = r.budgets["x"]
    print(f"\n{name}")
    print(f"  S1 = {r.particle_vectors[0]}, S2 = {r.particle_vectors[1]}")
    print(f"  <Sx1 Sx2> = {r.correlations['x'][0, 1]:+.3f}  -> {bx.correlation_class}")
    print(f"  dJx^2 = {bx.uncorrelated_part:.2f} (sites) + {bx.correlation_part:+.2f} (pair)"
          f" = {bx.total:.2f}")
    print(f"  composed J = {r.composed.round(6)}  J^2 = {r.composed_sq:.6f}")

# %%
# Adding the vectors naively overshoots for the aligned pair
r = vector_sum_report(cases["|1, 1> aligned"])
print("\nnaive S1 + S2 =", r.naive_sum, "magnitude^2", r.naive_sq, "vs j(j+1) = 2")
