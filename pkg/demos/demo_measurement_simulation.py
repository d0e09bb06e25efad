"""Von Neumann weak measurement of p^2 with position postselection.

Couples the object to a wide Gaussian pointer via exp(-i g p^2 P), postselects
the object near a chosen q, and reads the weak value off the conditional
pointer displacement.  Sweeping the coupling g down shows the estimate
converging onto the analytic weak value, including a negative value past the
threshold for a nearly-vacuum thermal state.
"""

from thermalweak import (
    CouplingConfig,
    convergence_sweep,
    default_bin_halfwidth,
    gaussian_pointer,
    negativity_threshold,
    simulate_weak_p2,
    thermal_from_mean_n,
)
from thermalweak.measurement import DEFAULT_POINTER_GRID

pointer = gaussian_pointer(DEFAULT_POINTER_GRID, 10.0)

print("vacuum, postselect at q = 2 (analytic weak value -3):")
vacuum = thermal_from_mean_n(0.0)
for report in convergence_sweep(vacuum, pointer, 2.0, [0.2, 0.1, 0.05, 0.01]):
    print(
        f"  g = {report.g_used:5.2f}  estimate = {report.estimated_weak_value:9.5f}"
        f"  residual = {report.residual:.2e}"
        f"  P(postselect) = {report.postselect_probability:.3e}"
    )

state = thermal_from_mean_n(0.01)
q = 1.2 * negativity_threshold(state)
cfg = CouplingConfig(g=0.01, postselect_q=q, bin_halfwidth=default_bin_halfwidth(state))
report = simulate_weak_p2(state, pointer, cfg)
print(f"\nmean_n = 0.01, postselect at q = {q:.4f} (beyond threshold):")
print(f"  simulated (p^2)_w = {report.estimated_weak_value:.5f}")
print(f"  analytic  (p^2)_w = {report.analytic_weak_value:.5f}")
print("  a classical model would give +0.51 here; the simulated sign is negative")
