"""Where along the line should the local cloner sit?

For the clone-then-transmit strategy the only free choice is how much of
the propagation happens before the cloning machine.  For small input
amplitudes the answer is "clone immediately" (tauc = tau, the cloner at
the sending station); above a critical amplitude the optimum detaches and
the achievable fidelity drops below 1/e.
"""

import math

from cvclone import (
    admissible_amplitude_sq,
    optimize_cloner_location,
    scan_cloner_location,
)

M, TAU, MU = 2, 1.0, 0.0
crit = admissible_amplitude_sq(M, TAU, MU)
print(f"m = {M}, tau = {TAU}, mu = {MU}")
print(f"critical amplitude |alpha|^2 = {crit:.4f}\n")

print("|alpha|^2   best tauc (scan)   closed-form   fidelity")
for frac in (0.1, 0.5, 0.9, 1.5, 3.0, 13.0):
    alpha_sq = frac * crit
    placement = optimize_cloner_location(M, TAU, MU, math.sqrt(alpha_sq))
    lo = min(0.0, placement.tau_c_opt - 1.0)
    best_tauc, best_f = scan_cloner_location(
        M, TAU, MU, math.sqrt(alpha_sq), tauc_min=lo, tauc_max=TAU)
    tag = "interior" if placement.interior else "at sender"
    print(f"{alpha_sq:9.3f}   {best_tauc:12.6f}    {placement.tau_c_opt:12.6f}"
          f"   {best_f:.6f}  ({tag})")

print()
print("Note: far above the threshold the stationary point leaves the")
print("physical window [0, tau] entirely; within it, the best physical")
print("choice is then to clone as late as possible.")
