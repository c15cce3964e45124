"""Two kinds of break-even points.

First: how long a line can the nonlocal protocol tolerate before its
optimized fidelity drops to the classical limit 1/2?  Second: how wide a
Gaussian alphabet makes the nonlocal protocol beat the local one?
"""

import math

from cvclone import omega_thresholds, useful_time_thresholds

print("usefulness times (fidelity drops to 1/2)")
print("m   mu    tau_a_th     tau_c_th")
for m in (2, 4):
    for mu in (0.1, 0.4, 1.0, 2.0):
        tau_a, tau_c = useful_time_thresholds(m, mu)
        print(f"{m}  {mu:4.1f}  {tau_a:10.4f}  {tau_c:10.4f}")

print()
print("alphabet-width crossovers Omega^2 at tau = ln 2")
print("m   mu    omega_a^2     omega_c^2")
for m in (2, 4, 8):
    for mu in (0.0, 0.2):
        th = omega_thresholds(m, math.log(2.0), mu)
        c_txt = "-" if th.omega_c_sq is None else f"{th.omega_c_sq:10.4f}"
        print(f"{m}  {mu:4.1f}  {th.omega_a_sq:10.4f}   {c_txt}")

print()
print("The weak-source crossover is independent of the thermal noise mu,")
print("and both thresholds grow with the number of receivers: sharing a")
print("state among more parties raises the bar for the local strategy.")
