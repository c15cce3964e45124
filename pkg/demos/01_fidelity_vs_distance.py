"""How far can a coherent state travel before broadcasting it nonlocally
stops paying off?

We track the optimized fidelity of the entanglement-based protocol against
the alphabet-averaged fidelity of the clone-then-transmit strategy as the
effective propagation time tau grows, for a few alphabet widths Omega.
"""

import numpy as np

from cvclone import GaussianAlphabet, averaged_fidelity, optimal_symmetric

M = 2
MU = 0.2
OMEGAS = (0.5, 1.0, 2.0)

print(f"m = {M} receivers, thermal noise mu = {MU}")
header = "tau     F_tele  regime  " + "  ".join(
    f"F_lcdt(O={w})" for w in OMEGAS)
print(header)
print("-" * len(header))
for tau in np.linspace(0.1, 3.0, 30):
    best = optimal_symmetric(M, tau, MU)
    locals_ = [averaged_fidelity(M, tau, MU, GaussianAlphabet(w * w))
               for w in OMEGAS]
    cells = "  ".join(f"{f:11.4f}" for f in locals_)
    print(f"{tau:5.2f}  {best.f_max:7.4f}   {best.regime}    {cells}")

print()
print("The nonlocal strategy decays gracefully with tau, while the local")
print("one collapses as the alphabet widens: its unit-gain transmission")
print("pays the amplitude-damping penalty on every input, and averaging")
print("over a broad Gaussian alphabet exposes that cost.")
