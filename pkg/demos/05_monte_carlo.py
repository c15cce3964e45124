"""Operational check: simulate the measure-and-displace loop explicitly.

Instead of trusting the closed-form clone moments, sample double-homodyne
outcomes one by one, apply the broadcast correction, and compare the
empirical clone statistics against the analytic prediction.
"""

from cvclone import (
    TelecloningConfig,
    clone_fidelity_closed,
    monte_carlo_protocol,
)

config = TelecloningConfig.symmetric(m=3, n=1.2, tau0=0.3, tauc=0.4, mu=0.25)
alpha = 1.0 - 0.5j
closed = clone_fidelity_closed(config, 1)

print(f"input amplitude {alpha}, closed-form fidelity {closed:.6f}\n")
print("samples    F_empirical   |F - F_closed|")
for n in (1000, 10_000, 100_000):
    est = monte_carlo_protocol(config, alpha, n, seed=2024)[0]
    print(f"{n:7d}    {est.fidelity:.6f}      {abs(est.fidelity - closed):.2e}")

est = monte_carlo_protocol(config, alpha, 100_000, seed=2024)[0]
print("\nclone mean      ", est.mean, "+/-", est.mean_se)
print("clone covariance\n", est.cov)
print("\nRe-running with the same seed is bit-identical:",
      est.fidelity == monte_carlo_protocol(config, alpha, 100_000,
                                           seed=2024)[0].fidelity)
