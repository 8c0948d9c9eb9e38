"""
Photons through the polarizer stack
===================================

Reading each polarizer as a pass/fail test on single photons: a photon
survives a stage with probability cos^2(pi/2N). The surviving fraction
estimates the closed-form output ratio, and small random errors in the
rotation angles lower it.
"""

from zenoptics import JitterConfig, MonteCarloConfig, ZenoConfig, jittered_output, mc_survival_exact_check
from zenoptics.stochastic import jitter_expectation

for N in (2, 8, 16):
    est, z = mc_survival_exact_check(ZenoConfig(N=N), MonteCarloConfig(photons=10**6, seed=1))
    print(f"N={N:>2}: survived {est.mean:.5f} +- {est.std_error:.5f}  (z = {z:+.2f})")

# Identical seeds give identical answers whatever the thread count
a = mc_survival_exact_check(ZenoConfig(N=8), MonteCarloConfig(10**6, 7), threads=1)
b = mc_survival_exact_check(ZenoConfig(N=8), MonteCarloConfig(10**6, 7), threads=8)
print("1 thread == 8 threads:", a == b)

# Rotation-angle jitter
for sigma in (0.0, 0.05, 0.2, 0.5):
    res = jittered_output(ZenoConfig(N=16), JitterConfig(sigma=sigma, trials=10**4, seed=3))
    print(
        f"sigma={sigma:<4}: mean ratio {res.mean_ratio:.4f} +- {res.std_error:.4f}"
        f"  (expected {jitter_expectation(16, sigma):.4f})"
    )
