"""One OMP recovery, step by step.

Plants a 3-sparse signal in a small identity-Hadamard dictionary, adds a
little noise, and walks through what the solver reports: the selection
order, the least-squares coefficients, and the shrinking residual.  On an
instance this small the exhaustive search over all supports is feasible,
so we also confirm the greedy answer against it.
"""

import numpy as np

from ompbounds import (
    RngStream,
    build_identity_hadamard,
    draw_sparse_signal,
    exhaustive_l0,
    omp,
    support_match,
    synthesize,
)

m, tau, sigma = 16, 3, 0.02
d = build_identity_hadamard(m)
g = RngStream(7, 1).generator()

signal = draw_sparse_signal(g, d.n, tau, s_min=0.5, s_max=1.0)
meas = synthesize(d, signal, sigma, g)

print(f"dictionary: m={d.m}, n={d.n}, mu_max={d.mutual_coherence():.4f}")
print(f"planted support : {sorted(signal.support.tolist())}")
print(f"planted values  : {np.round(signal.values[signal.support], 4).tolist()}")
print(f"noise level     : sigma={sigma}")

result = omp(d, meas.observed, tau)
print("\nOMP run (exactly tau iterations, least squares re-solved each time):")
print(f"  selection order : {result.support.tolist()}")
for k, rn in enumerate(result.residual_norms, start=1):
    print(f"  after iteration {k}: residual norm = {rn:.5f}")
print(f"  coefficients    : {np.round(result.coefficients, 4).tolist()}")
print(f"  support correct : {support_match(result.support, signal.support)}")

oracle = exhaustive_l0(d, meas.observed, tau)
print("\nExhaustive search over all C(32, 3) supports:")
print(f"  best support    : {oracle.support.tolist()}")
print(f"  residual norm   : {oracle.residual_norm:.5f}")
print(f"  agrees with OMP : {support_match(oracle.support, result.support)}")
