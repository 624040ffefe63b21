"""End-to-end waveform-set generation for multi-antenna use.

Seeds the design loop with distinct chaotic initial conditions, collects
the per-member merits and the pairwise cross-correlation statistics, and
audits the set against the theoretical lower bound.
"""

import numpy as np

from psldesign import (ChaoticParams, Constraint, InitSpec, SolverConfig,
                       generate_set, welch_audit)

config = SolverConfig(
    algorithm="POCA", N=64, Q=20,
    init=InitSpec(kind="modified_bernoulli",
                  params=ChaoticParams(variant="modified", x0=0.31),
                  encoding="phase"),
    constraint=Constraint(kind="unimodular"),
    epsilon=1e-12, max_iterations=5000)

gen = generate_set(4, 64, 20, config, [0.31, 0.43, -0.57, 0.69])

print("Four unimodular members, length 64, 19 suppressed lags each:")
for i, metrics in enumerate(gen.member_metrics, start=1):
    print(f"  member {i}: MPCL = {metrics.mpcl:.2e}, full-band PSL = {metrics.psl:.2f}")
print()

print("Pairwise cross-correlation peaks:")
print(np.round(gen.stats.matrix, 2))
print(f"  mean = {gen.stats.mean:.2f}  max = {gen.stats.max:.2f} "
      f"({gen.stats.mean_db:.1f} dB mean, normalized)")
print()

print("Seeding vs optimizing trade-off:")
print(f"  mean CCP of the raw chaotic seeds: {gen.pre_solver_ccp_mean:.2f}")
print(f"  mean CCP after side-lobe design:   {gen.post_solver_ccp_mean:.2f}")
print("(suppressing autocorrelation costs some cross-correlation; the")
print(" audit below confirms the set still respects the theoretical floor)")
print()

audit = welch_audit(gen.waveforms, unimodular=True)
print(f"Welch audit: worst side-lobe {audit.c_max:.3f} vs bound {audit.bound:.3f} "
      f"-> ratio {audit.ratio:.2f} (must be >= 1)")
