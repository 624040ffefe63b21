"""Chaotic seeding: the two-branch map, its chaos certificate, and why
the sign-balanced variant decorrelates waveform sets.
"""

import numpy as np

from psldesign import (ChaoticParams, bernoulli_sequence, ccp, chaotic_init,
                       lyapunov_estimate, modified_bernoulli_sequence)

mod = ChaoticParams(variant="modified", x0=0.37, A=1.0, B=1.9)
orbit = modified_bernoulli_sequence(ChaoticParams(variant="modified", x0=0.5,
                                                  burn_in=0), 6)
print("Two-branch map from x0 = 0.5:", np.round(orbit, 6))
print()

est = lyapunov_estimate(mod, 100_000)
print(f"Orbit-average log-derivative over 1e5 steps: {est:.6f}")
print(f"log(B) for B = 1.9:                          {np.log(1.9):.6f}")
print("positive value certifies chaos; sensitivity doubles every "
      f"{1 / np.log2(1.9):.2f} steps")
print()

a = modified_bernoulli_sequence(ChaoticParams(variant="modified", x0=0.5, burn_in=0), 50)
b = modified_bernoulli_sequence(ChaoticParams(variant="modified", x0=0.5 + 1e-12, burn_in=0), 50)
sep = np.abs(a - b)
print("Orbit separation from a 1e-12 initial offset:")
for i in (0, 10, 20, 30, 40):
    print(f"  step {i:2d}: {sep[i]:.3e}")
print()

print("Mean cross-correlation peak of 50 random pairs, length 64:")
rng = np.random.default_rng(1)
plain, balanced = [], []
for _ in range(50):
    xs = rng.uniform(0.05, 0.95, size=2)
    pair = [chaotic_init(ChaoticParams(variant="bernoulli", x0=x, lam=1 / 1.9), 64)
            for x in xs]
    plain.append(ccp(*pair))
    ys = rng.uniform(0.05, 0.95, size=2) * rng.choice([-1, 1], size=2)
    pair = [chaotic_init(ChaoticParams(variant="modified", x0=y), 64) for y in ys]
    balanced.append(ccp(*pair))
print(f"  unit-interval map (all-positive samples): {np.mean(plain):8.3f}")
print(f"  sign-balanced two-branch map:             {np.mean(balanced):8.3f}")
print("lower cross-correlation is what makes the balanced map the default seed")
