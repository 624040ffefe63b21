"""The per-element subproblem: smallest circle around target points.

Every element update inside the design loops solves (or approximates)
this planar 1-center problem. The exact solvers agree to machine
precision; the two O(Q) heuristics trade accuracy for speed.
"""

import numpy as np

from psldesign import (lex_midpoint, oracle_circle, qp_circle, real_midpoint,
                       rectangle_center, subgradient_circle)

rng = np.random.default_rng(5)
pts = rng.standard_normal(40) + 1j * rng.standard_normal(40)

oracle = oracle_circle(pts)
print(f"40 random points; combinatorial oracle radius = {oracle.radius:.12f}")
print()
for name, solver in [("iterated QP          ", qp_circle),
                     ("subgradient descent  ", subgradient_circle),
                     ("bounding rectangle   ", rectangle_center),
                     ("dictionary midpoint  ", lex_midpoint)]:
    sol = solver(pts)
    gap = sol.radius - oracle.radius
    print(f"  {name}: radius {sol.radius:.12f}  (excess {gap:+.2e}, "
          f"{sol.iterations} iterations)")
print()

line = np.array([-3.0, 1.0, 2.0]) + 0j
mid = real_midpoint(line)
print(f"Real points {line.real}: exact midpoint center {mid.center.real}, "
      f"radius {mid.radius}")
print("On the real line the midpoint of the extremes is provably optimal,")
print("which is why the fast rules are exact for real-valued designs.")
