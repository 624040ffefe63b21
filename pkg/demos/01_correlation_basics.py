"""Correlation profiles and merit figures of the classic sequences.

Walks through the autocorrelation of Barker-13, Golomb and Chu sequences
and prints the scalar merits used throughout the library.
"""

import numpy as np

from psldesign import autocorrelation, barker13, chu, compute_metrics, golomb

for name, seq in [("Barker-13", barker13()),
                  ("Golomb N=100", golomb(100)),
                  ("Chu N=100", chu(100))]:
    n = len(seq)
    metrics = compute_metrics(autocorrelation(seq), n)
    print(f"{name}:")
    print(f"  PSL       = {metrics.psl:.4f}")
    print(f"  ISL       = {metrics.isl:.4f}")
    print(f"  PCL       = {metrics.pcl_db:.2f} dB")
    print(f"  MMF       = {metrics.mmf:.4g}")
    print()

print("Barker-13 side-lobe magnitudes (lags 1..12):")
profile = autocorrelation(barker13())
mags = [abs(profile.lag(k)) for k in range(1, 13)]
print(" ", np.round(mags, 10))
print("  alternating 0/1 pattern, peak side-lobe exactly 1")
