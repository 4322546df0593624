"""Security thresholds in the (transmissivity, excess noise) plane.

For each attack class, the threshold is the excess noise N at which the key
rate crosses zero.  Correlated separable ancillas (g = g' = 1 - omega) beat
the collective attack everywhere, and at high transmissivity they push the
two-way threshold below the one-way baseline; the EPR classes never produce
a zero crossing here (their rate rebounds with noise), so those points are
reported as undefined rather than silently dropped.
"""

import numpy as np

from twowayqkd import oneway_threshold_curve, threshold_curve

GRID = list(np.round(np.arange(0.64, 0.99, 0.02), 10))

curves = {label: threshold_curve(label, GRID)
          for label in ("epr+", "sep-sym+", "sep-anti+", "sep-sym-", "collective")}
curves["oneway"] = oneway_threshold_curve(GRID)

labels = list(curves)
print("tolerable excess noise N* (SNU); '-' = no zero crossing found")
print(f"{'T':>6} " + " ".join(f"{l:>10}" for l in labels))
for i, T in enumerate(GRID):
    cells = []
    for label in labels:
        p = curves[label].points[i]
        cells.append(f"{p.N_star:>10.4f}" if np.isfinite(p.N_star) else f"{'-':>10}")
    print(f"{T:>6.2f} " + " ".join(cells))

# locate the crossing between the optimal two-mode attack and the one-way baseline
diff = [curves["sep-sym-"].points[i].N_star - curves["oneway"].points[i].N_star
        for i in range(len(GRID))]
sign_change = [i for i in range(len(diff) - 1) if diff[i] > 0 >= diff[i + 1]]
if sign_change:
    i = sign_change[0]
    print(f"\noptimal two-mode attack drops below the one-way baseline between "
          f"T = {GRID[i]} and T = {GRID[i + 1]}")
