"""Brute-force scan for the rate-minimizing two-mode attack.

Sweeps Eve's correlation pair (g, g') over the physical region and locates
the grid minimizer of the key rate.  Near the security threshold the minimum
sits at the symmetric separable corner (1 - omega, 1 - omega); deep inside
the insecure region it migrates into the interior of the region.
"""

from twowayqkd import AttackParams, keyrate_asymptotic, optimal_attack_scan, threshold_omega

OMEGA, STEP = 2.0, 0.02

for T in (0.95, 0.8, 0.65, 0.5):
    res = optimal_attack_scan(T, OMEGA, STEP)
    r_coll = keyrate_asymptotic(T, AttackParams(OMEGA, 0.0, 0.0))
    corner = keyrate_asymptotic(T, AttackParams(OMEGA, 1.0 - OMEGA, 1.0 - OMEGA))
    print(f"T={T:4}: minimizer (g, g') = ({res.best_g:+.2f}, {res.best_g_prime:+.2f})  "
          f"R_min={res.R_min:+.4f}  R_corner={corner:+.4f}  R_collective={r_coll:+.4f}")

# at the threshold of the symmetric separable class the corner is the worst case
T = 0.8
w_star = threshold_omega(T, "sep-sym-")
res = optimal_attack_scan(T, w_star, STEP)
print(f"\nat the threshold point (T={T}, omega={w_star:.4f}):")
print(f"  minimizer ({res.best_g:+.3f}, {res.best_g_prime:+.3f}), "
      f"expected corner ({1 - w_star:+.3f}, {1 - w_star:+.3f}), R_min={res.R_min:+.2e}")
