"""Tour of the covariance-matrix toolbox.

Everything is a plain numpy array in shot-noise units with quadratures
ordered (q1, p1, q2, p2, ...): build states, push them through beam
splitters, compute symplectic spectra and entropies, condition on
heterodyne measurements.
"""

import numpy as np

from twowayqkd import (apply_symplectic, beam_splitter, epr_cm, heterodyne_condition,
                       ppt_separable, symplectic_spectrum, tensor, thermal_cm, vacuum_cm,
                       von_neumann_entropy)

# A two-mode squeezed vacuum state: pure, so both symplectic eigenvalues are 1
# even though each arm looks thermal on its own.
V = epr_cm(mu=5.0)
print("EPR(5) spectrum:       ", symplectic_spectrum(V))
print("EPR(5) entropy [bits]: ", von_neumann_entropy(V))

# Heterodyning one arm projects the other onto a coherent state (identity CM).
print("conditional arm:\n", heterodyne_condition(V, measured=0))

# Mix a thermal mode with vacuum on a balanced beam splitter: variances average.
V = tensor(vacuum_cm(1), thermal_cm(3.0))
out = apply_symplectic(beam_splitter(0.5, (0, 1), 2), V)
print("balanced splitter output variances:", np.diag(out))

# Entropy is invariant under any beam-splitter network ...
V = tensor(epr_cm(4.0), thermal_cm(2.0))
S = beam_splitter(0.37, (0, 2), 3) @ beam_splitter(0.81, (1, 2), 3)
print("entropy before/after network:",
      von_neumann_entropy(V), von_neumann_entropy(apply_symplectic(S, V)))

# ... and the PPT criterion decides separability for two-mode states.
print("EPR(5) separable?      ", ppt_separable(epr_cm(5.0)))
print("thermal pair separable?", ppt_separable(tensor(thermal_cm(2.0), thermal_cm(2.0))))
