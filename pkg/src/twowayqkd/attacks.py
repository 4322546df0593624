"""Eve's two-mode coherent attack: parameters, named classes, classification.

The attack injects one ancilla into each channel pass through beam splitters
of transmissivity T.  The two ancillas share the covariance matrix

    V = [[w I, G], [G, w I]],   G = diag(g, g')

where w >= 1 is the thermal variance and (g, g') the quadrature correlations.
g = g' = 0 is the standard collective attack; nonzero correlations make the
two passes a memory channel.
"""

from dataclasses import dataclass

import numpy as np

from . import gaussian
from .errors import UnphysicalAttackError

#: canonical class labels, as accepted on the command line
COLLECTIVE = "collective"
EPR_POS = "epr+"
EPR_NEG = "epr-"
SEP_SYM_POS = "sep-sym+"
SEP_SYM_NEG = "sep-sym-"
SEP_ANTI_POS = "sep-anti+"
SEP_ANTI_NEG = "sep-anti-"

ATTACK_CLASSES = (
    COLLECTIVE, EPR_POS, EPR_NEG, SEP_SYM_POS, SEP_SYM_NEG, SEP_ANTI_POS, SEP_ANTI_NEG,
)

def _canonical_key(label):
    """Fold underscore/suffix spellings onto the canonical labels."""
    name = str(label).strip().lower().replace("_", "-")
    if name.endswith("-pos"):
        name = name[:-4] + "+"
    elif name.endswith("-neg"):
        name = name[:-4] + "-"
    return name


@dataclass(frozen=True)
class AttackParams:
    """Eve's triple (omega, g, g') in SNU.

    omega >= 1 is enforced on construction; whether the triple describes a
    physical two-mode state is checked separately by is_physical().
    """

    omega: float
    g: float
    g_prime: float

    def __post_init__(self):
        if not self.omega >= 1.0:
            raise UnphysicalAttackError(f"thermal variance omega must be >= 1 SNU, got {self.omega}")


def eve_cm(params):
    """4x4 covariance matrix [[w I, G], [G, w I]] of Eve's two ancillas."""
    w, g, gp = params.omega, params.g, params.g_prime
    G = np.diag([g, gp])
    V = np.zeros((4, 4))
    V[:2, :2] = w * np.eye(2)
    V[2:, 2:] = w * np.eye(2)
    V[:2, 2:] = G
    V[2:, :2] = G
    return V


def normalize_class(label):
    """Canonical class label for any accepted spelling; ValueError if unknown."""
    name = _canonical_key(label)
    if name in ATTACK_CLASSES:
        return name
    raise ValueError(f"unknown attack class {label!r}; expected one of {', '.join(ATTACK_CLASSES)}")


def attack_from_class(label, omega):
    """Attack parameters of a named extremal class at thermal variance omega.

    collective  -> (0, 0)
    epr+ / epr- -> (+-sqrt(w^2-1), -+sqrt(w^2-1))   maximally entangled ancillas
    sep-sym+/-  -> (+-(w-1), +-(w-1))               separable, symmetric correlations
    sep-anti+/- -> (+-(w-1), -+(w-1))               separable, antisymmetric correlations
    """
    if omega < 1.0:
        raise UnphysicalAttackError(f"thermal variance omega must be >= 1 SNU, got {omega}")
    name = normalize_class(label)
    c = np.sqrt(omega * omega - 1.0)
    s = omega - 1.0
    table = {
        COLLECTIVE: (0.0, 0.0),
        EPR_POS: (c, -c),
        EPR_NEG: (-c, c),
        SEP_SYM_POS: (s, s),
        SEP_SYM_NEG: (-s, -s),
        SEP_ANTI_POS: (s, -s),
        SEP_ANTI_NEG: (-s, s),
    }
    g, gp = table[name]
    return AttackParams(float(omega), float(g), float(gp))


def _physical_mask(omega, g, g_prime, atol=gaussian.BONA_FIDE_ATOL):
    """Vectorized physicality check of Eve's covariance matrix.

    Builds the stacked 4x4 matrices and checks positive definiteness plus
    symplectic eigenvalues >= 1 - atol.  The spectrum comes from the
    Hermitian matrix i V^(1/2) Omega V^(1/2), whose eigenvalues are +-nu;
    batched Hermitian solvers never raise, so boundary points just filter out.
    """
    g = np.asarray(g, dtype=float)
    gp = np.asarray(g_prime, dtype=float)
    g, gp = np.broadcast_arrays(g, gp)
    shape = g.shape
    g = g.ravel()
    gp = gp.ravel()
    V = np.zeros((g.size, 4, 4))
    idx = np.arange(4)
    V[:, idx, idx] = omega
    V[:, 0, 2] = V[:, 2, 0] = g
    V[:, 1, 3] = V[:, 3, 1] = gp
    w, U = np.linalg.eigh(V)
    ok = w[:, 0] > 4.0 * np.finfo(float).eps * omega
    if np.any(ok):
        root = (U[ok] * np.sqrt(w[ok])[:, None, :]) @ np.transpose(U[ok], (0, 2, 1))
        Om = gaussian.symplectic_form(2)
        H = 1.0j * (root @ Om @ root)
        nu = np.linalg.eigvalsh(0.5 * (H + np.conj(np.transpose(H, (0, 2, 1)))))
        ok[ok] = nu[:, -2] >= 1.0 - atol  # two smallest positive eigenvalues are nu_min
    return ok.reshape(shape)


def is_physical(params, atol=gaussian.BONA_FIDE_ATOL):
    """True iff Eve's two-mode covariance matrix is a physical state."""
    return bool(_physical_mask(params.omega, params.g, params.g_prime, atol=atol))


def require_physical(params):
    """Raise UnphysicalAttackError (naming the check) if the attack is unphysical."""
    if abs(params.g) >= params.omega or abs(params.g_prime) >= params.omega:
        raise UnphysicalAttackError(
            f"attack {params} violates positive definiteness (|g|, |g'| must be < omega)")
    if not is_physical(params):
        raise UnphysicalAttackError(
            f"attack {params} violates the bona fide condition "
            "(symplectic eigenvalues of Eve's covariance matrix below 1)")
    return params


def classify(params):
    """Correlation class of a physical attack.

    Returns 'collective' (g = g' = 0), 'entangled' (fails the PPT test), or
    'separable_correlated' otherwise.
    """
    require_physical(params)
    if abs(params.g) <= 1e-12 and abs(params.g_prime) <= 1e-12:
        return "collective"
    if not gaussian.ppt_separable(eve_cm(params)):
        return "entangled"
    return "separable_correlated"


def physical_region_grid(omega, resolution):
    """All physical attacks on a centered square grid of step `resolution`.

    Grid points are (i*step, j*step) for all integers with |i*step|, |j*step|
    <= omega, filtered through the operational physicality check, in
    row-major order (g varying slowest).  Always contains (0, 0).
    """
    if omega < 1.0:
        raise UnphysicalAttackError(f"thermal variance omega must be >= 1 SNU, got {omega}")
    if not resolution > 0.0:
        raise ValueError(f"grid resolution must be positive, got {resolution}")
    kmax = int(np.floor(omega / resolution + 1e-9))
    vals = np.arange(-kmax, kmax + 1) * resolution
    G, GP = np.meshgrid(vals, vals, indexing="ij")
    mask = _physical_mask(omega, G, GP)
    return [AttackParams(float(omega), float(g), float(gp))
            for g, gp in zip(G[mask], GP[mask])]
