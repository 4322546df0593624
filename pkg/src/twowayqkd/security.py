"""Security thresholds, optimal-attack scans and the one-way baseline.

Thresholds are reported as the tolerable excess noise
N = (1 - T)(omega - 1)/T at which the key rate crosses zero, as a function
of the channel transmissivity T.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import gaussian
from .attacks import AttackParams, attack_from_class, normalize_class, physical_region_grid
from .errors import DivergentThresholdError, MonotonicityError, UnphysicalStateError
from .gaussian import entropic_h
from .protocol import _keyrate_arrays, keyrate_asymptotic

#: doubling cap for the threshold bracket search
BRACKET_CAP = 2.0 ** 16

#: bisection bracket width and residual tolerances
BRACKET_TOL = 1e-10
RESIDUAL_TOL = 1e-8

#: Alice's source variance at which the one-way rate is modulation-independent
ONEWAY_MU_A = 1e7 + 1.0


# ---------------------------------------------------------------------------
# excess noise
# ---------------------------------------------------------------------------

def excess_noise(T, omega):
    """Excess noise N = (1-T)(omega-1)/T of a thermal-loss pass."""
    if not 0.0 < T <= 1.0:
        raise ValueError(f"transmissivity must lie in (0, 1], got {T}")
    if omega < 1.0:
        raise ValueError(f"thermal variance must be >= 1 SNU, got {omega}")
    return (1.0 - T) * (omega - 1.0) / T


def omega_from_excess(T, N):
    """Inverse of excess_noise: thermal variance giving excess noise N."""
    if not 0.0 < T < 1.0:
        raise ValueError(f"transmissivity must lie in (0, 1), got {T}")
    if N < 0.0:
        raise ValueError(f"excess noise must be >= 0, got {N}")
    return 1.0 + T * N / (1.0 - T)


# ---------------------------------------------------------------------------
# threshold root finding
# ---------------------------------------------------------------------------

def _bisect_threshold(rate):
    """Zero of a rate function of omega on [1, inf), by doubling plus bisection.

    Returns None when rate(1) <= 0 (no secure region at all).  Raises
    MonotonicityError if the sampled rate fails to decrease strictly while
    bracketing, and DivergentThresholdError if no sign change is found below
    the cap.  The returned root has bracket width <= BRACKET_TOL and
    |rate| <= RESIDUAL_TOL.
    """
    r_lo = rate(1.0)
    if not r_lo > 0.0:
        return None
    lo, hi = 1.0, 2.0
    while True:
        r_hi = rate(hi)
        if not r_hi < r_lo:
            raise MonotonicityError(
                f"rate rose from {r_lo} at omega={lo} to {r_hi} at omega={hi}")
        if r_hi < 0.0:
            break
        lo, r_lo = hi, r_hi
        hi *= 2.0
        if hi > BRACKET_CAP:
            raise DivergentThresholdError(
                f"rate still positive at omega={lo} (cap {BRACKET_CAP:g})")
    while hi - lo > BRACKET_TOL:
        mid = 0.5 * (lo + hi)
        if rate(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    if abs(rate(root)) > RESIDUAL_TOL:
        raise MonotonicityError(f"root residual {rate(root)} exceeds {RESIDUAL_TOL}")
    return root


def threshold_omega(T, attack_class):
    """Thermal variance omega* where the two-way rate crosses zero, or None.

    None means the channel is insecure already at omega = 1 for this T.
    """
    label = normalize_class(attack_class)
    return _bisect_threshold(lambda w: keyrate_asymptotic(T, attack_from_class(label, w)))


def oneway_threshold_omega(T):
    """Threshold of the one-way baseline protocol at transmissivity T, or None."""
    return _bisect_threshold(lambda w: oneway_keyrate(T, w))


# ---------------------------------------------------------------------------
# threshold curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdPoint:
    """One point of a security-threshold curve.

    secure is True whenever a positive rate exists at omega = 1.  Points with
    no secure region carry (omega_star, N_star) = (1, 0); points whose
    threshold search failed (rate never went negative, or rose while
    bracketing) keep secure = True with NaN/inf coordinates.
    """

    T: float
    omega_star: float
    N_star: float
    secure: bool


@dataclass(frozen=True)
class ThresholdCurve:
    attack_class: str
    points: tuple

    def to_rows(self):
        return [(p.T, p.omega_star, p.N_star, p.secure) for p in self.points]

    def to_csv(self):
        from ._serialize import csv_table
        return csv_table(("T", "omega_star", "N_star", "secure"), self.to_rows())

    def to_json(self):
        from ._serialize import json_text
        return json_text({
            "attack_class": self.attack_class,
            "points": [{"T": p.T, "omega_star": p.omega_star,
                        "N_star": p.N_star, "secure": p.secure} for p in self.points],
        })


def _threshold_point(T, rate):
    try:
        w = _bisect_threshold(rate)
    except DivergentThresholdError:
        return ThresholdPoint(T, math.inf, math.inf, True)
    except MonotonicityError:
        return ThresholdPoint(T, math.nan, math.nan, True)
    if w is None:
        return ThresholdPoint(T, 1.0, 0.0, False)
    return ThresholdPoint(T, w, excess_noise(T, w), True)


def _check_t_grid(t_grid):
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise ValueError("empty transmissivity grid")
    if any(not 0.0 < t < 1.0 for t in t_grid):
        raise ValueError("transmissivities must lie strictly inside (0, 1)")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("transmissivity grid must be strictly increasing")
    return t_grid


def threshold_curve(attack_class, t_grid):
    """Security-threshold curve of one attack class over a strictly increasing T grid.

    Per-point failures are flagged in the point rather than aborting the curve.
    """
    label = normalize_class(attack_class)
    points = tuple(
        _threshold_point(T, lambda w: keyrate_asymptotic(T, attack_from_class(label, w)))
        for T in _check_t_grid(t_grid))
    return ThresholdCurve(attack_class=label, points=points)


def oneway_threshold_curve(t_grid):
    """Threshold curve of the one-way baseline over a strictly increasing T grid."""
    points = tuple(
        _threshold_point(T, lambda w: oneway_keyrate(T, w)) for T in _check_t_grid(t_grid))
    return ThresholdCurve(attack_class="oneway", points=points)


# ---------------------------------------------------------------------------
# optimal-attack scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanResult:
    """Grid minimizer of the key rate over Eve's physical correlation region."""

    T: float
    omega: float
    best_g: float
    best_g_prime: float
    R_min: float
    grid_resolution: float

    def to_dict(self):
        return {"T": self.T, "omega": self.omega, "best_g": self.best_g,
                "best_g_prime": self.best_g_prime, "R_min": self.R_min,
                "grid_resolution": self.grid_resolution}

    def to_csv(self):
        from ._serialize import csv_table
        d = self.to_dict()
        return csv_table(list(d), [list(d.values())])

    def to_json(self):
        from ._serialize import json_text
        return json_text(self.to_dict())


def scan_grid(T, omega, resolution):
    """Key rate at every physical grid point, row-major in (g, g')."""
    grid = physical_region_grid(omega, resolution)
    g = np.array([a.g for a in grid])
    gp = np.array([a.g_prime for a in grid])
    if g.size:
        rates = _keyrate_arrays(T, omega, g, gp)
    else:  # unreachable: the grid always contains (0, 0)
        rates = np.array([])
    return [(float(gi), float(gpi), float(ri)) for gi, gpi, ri in zip(g, gp, rates)]


def optimal_attack_scan(T, omega, resolution):
    """Grid minimizer of the asymptotic key rate over the physical region.

    Ties are broken towards the smallest g, then the smallest g'.
    """
    rows = scan_grid(T, omega, resolution)
    g = np.array([r[0] for r in rows])
    gp = np.array([r[1] for r in rows])
    rates = np.array([r[2] for r in rows])
    best = np.lexsort((gp, g, rates))[0]
    return ScanResult(T=float(T), omega=float(omega),
                      best_g=float(g[best]), best_g_prime=float(gp[best]),
                      R_min=float(rates[best]), grid_resolution=float(resolution))


# ---------------------------------------------------------------------------
# one-way baseline
# ---------------------------------------------------------------------------

def _oneway_quantities(T, omega, mu_a):
    """Exact finite-modulation one-way quantities (I_AB, chi_EA)."""
    if not 0.0 < T < 1.0:
        raise ValueError(f"channel transmissivity T must lie in (0, 1), got {T}")
    if omega < 1.0:
        raise ValueError(f"thermal variance must be >= 1 SNU, got {omega}")
    # modes: A (kept), A' (sent), E (thermal); one pass through the channel
    V = gaussian.tensor(gaussian.epr_cm(mu_a), gaussian.thermal_cm(omega))
    V = gaussian.apply_symplectic(gaussian.beam_splitter(T, (1, 2), 3), V)
    V_ab = gaussian.partial_trace(V, keep=(0, 1))
    b = V_ab[2, 2]
    b_cond = gaussian.heterodyne_condition(V_ab, measured=0)[0, 0]
    # exact value is T + (1-T)*omega >= 1; snap the cancellation dust at large mu_a
    dust = 256.0 * np.finfo(float).eps * b
    if b_cond < 1.0 - dust:
        raise UnphysicalStateError(f"conditional variance {b_cond} below vacuum noise")
    if abs(b_cond - 1.0) <= dust:
        b_cond = 1.0
    # heterodyne read-out of both quadratures, one vacuum unit added
    i_ab = math.log2((b + 1.0) / (b_cond + 1.0))
    chi = gaussian.von_neumann_entropy(V_ab) - entropic_h(b_cond)
    return i_ab, chi


def oneway_keyrate(T, omega, mu_a=ONEWAY_MU_A):
    """Key rate of the one-way baseline: coherent states, heterodyne
    detection, direct reconciliation, single-mode collective attack.

    Built from the same Gaussian machinery as the two-way protocol: Alice
    heterodynes one EPR arm, the other crosses one thermal-loss pass (T,
    omega), Bob heterodynes.  I_AB compares Bob's measured variance with and
    without conditioning on Alice; chi_EA = S(AB) - S(B|A) by purity of the
    global state.  At the default mu_a the rate is modulation-independent to
    well below 1e-6 over the threshold-relevant region.  The pure-loss rate
    is log2(T / (e (1-T))), positive for T > e/(1+e) ~ 0.731.
    """
    i_ab, chi = _oneway_quantities(T, omega, mu_a)
    return i_ab - chi


def oneway_report(T, omega, mu_a=ONEWAY_MU_A):
    """One-way baseline report: {T, omega, I_AB, chi_EA, R}."""
    i_ab, chi = _oneway_quantities(T, omega, mu_a)
    return {"T": float(T), "omega": float(omega),
            "I_AB": i_ab, "chi_EA": chi, "R": i_ab - chi}


# ---------------------------------------------------------------------------
# relative variations of the optimal attack
# ---------------------------------------------------------------------------

def relative_variations(T, mu, omega_grid):
    """Relative change of I_AB and chi_EA for the optimal attack vs collective.

    For each omega in the grid, compares the symmetric separable attack
    g = g' = 1 - omega against the collective attack at the same (T, omega,
    mu), returning rows (omega, dI_AB, dchi_EA) with dX = (X - X_c)/X_c.
    Rows where the collective reference is nonpositive carry NaN instead of
    a ratio; they are flagged, not fatal.
    """
    from .protocol import holevo_asymptotic, mutual_information_asymptotic

    if not mu >= 1e3:
        raise ValueError(f"relative variations need the asymptotic regime mu >= 1e3, got {mu}")
    rows = []
    for omega in omega_grid:
        if omega < 1.0:
            raise ValueError(f"thermal variance must be >= 1 SNU, got {omega}")
        coll = AttackParams(omega, 0.0, 0.0)
        opt = attack_from_class("sep-sym-", omega)
        i_c = mutual_information_asymptotic(T, coll, mu)[0]
        chi_c = holevo_asymptotic(T, coll, mu)
        i_d = mutual_information_asymptotic(T, opt, mu)[0]
        chi_d = holevo_asymptotic(T, opt, mu)
        d_i = (i_d - i_c) / i_c if i_c > 0.0 else math.nan
        d_chi = (chi_d - chi_c) / chi_c if chi_c > 0.0 else math.nan
        rows.append((float(omega), d_i, d_chi))
    return rows
