"""Security analysis of two-way Gaussian coherent-state QKD.

The package computes asymptotic secret-key rates, Holevo bounds and security
thresholds for the two-way coherent-state protocol with direct
reconciliation, attacked by two-mode coherent (possibly correlated) Gaussian
ancillas, and compares them with a one-way baseline.  It is built on a small
covariance-matrix toolbox (symplectic spectra, Gaussian entropies,
measurement conditioning) that is usable on its own.
"""

from .attacks import (ATTACK_CLASSES, COLLECTIVE, EPR_NEG, EPR_POS, SEP_ANTI_NEG, SEP_ANTI_POS,
                      SEP_SYM_NEG, SEP_SYM_POS, AttackParams, attack_from_class, classify, eve_cm,
                      is_physical, normalize_class, physical_region_grid, require_physical)
from .errors import (DegenerateSpectrumError, DivergentThresholdError, MonotonicityError,
                     UnphysicalAttackError, UnphysicalStateError)
from .gaussian import (apply_symplectic, beam_splitter, entropic_h, entropic_h_asymptotic, epr_cm,
                       heterodyne_condition, is_bona_fide, is_symplectic, partial_trace,
                       ppt_separable, symplectic_form, symplectic_spectrum, tensor, thermal_cm,
                       vacuum_cm, von_neumann_entropy)
from .protocol import (KeyRateReport, ProtocolParams, asymptotic_total_spectrum, bob_cm,
                       conditional_cm, conditional_entropy_asymptotic,
                       conditional_spectrum_asymptotic, conditioning_deviation, holevo_asymptotic,
                       keyrate_asymptotic, keyrate_report, mutual_information_asymptotic,
                       total_cm, total_cm_circuit, total_entropy_asymptotic)
from .security import (ScanResult, ThresholdCurve, ThresholdPoint, excess_noise,
                       omega_from_excess, oneway_keyrate, oneway_report, oneway_threshold_curve,
                       oneway_threshold_omega, optimal_attack_scan, relative_variations,
                       scan_grid, threshold_curve, threshold_omega)

__version__ = "0.1.0"

__all__ = [
    "ATTACK_CLASSES", "COLLECTIVE", "EPR_NEG", "EPR_POS", "SEP_ANTI_NEG", "SEP_ANTI_POS",
    "SEP_SYM_NEG", "SEP_SYM_POS", "AttackParams", "KeyRateReport", "ProtocolParams",
    "ScanResult", "ThresholdCurve", "ThresholdPoint",
    "DegenerateSpectrumError", "DivergentThresholdError", "MonotonicityError",
    "UnphysicalAttackError", "UnphysicalStateError",
    "apply_symplectic", "asymptotic_total_spectrum", "attack_from_class", "beam_splitter",
    "bob_cm", "classify", "conditional_cm", "conditional_entropy_asymptotic",
    "conditional_spectrum_asymptotic", "conditioning_deviation", "entropic_h",
    "entropic_h_asymptotic", "epr_cm", "eve_cm", "excess_noise", "heterodyne_condition",
    "holevo_asymptotic", "is_bona_fide", "is_physical", "is_symplectic", "keyrate_asymptotic",
    "keyrate_report", "mutual_information_asymptotic", "normalize_class", "omega_from_excess",
    "oneway_keyrate", "oneway_report", "oneway_threshold_curve", "oneway_threshold_omega",
    "optimal_attack_scan", "partial_trace", "physical_region_grid", "ppt_separable",
    "relative_variations", "require_physical", "scan_grid", "symplectic_form",
    "symplectic_spectrum", "tensor", "thermal_cm", "threshold_curve", "threshold_omega",
    "total_cm", "total_cm_circuit", "total_entropy_asymptotic", "vacuum_cm",
    "von_neumann_entropy",
]
