"""q-numerical range and radius toolkit.

Core objects: estimators and exact oracles for the q-numerical radius
(:mod:`qwrange.radius`), a library of replayable inequality checks
(:mod:`qwrange.bounds`), the verification sweep (:mod:`qwrange.sweep`),
and a CLI (``qwrange``).  Hot sampling kernels run through a compiled
extension when available, with an equivalent pure-numpy fallback
(:mod:`qwrange.backend`).
"""

from .backend import BACKEND, MAX_DIM
from .bounds import (CHECKS, DEFAULT, FAST, HIGH, Effort, IneqReport,
                     alpha_r_rhs, bracket_factor, nilpotent_factor,
                     projection_dilation, replay)
from .core import (ENSEMBLE_KINDS, as_matrix, block2x2, direct_sum,
                   gen_random, herm_eig, modulus_power, psd_sqrt_clamped01,
                   spectral_norm)
from .radius import (AdmissiblePair, Canonical2x2, QValue, RadiusEstimate,
                     RangeCloud, canonical_2x2, classical_radius, cloud_pair,
                     estimate_wq, objective, objective_witness, range_cloud,
                     sample_wq, wq_2x2_exact)
from .sweep import SUITES, VerifyConfig, run_sweep, run_verify

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "MAX_DIM", "CHECKS", "DEFAULT", "FAST", "HIGH", "Effort",
    "IneqReport", "alpha_r_rhs", "bracket_factor", "nilpotent_factor",
    "projection_dilation", "replay", "ENSEMBLE_KINDS", "as_matrix",
    "block2x2", "direct_sum", "gen_random", "herm_eig", "modulus_power",
    "psd_sqrt_clamped01", "spectral_norm", "AdmissiblePair", "Canonical2x2",
    "QValue", "RadiusEstimate", "RangeCloud", "canonical_2x2",
    "classical_radius", "cloud_pair", "estimate_wq", "objective",
    "objective_witness", "range_cloud", "sample_wq", "wq_2x2_exact",
    "SUITES", "VerifyConfig", "run_sweep", "run_verify", "__version__",
]
