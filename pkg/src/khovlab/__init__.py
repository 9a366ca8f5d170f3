"""Exact computation of p(k, n), the number of distinct products of k factors
from {1, ..., n}, together with the Ehrhart polynomial of the exponent
polytope Q_n and effective thresholds beyond which p(k, n) is a polynomial.
"""
from .bounds import (
    RationalInterval,
    ThresholdReport,
    gsw_bound,
    log_product_interval,
    log_simplex_threshold,
    threshold_report,
    volume_bound,
)
from .errors import GuardExceeded
from .lattice import PrimeBasis, build_mn, factor_vector, primes_upto, vector_value
from .points import ExponentVector, PointSet
from .polynomials import (
    RationalPolynomial,
    StabilizationResult,
    detect_stabilization,
    finite_differences,
    newton_interpolate,
)
from .polytope import (
    ClosednessReport,
    EhrhartResult,
    HullSpec,
    closedness_report,
    dilation_lattice_points,
    ehrhart,
    hull_membership,
    sandwich_check,
    star_set,
)
from .sumset import GrowthSequence, add_sets, growth_sequence, is_downset, kfold

__version__ = "0.1.0"
